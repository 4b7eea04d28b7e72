"""Independent naive solvers for the ordinary (one-step) simulation games.

These build the explicit turn-based game graph and solve it with textbook
algorithms (attractors, a recursive parity solver, a classic repeated-attractor
algorithm for visit-infinitely-often objectives). They share no code with the
bitmask engine and serve as oracles for n ≤ ~20.
"""
from __future__ import annotations

from bamin.automaton import Automaton

DUP = 0
SPO = 1


def _moves(a: Automaton, backward: bool):
    adj = a.bwd if backward else a.fwd
    out = []
    for p in range(a.n):
        mv = []
        for s in range(len(a.alphabet)):
            for q in adj[p][s]:
                mv.append((s, q))
        out.append(mv)
    return out


def _attractor(nodes, edges, owner, player, base):
    """States from which `player` forces reaching `base` (base included)."""
    preds = {v: [] for v in nodes}
    out_deg = {}
    for v in nodes:
        out_deg[v] = len(edges[v])
        for w in edges[v]:
            preds[w].append(v)
    attr = set(base)
    counts = dict(out_deg)
    work = list(attr)
    while work:
        w = work.pop()
        for v in preds[w]:
            if v in attr:
                continue
            if owner[v] == player:
                attr.add(v)
                work.append(v)
            else:
                counts[v] -= 1
                if counts[v] == 0:
                    attr.add(v)
                    work.append(v)
    return attr


def _zielonka(nodes, edges, owner, priority):
    """Winning sets (W_dup, W_spo) of a max-parity game (DUP wins even)."""
    nodes = set(nodes)
    if not nodes:
        return set(), set()
    d = max(priority[v] for v in nodes)
    player = DUP if d % 2 == 0 else SPO
    other = 1 - player
    top = {v for v in nodes if priority[v] == d}
    a = _attractor(nodes, edges, owner, player, top)
    sub = nodes - a
    sub_edges = {v: [w for w in edges[v] if w in sub] for v in sub}
    w0, w1 = _zielonka(sub, sub_edges, owner, priority)
    w_other_sub = w0 if other == DUP else w1
    if not w_other_sub:
        return (nodes, set()) if player == DUP else (set(), nodes)
    b = _attractor(nodes, edges, owner, other, w_other_sub)
    rest = nodes - b
    rest_edges = {v: [w for w in edges[v] if w in rest] for v in rest}
    r0, r1 = _zielonka(rest, rest_edges, owner, priority)
    if other == DUP:
        return r0 | b, r1
    return r0, r1 | b


def _buchi_dup(nodes, edges, owner, target):
    """DUP-winning set for: visit `target` infinitely often."""
    nodes = set(nodes)
    edges = {v: list(edges[v]) for v in nodes}
    target = set(target) & nodes
    spoiler_won = set()
    while True:
        attr = _attractor(nodes, edges, owner, DUP, target)
        avoid = nodes - attr
        if not avoid:
            return nodes
        lost = _attractor(nodes, edges, owner, SPO, avoid)
        nodes -= lost
        target -= lost
        spoiler_won |= lost
        edges = {v: [w for w in edges[v] if w in nodes] for v in nodes}
        if not nodes:
            return set()


def naive_ordinary_sim(a: Automaton, cond: str) -> set[tuple[int, int]]:
    """Duplicator-win pairs of the one-step simulation game, cond in di/de/f/bw."""
    n = a.n
    backward = cond == "bw"
    moves = _moves(a, backward)
    acc = a.accepting
    ini = a.initial

    def violation(p, q):
        if cond in ("di", "bw") and p in acc and q not in acc:
            return True
        if cond == "bw" and p in ini and q not in ini:
            return True
        return False

    win_dup = set()
    if cond in ("di", "bw"):
        # safety: spoiler attractor to violation/stuck-duplicator positions
        nodes, edges, owner, bad = [], {}, {}, set()
        for p in range(n):
            for q in range(n):
                v = ("s", p, q)
                nodes.append(v)
                owner[v] = SPO
                if violation(p, q):
                    # the condition is tested at the pair itself, even if
                    # spoiler is stuck
                    edges[v] = []
                    bad.add(v)
                    continue
                if not moves[p]:
                    edges[v] = []  # spoiler stuck without a violation: safe
                    continue
                edges[v] = [("d", p2, s, q) for s, p2 in moves[p]]
                for s, p2 in moves[p]:
                    d = ("d", p2, s, q)
                    if d in owner:
                        continue
                    nodes.append(d)
                    owner[d] = DUP
                    edges[d] = [
                        ("s", p2, q2)
                        for s2, q2 in moves[q]
                        if s2 == s and not violation(p2, q2)
                    ]
                    if not edges[d]:
                        bad.add(d)
        spoiler = _attractor(nodes, edges, owner, SPO, bad)
        for p in range(n):
            for q in range(n):
                if ("s", p, q) not in spoiler:
                    win_dup.add((p, q))
        return win_dup

    if cond == "f":
        nodes, edges, owner, priority = [], {}, {}, {}
        sink0, sink1 = ("w", 0), ("w", 1)
        for v, pr in ((sink0, 0), (sink1, 1)):
            nodes.append(v)
            owner[v] = SPO
            edges[v] = [v]
            priority[v] = pr
        for p in range(n):
            for q in range(n):
                v = ("s", p, q)
                nodes.append(v)
                owner[v] = SPO
                priority[v] = 2 if q in acc else (1 if p in acc else 0)
                edges[v] = (
                    [("d", p2, s, q) for s, p2 in moves[p]] if moves[p] else [sink0]
                )
                for s, p2 in moves[p]:
                    d = ("d", p2, s, q)
                    if d in owner:
                        continue
                    nodes.append(d)
                    owner[d] = DUP
                    priority[d] = 0
                    succ = [("s", p2, q2) for s2, q2 in moves[q] if s2 == s]
                    edges[d] = succ if succ else [sink1]
        w, _ = _zielonka(set(nodes), edges, owner, priority)
        return {(p, q) for p in range(n) for q in range(n) if ("s", p, q) in w}

    if cond == "de":
        nodes, edges, owner, target = [], {}, {}, set()
        sink0, sink1 = ("w", 0), ("w", 1)
        for v in (sink0, sink1):
            nodes.append(v)
            owner[v] = SPO
            edges[v] = [v]
        target.add(sink0)

        def snode(p, q, pend):
            return ("s", p, q, pend)

        for p in range(n):
            for q in range(n):
                for pend in (False, True):
                    v = snode(p, q, pend)
                    nodes.append(v)
                    owner[v] = SPO
                    if not pend:
                        target.add(v)
                    edges[v] = (
                        [("d", p2, s, q, pend) for s, p2 in moves[p]]
                        if moves[p]
                        else [sink0]
                    )
                    for s, p2 in moves[p]:
                        d = ("d", p2, s, q, pend)
                        if d in owner:
                            continue
                        nodes.append(d)
                        owner[d] = DUP
                        succ = []
                        for s2, q2 in moves[q]:
                            if s2 != s:
                                continue
                            pend2 = (pend or p2 in acc) and q2 not in acc
                            succ.append(snode(p2, q2, pend2))
                        edges[d] = succ if succ else [sink1]
        w = _buchi_dup(set(nodes), edges, owner, target)
        out = set()
        for p in range(n):
            for q in range(n):
                pend0 = p in acc and q not in acc
                if snode(p, q, pend0) in w:
                    out.add((p, q))
        return out

    raise ValueError(cond)


# ---------------------------------------------------------------------------
# Lookahead games, solved on explicit graphs. Spoiler reveals a maximal
# attack (k steps, or fewer only when the last state is deadlocked),
# Duplicator answers any matching prefix of length 1..m. Winning conditions
# are evaluated positionwise on the concatenated paths.


def _attacks(moves, p, k):
    out = []

    def rec(path):
        last = path[-1][1] if path else p
        if len(path) == k:
            out.append(tuple(path))
            return
        if not moves[last]:
            if path:
                out.append(tuple(path))
            return
        for s, q in moves[last]:
            rec(path + [(s, q)])

    rec([])
    return out


def _replies(adj, q, att):
    out = []

    def rec(path, i):
        if path:
            out.append(tuple(path))
        if i == len(att):
            return
        last = path[-1] if path else q
        for q2 in adj[last][att[i][0]]:
            rec(path + [q2], i + 1)

    rec([], 0)
    return out


def naive_lookahead_sim(a: Automaton, cond: str, k: int) -> set[tuple[int, int]]:
    """Duplicator-win pairs of the k-lookahead game for cond in
    di/de/f/bw/bw-minus/bw-count."""
    n = a.n
    backward = cond.startswith("bw")
    adj = a.bwd if backward else a.fwd
    moves = _moves(a, backward)
    acc, ini = a.accepting, a.initial
    atts = [_attacks(moves, p, k) for p in range(n)]

    def viol(p, q):
        if cond in ("di", "bw") and p in acc and q not in acc:
            return True
        if cond in ("bw", "bw-minus", "bw-count") and p in ini and q not in ini:
            return True
        return False

    if cond in ("di", "bw", "bw-minus", "bw-count"):
        nodes, edges, owner, bad = [], {}, {}, set()
        for p in range(n):
            for q in range(n):
                v = ("s", p, q)
                nodes.append(v)
                owner[v] = SPO
                if viol(p, q):
                    edges[v] = []
                    bad.add(v)
                    continue
                if not atts[p]:
                    edges[v] = []
                    continue
                edges[v] = []
                for att in atts[p]:
                    d = ("d", p, q, att)
                    edges[v].append(d)
                    if d in owner:
                        continue
                    nodes.append(d)
                    owner[d] = DUP
                    succ = []
                    for rep in _replies(adj, q, att):
                        m = len(rep)
                        if any(viol(att[i][1], rep[i]) for i in range(m)):
                            continue
                        if cond == "bw-count":
                            ds = sum(1 for x in rep if x in acc)
                            ss = sum(1 for i in range(m) if att[i][1] in acc)
                            if ds < ss:
                                continue
                        succ.append(("s", att[m - 1][1], rep[m - 1]))
                    edges[d] = succ
                    if not succ:
                        bad.add(d)
        spoiler = _attractor(nodes, edges, owner, SPO, bad)
        win = {
            (p, q)
            for p in range(n)
            for q in range(n)
            if ("s", p, q) not in spoiler
        }
        if cond == "bw-count":
            win = {(p, q) for p, q in win if p not in acc or q in acc}
        return win

    if cond == "de":
        nodes, edges, owner, target = [], {}, {}, set()
        sink_w, sink_l = ("W",), ("L",)
        for v in (sink_w, sink_l):
            nodes.append(v)
            owner[v] = SPO
            edges[v] = [v]
        target.add(sink_w)
        snodes = [
            (p, q, pend) for p in range(n) for q in range(n) for pend in (False, True)
        ]
        for p, q, pend in snodes:
            v = ("s", p, q, pend)
            nodes.append(v)
            owner[v] = SPO
            edges[v] = [sink_w] if not atts[p] else []
            for att in atts[p]:
                d = ("d", p, q, pend, att)
                edges[v].append(d)
                if d in owner:
                    continue
                nodes.append(d)
                owner[d] = DUP
                succ = []
                for rep in _replies(adj, q, att):
                    m = len(rep)
                    pe, cleared = pend, False
                    for i in range(m):
                        pe = (pe or att[i][1] in acc) and rep[i] not in acc
                        cleared = cleared or not pe
                    c = ("c", att[m - 1][1], rep[m - 1], pe, cleared)
                    succ.append(c)
                    if c in owner:
                        continue
                    nodes.append(c)
                    owner[c] = SPO
                    edges[c] = [("s", att[m - 1][1], rep[m - 1], pe)]
                    if cleared:
                        target.add(c)
                edges[d] = succ if succ else [sink_l]
        w = _buchi_dup(set(nodes), edges, owner, target)
        return {
            (p, q)
            for p in range(n)
            for q in range(n)
            if ("s", p, q, p in acc and q not in acc) in w
        }

    if cond == "f":
        nodes, edges, owner, priority = [], {}, {}, {}
        sink_w, sink_l = ("W",), ("L",)
        for v, pr in ((sink_w, 0), (sink_l, 1)):
            nodes.append(v)
            owner[v] = SPO
            edges[v] = [v]
            priority[v] = pr
        for p in range(n):
            for q in range(n):
                v = ("s", p, q)
                nodes.append(v)
                owner[v] = SPO
                priority[v] = 0
                edges[v] = [sink_w] if not atts[p] else []
                for att in atts[p]:
                    d = ("d", p, q, att)
                    edges[v].append(d)
                    if d in owner:
                        continue
                    nodes.append(d)
                    owner[d] = DUP
                    priority[d] = 0
                    succ = []
                    for rep in _replies(adj, q, att):
                        m = len(rep)
                        dup_acc = any(x in acc for x in rep)
                        spo_acc = any(att[i][1] in acc for i in range(m))
                        pr = 2 if dup_acc else (1 if spo_acc else 0)
                        c = ("c", att[m - 1][1], rep[m - 1], pr)
                        succ.append(c)
                        if c in owner:
                            continue
                        nodes.append(c)
                        owner[c] = SPO
                        priority[c] = pr
                        edges[c] = [("s", att[m - 1][1], rep[m - 1])]
                    edges[d] = succ if succ else [sink_l]
        w, _ = _zielonka(set(nodes), edges, owner, priority)
        return {(p, q) for p in range(n) for q in range(n) if ("s", p, q) in w}

    raise ValueError(cond)
