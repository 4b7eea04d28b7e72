"""Simulation relations computed by solving lookahead games.

Winner sets are fixpoints of a predecessor operator over Spoiler/Duplicator
exchanges: Spoiler reveals up to k transitions, Duplicator answers with a
nonempty prefix of matching moves. Attack trees are explored incrementally,
depth first, and abandoned the moment Duplicator can stop with a winning
reply; Duplicator's viable endpoints are tracked as bitmasks. Incomplete
automata are supported: a Spoiler attack may end early only in a deadlocked
state, and a Spoiler state with no moves at all loses immediately.
"""
from __future__ import annotations

from dataclasses import dataclass

from .automaton import Automaton, bits, bwd_masks, fwd_masks
from .relation import Relation, compose, inverse, is_preorder

_FORWARD_CONDS = ("di", "de", "f")
_BACKWARD_CONDS = ("bw", "bw-minus", "bw-count")


@dataclass(frozen=True)
class SimVariant:
    direction: str  # "forward" | "backward"
    condition: str  # di | de | f | bw | bw-minus | bw-count

    def __post_init__(self) -> None:
        if self.direction == "forward":
            if self.condition not in _FORWARD_CONDS:
                raise ValueError(f"forward games need di/de/f, got {self.condition}")
        elif self.direction == "backward":
            if self.condition not in _BACKWARD_CONDS:
                raise ValueError(f"backward games need bw*, got {self.condition}")
        else:
            raise ValueError(f"unknown direction {self.direction!r}")


DIRECT = SimVariant("forward", "di")
DELAYED = SimVariant("forward", "de")
FAIR = SimVariant("forward", "f")
BACKWARD = SimVariant("backward", "bw")
BACKWARD_MINUS = SimVariant("backward", "bw-minus")
BACKWARD_COUNT = SimVariant("backward", "bw-count")


def _mask_of(states) -> int:
    m = 0
    for q in states:
        m |= 1 << q
    return m


def _attack_moves(adj) -> list[tuple[tuple[int, int], ...]]:
    """attack[p] = ((sym, successor), ...) in (sym, state) order."""
    out = []
    for per_state in adj:
        moves = []
        for s, row in enumerate(per_state):
            for q in row:
                moves.append((s, q))
        out.append(tuple(moves))
    return out


# ---------------------------------------------------------------------------
# Safety-condition games (di, bw, bw-minus): positionwise filters only.


def _solve_safety(n, k, attack, smask, filt):
    """Duplicator-win rows for a game whose condition is a per-position filter.

    filt[p] masks the Duplicator states allowed while Spoiler is at p; it is
    applied at every position including the start, even when Spoiler has no
    move at all (the classic definitions test the condition at the pair
    itself, and pruning soundness depends on that for predecessor-free
    initial states).
    """
    notw = [filt[p] for p in range(n)]
    stepmemo: dict = {}
    memo: dict = {}

    def dstep(D, s):
        key = (s, D)
        r = stepmemo.get(key)
        if r is None:
            r = 0
            col = smask[s]
            m = D
            while m:
                lw = m & -m
                r |= col[lw.bit_length() - 1]
                m ^= lw
            stepmemo[key] = r
        return r

    def wins(p, D, depth):
        if depth:
            if D & notw[p]:
                return False
            if depth == k or not attack[p]:
                return True
        key = (p, D, depth)
        r = memo.get(key)
        if r is None:
            r = False
            for s, p2 in attack[p]:
                D2 = dstep(D, s) & filt[p2]
                if not D2 or wins(p2, D2, depth + 1):
                    r = True
                    break
            memo[key] = r
        return r

    while True:
        changed = False
        memo.clear()
        for p in range(n):
            if not attack[p]:
                continue
            cand = notw[p]
            while cand:
                low = cand & -cand
                cand ^= low
                if wins(p, low, 0):
                    notw[p] &= ~low
                    changed = True
        if not changed:
            return notw


# ---------------------------------------------------------------------------
# Fair games (three-level fixpoint), shared by the jumping variant.


def _solve_fair(n, k, attack, jall, jacc, sacc):
    """Duplicator-win rows of the (possibly jumping) lookahead fair game.

    jall[s][q] / jacc[s][q] are Duplicator landing masks for a σ_s-step from q,
    the latter restricted to steps that count as accepting. Spoiler acceptance
    is counted at step sources via sacc.
    """
    full = (1 << n) - 1
    notz = [full] * n
    um: dict = {}
    memo: dict = {}
    notx = [0] * n
    noty = [full] * n

    def umask(tbl, tag, D, s):
        key = (tag, s, D)
        r = um.get(key)
        if r is None:
            r = 0
            col = tbl[s]
            m = D
            while m:
                lw = m & -m
                r |= col[lw.bit_length() - 1]
                m ^= lw
            um[key] = r
        return r

    def wins(p, dno, dacc, sp, depth):
        if depth:
            esc = dacc & notz[p]
            dn = dno & notz[p] & noty[p]
            if sp:
                dn &= notx[p]
            if esc | dn:
                return False
            if depth == k or not attack[p]:
                return True
        key = (p, dno, dacc, sp, depth)
        r = memo.get(key)
        if r is None:
            r = False
            sp2 = sp or sacc[p]
            for s, p2 in attack[p]:
                acc2 = umask(jall, 0, dacc, s) | umask(jacc, 1, dno, s)
                no2 = umask(jall, 0, dno, s) & ~acc2
                if not (acc2 | no2) or wins(p2, no2, acc2, sp2, depth + 1):
                    r = True
                    break
            memo[key] = r
        return r

    while True:  # least fixpoint over Z (Spoiler's overall win set)
        notx = [0] * n
        while True:  # greatest fixpoint over X
            noty = [notz[p] for p in range(n)]  # Y starts empty outside Z
            while True:  # least fixpoint over Y
                ychanged = False
                memo.clear()
                for p in range(n):
                    if not attack[p]:
                        continue
                    cand = noty[p]
                    while cand:
                        low = cand & -cand
                        cand ^= low
                        if wins(p, low, 0, False, 0):
                            noty[p] &= ~low
                            ychanged = True
                if not ychanged:
                    break
            newnotx = [noty[p] for p in range(n)]
            if newnotx == notx:
                break
            notx = newnotx
        newnotz = [notx[p] & notz[p] for p in range(n)]
        if newnotz == notz:
            return notz
        notz = newnotz


# ---------------------------------------------------------------------------
# Delayed games (two-level fixpoint with a pending-acceptance answer fixup).


def _solve_delayed(n, k, attack, smask, facc, sacc):
    """Duplicator-win rows of the lookahead delayed game, per pending bit.

    The position of the game is (p, q, pending); during an exchange the
    pending obligation evolves positionwise (a Spoiler accepting visit raises
    it, a Duplicator accepting visit clears it), and an exchange counts as
    clearing when the obligation was down at some answered position.
    Duplicator wins iff she can enforce infinitely many clearing exchanges:
    the standard two-level fixpoint for a repeated-reachability objective,
    evaluated over Spoiler's incrementally explored attack trees. Duplicator
    endpoints are tracked in buckets by (pending, cleared); pending-down
    endpoints are always cleared, so three buckets suffice after the first
    step.
    """
    full = (1 << n) - 1
    # z[b][p] / y[b][p]: Duplicator-win candidates / reached-this-round masks
    z = [[full] * n, [full] * n]
    stepmemo: dict = {}
    memo: dict = {}

    def dstep(D, s):
        key = (s, D)
        r = stepmemo.get(key)
        if r is None:
            r = 0
            col = smask[s]
            m = D
            while m:
                lw = m & -m
                r |= col[lw.bit_length() - 1]
                m ^= lw
            stepmemo[key] = r
        return r

    def wins(p, d01, d11, d10, d00, depth):
        # True iff Spoiler pushes the exchange past every Duplicator escape;
        # dbc = endpoints with pending b, cleared c
        if depth:
            if (
                d01 & (z[0][p] | y[0][p])
                or d11 & (z[1][p] | y[1][p])
                or d10 & y[1][p]
            ):
                return False
            if depth == k or not attack[p]:
                return True
        key = (p, d01, d11, d10, d00, depth)
        r = memo.get(key)
        if r is None:
            r = False
            for s, p2 in attack[p]:
                allstep = dstep(d01 | d11 | d10 | d00, s)
                n01 = allstep & facc
                if sacc[p2]:
                    n11 = dstep(d01 | d11, s) & ~facc
                    n10 = dstep(d10 | d00, s) & ~facc
                else:
                    n01 |= dstep(d01 | d00, s) & ~facc
                    n11 = dstep(d11, s) & ~facc
                    n10 = dstep(d10, s) & ~facc
                if not (n01 | n11 | n10) or wins(p2, n01, n11, n10, 0, depth + 1):
                    r = True
                    break
            memo[key] = r
        return r

    while True:  # greatest fixpoint: restart the reachability round inside z
        y = [[0] * n, [0] * n]
        while True:  # least fixpoint: one clearing exchange into z or y
            changed = False
            memo.clear()
            for p in range(n):
                for b in (0, 1):
                    cand = full & ~y[b][p]
                    if not cand:
                        continue
                    if not attack[p]:
                        y[b][p] = full
                        changed = True
                        continue
                    while cand:
                        low = cand & -cand
                        cand ^= low
                        args = (low, 0, 0, 0) if b == 0 else (0, 0, low, 0)
                        if not wins(p, *args, 0):
                            y[b][p] |= low
                            changed = True
            if not changed:
                break
        if y == z:
            break
        z = y

    # the answer raises the obligation at the shared start position itself
    rows = []
    for p in range(n):
        if sacc[p]:
            rows.append((z[0][p] & facc) | (z[1][p] & ~facc))
        else:
            rows.append(z[0][p])
    return rows


# ---------------------------------------------------------------------------
# Backward game with per-round accepting-visit counting (bw-count).


def _solve_bwc(n, k, attack, smask, ifilt, facc):
    full = (1 << n) - 1
    notw = [ifilt[p] for p in range(n)]
    stepmemo: dict = {}
    memo: dict = {}
    cap = k

    def dstep(D, s):
        key = (s, D)
        r = stepmemo.get(key)
        if r is None:
            r = 0
            col = smask[s]
            m = D
            while m:
                lw = m & -m
                r |= col[lw.bit_length() - 1]
                m ^= lw
            stepmemo[key] = r
        return r

    def wins(p, dd, sc, depth):
        if depth:
            esc = 0
            for c in range(sc, cap + 1):
                esc |= dd[c]
            if esc & notw[p]:
                return False
            if depth == k or not attack[p]:
                return True
        key = (p, dd, sc, depth)
        r = memo.get(key)
        if r is None:
            r = False
            for s, p2 in attack[p]:
                new = [0] * (cap + 1)
                any_left = 0
                for c in range(cap + 1):
                    mc = dd[c]
                    if mc:
                        step = dstep(mc, s) & ifilt[p2]
                        new[c] |= step & ~facc
                        new[c + 1 if c < cap else cap] |= step & facc
                seen = 0
                for c in range(cap, -1, -1):
                    new[c] &= ~seen
                    seen |= new[c]
                    any_left |= new[c]
                sc2 = sc + 1 if (facc >> p2 & 1 and sc < cap) else sc
                if not any_left or wins(p2, tuple(new), sc2, depth + 1):
                    r = True
                    break
            memo[key] = r
        return r

    zero = (0,) * cap
    while True:
        changed = False
        memo.clear()
        for p in range(n):
            if not attack[p]:
                continue
            cand = notw[p]
            while cand:
                low = cand & -cand
                cand ^= low
                if wins(p, (low,) + zero, 0, 0):
                    notw[p] &= ~low
                    changed = True
        if not changed:
            break
    # conservative extra requirement at the shared start position
    return [notw[p] & (facc if facc >> p & 1 else full) for p in range(n)]


# ---------------------------------------------------------------------------
# Public API


def lookahead_sim(a: Automaton, v: SimVariant, k: int) -> Relation:
    """Winner set of the k-lookahead v-game; raw, possibly non-transitive for k ≥ 2."""
    if k < 1:
        raise ValueError("lookahead must be ≥ 1")
    n = a.n
    if n == 0:
        return Relation(0, [])
    full = (1 << n) - 1
    facc = _mask_of(a.accepting)
    iini = _mask_of(a.initial)
    cond = v.condition
    if v.direction == "forward":
        attack = _attack_moves(a.fwd)
        smask = fwd_masks(a)
        sacc = [bool(facc >> p & 1) for p in range(n)]
        if cond == "di":
            filt = [facc if sacc[p] else full for p in range(n)]
            rows = _solve_safety(n, k, attack, smask, filt)
        elif cond == "f":
            jall = smask
            jacc = [[smask[s][q] if sacc[q] else 0 for q in range(n)] for s in range(len(smask))]
            rows = _solve_fair(n, k, attack, jall, jacc, sacc)
        else:
            rows = _solve_delayed(n, k, attack, smask, facc, sacc)
    else:
        attack = _attack_moves(a.bwd)
        smask = bwd_masks(a)
        if cond == "bw":
            filt = []
            for p in range(n):
                m = full
                if facc >> p & 1:
                    m &= facc
                if iini >> p & 1:
                    m &= iini
                filt.append(m)
            rows = _solve_safety(n, k, attack, smask, filt)
        elif cond == "bw-minus":
            filt = [iini if iini >> p & 1 else full for p in range(n)]
            rows = _solve_safety(n, k, attack, smask, filt)
        else:
            ifilt = [iini if iini >> p & 1 else full for p in range(n)]
            rows = _solve_bwc(n, k, attack, smask, ifilt, facc)
    return Relation(n, rows)


def ordinary_sim(a: Automaton, v: SimVariant) -> Relation:
    """The classic simulation preorder; the k=1 game, already transitive."""
    if v.condition not in ("di", "de", "f", "bw"):
        raise ValueError(f"no ordinary simulation for condition {v.condition}")
    return lookahead_sim(a, v, 1)


def jumping_lookahead_fair_sim(a: Automaton, jump: Relation, k: int) -> Relation:
    """Fair lookahead game where Duplicator may move to a jump-larger state first.

    A step from q landing via q' counts as accepting iff some accepting q''
    sits jump-between q and q'. With jump = identity this coincides with
    lookahead_sim(a, FAIR, k) by construction.
    """
    if jump.n != a.n:
        raise ValueError("jump relation dimension mismatch")
    if not is_preorder(jump):
        raise ValueError("jump relation must be a preorder")
    n = a.n
    if n == 0:
        return Relation(0, [])
    fm = fwd_masks(a)
    facc = _mask_of(a.accepting)
    jrows = jump.rows
    acc_targets = []
    for q in range(n):
        m = 0
        mids = jrows[q] & facc
        while mids:
            lw = mids & -mids
            m |= jrows[lw.bit_length() - 1]
            mids ^= lw
        acc_targets.append(m)
    ns = len(a.alphabet)
    jall = [[0] * n for _ in range(ns)]
    jacc = [[0] * n for _ in range(ns)]
    for s in range(ns):
        col = fm[s]
        for q in range(n):
            m = 0
            mids = jrows[q]
            while mids:
                lw = mids & -mids
                m |= col[lw.bit_length() - 1]
                mids ^= lw
            jall[s][q] = m
            m = 0
            mids = acc_targets[q]
            while mids:
                lw = mids & -mids
                m |= col[lw.bit_length() - 1]
                mids ^= lw
            jacc[s][q] = m
    attack = _attack_moves(a.fwd)
    sacc = [bool(facc >> p & 1) for p in range(n)]
    return Relation(n, _solve_fair(n, k, attack, jall, jacc, sacc))


def trace_incl_oracle(a: Automaton, direction: str, cap: int = 10) -> Relation:
    """Exact direct/backward trace inclusion via a subset-tracking safety game.

    Exponential in |Q|; refuses automata above the cap. direction is
    "forward-direct" or "backward".
    """
    n = a.n
    if n > cap:
        raise ValueError(f"trace inclusion oracle capped at {cap} states, got {n}")
    if n == 0:
        return Relation(0, [])
    full = (1 << n) - 1
    facc = _mask_of(a.accepting)
    iini = _mask_of(a.initial)
    if direction == "forward-direct":
        attack = _attack_moves(a.fwd)
        smask = fwd_masks(a)
        filt = [facc if facc >> p & 1 else full for p in range(n)]
        union_succ = [0] * n
        for s in range(len(a.alphabet)):
            for p in range(n):
                union_succ[p] |= smask[s][p]
        ids_cycle = _cycle_states(n, union_succ)
        inf = _co_reach(n, union_succ, ids_cycle)

        def is_target(p, S):
            return S == 0 and inf >> p & 1

    elif direction == "backward":
        attack = _attack_moves(a.bwd)
        smask = bwd_masks(a)
        filt = [facc if facc >> p & 1 else full for p in range(n)]

        def is_target(p, S):
            return iini >> p & 1 and S & iini == 0

    else:
        raise ValueError(f"unknown direction {direction!r}")

    succs: dict[tuple[int, int], list[tuple[int, int]]] = {}
    winning: set[tuple[int, int]] = set()
    stack = []
    starts = {}
    for p in range(n):
        for q in range(n):
            c = (p, (1 << q) & filt[p])
            starts[(p, q)] = c
            if c not in succs:
                succs[c] = []
                stack.append(c)
    while stack:
        p, S = stack.pop()
        if is_target(p, S):
            winning.add((p, S))
        out = succs[(p, S)]
        for s, p2 in attack[p]:
            S2 = 0
            m = S
            col = smask[s]
            while m:
                lw = m & -m
                S2 |= col[lw.bit_length() - 1]
                m ^= lw
            c2 = (p2, S2 & filt[p2])
            out.append(c2)
            if c2 not in succs:
                succs[c2] = []
                stack.append(c2)
    preds: dict[tuple[int, int], list[tuple[int, int]]] = {c: [] for c in succs}
    for c, outs in succs.items():
        for c2 in outs:
            preds[c2].append(c)
    frontier = list(winning)
    while frontier:
        c = frontier.pop()
        for c0 in preds[c]:
            if c0 not in winning:
                winning.add(c0)
                frontier.append(c0)
    rows = []
    for p in range(n):
        row = 0
        for q in range(n):
            if starts[(p, q)] not in winning:
                row |= 1 << q
        rows.append(row)
    return Relation(n, rows)


def _cycle_states(n: int, succ: list[int]) -> int:
    from .automaton import scc_ids

    ids = scc_ids(n, succ)
    size: dict[int, int] = {}
    for q in range(n):
        size[ids[q]] = size.get(ids[q], 0) + 1
    m = 0
    for q in range(n):
        if size[ids[q]] > 1 or succ[q] >> q & 1:
            m |= 1 << q
    return m


def _co_reach(n: int, succ: list[int], targets: int) -> int:
    pred = [0] * n
    for p in range(n):
        m = succ[p]
        while m:
            lw = m & -m
            pred[lw.bit_length() - 1] |= 1 << p
            m ^= lw
    seen = targets
    frontier = targets
    while frontier:
        nxt = 0
        m = frontier
        while m:
            lw = m & -m
            nxt |= pred[lw.bit_length() - 1]
            m ^= lw
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def mediated_preorder(a: Automaton) -> Relation:
    """Largest M ⊆ ⊑di∘(⊑bw)⁻¹ with M∘⊑di ⊆ M, by pairwise elimination."""
    di = ordinary_sim(a, DIRECT)
    bw = ordinary_sim(a, BACKWARD)
    m = compose(di, inverse(bw))
    rows = list(m.rows)
    changed = True
    while changed:
        changed = False
        for x in range(a.n):
            row = rows[x]
            rem = 0
            ys = row
            while ys:
                lw = ys & -ys
                y = lw.bit_length() - 1
                ys ^= lw
                if di.rows[y] & ~row:
                    rem |= lw
            if rem:
                rows[x] = row & ~rem
                changed = True
    return Relation(a.n, rows)
