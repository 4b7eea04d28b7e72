"""Core Büchi automaton representation and structural utilities.

States are dense integer indices 0..n-1 with an original name per index;
transitions live in mirrored forward/backward adjacency tables. Automata are
immutable values, and may be incomplete: states without successors (or
predecessors) are allowed and never padded with sink states.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True)
class Lasso:
    """An ultimately periodic word stem·cycle^ω over symbol labels."""

    stem: tuple[str, ...]
    cycle: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.cycle:
            raise ValueError("lasso cycle must be non-empty")


@dataclass(frozen=True)
class TransitionRef:
    """One transition (src, sym, dst); sym is an alphabet index."""

    src: int
    sym: int
    dst: int


@dataclass(frozen=True)
class Automaton:
    alphabet: tuple[str, ...]
    names: tuple[str, ...]
    initial: frozenset[int]
    accepting: frozenset[int]
    # fwd[p][s] = sorted tuple of successors of p under symbol index s
    fwd: tuple[tuple[tuple[int, ...], ...], ...]
    bwd: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def n(self) -> int:
        return len(self.names)

    def symbol_index(self, label: str) -> int:
        try:
            return self.alphabet.index(label)
        except ValueError:
            raise KeyError(f"symbol {label!r} not in alphabet") from None


def make_automaton(
    alphabet: Sequence[str],
    names: Sequence[str] | int,
    initial: Iterable[int],
    accepting: Iterable[int],
    transitions: Iterable[tuple[int, int | str, int]],
) -> Automaton:
    """Build an automaton from a transition list, deriving both adjacency mirrors.

    ``names`` may be an integer n, in which case states are named "0".."n-1".
    Transition symbols may be given as alphabet indices or labels. Duplicate
    transitions collapse to one.
    """
    alpha = tuple(alphabet)
    if isinstance(names, int):
        names = tuple(str(i) for i in range(names))
    else:
        names = tuple(names)
    n, ns = len(names), len(alpha)
    sym_of = {lab: i for i, lab in enumerate(alpha)}
    fwd_sets: list[list[set[int]]] = [[set() for _ in range(ns)] for _ in range(n)]
    bwd_sets: list[list[set[int]]] = [[set() for _ in range(ns)] for _ in range(n)]
    for src, sym, dst in transitions:
        s = sym_of[sym] if isinstance(sym, str) else sym
        if not (0 <= src < n and 0 <= dst < n and 0 <= s < ns):
            raise ValueError(f"transition ({src},{sym},{dst}) out of range")
        fwd_sets[src][s].add(dst)
        bwd_sets[dst][s].add(src)
    a = Automaton(
        alphabet=alpha,
        names=names,
        initial=frozenset(initial),
        accepting=frozenset(accepting),
        fwd=tuple(tuple(tuple(sorted(row)) for row in per_state) for per_state in fwd_sets),
        bwd=tuple(tuple(tuple(sorted(row)) for row in per_state) for per_state in bwd_sets),
    )
    audit(a)
    return a


def audit(a: Automaton) -> None:
    """Check structural invariants; raises ValueError on violation."""
    n, ns = a.n, len(a.alphabet)
    if len(a.fwd) != n or len(a.bwd) != n:
        raise ValueError("adjacency tables do not match state count")
    for q in a.initial | a.accepting:
        if not 0 <= q < n:
            raise ValueError(f"state {q} out of range")
    for table in (a.fwd, a.bwd):
        for per_state in table:
            if len(per_state) != ns:
                raise ValueError("adjacency row does not match alphabet size")
            for row in per_state:
                if list(row) != sorted(set(row)):
                    raise ValueError("adjacency list not sorted/duplicate-free")
                for q in row:
                    if not 0 <= q < n:
                        raise ValueError(f"state {q} out of range")
    for p in range(n):
        for s in range(ns):
            for q in a.fwd[p][s]:
                if p not in a.bwd[q][s]:
                    raise ValueError(f"mirror violation at ({p},{s},{q})")
            for q in a.bwd[p][s]:
                if p not in a.fwd[q][s]:
                    raise ValueError(f"mirror violation at ({q},{s},{p})")


def transitions(a: Automaton) -> list[TransitionRef]:
    """All transitions sorted by (sym, src, dst)."""
    out = []
    for s in range(len(a.alphabet)):
        for p in range(a.n):
            for q in a.fwd[p][s]:
                out.append(TransitionRef(p, s, q))
    return out


def transition_count(a: Automaton) -> int:
    return sum(len(row) for per_state in a.fwd for row in per_state)


def fwd_masks(a: Automaton) -> list[list[int]]:
    """masks[s][p] = bitmask of σ_s-successors of p."""
    out = []
    for s in range(len(a.alphabet)):
        col = []
        for p in range(a.n):
            m = 0
            for q in a.fwd[p][s]:
                m |= 1 << q
            col.append(m)
        out.append(col)
    return out


def bwd_masks(a: Automaton) -> list[list[int]]:
    """masks[s][p] = bitmask of σ_s-predecessors of p."""
    out = []
    for s in range(len(a.alphabet)):
        col = []
        for p in range(a.n):
            m = 0
            for q in a.bwd[p][s]:
                m |= 1 << q
            col.append(m)
        out.append(col)
    return out


def bits(mask: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ---------------------------------------------------------------------------
# .ba text format


def parse_ba(text: str) -> Automaton:
    """Parse the .ba interchange format.

    Lines containing "->" are transitions "LABEL,[SRC]->[DST]" (brackets around
    state names optional). Non-transition lines before the first transition
    name initial states, one per line; non-transition lines after the last
    transition name accepting states. With no initial header the source of the
    first transition is initial; with no accepting section every state is
    accepting.
    """
    initial_names: list[str] = []
    accepting_names: list[str] = []
    trans: list[tuple[str, str, str]] = []  # (label, src, dst)
    seen_transition = False
    trailing: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if "->" in line:
            head, _, dst = line.partition("->")
            label, comma, src = head.partition(",")
            if not comma or not label or not _strip_name(src) or not _strip_name(dst):
                raise ValueError(f"line {lineno}: malformed transition {line!r}")
            if trailing:
                bad = trailing[0]
                raise ValueError(f"line {bad[0]}: state name {bad[1]!r} between transitions")
            trans.append((label, _strip_name(src), _strip_name(dst)))
            seen_transition = True
        elif not seen_transition:
            initial_names.append(_strip_name(line))
        else:
            trailing.append((lineno, _strip_name(line)))
    accepting_names = [name for _, name in trailing]
    if not initial_names and not trans:
        raise ValueError("empty .ba file")

    index: dict[str, int] = {}

    def state(name: str) -> int:
        if name not in index:
            index[name] = len(index)
        return index[name]

    for name in initial_names:
        state(name)
    alphabet: list[str] = []
    tlist: list[tuple[int, int, int]] = []
    for label, src, dst in trans:
        if label not in alphabet:
            alphabet.append(label)
        tlist.append((state(src), alphabet.index(label), state(dst)))
    for name in accepting_names:
        state(name)

    if initial_names:
        initial = {index[name] for name in initial_names}
    else:
        initial = {tlist[0][0]}
    if accepting_names:
        accepting = {index[name] for name in accepting_names}
    else:
        accepting = set(range(len(index)))
    names = sorted(index, key=index.get)
    return make_automaton(alphabet, names, initial, accepting, tlist)


def _strip_name(s: str) -> str:
    s = s.strip()
    if s.startswith("[") and s.endswith("]"):
        s = s[1:-1].strip()
    return s


def serialize_ba(a: Automaton) -> str:
    """Emit .ba text: initial names, transitions by (symbol, src, dst), accepting names.

    With no transitions only the initial lines are emitted, so such automata
    round-trip only when every state is initial and accepting.
    """
    lines = [f"[{a.names[q]}]" for q in sorted(a.initial)]
    for t in transitions(a):
        lines.append(f"{a.alphabet[t.sym]},[{a.names[t.src]}]->[{a.names[t.dst]}]")
    if transition_count(a) > 0:
        lines.extend(f"[{a.names[q]}]" for q in sorted(a.accepting))
    return "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------------------
# Graph structure


def scc_ids(n: int, succ_mask: list[int]) -> list[int]:
    """Tarjan strongly connected components over bitmask adjacency, iterative.

    Returns a component id per state; ids carry no ordering guarantee.
    """
    ids = [-1] * n
    low = [0] * n
    num = [0] * n
    on_stack = [False] * n
    comp_stack: list[int] = []
    next_num = 0
    next_id = 0
    for root in range(n):
        if num[root]:
            continue
        work: list[tuple[int, Iterator[int]]] = [(root, bits(succ_mask[root]))]
        next_num += 1
        num[root] = low[root] = next_num
        comp_stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if not num[w]:
                    next_num += 1
                    num[w] = low[w] = next_num
                    comp_stack.append(w)
                    on_stack[w] = True
                    work.append((w, bits(succ_mask[w])))
                    advanced = True
                    break
                if on_stack[w] and num[w] < low[v]:
                    low[v] = num[w]
            if advanced:
                continue
            work.pop()
            if work and low[v] < low[work[-1][0]]:
                low[work[-1][0]] = low[v]
            if low[v] == num[v]:
                while True:
                    w = comp_stack.pop()
                    on_stack[w] = False
                    ids[w] = next_id
                    if w == v:
                        break
                next_id += 1
    return ids


def _union_succ_masks(a: Automaton) -> list[int]:
    fm = fwd_masks(a)
    return [_or_all(fm[s][p] for s in range(len(a.alphabet))) for p in range(a.n)]


def _or_all(masks: Iterable[int]) -> int:
    acc = 0
    for m in masks:
        acc |= m
    return acc


def _reach(start: int, succ_mask: list[int]) -> int:
    """Forward closure of a start bitmask under bitmask adjacency."""
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        for q in bits(frontier):
            nxt |= succ_mask[q]
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def is_transient(a: Automaton, t: TransitionRef) -> bool:
    """True iff no path can use t twice, i.e. t.dst never reaches t.src.

    Since src→dst is itself an edge, this holds exactly when the two endpoints
    lie in different strongly connected components.
    """
    if t.dst not in a.fwd[t.src][t.sym]:
        raise ValueError(f"{t} is not a transition of the automaton")
    ids = scc_ids(a.n, _union_succ_masks(a))
    return ids[t.src] != ids[t.dst]


def remove_dead(a: Automaton) -> Automaton:
    """Restrict to states reachable from initial that can reach an accepting cycle.

    Returns the canonical 0-state automaton when nothing survives.
    """
    succ = _union_succ_masks(a)
    init_mask = _mask_of(a.initial)
    reachable = _reach(init_mask, succ)
    ids = scc_ids(a.n, succ)
    # accepting states on a cycle: nontrivial SCC or a self-loop
    comp_size: dict[int, int] = {}
    for q in range(a.n):
        comp_size[ids[q]] = comp_size.get(ids[q], 0) + 1
    targets = 0
    for q in a.accepting:
        if comp_size[ids[q]] > 1 or (succ[q] >> q) & 1:
            targets |= 1 << q
    pred = [0] * a.n
    for p in range(a.n):
        for q in bits(succ[p]):
            pred[q] |= 1 << p
    co_reach = _reach(targets, pred)
    live = reachable & co_reach
    if not live:
        return Automaton(a.alphabet, (), frozenset(), frozenset(), (), ())
    keep = list(bits(live))
    return _subautomaton(a, keep)


def _mask_of(states: Iterable[int]) -> int:
    m = 0
    for q in states:
        m |= 1 << q
    return m


def _subautomaton(a: Automaton, keep: list[int]) -> Automaton:
    new_of = {q: i for i, q in enumerate(keep)}
    tlist = [
        (new_of[p], s, new_of[q])
        for p in keep
        for s in range(len(a.alphabet))
        for q in a.fwd[p][s]
        if q in new_of
    ]
    return make_automaton(
        a.alphabet,
        [a.names[q] for q in keep],
        [new_of[q] for q in a.initial if q in new_of],
        [new_of[q] for q in a.accepting if q in new_of],
        tlist,
    )


def disjoint_union(a: Automaton, b: Automaton) -> tuple[Automaton, int]:
    """Place b's states after a's; returns (union, offset of b's indices).

    Alphabets are merged by label: a's symbols keep their order, b's new
    symbols follow. No cross transitions are introduced.
    """
    alphabet = list(a.alphabet) + [x for x in b.alphabet if x not in a.alphabet]
    off = a.n
    tlist: list[tuple[int, int | str, int]] = [
        (t.src, a.alphabet[t.sym], t.dst) for t in transitions(a)
    ]
    tlist += [(t.src + off, b.alphabet[t.sym], t.dst + off) for t in transitions(b)]
    return (
        make_automaton(
            alphabet,
            list(a.names) + list(b.names),
            set(a.initial) | {q + off for q in b.initial},
            set(a.accepting) | {q + off for q in b.accepting},
            tlist,
        ),
        off,
    )


# ---------------------------------------------------------------------------
# Lasso membership and enumeration


def member_lasso(a: Automaton, w: Lasso) -> bool:
    """Exact decision of stem·cycle^ω ∈ L(a).

    Computes the states S reachable via the stem, the cycle-step relation
    annotated with "visited accepting along the way", and answers true iff some
    state reachable from S under iterated cycle-steps lies on a step-cycle that
    includes an accepting visit.
    """
    syms = [a.symbol_index(x) for x in w.stem + w.cycle]
    fm = fwd_masks(a)
    start = _mask_of(a.initial)
    cur = start
    for s in syms[: len(w.stem)]:
        col = fm[s]
        cur = _or_all(col[q] for q in bits(cur))
    if not cur:
        return False
    e_no, e_acc = _cycle_step(a, fm, [a.symbol_index(x) for x in w.cycle])
    return _lasso_answer(a.n, cur, e_no, e_acc)


def _cycle_step(
    a: Automaton, fm: list[list[int]], cyc: list[int]
) -> tuple[list[int], list[int]]:
    """Per-state cycle-step masks (endpoints with no accepting visit, with one).

    Accepting visits are counted at positions 1..|cycle| of each iteration.
    """
    facc = _mask_of(a.accepting)
    e_no, e_acc = [], []
    for p in range(a.n):
        cur_no, cur_acc = 1 << p, 0
        for s in cyc:
            col = fm[s]
            step_no = _or_all(col[q] for q in bits(cur_no))
            step_acc = _or_all(col[q] for q in bits(cur_acc))
            cur_acc = step_acc | (step_no & facc)
            cur_no = step_no & ~facc
        e_no.append(cur_no)
        e_acc.append(cur_acc)
    return e_no, e_acc


def _lasso_answer(n: int, start: int, e_no: list[int], e_acc: list[int]) -> bool:
    e_all = [e_no[p] | e_acc[p] for p in range(n)]
    reach = _reach(start, e_all)
    ids = scc_ids(n, e_all)
    good_comps = set()
    for p in range(n):
        for q in bits(e_acc[p]):
            if ids[p] == ids[q]:
                good_comps.add(ids[p])
    return any(ids[q] in good_comps for q in bits(reach))


def enumerate_accepting_lassos(
    a: Automaton, max_u: int, max_v: int
) -> Iterator[Lasso]:
    """All accepted lassos with |stem| ≤ max_u, |cycle| ≤ max_v.

    Emitted in lexicographic order: by stem length, then stem (alphabet
    order), then cycle length, then cycle. Every emitted lasso is a member;
    conversely every member within bounds is emitted, so this agrees with
    brute-force word enumeration filtered by member_lasso.
    """
    if max_u < 0 or max_v < 1:
        raise ValueError("bounds must be ≥ (0, 1)")
    if a.n == 0:
        return
    fm = fwd_masks(a)
    ns = len(a.alphabet)
    # W[v] = states from which iterated v-steps reach an accepting step-cycle
    good_sets: dict[tuple[int, ...], int] = {}
    cycles_by_len: list[list[tuple[int, ...]]] = [[] for _ in range(max_v + 1)]
    stack_c: list[tuple[tuple[int, ...], list[int], list[int]]] = []
    facc = _mask_of(a.accepting)
    stack_c.append(((), [1 << p for p in range(a.n)], [0] * a.n))
    while stack_c:
        cyc, cur_no, cur_acc = stack_c.pop()
        if cyc:
            e_all = [cur_no[p] | cur_acc[p] for p in range(a.n)]
            ids = scc_ids(a.n, e_all)
            good_comps = set()
            for p in range(a.n):
                for q in bits(cur_acc[p]):
                    if ids[p] == ids[q]:
                        good_comps.add(ids[p])
            good = _mask_of(q for q in range(a.n) if ids[q] in good_comps)
            pred = [0] * a.n
            for p in range(a.n):
                for q in bits(e_all[p]):
                    pred[q] |= 1 << p
            good_sets[cyc] = _reach(good, pred)
            cycles_by_len[len(cyc)].append(cyc)
        if len(cyc) < max_v:
            for s in range(ns - 1, -1, -1):
                col = fm[s]
                nxt_no, nxt_acc = [], []
                for p in range(a.n):
                    step_no = _or_all(col[q] for q in bits(cur_no[p]))
                    step_acc = _or_all(col[q] for q in bits(cur_acc[p]))
                    nxt_acc.append(step_acc | (step_no & facc))
                    nxt_no.append(step_no & ~facc)
                stack_c.append((cyc + (s,), nxt_no, nxt_acc))
    ordered_cycles = [c for ln in range(1, max_v + 1) for c in sorted(cycles_by_len[ln])]

    start = _mask_of(a.initial)
    stack_u: list[tuple[tuple[int, ...], int]] = [((), start)]
    stems: list[tuple[tuple[int, ...], int]] = []
    while stack_u:
        stem, cur = stack_u.pop()
        stems.append((stem, cur))
        if len(stem) < max_u and cur:
            for s in range(ns - 1, -1, -1):
                col = fm[s]
                stack_u.append((stem + (s,), _or_all(col[q] for q in bits(cur))))
    stems.sort(key=lambda e: (len(e[0]), e[0]))
    for stem, cur in stems:
        if not cur:
            continue
        for cyc in ordered_cycles:
            if cur & good_sets[cyc]:
                yield Lasso(
                    tuple(a.alphabet[s] for s in stem),
                    tuple(a.alphabet[s] for s in cyc),
                )


def lasso_language(a: Automaton, max_u: int, max_v: int) -> frozenset[Lasso]:
    """The accepted lassos within bounds, as a set (language fingerprint)."""
    return frozenset(enumerate_accepting_lassos(a, max_u, max_v))
