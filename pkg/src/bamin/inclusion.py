"""Staged polynomial language-inclusion checking.

The pipeline minimizes both automata while probing, after every pass, whether
a lookahead fair simulation on the disjoint union already matches every
initial state of A to one of B (stage 1a). It then switches to
inclusion-preserving preprocessing: transitions of A covered by better
transitions of B are pruned, and B is restricted to the part reachable in the
product (stage 1b). Stage 2 tries the jumping fair simulation, and stage 3
hunts for a short counterexample lasso. Anything undecided is reported as
unknown rather than guessed.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from .automaton import (
    Automaton,
    Lasso,
    _subautomaton,
    bwd_masks,
    disjoint_union,
    enumerate_accepting_lassos,
    make_automaton,
    member_lasso,
)
from .relation import Relation, transitive_closure
from .reduce import PRUNE_KINDS, heavy_pass
from .simulation import (
    BACKWARD_COUNT,
    BACKWARD_MINUS,
    FAIR,
    jumping_lookahead_fair_sim,
    lookahead_sim,
)

INCLUDED = "included"
NOT_INCLUDED = "not-included"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class InclusionConfig:
    lookahead: int = 12
    max_u: int | None = None  # stage-3 stem bound; None = min(2·|A'|, 12)
    max_v: int | None = None
    stage3_budget_ms: int = 5000
    oracle_cap: int = 10
    max_passes: int = 50

    def __post_init__(self) -> None:
        if not 1 <= self.lookahead <= 15:
            raise ValueError("lookahead must be in 1..15")
        if self.max_u is not None and self.max_u < 0:
            raise ValueError("stem bound must be ≥ 0")
        if self.max_v is not None and self.max_v < 1:
            raise ValueError("cycle bound must be ≥ 1")
        if self.max_passes < 1:
            raise ValueError("max_passes must be ≥ 1")


@dataclass(frozen=True)
class InclusionVerdict:
    outcome: str
    stage: str | None
    # initial-state matching (included) or counterexample lasso (not-included)
    witness: tuple | Lasso | None
    times_ms: dict = field(default_factory=dict)
    sizes: dict = field(default_factory=dict)


def _check_alphabets(a: Automaton, b: Automaton) -> None:
    if set(a.alphabet) != set(b.alphabet):
        raise ValueError("automata must share an alphabet")


def prune_A_wrt_B(a: Automaton, b: Automaton, k: int) -> Automaton:
    """Drop A-transitions covered by a B-transition over the same symbol.

    Coverage compares sources by the acceptance-blind backward lookahead
    preorder and targets by the fair one, both on the disjoint union; the
    result is inclusion-equivalent to A, not language-equivalent.
    """
    _check_alphabets(a, b)
    if a.n == 0 or b.n == 0:
        return a
    u, off = disjoint_union(a, b)
    rb = transitive_closure(lookahead_sim(u, BACKWARD_MINUS, k))
    rf = transitive_closure(lookahead_sim(u, FAIR, k))
    bmask = ((1 << b.n) - 1) << off
    ubwd = bwd_masks(u)
    kept = []
    for s, lab in enumerate(a.alphabet):
        us = u.symbol_index(lab)
        # B-sources of transitions whose target fair-dominates r, per target r
        domsrc = [0] * a.n
        for r in range(a.n):
            targets = rf.rows[r] & bmask
            acc = 0
            while targets:
                low = targets & -targets
                targets ^= low
                acc |= ubwd[us][low.bit_length() - 1]
            domsrc[r] = acc & bmask
        for src in range(a.n):
            for dst in a.fwd[src][s]:
                if not rb.rows[src] & domsrc[dst]:
                    kept.append((src, s, dst))
    return make_automaton(a.alphabet, a.names, a.initial, a.accepting, kept)


def restrict_B_to_product(a: Automaton, b: Automaton) -> Automaton:
    """Keep only B-states reachable in the synchronized product with A.

    Inclusion-preserving but generally not language-preserving for B.
    """
    _check_alphabets(a, b)
    if a.n == 0:
        return _subautomaton(b, [])
    afwd = [[0] * a.n for _ in b.alphabet]
    for s, lab in enumerate(b.alphabet):
        sa = a.symbol_index(lab)
        for p in range(a.n):
            m = 0
            for q in a.fwd[p][sa]:
                m |= 1 << q
            afwd[s][p] = m
    # reach[q] = A-states paired with B-state q somewhere in the product
    reach = [0] * b.n
    work = []
    for q in b.initial:
        m = 0
        for p in a.initial:
            m |= 1 << p
        if m:
            reach[q] = m
            work.append(q)
    while work:
        q = work.pop()
        src = reach[q]
        for s in range(len(b.alphabet)):
            step = 0
            m = src
            col = afwd[s]
            while m:
                low = m & -m
                step |= col[low.bit_length() - 1]
                m ^= low
            if not step:
                continue
            for q2 in b.fwd[q][s]:
                if step & ~reach[q2]:
                    reach[q2] |= step
                    work.append(q2)
    return _subautomaton(b, [q for q in range(b.n) if reach[q]])


def _gfi_match(a: Automaton, b: Automaton, rel: Relation, off: int):
    """Initial-state matching under a union relation, or None."""
    pairs = []
    for p in sorted(a.initial):
        row = rel.rows[p] >> off
        hit = None
        for q in sorted(b.initial):
            if row >> q & 1:
                hit = q
                break
        if hit is None:
            return None
        pairs.append((a.names[p], b.names[hit]))
    return tuple(pairs)


def _gfi_probe(a: Automaton, b: Automaton, k: int):
    if a.n == 0:
        return ()
    if not a.initial:
        return ()
    if b.n == 0 or not b.initial:
        return None
    u, off = disjoint_union(a, b)
    rel = transitive_closure(lookahead_sim(u, FAIR, k))
    return _gfi_match(a, b, rel, off)


def _jumping_probe(a: Automaton, b: Automaton, k: int):
    if a.n == 0 or not a.initial:
        return ()
    if b.n == 0 or not b.initial:
        return None
    u, off = disjoint_union(a, b)
    jump = transitive_closure(lookahead_sim(u, BACKWARD_COUNT, k))
    amask = (1 << a.n) - 1
    bmask = ((1 << b.n) - 1) << off
    # jumps must stay inside one automaton
    rows = [jump.rows[p] & (amask if p < off else bmask) for p in range(u.n)]
    jf = jumping_lookahead_fair_sim(u, Relation(u.n, rows), k)
    return _gfi_match(a, b, jf, off)


def counterexample_search(a: Automaton, b: Automaton, cfg: InclusionConfig):
    """First lasso (in canonical order) accepted by a but not by b, or None.

    Bounded by the config's lasso sizes and wall-clock budget; every returned
    witness is verified on both inputs.
    """
    max_u = cfg.max_u if cfg.max_u is not None else min(2 * a.n, 12)
    max_v = cfg.max_v if cfg.max_v is not None else min(2 * a.n, 12)
    if max_v < 1:
        max_v = 1
    deadline = time.perf_counter() + cfg.stage3_budget_ms / 1000.0
    checked = 0
    for w in enumerate_accepting_lassos(a, max_u, max_v):
        if not member_lasso(b, w):
            if not member_lasso(a, w):
                raise AssertionError("enumerated lasso not accepted by its automaton")
            return w
        checked += 1
        if checked % 64 == 0 and time.perf_counter() > deadline:
            return None
    return None


def check_inclusion(a: Automaton, b: Automaton, cfg: InclusionConfig | None = None) -> InclusionVerdict:
    """Decide L(a) ⊆ L(b) where the staged relations suffice, else unknown."""
    if cfg is None:
        cfg = InclusionConfig()
    _check_alphabets(a, b)
    k = cfg.lookahead
    sizes = {"A": a.n, "B": b.n}
    times = {"stage1": 0.0, "stage2": 0.0, "stage3": 0.0}

    def verdict(outcome, stage, witness, a2, b2):
        sizes["A'"] = a2.n
        sizes["B'"] = b2.n
        t = {key: round(v, 3) for key, v in times.items()}
        return InclusionVerdict(outcome, stage, witness, t, dict(sizes))

    t0 = time.perf_counter()
    a1, b1 = a, b
    m = _gfi_probe(a1, b1, k)
    if m is not None:
        times["stage1"] = (time.perf_counter() - t0) * 1000.0
        return verdict(INCLUDED, "1a", m, a1, b1)
    for _ in range(cfg.max_passes):
        a1n = heavy_pass(a1, k, PRUNE_KINDS)
        b1n = heavy_pass(b1, k, PRUNE_KINDS)
        m = _gfi_probe(a1n, b1n, k)
        if m is not None:
            times["stage1"] = (time.perf_counter() - t0) * 1000.0
            return verdict(INCLUDED, "1a", m, a1n, b1n)
        if a1n == a1 and b1n == b1:
            break
        a1, b1 = a1n, b1n

    # language-true B snapshot for stage 3; everything below is only
    # inclusion-equivalent
    b_lang = b1
    a2, b2 = a1, b1
    for _ in range(cfg.max_passes):
        a2n = prune_A_wrt_B(a2, b2, k)
        b2n = restrict_B_to_product(a2n, b2)
        m = _gfi_probe(a2n, b2n, k)
        if m is not None:
            times["stage1"] = (time.perf_counter() - t0) * 1000.0
            return verdict(INCLUDED, "1b", m, a2n, b2n)
        a2n = heavy_pass(a2n, k, PRUNE_KINDS)
        b2n = heavy_pass(b2n, k, PRUNE_KINDS)
        m = _gfi_probe(a2n, b2n, k)
        if m is not None:
            times["stage1"] = (time.perf_counter() - t0) * 1000.0
            return verdict(INCLUDED, "1b", m, a2n, b2n)
        if a2n == a2 and b2n == b2:
            break
        a2, b2 = a2n, b2n
    times["stage1"] = (time.perf_counter() - t0) * 1000.0

    t0 = time.perf_counter()
    m = _jumping_probe(a2, b2, k)
    times["stage2"] = (time.perf_counter() - t0) * 1000.0
    if m is not None:
        return verdict(INCLUDED, "2", m, a2, b2)

    t0 = time.perf_counter()
    w = counterexample_search(a2, b_lang, cfg)
    times["stage3"] = (time.perf_counter() - t0) * 1000.0
    if w is not None:
        # stage 3 ran on minimized copies; the verdict must hold for the inputs
        if not member_lasso(a, w) or member_lasso(b, w):
            raise AssertionError("counterexample failed re-verification")
        return verdict(NOT_INCLUDED, "3", w, a2, b2)
    return verdict(UNKNOWN, None, None, a2, b2)
