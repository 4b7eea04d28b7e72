"""Quotienting, transition pruning, and the iterated minimization drivers.

The two entry points mirror the two procedures the rest of the package is
built around: ``heavy`` loops dead-state removal, pruning and quotienting to a
fixpoint, while ``light`` is the single-pass baseline (remove dead states,
quotient by the lookahead delayed preorder once).
"""
from __future__ import annotations

import time
from dataclasses import dataclass

from .automaton import (
    Automaton,
    _union_succ_masks,
    bwd_masks,
    make_automaton,
    remove_dead,
    scc_ids,
    transition_count,
)
from .relation import (
    Relation,
    identity,
    intersect,
    inverse,
    is_preorder,
    is_strict_order,
    strict,
    transitive_closure,
)
from .simulation import (
    BACKWARD,
    DELAYED,
    DIRECT,
    FAIR,
    lookahead_sim,
    ordinary_sim,
)

# The only transition-comparison shapes that preserve the language: dominator
# endpoints are compared by (backward relation, forward relation) pairs, and
# transient-fair additionally restricts dominators to transient transitions.
PRUNE_KINDS = ("id-di", "bw-id", "bwsim-di", "bw-disim", "transient-fair")

# shape[kind] = (backward side, forward side); "strict" means asymmetric and
# transitive, "preorder" means reflexive and transitive
_SHAPES = {
    "id-di": ("identity", "strict"),
    "bw-id": ("strict", "identity"),
    "bwsim-di": ("strict", "preorder"),
    "bw-disim": ("preorder", "strict"),
    "transient-fair": ("identity", "strict"),
}


def _check_shape(rel: Relation, shape: str, side: str, kind: str) -> None:
    if shape == "identity":
        if rel.rows != identity(rel.n).rows:
            raise ValueError(f"{kind}: {side} relation must be the identity")
    elif shape == "strict":
        if not is_strict_order(rel):
            raise ValueError(
                f"{kind}: {side} relation must be asymmetric and transitive"
            )
    else:
        if not is_preorder(rel):
            raise ValueError(f"{kind}: {side} relation must be a preorder")


@dataclass(frozen=True)
class PruneSpec:
    """A transition-domination relation: (p,σ,r) is dominated by (p',σ,r')
    when p rb p' and r rf r'; only the five language-preserving (rb, rf)
    shapes can be constructed."""

    kind: str
    rb: Relation
    rf: Relation

    def __post_init__(self) -> None:
        if self.kind not in PRUNE_KINDS:
            raise ValueError(
                f"unknown pruning kind {self.kind!r}; allowed: {', '.join(PRUNE_KINDS)}"
            )
        if self.rb.n != self.rf.n:
            raise ValueError("backward and forward relations disagree on size")
        bshape, fshape = _SHAPES[self.kind]
        _check_shape(self.rb, bshape, "backward", self.kind)
        _check_shape(self.rf, fshape, "forward", self.kind)


@dataclass(frozen=True)
class MinimizeConfig:
    lookahead: int = 1
    method: str = "heavy"
    prunings: frozenset = frozenset(PRUNE_KINDS)
    max_passes: int = 50

    def __post_init__(self) -> None:
        if self.lookahead < 1:
            raise ValueError("lookahead must be ≥ 1")
        if self.method not in ("heavy", "light"):
            raise ValueError("method must be 'heavy' or 'light'")
        bad = set(self.prunings) - set(PRUNE_KINDS)
        if bad:
            raise ValueError(f"unknown pruning kinds: {sorted(bad)}")
        if self.max_passes < 1:
            raise ValueError("max_passes must be ≥ 1")


def quotient(a: Automaton, pre: Relation) -> Automaton:
    """Merge states equivalent under the preorder; transitions element-wise.

    A class is initial/accepting iff some member is; the lowest member index
    names the class.
    """
    if pre.n != a.n:
        raise ValueError("relation size does not match the automaton")
    if not is_preorder(pre):
        raise ValueError("quotienting requires a preorder")
    eq = intersect(pre, inverse(pre))
    rep = [0] * a.n
    for p in range(a.n):
        rep[p] = (eq.rows[p] & -eq.rows[p]).bit_length() - 1
    reps = sorted(set(rep))
    cls = {r: i for i, r in enumerate(reps)}
    trans = set()
    for s in range(len(a.alphabet)):
        for p in range(a.n):
            for q in a.fwd[p][s]:
                trans.add((cls[rep[p]], s, cls[rep[q]]))
    return make_automaton(
        a.alphabet,
        [a.names[r] for r in reps],
        {cls[rep[p]] for p in a.initial},
        {cls[rep[p]] for p in a.accepting},
        trans,
    )


def _assert_bw_quotiented(a: Automaton) -> None:
    bw = ordinary_sim(a, BACKWARD)
    eq = intersect(bw, inverse(bw))
    for p in range(a.n):
        if eq.rows[p] != 1 << p:
            other = (eq.rows[p] & ~(1 << p)).bit_length() - 1
            raise ValueError(
                "bwsim-di pruning requires a backward-simulation-quotiented "
                f"automaton, but states {a.names[p]} and {a.names[other]} are "
                "backward-simulation equivalent"
            )


def prune(a: Automaton, p: PruneSpec) -> Automaton:
    """Remove every transition dominated under the spec, all at once.

    The relation is built from the input automaton and not recomputed as
    transitions disappear. Refuses inputs that violate the spec's
    preconditions rather than pruning unsoundly.
    """
    if p.rb.n != a.n:
        raise ValueError("relation size does not match the automaton")
    if p.kind == "bwsim-di":
        _assert_bw_quotiented(a)
    transient_only = p.kind == "transient-fair"
    comp = scc_ids(a.n, _union_succ_masks(a)) if transient_only else None
    bwd = bwd_masks(a)
    kept = []
    for s in range(len(a.alphabet)):
        col = list(bwd[s])
        if transient_only:
            for r2 in range(a.n):
                m = col[r2]
                keep_mask = 0
                while m:
                    low = m & -m
                    m ^= low
                    if comp[low.bit_length() - 1] != comp[r2]:
                        keep_mask |= low
                col[r2] = keep_mask
        # domsrc[r] = sources of transitions (p',σ,r') whose target dominates r
        domsrc = [0] * a.n
        for r in range(a.n):
            targets = p.rf.rows[r]
            acc = 0
            while targets:
                low = targets & -targets
                targets ^= low
                acc |= col[low.bit_length() - 1]
            domsrc[r] = acc
        for src in range(a.n):
            for dst in a.fwd[src][s]:
                if not p.rb.rows[src] & domsrc[dst]:
                    kept.append((src, s, dst))
    return make_automaton(a.alphabet, a.names, a.initial, a.accepting, kept)


def build_prune_relation(a: Automaton, kind: str, k: int) -> PruneSpec:
    """Compute the state relations a pruning kind needs, at lookahead k."""
    if kind not in PRUNE_KINDS:
        raise ValueError(
            f"unknown pruning kind {kind!r}; allowed: {', '.join(PRUNE_KINDS)}"
        )
    n = a.n
    if kind == "id-di":
        rb = identity(n)
        rf = strict(transitive_closure(lookahead_sim(a, DIRECT, k)))
    elif kind == "bw-id":
        rb = strict(transitive_closure(lookahead_sim(a, BACKWARD, k)))
        rf = identity(n)
    elif kind == "bwsim-di":
        rb = strict(ordinary_sim(a, BACKWARD))
        rf = transitive_closure(lookahead_sim(a, DIRECT, k))
    elif kind == "bw-disim":
        rb = transitive_closure(lookahead_sim(a, BACKWARD, k))
        rf = strict(ordinary_sim(a, DIRECT))
    else:
        rb = identity(n)
        rf = strict(transitive_closure(lookahead_sim(a, FAIR, k)))
    return PruneSpec(kind, rb, rf)


def _quotient_bw_to_fixpoint(a: Automaton, steps) -> Automaton:
    # ordinary backward quotienting can expose new equivalences, and the
    # bwsim-di pruning that follows needs none left
    while a.n:
        pre = ordinary_sim(a, BACKWARD)
        b = _timed(steps, "quotient-bw1", quotient, a, pre)
        if b == a:
            return a
        a = b
    return a


def _timed(steps, label, fn, a, rel=None):
    t0 = time.perf_counter()
    out = fn(a, rel) if rel is not None else fn(a)
    rec = {
        "op": label,
        "states": out.n,
        "transitions": transition_count(out),
        "ms": round((time.perf_counter() - t0) * 1000.0, 3),
    }
    if rel is not None:
        rec["relation_pairs"] = rel.count()
    steps.append(rec)
    return out


def _prune_step(a: Automaton, kind: str, k: int, steps) -> Automaton:
    t0 = time.perf_counter()
    spec = build_prune_relation(a, kind, k)
    out = prune(a, spec)
    steps.append(
        {
            "op": f"prune-{kind}",
            "states": out.n,
            "transitions": transition_count(out),
            "relation_pairs": spec.rb.count() + spec.rf.count(),
            "ms": round((time.perf_counter() - t0) * 1000.0, 3),
        }
    )
    return out


def heavy_pass(a: Automaton, k: int, prunings, steps: list | None = None) -> Automaton:
    """One full round of the iterated procedure, cheap operations first."""
    if steps is None:
        steps = []
    a = _timed(steps, "remove-dead", remove_dead, a)
    if a.n:
        a = _quotient_bw_to_fixpoint(a, steps)
    if a.n and "bwsim-di" in prunings:
        a = _prune_step(a, "bwsim-di", k, steps)
    if a.n:
        pre = transitive_closure(lookahead_sim(a, DELAYED, k))
        a = _timed(steps, "quotient-de", quotient, a, pre)
    if a.n and "id-di" in prunings:
        a = _prune_step(a, "id-di", k, steps)
    if a.n and "transient-fair" in prunings:
        a = _prune_step(a, "transient-fair", k, steps)
    if a.n:
        pre = transitive_closure(lookahead_sim(a, BACKWARD, k))
        a = _timed(steps, "quotient-bw", quotient, a, pre)
    if a.n and "bw-id" in prunings:
        a = _prune_step(a, "bw-id", k, steps)
    if a.n and "bw-disim" in prunings:
        a = _prune_step(a, "bw-disim", k, steps)
    return _timed(steps, "remove-dead", remove_dead, a)


def minimize(a: Automaton, cfg: MinimizeConfig) -> tuple[Automaton, dict]:
    """Run the configured method and return (result, stats record)."""
    k = cfg.lookahead
    stats: dict = {
        "method": cfg.method,
        "lookahead": k,
        "input": {"states": a.n, "transitions": transition_count(a)},
        "passes": [],
        "cap_exceeded": False,
    }
    if cfg.method == "light":
        steps: list = []
        a = _timed(steps, "remove-dead", remove_dead, a)
        if a.n:
            pre = transitive_closure(lookahead_sim(a, DELAYED, k))
            a = _timed(steps, "quotient-de", quotient, a, pre)
        stats["passes"].append({"pass": 1, "steps": steps})
        stats["output"] = {"states": a.n, "transitions": transition_count(a)}
        return a, stats

    for i in range(cfg.max_passes):
        steps = []
        before = a
        a = heavy_pass(a, k, cfg.prunings, steps)
        stats["passes"].append({"pass": i + 1, "steps": steps})
        if a == before:
            break
    else:
        stats["cap_exceeded"] = True
    stats["output"] = {"states": a.n, "transitions": transition_count(a)}
    return a, stats


def heavy(a: Automaton, k: int, cfg: MinimizeConfig | None = None) -> Automaton:
    """Iterate remove-dead, pruning and de/bw quotienting to a fixpoint."""
    if cfg is None:
        cfg = MinimizeConfig(lookahead=k, method="heavy")
    elif cfg.lookahead != k or cfg.method != "heavy":
        cfg = MinimizeConfig(k, "heavy", cfg.prunings, cfg.max_passes)
    return minimize(a, cfg)[0]


def light(a: Automaton, k: int) -> Automaton:
    """Remove dead states, then quotient by the lookahead delayed preorder."""
    return minimize(a, MinimizeConfig(lookahead=k, method="light"))[0]
