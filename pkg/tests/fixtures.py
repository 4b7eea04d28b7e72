"""Hand-built automata exercising the boundary cases of pruning and
lookahead simulation: each constructor documents the facts tests rely on."""
from __future__ import annotations

from bamin.automaton import Automaton, make_automaton


def build(alphabet, names, initial, accepting, trans) -> Automaton:
    """Transitions given as (src name, label, dst name) triples."""
    idx = {x: i for i, x in enumerate(names)}
    sym = {x: i for i, x in enumerate(alphabet)}
    return make_automaton(
        alphabet,
        names,
        {idx[p] for p in initial},
        {idx[p] for p in accepting},
        [(idx[p], sym[s], idx[q]) for p, s, q in trans],
    )


def two_lane_automaton() -> Automaton:
    """Two lanes from i to the accepting e-loop f, cross-connected via x/y.

    Facts: p0 is strictly below p1 and r1 strictly below r0 in backward trace
    inclusion (and in strict 3-lookahead backward simulation); q0 below q1 and
    s1 below s0 in the direct versions. Pruning with the backward comparison
    removes i->a->p0's continuation p0->a->q0, the direct one removes
    r1->a->s1; with both gone the word a^5 e^ω is lost, so the two strict
    trace-inclusion prunings must never be combined.
    """
    names = ["i", "p0", "q0", "r0", "s0", "f", "x0", "y0",
             "p1", "q1", "r1", "s1", "x1", "y1"]
    trans = [
        ("i", "a", "p0"), ("i", "c", "x0"), ("i", "b", "r0"),
        ("p0", "a", "q0"), ("q0", "a", "r0"), ("r0", "a", "s0"),
        ("s0", "a", "f"), ("s0", "d", "f"),
        ("x0", "a", "y0"), ("y0", "a", "r0"),
        ("i", "a", "p1"), ("i", "c", "p1"),
        ("p1", "a", "q1"), ("q1", "a", "x1"), ("q1", "b", "f"),
        ("q1", "a", "r1"), ("r1", "a", "s1"), ("s1", "a", "f"),
        ("x1", "a", "y1"), ("y1", "d", "f"),
        ("f", "e", "f"),
    ]
    return build("abcde", names, ["i"], ["f"], trans)


def diamond_automaton() -> Automaton:
    """Diamond p -> {q, r} -> s with an accepting c-loop on s.

    r sits strictly below q in direct simulation and q strictly below r in
    backward simulation, so the id/direct pruning removes p->a->r while the
    backward/id pruning removes q->a->s. Applied in parallel (as a union)
    they would drop both and lose aac^ω; applied sequentially each is safe.
    """
    trans = [
        ("p", "a", "q"), ("q", "a", "s"), ("q", "b", "s"),
        ("p", "a", "r"), ("p", "b", "r"), ("r", "a", "s"),
        ("s", "c", "s"),
    ]
    return build("abc", ["p", "q", "r", "s"], ["p"], ["s"], trans)


def two_loop_automaton() -> Automaton:
    """Non-accepting {a,b}-loop on p with a single a-exit to the accepting
    a-loop q.

    q is strictly below p in delayed simulation, yet removing p->a->q empties
    the language: delayed (or fair) forward comparison with identity backward
    comparison is not a sound pruning, even on a delayed-quotiented automaton.
    """
    trans = [
        ("p", "a", "q"), ("p", "a", "p"), ("p", "b", "p"), ("q", "a", "q"),
    ]
    return build("ab", ["p", "q"], ["p"], ["q"], trans)


def chain_loop_automaton() -> Automaton:
    """Chain p -> q -> r where p, q are initial, r accepting, with loops on p
    and r.

    Both p->a->q and q->a->r are transient; r is strictly below q in fair
    trace inclusion (even in delayed simulation) and q strictly below p in
    backward simulation. Removing q->a->r loses a^ω, so strict backward
    comparison of sources is unsound for the transient-fair pruning, which
    must keep sources fixed.
    """
    trans = [
        ("p", "a", "q"), ("q", "a", "r"), ("q", "b", "r"),
        ("p", "a", "p"), ("p", "b", "p"), ("r", "a", "r"),
    ]
    return build("ab", ["p", "q", "r"], ["p", "q"], ["r"], trans)


def lookahead_nontransitive_automaton() -> Automaton:
    """Three components showing lookahead simulation is not transitive.

    With every state accepting: p0 is 2-lookahead simulated by q0, and q0 by
    r0, but p0 is not k-lookahead simulated by r0 for any k (Duplicator at r0
    must commit to r1 or r2 before seeing the symbol after the lookahead
    window). Holds for the direct, delayed and fair variants.
    """
    names = ["p0", "q0", "q1", "q2", "r0", "r1", "r2"]
    trans = [
        ("p0", "a", "p0"), ("p0", "b", "p0"),
        ("q0", "a", "q1"), ("q0", "b", "q1"),
        ("q0", "a", "q2"), ("q0", "b", "q2"),
        ("q1", "a", "q0"), ("q2", "b", "q0"),
        ("r0", "a", "r1"), ("r0", "b", "r1"),
        ("r0", "a", "r2"), ("r0", "b", "r2"),
        ("r1", "a", "r1"), ("r1", "a", "r2"),
        ("r2", "b", "r2"), ("r2", "b", "r1"),
    ]
    return build("ab", names, ["p0"], names, trans)
