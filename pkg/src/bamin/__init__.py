"""Büchi automata minimization via lookahead simulations, and a staged
polynomial language-inclusion checker built on the same relations."""

from .automaton import (
    Automaton,
    Lasso,
    TransitionRef,
    disjoint_union,
    enumerate_accepting_lassos,
    lasso_language,
    make_automaton,
    member_lasso,
    parse_ba,
    remove_dead,
    serialize_ba,
    transition_count,
    transitions,
)
from .inclusion import (
    INCLUDED,
    NOT_INCLUDED,
    UNKNOWN,
    InclusionConfig,
    InclusionVerdict,
    check_inclusion,
)
from .randgen import RandomSpec, saturation_probability, tabakov_vardi
from .reduce import (
    MinimizeConfig,
    PruneSpec,
    build_prune_relation,
    heavy,
    light,
    minimize,
    prune,
    quotient,
)
from .relation import Relation, transitive_closure
from .simulation import (
    BACKWARD,
    BACKWARD_COUNT,
    BACKWARD_MINUS,
    DELAYED,
    DIRECT,
    FAIR,
    jumping_lookahead_fair_sim,
    lookahead_sim,
    mediated_preorder,
    ordinary_sim,
    trace_incl_oracle,
)

__all__ = [
    "Automaton",
    "Lasso",
    "TransitionRef",
    "disjoint_union",
    "enumerate_accepting_lassos",
    "lasso_language",
    "make_automaton",
    "member_lasso",
    "parse_ba",
    "remove_dead",
    "serialize_ba",
    "transition_count",
    "transitions",
    "INCLUDED",
    "NOT_INCLUDED",
    "UNKNOWN",
    "InclusionConfig",
    "InclusionVerdict",
    "check_inclusion",
    "RandomSpec",
    "saturation_probability",
    "tabakov_vardi",
    "MinimizeConfig",
    "PruneSpec",
    "build_prune_relation",
    "heavy",
    "light",
    "minimize",
    "prune",
    "quotient",
    "Relation",
    "transitive_closure",
    "BACKWARD",
    "BACKWARD_COUNT",
    "BACKWARD_MINUS",
    "DELAYED",
    "DIRECT",
    "FAIR",
    "jumping_lookahead_fair_sim",
    "lookahead_sim",
    "mediated_preorder",
    "ordinary_sim",
    "trace_incl_oracle",
]

__version__ = "0.1.0"
