"""Random Büchi automata with fixed per-symbol transition counts, and the
exact probability that such an automaton has no deadlocked state."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .automaton import Automaton, make_automaton


@dataclass(frozen=True)
class RandomSpec:
    n: int
    s: int
    td: float  # transitions per symbol = round(n*td)
    ad: float  # accepting states = max(1, round(n*ad))
    seed: int

    def __post_init__(self) -> None:
        if self.n < 1 or self.s < 1:
            raise ValueError("need n ≥ 1 and s ≥ 1")
        if not 0 <= self.td <= self.n:
            raise ValueError("transition density must be in [0, n]")
        if not 0 < self.ad <= 1:
            raise ValueError("acceptance density must be in (0, 1]")


def _round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def symbol_labels(s: int) -> list[str]:
    return [chr(ord("a") + i) if i < 26 else f"x{i}" for i in range(s)]


def tabakov_vardi(spec: RandomSpec) -> Automaton:
    """Sample an automaton: per symbol, round(n*td) distinct transitions drawn
    uniformly from the n×n grid; max(1, round(n*ad)) accepting states; state 0
    initial. Deterministic per (seed, symbol index)."""
    n = spec.n
    t = _round_half_up(n * spec.td)
    nacc = max(1, _round_half_up(n * spec.ad))
    trans: list[tuple[int, int, int]] = []
    for sym in range(spec.s):
        rng = random.Random(f"{spec.seed}:{sym}")
        for cell in rng.sample(range(n * n), t):
            trans.append((cell // n, sym, cell % n))
    rng = random.Random(f"{spec.seed}:acc")
    acc = rng.sample(range(n), nacc)
    return make_automaton(symbol_labels(spec.s), n, [0], acc, trans)


@lru_cache(maxsize=None)
def _row_sum_counts(n: int) -> list[int]:
    """counts[m] = ways to write m as an ordered sum of n terms from 1..n."""
    counts = [0] * (n * n + 1)
    counts[0] = 1
    for _ in range(n):
        nxt = [0] * (n * n + 1)
        run = 0
        for m in range(1, n * n + 1):
            run += counts[m - 1]
            if m - n - 1 >= 0:
                run -= counts[m - n - 1]
            nxt[m] = run
        counts = nxt
    return counts


def saturation_probability(n: int, s: int, td: float) -> Fraction:
    """Exact probability that every state has a successor for every symbol.

    With T = round(n*td) transitions per symbol this is (α/β)^s where α counts
    the T-subsets of the n×n grid covering every row and β = C(n², T); zero
    when T < n.
    """
    t = _round_half_up(n * td)
    if t > n * n:
        raise ValueError("transition count exceeds the grid")
    if t < n:
        return Fraction(0)
    counts = _row_sum_counts(n)
    alpha = 0
    r = t - n
    binom = 1  # C(j, r) for j = m - n, advanced incrementally from C(r, r) = 1
    for m in range(n + r, n * n + 1):
        j = m - n
        if j > r:
            binom = binom * j // (j - r)
        if counts[m]:
            alpha += binom * counts[m]
    beta = math.comb(n * n, t)
    return Fraction(alpha, beta) ** s
