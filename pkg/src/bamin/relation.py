"""Binary relations over state indices, stored as bitmask rows."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator


@dataclass
class Relation:
    """n×n boolean matrix; rows[p] is the bitmask of all q with p related to q."""

    n: int
    rows: list[int]

    def __post_init__(self) -> None:
        if len(self.rows) != self.n:
            raise ValueError("row count does not match n")

    def contains(self, p: int, q: int) -> bool:
        return bool(self.rows[p] >> q & 1)

    def pairs(self) -> Iterator[tuple[int, int]]:
        for p in range(self.n):
            row = self.rows[p]
            while row:
                low = row & -row
                yield p, low.bit_length() - 1
                row ^= low

    def count(self) -> int:
        return sum(row.bit_count() for row in self.rows)

    def format_pairs(self) -> str:
        return "\n".join(f"{p} {q}" for p, q in self.pairs())


def identity(n: int) -> Relation:
    return Relation(n, [1 << p for p in range(n)])


def full(n: int) -> Relation:
    return Relation(n, [(1 << n) - 1] * n)


def inverse(r: Relation) -> Relation:
    cols = [0] * r.n
    for p in range(r.n):
        row = r.rows[p]
        while row:
            low = row & -row
            cols[low.bit_length() - 1] |= 1 << p
            row ^= low
    return Relation(r.n, cols)


def compose(r1: Relation, r2: Relation) -> Relation:
    """Pairs (p,q) with some w where p r1 w and w r2 q."""
    if r1.n != r2.n:
        raise ValueError("dimension mismatch")
    rows = []
    for p in range(r1.n):
        acc = 0
        mids = r1.rows[p]
        while mids:
            low = mids & -mids
            acc |= r2.rows[low.bit_length() - 1]
            mids ^= low
        rows.append(acc)
    return Relation(r1.n, rows)


def intersect(r1: Relation, r2: Relation) -> Relation:
    if r1.n != r2.n:
        raise ValueError("dimension mismatch")
    return Relation(r1.n, [a & b for a, b in zip(r1.rows, r2.rows)])


def union(r1: Relation, r2: Relation) -> Relation:
    if r1.n != r2.n:
        raise ValueError("dimension mismatch")
    return Relation(r1.n, [a | b for a, b in zip(r1.rows, r2.rows)])


def subset(r1: Relation, r2: Relation) -> bool:
    return r1.n == r2.n and all(a & ~b == 0 for a, b in zip(r1.rows, r2.rows))


def is_reflexive(r: Relation) -> bool:
    return all(r.rows[p] >> p & 1 for p in range(r.n))


def is_transitive(r: Relation) -> bool:
    for p in range(r.n):
        row = r.rows[p]
        mids = row
        while mids:
            low = mids & -mids
            if r.rows[low.bit_length() - 1] & ~row:
                return False
            mids ^= low
    return True


def is_preorder(r: Relation) -> bool:
    return is_reflexive(r) and is_transitive(r)


def is_strict_order(r: Relation) -> bool:
    """Irreflexive, asymmetric, transitive."""
    for p in range(r.n):
        if r.rows[p] >> p & 1:
            return False
    inv = inverse(r)
    if any(a & b for a, b in zip(r.rows, inv.rows)):
        return False
    return is_transitive(r)


def transitive_closure(r: Relation) -> Relation:
    """Smallest transitive superset (Warshall over bitmask rows)."""
    rows = list(r.rows)
    for k in range(r.n):
        mk = rows[k]
        bit = 1 << k
        for p in range(r.n):
            if rows[p] & bit:
                rows[p] |= mk
    return Relation(r.n, rows)


def strict(r: Relation) -> Relation:
    """Asymmetric restriction r \\ r⁻¹ of a transitive relation."""
    if not is_transitive(r):
        raise ValueError("strict restriction requires a transitive relation")
    inv = inverse(r)
    return Relation(r.n, [a & ~b for a, b in zip(r.rows, inv.rows)])
