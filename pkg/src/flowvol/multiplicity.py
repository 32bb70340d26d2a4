"""Positive root multiplicities for the type-A root system of a given rank.

A rank-r problem assigns a positive integer m[i,j] to every root e_i - e_j,
1 <= i < j <= r+1.  Entries are stored flat in lexicographic pair order
(1,2), (1,3), ..., (1,r+1), (2,3), ..., (r,r+1), which matches the tuple
notation used throughout the tests, e.g. rank 3 with m=(1,1,2,1,2,2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping


def root_pairs(rank: int) -> list[tuple[int, int]]:
    """Index pairs (i, j), i < j <= rank+1, in lexicographic order."""
    return [(i, j) for i in range(1, rank + 1) for j in range(i + 1, rank + 2)]


@dataclass(frozen=True)
class MultiplicityMatrix:
    """Multiplicities of the positive roots, with the derived degree data."""

    rank: int
    mult: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise ValueError(f"rank must be >= 1, got {self.rank}")
        expected = self.rank * (self.rank + 1) // 2
        object.__setattr__(self, "mult", tuple(self.mult))
        if len(self.mult) != expected:
            raise ValueError(
                f"rank {self.rank} needs {expected} multiplicities, got {len(self.mult)}"
            )
        for (i, j), value in zip(root_pairs(self.rank), self.mult):
            if not isinstance(value, int) or value < 1:
                raise ValueError(f"multiplicity m[{i},{j}] must be a positive integer")

    @classmethod
    def from_entries(cls, rank: int, entries: Mapping[tuple[int, int], int]) -> "MultiplicityMatrix":
        pairs = root_pairs(rank)
        missing = [p for p in pairs if p not in entries]
        if missing:
            raise ValueError(f"missing multiplicities for pairs {missing}")
        extra = [p for p in entries if p not in pairs]
        if extra:
            raise ValueError(f"pairs {extra} out of range for rank {rank}")
        return cls(rank, tuple(entries[p] for p in pairs))

    def pairs(self) -> list[tuple[int, int]]:
        return root_pairs(self.rank)

    def multiplicity(self, i: int, j: int) -> int:
        """m[i,j] for 1 <= i < j <= rank+1."""
        if not 1 <= i < j <= self.rank + 1:
            raise ValueError(f"pair ({i},{j}) out of range for rank {self.rank}")
        offset = sum(self.rank + 1 - k for k in range(1, i)) + (j - i - 1)
        return self.mult[offset]

    # -- derived constants -------------------------------------------------

    @property
    def total(self) -> int:
        """Total multiplicity over all positive roots."""
        return sum(self.mult)

    def row_sum(self, l: int) -> int:
        """Total multiplicity on roots leaving node l, sum of m[l,i] for i > l."""
        if not 1 <= l <= self.rank:
            raise ValueError(f"row {l} out of range 1..{self.rank}")
        return sum(self.multiplicity(l, i) for i in range(l + 1, self.rank + 2))

    @property
    def row_sums(self) -> tuple[int, ...]:
        return tuple(self.row_sum(l) for l in range(1, self.rank + 1))

    @property
    def degree(self) -> int:
        """Degree of the volume polynomial: total multiplicity minus rank."""
        return self.total - self.rank

    @property
    def restriction_degree(self) -> int:
        """Volume degree of the problem restricted to nodes 2..rank+1."""
        return self.total - self.row_sum(1) - (self.rank - 1)

    def restriction(self) -> "MultiplicityMatrix":
        """Drop node 1: the rank-(r-1) matrix m'[i,j] = m[i+1,j+1]."""
        if self.rank < 2:
            raise ValueError("rank-1 problems have no restriction")
        entries = tuple(
            self.multiplicity(i + 1, j + 1)
            for i in range(1, self.rank)
            for j in range(i + 1, self.rank + 1)
        )
        return MultiplicityMatrix(self.rank - 1, entries)

    # -- corner data -------------------------------------------------------

    @property
    def corner_exponents(self) -> tuple[int, ...]:
        """Exponents of the distinguished monomial: row_sum(l) - 1 per variable."""
        return tuple(s - 1 for s in self.row_sums)

    @property
    def corner_value(self) -> Fraction:
        """Expected coefficient on the corner monomial: 1 / prod (row_sum(l) - 1)!."""
        denom = 1
        for s in self.row_sums:
            denom *= math.factorial(s - 1)
        return Fraction(1, denom)
