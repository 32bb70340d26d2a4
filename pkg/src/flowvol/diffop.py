"""Constant-coefficient differential operators and the annihilating system.

Operators in the partials d_1, ..., d_r commute, so an operator is just a
polynomial in r formal symbols; composition is polynomial multiplication.
The volume polynomial of a rank-r problem is annihilated by one operator per
node: row l contributes

    prod_{j=l+1..r} (d_l - d_j)^m[l,j] * d_l^m[l,r+1]

of order row_sum(l).  Within homogeneous polynomials of the volume degree,
the common kernel of these operators is one-dimensional and spanned by the
volume polynomial; one degree higher it is zero.  ``solution_space`` computes
that kernel exactly by fraction-free elimination on the monomial basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .linalg import integer_nullspace
from .multiplicity import MultiplicityMatrix
from .polynomial import MultiPoly, homogeneous_monomials
from .residue import VolumePolynomial


@dataclass(frozen=True)
class DiffOperator:
    """Polynomial in the commuting partial-derivative symbols d_1..d_n."""

    poly: MultiPoly

    @property
    def nvars(self) -> int:
        return self.poly.nvars

    @classmethod
    def zero(cls, nvars: int) -> "DiffOperator":
        return cls(MultiPoly.zero(nvars))

    @classmethod
    def identity(cls, nvars: int) -> "DiffOperator":
        return cls(MultiPoly.one(nvars))

    @classmethod
    def partial(cls, index: int, nvars: int) -> "DiffOperator":
        return cls(MultiPoly.variable(index, nvars))

    @property
    def is_zero(self) -> bool:
        return self.poly.is_zero

    def order(self) -> int | None:
        """Highest total derivative order, or None for the zero operator."""
        return self.poly.total_degree()

    def __add__(self, other: "DiffOperator") -> "DiffOperator":
        return DiffOperator(self.poly + other.poly)

    def __sub__(self, other: "DiffOperator") -> "DiffOperator":
        return DiffOperator(self.poly - other.poly)

    def __neg__(self) -> "DiffOperator":
        return DiffOperator(-self.poly)

    def __mul__(self, other: "DiffOperator | int | Fraction") -> "DiffOperator":
        if isinstance(other, DiffOperator):
            return DiffOperator(self.poly * other.poly)
        return DiffOperator(self.poly * other)

    def __rmul__(self, other: "int | Fraction") -> "DiffOperator":
        return DiffOperator(self.poly * other)

    def __pow__(self, exponent: int) -> "DiffOperator":
        return DiffOperator(self.poly ** exponent)

    def apply(self, p: MultiPoly) -> MultiPoly:
        """Apply the operator to a polynomial, exactly."""
        if p.nvars != self.nvars:
            raise ValueError(f"variable-count mismatch: {self.nvars} vs {p.nvars}")
        result: dict[tuple[int, ...], Fraction] = {}
        for dexps, dcoeff in self.poly.terms.items():
            for pexps, pcoeff in p.terms.items():
                if any(pe < de for pe, de in zip(pexps, dexps)):
                    continue
                factor = 1
                for pe, de in zip(pexps, dexps):
                    if de:
                        factor *= math.perm(pe, de)
                exps = tuple(pe - de for pe, de in zip(pexps, dexps))
                result[exps] = result.get(exps, Fraction(0)) + dcoeff * pcoeff * factor
        return MultiPoly(p.nvars, result)

    def __str__(self) -> str:
        return self.poly.render(names="d")

    def __repr__(self) -> str:
        return f"DiffOperator({self})"


@dataclass(frozen=True)
class PdeSystem:
    """The r annihilating operators, listed for node l = rank down to 1."""

    m: MultiplicityMatrix
    ops: tuple[DiffOperator, ...]

    def labeled(self) -> list[tuple[int, DiffOperator]]:
        """Pairs (l, operator) in the stored order."""
        return [(self.m.rank - idx, op) for idx, op in enumerate(self.ops)]


def pde_system(m: MultiplicityMatrix) -> PdeSystem:
    """Build the annihilating operator for every node."""
    r = m.rank
    ops = []
    for l in range(r, 0, -1):
        op = DiffOperator.partial(l, r) ** m.multiplicity(l, r + 1)
        for j in range(l + 1, r + 1):
            diff = DiffOperator.partial(l, r) - DiffOperator.partial(j, r)
            op = diff ** m.multiplicity(l, j) * op
        ops.append(op)
    return PdeSystem(m, tuple(ops))


def annihilates(m: MultiplicityMatrix, v: VolumePolynomial | MultiPoly) -> bool:
    """True when every system operator maps v to the zero polynomial.

    Accepts a bare polynomial as well, so that deliberately wrong candidates
    (which cannot satisfy the VolumePolynomial invariants) can be tested.
    """
    if isinstance(v, VolumePolynomial):
        if v.m != m:
            raise ValueError("volume polynomial was computed for different multiplicities")
        poly = v.poly
    else:
        poly = v
    return all(op.apply(poly).is_zero for op in pde_system(m).ops)


def solution_space(m: MultiplicityMatrix, degree: int) -> list[MultiPoly]:
    """Exact basis of the homogeneous degree-d polynomials killed by the system.

    Stacks the coefficient matrix of every operator on the degree-d monomial
    basis and extracts its null space by fraction-free elimination.  At the
    volume degree the basis is normalized to the expected corner coefficient;
    at other degrees each basis element is made monic in its graded-lex
    leading term.
    """
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    r = m.rank
    columns = homogeneous_monomials(r, degree)
    rows: list[list[int]] = []
    for op in pde_system(m).ops:
        order = op.order()
        if order is None or order > degree:
            continue  # operator kills all of this degree, no constraints
        targets = {exps: i for i, exps in enumerate(homogeneous_monomials(r, degree - order))}
        block = [[0] * len(columns) for _ in targets]
        for col, exps in enumerate(columns):
            image = op.apply(MultiPoly.monomial(exps))
            for texps, coeff in image.terms.items():
                assert coeff.denominator == 1
                block[targets[texps]][col] = int(coeff)
        rows.extend(block)

    basis = []
    for vector in integer_nullspace(rows, len(columns)):
        poly = MultiPoly(r, {exps: c for exps, c in zip(columns, vector) if c})
        basis.append(_normalize(m, degree, poly))
    return basis


def _normalize(m: MultiplicityMatrix, degree: int, poly: MultiPoly) -> MultiPoly:
    if degree == m.degree:
        corner = poly.coefficient(m.corner_exponents)
        if corner:
            return poly * (m.corner_value / corner)
    lead = poly.sorted_terms()[0][1]
    return poly * (1 / lead)
