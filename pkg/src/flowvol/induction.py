"""Rank induction: lift a rank-(r-1) volume polynomial to rank r.

Write a homogeneous degree-d polynomial in a_1..a_r layer by layer,

    phi = sum_k a_1^(d-k) * g_k(a_2, ..., a_r),   g_k homogeneous of degree k.

For the volume polynomial the top nonzero layer sits at index h, the volume
degree of the problem restricted to nodes 2..r+1, and every lower layer is
forced from it by the node-1 operator.  The machinery has two pieces:

* ``lowering_operator(m, q)`` is the order-q operator in d_2..d_r collecting
  every way to spread q derivative orders over those variables, each d_i^p
  weighted by C(m[1,i], p); equivalently the u^q coefficient of
  prod_{i=2..r} (1 + u d_i)^m[1,i].  It vanishes once q exceeds the total
  first-row multiplicity into nodes 2..r.
* the ladder steps E_n combine them through the signed convolution
  E_0 = 1, E_n = sum_{j=1..n} (-1)^(j+1) D_j E_(n-j), giving
  E_1 = D_1, E_2 = D_1^2 - D_2, E_3 = D_1^3 - 2 D_1 D_2 + D_3, ...

The lift of the restricted volume w (degree h, variables a_2..a_r) is then

    v = sum_{n=0..h} a_1^(s-1+n) / (s-1+n)! * E_n w,   s = row_sum(1),

homogeneous of the full volume degree.  ``layer_recursion`` exposes the
underlying layer-by-layer relation for general degrees d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .diffop import DiffOperator
from .multiplicity import MultiplicityMatrix
from .polynomial import MultiPoly
from .residue import VolumePolynomial


def _weak_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for head in range(total + 1):
        for tail in _weak_compositions(total - head, parts - 1):
            yield (head,) + tail


def lowering_operator(m: MultiplicityMatrix, q: int) -> DiffOperator:
    """Order-q lowering operator in d_2..d_r built from the first row of m."""
    if q < 1:
        raise ValueError(f"order must be >= 1, got {q}")
    r = m.rank
    first_row = [m.multiplicity(1, i) for i in range(2, r + 1)]
    terms: dict[tuple[int, ...], int] = {}
    for powers in _weak_compositions(q, len(first_row)):
        coeff = 1
        for mult, p in zip(first_row, powers):
            coeff *= math.comb(mult, p)
        if coeff:
            exps = (0,) + powers
            terms[exps] = coeff
    return DiffOperator(MultiPoly(r, terms))


@dataclass(frozen=True)
class OperatorLadder:
    """Lowering operators D_1..D_J and their signed combinations E_0..E_h.

    ``generators[q-1]`` is the order-q lowering operator; ``steps[n]`` is the
    order-n combination applied at the n-th rung of the lift.
    """

    m: MultiplicityMatrix
    generators: tuple[DiffOperator, ...]
    steps: tuple[DiffOperator, ...]

    def generator(self, q: int) -> DiffOperator:
        """D_q, the zero operator beyond the stored range."""
        if q < 1:
            raise ValueError(f"order must be >= 1, got {q}")
        if q <= len(self.generators):
            return self.generators[q - 1]
        return DiffOperator.zero(self.m.rank)


def operator_ladder(m: MultiplicityMatrix) -> OperatorLadder:
    """Build the ladder up to the restricted volume degree."""
    r = m.rank
    span = m.row_sum(1) - m.multiplicity(1, r + 1)  # orders beyond this vanish
    generators = tuple(lowering_operator(m, q) for q in range(1, span + 1))
    steps = [DiffOperator.identity(r)]
    for n in range(1, m.restriction_degree + 1):
        acc = DiffOperator.zero(r)
        for j in range(1, n + 1):
            d_j = generators[j - 1] if j <= span else DiffOperator.zero(r)
            acc = acc + (-1) ** (j + 1) * (d_j * steps[n - j])
        steps.append(acc)
    return OperatorLadder(m, generators, tuple(steps))


def lift_volume(v_prev: VolumePolynomial, m: MultiplicityMatrix) -> VolumePolynomial:
    """Volume polynomial for m from the volume of its restriction to nodes 2..r+1."""
    if m.rank < 2:
        raise ValueError("lifting needs rank >= 2")
    if v_prev.m != m.restriction():
        raise ValueError("input volume does not belong to the restricted multiplicities")
    r = m.rank
    base = m.row_sum(1)
    lifted_prev = v_prev.poly.embed(r, offset=1)
    ladder = operator_ladder(m)
    total = MultiPoly.zero(r)
    for n, step in enumerate(ladder.steps):
        image = step.apply(lifted_prev)
        if image.is_zero:
            continue
        power = base - 1 + n
        exps = (power,) + (0,) * (r - 1)
        total = total + MultiPoly.monomial(exps, Fraction(1, math.factorial(power))) * image
    return VolumePolynomial(m, total)


@dataclass(frozen=True)
class LayerDecomposition:
    """Layers g_0..g_d of a degree-d polynomial, phi = sum a_1^(d-k) g_k."""

    d: int
    layers: tuple[MultiPoly, ...]

    def __post_init__(self) -> None:
        if len(self.layers) != self.d + 1:
            raise ValueError(f"expected {self.d + 1} layers, got {len(self.layers)}")
        for k, layer in enumerate(self.layers):
            if layer.is_zero:
                continue
            if not layer.is_homogeneous(k):
                raise ValueError(f"layer {k} is not homogeneous of degree {k}")
            if any(exps[0] for exps in layer.terms):
                raise ValueError(f"layer {k} must not involve the first variable")

    @classmethod
    def of(cls, poly: MultiPoly, degree: int | None = None) -> "LayerDecomposition":
        """Decompose a homogeneous polynomial by powers of the first variable."""
        if degree is None:
            degree = poly.total_degree()
            if degree is None:
                raise ValueError("cannot infer the degree of the zero polynomial")
        if not poly.is_homogeneous(degree):
            raise ValueError(f"polynomial is not homogeneous of degree {degree}")
        split: list[dict[tuple[int, ...], Fraction]] = [{} for _ in range(degree + 1)]
        for exps, coeff in poly.terms.items():
            k = degree - exps[0]
            split[k][(0,) + exps[1:]] = coeff
        layers = tuple(MultiPoly(poly.nvars, chunk) for chunk in split)
        return cls(degree, layers)

    def assemble(self, nvars: int | None = None) -> MultiPoly:
        """Rebuild sum_k a_1^(d-k) g_k."""
        if nvars is None:
            nvars = max((layer.nvars for layer in self.layers), default=1)
        total = MultiPoly.zero(nvars)
        for k, layer in enumerate(self.layers):
            if layer.is_zero:
                continue
            exps = (self.d - k,) + (0,) * (nvars - 1)
            total = total + MultiPoly.monomial(exps) * layer
        return total


def layer_recursion(
    m: MultiplicityMatrix, d: int, g_top: MultiPoly, n_start: int
) -> LayerDecomposition:
    """Solve the layer relation downward from a known top layer.

    ``g_top`` is the layer at index h - n_start + 1 (h the restricted volume
    degree); every layer above it is zero.  Step n determines the layer at
    index h - n from the ones above it:

        g_(h-n) = sum_{j>=1} (-1)^(j+1) * (d-h+n-j)!/(d-h+n)! * D_j g_(h-n+j)

    valid while d - h - row_sum(1) + n >= 0; outside that range the relation
    has no meaning and a ValueError reports the negative factorial argument.
    """
    r = m.rank
    if r < 2:
        raise ValueError("layer recursion needs rank >= 2")
    h = m.restriction_degree
    base = m.row_sum(1)
    if not 0 <= n_start <= h + 1:
        raise ValueError(f"n_start must lie in 0..{h + 1}, got {n_start}")
    if g_top.nvars != r:
        raise ValueError(f"top layer must live in {r} variables")
    top_index = h - n_start + 1
    if not g_top.is_zero:
        if any(exps[0] for exps in g_top.terms):
            raise ValueError("top layer must not involve the first variable")
        if not g_top.is_homogeneous(top_index):
            raise ValueError(f"top layer must be homogeneous of degree {top_index}")
        if top_index > d:
            raise ValueError(f"nonzero layer {top_index} impossible at degree {d}")

    span = base - m.multiplicity(1, r + 1)
    ladder = operator_ladder(m)
    layers: dict[int, MultiPoly] = {k: MultiPoly.zero(r) for k in range(max(d, top_index) + 1)}
    layers[top_index] = g_top

    for n in range(n_start, h + 1):
        if d - h - base + n < 0:
            raise ValueError(
                f"factorial argument {d - h - base + n} negative: degree {d} with "
                f"step {n} is outside the valid range of the layer relation"
            )
        k = h - n
        acc = MultiPoly.zero(r)
        for j in range(1, span + 1):
            source = layers.get(k + j)
            if source is None or source.is_zero:
                continue
            numerator = d - h + n - j
            if numerator < 0:
                raise ValueError(f"factorial argument {numerator} negative at step {n}")
            ratio = Fraction(math.factorial(numerator), math.factorial(d - h + n))
            acc = acc + (-1) ** (j + 1) * ratio * ladder.generator(j).apply(source)
        if k > d:
            if not acc.is_zero:
                raise ValueError(f"nonzero layer {k} impossible at degree {d}")
            continue
        layers[k] = acc

    return LayerDecomposition(d, tuple(layers[k] for k in range(d + 1)))
