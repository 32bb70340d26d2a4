"""Exact volume polynomials of type-A flow polytopes on the all-positive chamber.

The engine computes the volume polynomial by iterated residues of an
exponential kernel, certifies it as the one-dimensional kernel of a system
of constant-coefficient differential operators, reproduces it by rank
induction from the restricted problem, and cross-validates it against exact
lattice-point counting.  All arithmetic is over arbitrary-precision
rationals; there is no floating point anywhere.
"""

from .cli import ProblemSpec, SpecError, parse_spec, render_spec, run_command
from .diffop import DiffOperator, PdeSystem, annihilates, pde_system, solution_space
from .induction import (
    LayerDecomposition,
    OperatorLadder,
    layer_recursion,
    lift_volume,
    lowering_operator,
    operator_ladder,
)
from .linalg import integer_nullspace
from .multiplicity import MultiplicityMatrix, root_pairs
from .oracle import (
    CountTable,
    VolumeComparison,
    compare_volume,
    count_lattice_points,
    dilation_counts,
    ehrhart_leading_coefficient,
)
from .polynomial import (
    MultiPoly,
    Rational,
    binomial_series_coeff,
    grlex_key,
    homogeneous_monomials,
)
from .residue import (
    ResidueKernel,
    ResidueSum,
    ResidueTerm,
    VolumePolynomial,
    build_kernel,
    canonical_order,
    iterated_residue,
    laurent_derivative,
    laurent_residue,
    residue_at_zero,
    residue_in_order,
)

__version__ = "0.1.0"

__all__ = [
    "CountTable",
    "DiffOperator",
    "LayerDecomposition",
    "MultiPoly",
    "MultiplicityMatrix",
    "OperatorLadder",
    "PdeSystem",
    "ProblemSpec",
    "Rational",
    "ResidueKernel",
    "ResidueSum",
    "ResidueTerm",
    "SpecError",
    "VolumeComparison",
    "VolumePolynomial",
    "annihilates",
    "binomial_series_coeff",
    "build_kernel",
    "canonical_order",
    "compare_volume",
    "count_lattice_points",
    "dilation_counts",
    "ehrhart_leading_coefficient",
    "grlex_key",
    "homogeneous_monomials",
    "integer_nullspace",
    "iterated_residue",
    "laurent_derivative",
    "laurent_residue",
    "layer_recursion",
    "lift_volume",
    "lowering_operator",
    "operator_ladder",
    "parse_spec",
    "pde_system",
    "render_spec",
    "residue_at_zero",
    "residue_in_order",
    "root_pairs",
    "run_command",
    "solution_space",
    "__version__",
]
