from fractions import Fraction

import pytest
from hypothesis import given

from flowvol import MultiplicityMatrix, root_pairs

from conftest import multiplicity_matrices

GOLDEN = MultiplicityMatrix(3, (1, 1, 2, 1, 2, 2))


def test_pair_order():
    assert root_pairs(3) == [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]


def test_entry_access():
    assert GOLDEN.multiplicity(1, 4) == 2
    assert GOLDEN.multiplicity(2, 3) == 1
    assert GOLDEN.multiplicity(3, 4) == 2
    with pytest.raises(ValueError):
        GOLDEN.multiplicity(4, 3)


def test_derived_constants():
    assert GOLDEN.total == 9
    assert GOLDEN.row_sums == (4, 3, 2)
    assert GOLDEN.degree == 6
    assert GOLDEN.restriction_degree == 3
    assert GOLDEN.corner_exponents == (3, 2, 1)
    assert GOLDEN.corner_value == Fraction(1, 12)


def test_restriction_entries():
    restricted = GOLDEN.restriction()
    assert restricted == MultiplicityMatrix(2, (1, 2, 2))
    with pytest.raises(ValueError):
        restricted.restriction().restriction()


def test_from_entries_roundtrip():
    entries = dict(zip(root_pairs(3), GOLDEN.mult))
    assert MultiplicityMatrix.from_entries(3, entries) == GOLDEN
    with pytest.raises(ValueError):
        MultiplicityMatrix.from_entries(3, {(1, 2): 1})


@given(multiplicity_matrices())
def test_row_sums_partition_total(m):
    assert sum(m.row_sums) == m.total


@given(multiplicity_matrices())
def test_restriction_degree_identity(m):
    assert m.restriction_degree == m.degree - m.row_sum(1) + 1
    if m.rank >= 2:
        assert m.restriction_degree == m.restriction().degree


def test_rejects_nonpositive_multiplicity():
    with pytest.raises(ValueError):
        MultiplicityMatrix(2, (1, 0, 1))
    with pytest.raises(ValueError):
        MultiplicityMatrix(2, (1, -2, 1))


def test_rejects_wrong_entry_count():
    with pytest.raises(ValueError):
        MultiplicityMatrix(2, (1, 1))
    with pytest.raises(ValueError):
        MultiplicityMatrix(0, ())
