from fractions import Fraction
from itertools import product

import pytest

from flowvol import (
    MultiplicityMatrix,
    compare_volume,
    count_lattice_points,
    dilation_counts,
    ehrhart_leading_coefficient,
    iterated_residue,
)

GOLDEN_M = MultiplicityMatrix(3, (1, 1, 2, 1, 2, 2))


def brute_force_count(m, a):
    """Enumerate integer flows edge by edge, checking node balances directly."""
    edges = []
    for (i, j) in m.pairs():
        edges.extend([(i, j)] * m.multiplicity(i, j))
    supply = list(a) + [-sum(a)]
    bound = sum(a)

    def recurse(idx, balance):
        if idx == len(edges):
            return 1 if all(b == 0 for b in balance) else 0
        i, j = edges[idx]
        total = 0
        for flow in range(bound + 1):
            if flow > balance[i - 1]:
                break  # later edges only lower node i further
            new_balance = list(balance)
            new_balance[i - 1] -= flow
            new_balance[j - 1] += flow
            total += recurse(idx + 1, new_balance)
        return total

    return recurse(0, supply)


class TestCounting:
    def test_rank_one_compositions(self):
        assert count_lattice_points(MultiplicityMatrix(1, (2,)), (3,)) == 4

    def test_rank_two_reference(self):
        assert count_lattice_points(MultiplicityMatrix(2, (1, 1, 1)), (1, 1)) == 2

    def test_zero_supply_has_the_empty_flow(self):
        assert count_lattice_points(GOLDEN_M, (0, 0, 0)) == 1

    def test_rejects_negative_and_noninteger(self):
        with pytest.raises(ValueError):
            count_lattice_points(GOLDEN_M, (1, -1, 1))
        with pytest.raises(ValueError):
            count_lattice_points(GOLDEN_M, (1, Fraction(1, 2), 1))
        with pytest.raises(ValueError):
            count_lattice_points(GOLDEN_M, (1, 1))

    @pytest.mark.parametrize("mult", list(product((1, 2), repeat=3)))
    def test_matches_brute_force_rank_two(self, mult):
        m = MultiplicityMatrix(2, mult)
        for a in product(range(4), repeat=2):
            assert count_lattice_points(m, a) == brute_force_count(m, a)

    def test_matches_brute_force_rank_three(self):
        assert count_lattice_points(GOLDEN_M, (1, 1, 1)) == brute_force_count(
            GOLDEN_M, (1, 1, 1)
        )

    def test_known_quadratic_family(self):
        # m=(2,1,1) at a=(2t, t): 1 + five choices layered, (2t+1)(t+1) points
        m = MultiplicityMatrix(2, (2, 1, 1))
        for t in range(5):
            assert count_lattice_points(m, (2 * t, t)) == (2 * t + 1) * (t + 1)

    def test_monotone_in_each_coordinate(self):
        m = MultiplicityMatrix(2, (2, 1, 2))
        for a in product(range(1, 4), repeat=2):
            base = count_lattice_points(m, a)
            assert count_lattice_points(m, (a[0] + 1, a[1])) >= base
            assert count_lattice_points(m, (a[0], a[1] + 1)) >= base


class TestDilationTable:
    def test_reference_counts(self):
        table = dilation_counts(MultiplicityMatrix(2, (2, 1, 1)), (2, 1))
        assert table.counts == (1, 6, 15)
        assert table.leading_coefficient == 2

    def test_count_at_zero_is_one(self):
        table = dilation_counts(GOLDEN_M, (1, 1, 1))
        assert table.counts[0] == 1

    def test_fit_reproduces_all_tabulated_counts(self):
        m = MultiplicityMatrix(2, (1, 1, 1))
        table = dilation_counts(m, (1, 1), t_max=m.degree + 2)
        for t, count in enumerate(table.counts):
            assert table.predicted(t) == count

    def test_extra_dilations_validate_the_polynomial(self):
        # predictions beyond the fitting window must match fresh counts
        for mult in ((1, 1, 1), (2, 1, 2)):
            m = MultiplicityMatrix(2, mult)
            table = dilation_counts(m, (1, 2))
            for t in (m.degree + 1, m.degree + 2):
                fresh = count_lattice_points(m, (t, 2 * t))
                assert table.predicted(t) == fresh

    def test_boundary_points_rejected(self):
        with pytest.raises(ValueError):
            dilation_counts(MultiplicityMatrix(2, (1, 1, 1)), (1, 0))

    def test_insufficient_dilations_rejected(self):
        with pytest.raises(ValueError):
            dilation_counts(GOLDEN_M, (1, 1, 1), t_max=2)


class TestLeadingCoefficient:
    def test_rank_one_segment(self):
        assert ehrhart_leading_coefficient(MultiplicityMatrix(1, (2,)), (1,)) == 1

    def test_rank_two_linear(self):
        assert ehrhart_leading_coefficient(MultiplicityMatrix(2, (1, 1, 1)), (1, 1)) == 1

    def test_rank_three_reference(self):
        assert ehrhart_leading_coefficient(GOLDEN_M, (1, 1, 1)) == Fraction(2, 9)


class TestPolynomialRecovery:
    def test_counting_rederives_every_reference_coefficient(self):
        # interpolate the full degree-6 volume polynomial from lattice counts
        # alone and compare with the residue engine coefficient by coefficient
        import math

        from flowvol import MultiPoly, homogeneous_monomials

        monos = homogeneous_monomials(3, GOLDEN_M.degree)
        n = len(monos)

        def row_of(p):
            return [math.prod(Fraction(x) ** e for x, e in zip(p, mono))
                    for mono in monos]

        # primitive supply vectors only: proportional points give dependent
        # rows when interpolating a homogeneous polynomial
        echelon, chosen = [], []
        for p in product(range(1, 7), repeat=3):
            if len(chosen) == n:
                break
            if math.gcd(math.gcd(p[0], p[1]), p[2]) != 1:
                continue
            work = row_of(p)
            for pivot_col, erow in echelon:
                if work[pivot_col]:
                    factor = work[pivot_col] / erow[pivot_col]
                    work = [x - factor * y for x, y in zip(work, erow)]
            pivot_col = next((i for i, x in enumerate(work) if x), None)
            if pivot_col is not None:
                echelon.append((pivot_col, work))
                chosen.append(p)
        assert len(chosen) == n

        aug = [row_of(p) + [ehrhart_leading_coefficient(GOLDEN_M, p)] for p in chosen]
        for col in range(n):
            piv = next(i for i in range(col, n) if aug[i][col])
            aug[col], aug[piv] = aug[piv], aug[col]
            aug[col] = [x / aug[col][col] for x in aug[col]]
            for i in range(n):
                if i != col and aug[i][col]:
                    factor = aug[i][col]
                    aug[i] = [x - factor * y for x, y in zip(aug[i], aug[col])]
        recovered = MultiPoly(3, {mono: aug[i][n] for i, mono in enumerate(monos)
                                  if aug[i][n]})
        assert recovered == iterated_residue(GOLDEN_M).poly


class TestCompareVolume:
    def test_quadratic_case(self):
        report = compare_volume(MultiplicityMatrix(2, (2, 1, 1)), (2, 1))
        assert report.matches
        assert report.residue_value == report.count_value == 2

    def test_point_polytope(self):
        report = compare_volume(MultiplicityMatrix(1, (1,)), (5,))
        assert report.matches
        assert report.residue_value == 1

    def test_rank_three_reference(self):
        report = compare_volume(GOLDEN_M, (1, 1, 1))
        assert report.matches
        assert report.residue_value == Fraction(2, 9)
        assert "exact match" in str(report)

    def test_sweep_small_interior_points(self):
        for rank in (1, 2, 3):
            count = rank * (rank + 1) // 2
            for mult in product((1, 2), repeat=count):
                m = MultiplicityMatrix(rank, mult)
                for a in product((1, 2), repeat=rank):
                    assert compare_volume(m, a).matches

    def test_report_text_shows_values(self):
        text = str(compare_volume(MultiplicityMatrix(2, (1, 1, 1)), (1, 1)))
        assert "a=(1,1)" in text and "1" in text
