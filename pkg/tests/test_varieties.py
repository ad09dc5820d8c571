"""Polynomial parsing/evaluation, fiber enumeration, decay spectra,
exceptional sets, and character sums."""

import math

import numpy as np
import pytest

from ffdist.errors import (
    ArityMismatch,
    CharacteristicDividesExponent,
    DegreeSharesCharacteristic,
    PolynomialSyntaxError,
    VariableOutOfRange,
    ZeroPolynomial,
)
from ffdist.field import decode_point, make_field
from ffdist.fourier import fourier_transform, indicator_grid
from ffdist.varieties import (
    PointSet,
    decay_spectrum,
    diagonal_polynomial,
    evaluate,
    exceptional_set,
    full_grid,
    make_polynomial,
    parse_polynomial,
    phase_sum,
    phase_sweep,
    value_grid,
    variety,
    weil_sum,
)

F5 = make_field(5)
F7 = make_field(7)
F13 = make_field(13)


class TestParser:
    def test_sum_of_squares(self):
        P = parse_polynomial("x1^2 + x2^2", F7, 2)
        assert P.kind == "diagonal"
        assert set(P.terms) == {(1, (2, 0)), (1, (0, 2))}

    def test_coefficient_reduces(self):
        P = parse_polynomial("9*x1^3 + x2^2", F7, 2)
        assert (2, (3, 0)) in P.terms

    def test_variable_index_is_one_based(self):
        with pytest.raises(VariableOutOfRange):
            parse_polynomial("x0^2", F7, 2)
        with pytest.raises(VariableOutOfRange):
            parse_polynomial("x3", F7, 2)

    def test_minus_negates_coefficient(self):
        P = parse_polynomial("x1^2 - x2^2", F7, 2)
        assert set(P.terms) == {(1, (2, 0)), (6, (0, 2))}
        assert P.kind == "diagonal"

    def test_like_terms_merge(self):
        P = parse_polynomial("x1 + 2*x1 + x2", F7, 2)
        assert (3, (1, 0)) in P.terms

    def test_cancellation_raises(self):
        with pytest.raises(ZeroPolynomial):
            parse_polynomial("7*x1", F7, 1)
        with pytest.raises(ZeroPolynomial):
            parse_polynomial("x1 + 6*x1", F7, 1)

    @pytest.mark.parametrize("bad", ["", "x1^", "2x1", "x1**2", "x1^2 *", "y1", "x1^0"])
    def test_syntax_errors(self, bad):
        with pytest.raises(PolynomialSyntaxError):
            parse_polynomial(bad, F7, 2)

    def test_whitespace_ignored(self):
        a = parse_polynomial("  x1 ^2+ 3 * x2 ", F7, 2)
        b = parse_polynomial("x1^2+3*x2", F7, 2)
        assert a == b

    def test_kind_general_when_variable_missing(self):
        assert parse_polynomial("x1^2", F7, 2).kind == "general"
        assert parse_polynomial("x1^2 + x1", F7, 1).kind == "general"

    def test_degree(self):
        assert parse_polynomial("x1^3 + x2^2", F7, 2).degree == 3


class TestEvaluate:
    def test_diagonal_vanishes_at_origin(self):
        P = parse_polynomial("3*x1^4 + x2^2", F7, 2)
        assert evaluate(P, (0, 0)) == 0

    def test_point_value(self):
        P = parse_polynomial("x1^2 + x2^2", F7, 2)
        assert evaluate(P, (1, 2)) == 5

    def test_cube_over_f5(self):
        P = parse_polynomial("x1^3", F5, 1)
        assert evaluate(P, (2,)) == 3

    def test_arity_mismatch(self):
        P = parse_polynomial("x1^2", F7, 1)
        with pytest.raises(ArityMismatch):
            evaluate(P, (1, 2))

    def test_value_grid_matches_pointwise_evaluation(self):
        P = parse_polynomial("2*x1^3 + x2^2 + x1", F5, 2)
        vg = value_grid(P)
        for idx in range(25):
            assert vg[idx] == evaluate(P, decode_point(F5, idx, 2))


def brute_circle_count(p, t):
    """Oracle: pure modular arithmetic count of x^2 + y^2 = t over F_p."""
    return sum(1 for x in range(p) for y in range(p) if (x * x + y * y) % p == t)


class TestVariety:
    def test_unit_circle_over_f7_has_eight_points(self):
        assert brute_circle_count(7, 1) == 8
        P = parse_polynomial("x1^2 + x2^2", F7, 2)
        assert variety(P, 1).size == 8

    def test_every_fiber_matches_brute_count(self):
        P = parse_polynomial("x1^2 + x2^2", F13, 2)
        for t in range(13):
            assert variety(P, t).size == brute_circle_count(13, t)

    def test_zero_fiber_of_diagonal_contains_origin(self):
        P = parse_polynomial("x1^3 + 2*x2^2", F7, 2)
        assert 0 in variety(P, 0).indices

    def test_nonzero_fibers_near_q(self):
        P = parse_polynomial("x1^2 + x2^2", F7, 2)
        lo, hi = 7 - 2 * math.sqrt(7) - 1, 7 + 2 * math.sqrt(7) + 1
        for t in range(1, 7):
            assert lo <= variety(P, t).size <= hi

    @pytest.mark.parametrize(
        "text,d,F", [("x1^2+x2^2", 2, F7), ("x1^3+x2^2", 2, F5), ("x1^2+x2^2+x3^2", 3, F7)]
    )
    def test_fibers_partition_the_grid(self, text, d, F):
        P = parse_polynomial(text, F, d)
        assert sum(variety(P, t).size for t in range(F.q)) == F.q**d

    @pytest.mark.parametrize("text,d,F", [("x1^2-x2^2", 2, F7), ("x1^3+x2^3", 2, F7)])
    def test_schwartz_zippel_bound(self, text, d, F):
        P = parse_polynomial(text, F, d)
        for t in range(F.q):
            assert variety(P, t).size <= P.degree * F.q ** (d - 1)

    @pytest.mark.parametrize("q", [7, 11, 13])
    @pytest.mark.parametrize("d", [2, 3])
    def test_nonzero_fiber_relative_deviation(self, q, d):
        F = make_field(q)
        P = diagonal_polynomial(F, d, 2)
        dev = max(
            abs(variety(P, t).size / q ** (d - 1) - 1.0) for t in range(1, q)
        )
        assert dev < 0.9

    def test_point_set_sorted_unique(self):
        ps = PointSet(F7, 2, np.array([5, 1, 5, 3]))
        assert ps.indices.tolist() == [1, 3, 5]
        assert ps.size == 3


class TestDecay:
    def test_circle_sharp_constant_at_t1(self):
        P = parse_polynomial("x1^2 + x2^2", F7, 2)
        e = decay_spectrum(P)[1]
        assert e.c_sharp <= 3.0
        assert abs(e.c_sharp - 1.6985569235631093) < 1e-9  # frozen brute-force value

    def test_circle_zero_fiber_fallback_when_minus_one_is_square(self):
        P = parse_polynomial("x1^2 + x2^2", F13, 2)
        e = decay_spectrum(P)[0]
        assert e.classification == "fallback"
        assert e.c_sharp > 3.0
        assert e.c_fallback <= 3.0
        assert e.variety_size == 2 * 13 - 1  # two crossing lines

    def test_empty_fiber_has_zero_spectrum(self):
        P = parse_polynomial("x1^2", F7, 1)
        e = decay_spectrum(P)[3]  # 3 is not a square mod 7
        assert variety(P, 3).size == 0
        assert e.max_nonzero_freq == 0.0

    def test_fiber_transforms_sum_to_zero_off_origin(self):
        # fibers partition the grid, so their transforms cancel for m != 0
        for text in ("x1^2+x2^2", "x1^2-x2^2"):
            P = parse_polynomial(text, F7, 2)
            total = np.zeros(49, dtype=np.complex128)
            for t in range(7):
                total += fourier_transform(
                    indicator_grid(F7, 2, variety(P, t).indices)
                ).values
            assert np.max(np.abs(total[1:])) < 1e-9

    def test_characteristic_check(self):
        F4 = make_field(2, 2)
        P = diagonal_polynomial(F4, 2, 2)
        with pytest.raises(CharacteristicDividesExponent):
            decay_spectrum(P, check_characteristic=True)
        # without the check the spectrum is still computed
        assert len(decay_spectrum(P)) == 4


class TestExceptionalSets:
    def test_two_lines_fiber_flagged_at_tight_threshold(self):
        # the t = 0 fiber of x1^2 - x2^2 is two crossing lines; its decay
        # constant sits near sqrt(q), above kappa = 2 but below 3 at q = 7
        P = parse_polynomial("x1^2 - x2^2", F7, 2)
        rep = exceptional_set(P, kappa_sharp=2.0)
        assert 0 in rep.T
        assert 0 in rep.A
        assert not rep.size_hypothesis_droppable

    def test_two_lines_fiber_flagged_at_default_threshold_q13(self):
        P = parse_polynomial("x1^2 - x2^2", F13, 2)
        rep = exceptional_set(P)
        assert set(rep.T) == {0}
        assert set(rep.A) == {0}

    def test_sphere_three_dims_all_sharp(self):
        P = parse_polynomial("x1^2 + x2^2 + x3^2", F7, 3)
        rep = exceptional_set(P, kappa_sharp=3.0)
        assert rep.T <= {0}
        assert rep.A == frozenset()
        assert rep.size_hypothesis_droppable

    def test_vu_cardinality_bound(self):
        P = parse_polynomial("x1^2 - x2^2", F13, 2)
        rep = exceptional_set(P, nondegenerate=True)
        assert rep.vu_bound_ok is True  # |T| = 1 <= degree - 1
        rep2 = exceptional_set(P)
        assert rep2.vu_bound_ok is None  # non-degeneracy is user-asserted

    def test_small_fiber_lands_in_T_by_size(self):
        # q = 7: the zero fiber of the circle is just the origin
        P = parse_polynomial("x1^2 + x2^2", F7, 2)
        rep = exceptional_set(P)
        assert 0 in rep.T
        assert variety(P, 0).size == 1


class TestWeilSum:
    def test_nonconstant_linear_sums_to_zero(self):
        f = parse_polynomial("3*x1", F7, 1)
        res = weil_sum(f)
        assert abs(res.value) < 1e-12
        assert res.bound == 0.0
        assert res.ok

    def test_square_sum_has_gauss_magnitude(self):
        res = weil_sum(parse_polynomial("x1^2", F7, 1))
        assert abs(abs(res.value) - math.sqrt(7)) < 1e-9
        assert res.ok

    def test_cube_sum_obeys_weil_bound(self):
        res = weil_sum(parse_polynomial("x1^3", F7, 1))
        assert abs(res.value) <= 2 * math.sqrt(7) + 1e-9
        assert abs(abs(res.value) - 4.740938811152401) < 1e-9  # frozen direct sum
        assert res.ok

    def test_characteristic_divides_degree(self):
        F4 = make_field(2, 2)
        res = weil_sum(parse_polynomial("x1^2", F4, 1))
        assert res.ok is None
        assert not res.hypothesis_ok
        with pytest.raises(DegreeSharesCharacteristic):
            weil_sum(parse_polynomial("x1^2", F4, 1), require_hypothesis=True)

    def test_multivariate_rejected(self):
        with pytest.raises(ArityMismatch):
            weil_sum(parse_polynomial("x1 + x2", F7, 2))

    @pytest.mark.parametrize("p", [5, 7])
    def test_exhaustive_monic_quadratics_and_cubics(self, p):
        F = make_field(p)
        for c in (2, 3):
            for body in range(p**c):
                coeffs = []
                k = body
                for _ in range(c):
                    coeffs.append(k % p)
                    k //= p
                terms = [(1, (c,))] + [
                    (a, (i,)) for i, a in enumerate(coeffs) if a
                ]
                f = make_polynomial(F, 1, terms)
                assert weil_sum(f).ok


class TestPhaseSum:
    def test_zero_s_nonzero_m_vanishes(self):
        P = parse_polynomial("x1^2 + x2^2", F7, 2)
        assert abs(phase_sum(P, 0, (1, 0))) < 1e-9

    def test_gauss_square_magnitude(self):
        P = parse_polynomial("x1^2 + x2^2", F7, 2)
        assert abs(abs(phase_sum(P, 1, (0, 0))) - 7.0) < 1e-9

    def test_factored_equals_direct_exhaustively(self):
        P = parse_polynomial("x1^2 + x2^3", F7, 2)
        for s in range(7):
            for mi in range(49):
                m = decode_point(F7, mi, 2)
                a = phase_sum(P, s, m, method="direct")
                b = phase_sum(P, s, m, method="factored")
                assert abs(a - b) < 1e-9 * 49

    def test_factored_requires_diagonal(self):
        P = parse_polynomial("x1^2", F7, 2)
        with pytest.raises(ArityMismatch):
            phase_sum(P, 1, (0, 0), method="factored")

    def test_mixed_diagonal_sweep_under_product_bound(self):
        P = parse_polynomial("x1^2 + x2^3", F7, 2)
        sweep = phase_sweep(P)
        assert sweep.weil_product_bound == pytest.approx(14.0)
        assert sweep.max_abs <= 14.0 + 1e-9
        assert sweep.max_abs == pytest.approx(12.543345075283467, abs=1e-9)

    def test_sweep_ratio_definition(self):
        P = parse_polynomial("x1^2", F7, 1)
        sweep = phase_sweep(P)
        assert sweep.max_ratio == pytest.approx(sweep.max_abs / math.sqrt(7))
