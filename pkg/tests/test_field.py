"""Field construction, exact arithmetic, trace, and character identities."""

import cmath

import numpy as np
import pytest

from ffdist.errors import DegreeOutOfRange, NonPrime, ReducibleModulus
from ffdist.field import (
    decode_point,
    encode_point,
    field_from_order,
    is_prime,
    make_field,
    mul_table,
    pow_table,
    sub_table,
)


def brute_first_irreducible_quadratic(p):
    """Oracle: scan monic quadratics x^2 + b*x + c in lex order of the
    coefficient vector (c, b, 1) and return the first with no root, checking
    by pure modular arithmetic."""
    for c in range(p):
        for b in range(p):
            if all((r * r + b * r + c) % p for r in range(p)):
                return (c, b, 1)
    raise AssertionError


class TestConstruction:
    def test_prime_field_has_no_modulus(self):
        F = make_field(7, 1)
        assert (F.p, F.n, F.q, F.modulus) == (7, 1, 7, None)

    def test_smallest_irreducible_quadratic_over_f3(self):
        # oracle: exhaustive lexicographic search by hand arithmetic
        assert brute_first_irreducible_quadratic(3) == (1, 0, 1)
        F9 = make_field(3, 2)
        assert F9.modulus == (1, 0, 1)

    @pytest.mark.parametrize("p", [5, 7, 11])
    def test_smallest_quadratic_matches_oracle(self, p):
        assert make_field(p, 2).modulus == brute_first_irreducible_quadratic(p)

    def test_nonprime_rejected(self):
        with pytest.raises(NonPrime):
            make_field(4, 1)
        with pytest.raises(NonPrime):
            make_field(1, 1)

    def test_degree_out_of_range(self):
        with pytest.raises(DegreeOutOfRange):
            make_field(3, 0)
        with pytest.raises(DegreeOutOfRange):
            make_field(3, 5)

    def test_reducible_modulus_rejected(self):
        with pytest.raises(ReducibleModulus):
            make_field(3, 2, (0, 0, 1))  # x^2
        with pytest.raises(ReducibleModulus):
            make_field(2, 2, (1, 0, 1))  # x^2 + 1 = (x+1)^2 over F_2

    def test_wrong_degree_modulus_rejected(self):
        with pytest.raises(DegreeOutOfRange):
            make_field(3, 2, (1, 0, 0, 1))
        with pytest.raises(DegreeOutOfRange):
            make_field(3, 2, (1, 0, 2))  # not monic

    def test_explicit_modulus_accepted(self):
        F = make_field(3, 2, (2, 1, 1))  # x^2 + x + 2, irreducible over F_3
        assert F.q == 9

    def test_field_from_order(self):
        assert field_from_order(9).p == 3
        assert field_from_order(8).n == 3
        with pytest.raises(NonPrime):
            field_from_order(12)

    def test_is_prime(self):
        assert [n for n in range(2, 20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


class TestArithmetic:
    def test_prime_field_add(self):
        F = make_field(7)
        assert F.add(3, 5) == 1

    def test_extension_generator_square(self):
        # x * x reduces to -1 = 2 modulo x^2 + 1 (hand oracle)
        F9 = make_field(3, 2)
        x = encode_point(F9, (3,))  # encoding 3 = digits (0,1) = the class of x
        assert F9.mul(3, 3) == 2

    def test_fermat_little(self):
        F = make_field(7)
        assert F.pow(3, 6) == 1

    @pytest.mark.parametrize("p,n", [(7, 1), (3, 2), (2, 3), (2, 4), (5, 2)])
    def test_every_nonzero_element_inverts(self, p, n):
        F = make_field(p, n)
        for a in range(1, F.q):
            assert F.mul(a, F.pow(a, F.q - 2)) == 1
            assert F.mul(a, F.inv(a)) == 1

    @pytest.mark.parametrize("p,n", [(5, 1), (3, 2), (2, 3)])
    def test_commutative_associative(self, p, n):
        F = make_field(p, n)
        for a in range(F.q):
            for b in range(F.q):
                assert F.mul(a, b) == F.mul(b, a)
                assert F.add(a, b) == F.add(b, a)
        for a in range(F.q):
            for b in range(F.q):
                for c in range(0, F.q, max(1, F.q // 4)):
                    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))

    def test_sub_neg_consistency(self):
        F9 = make_field(3, 2)
        for a in range(9):
            for b in range(9):
                assert F9.add(F9.sub(a, b), b) == a
        assert F9.neg(0) == 0

    def test_element_reduces_mod_q(self):
        F = make_field(7)
        assert F.element(9) == 2
        assert F.element(-1) == 6
        F9 = make_field(3, 2)
        assert F9.element(11) == 2

    def test_tables_agree_with_scalar_ops(self):
        for F in (make_field(7), make_field(3, 2)):
            mt, st = mul_table(F), sub_table(F)
            for a in range(F.q):
                for b in range(F.q):
                    assert mt[a, b] == F.mul(a, b)
                    assert st[a, b] == F.sub(a, b)
            assert list(pow_table(F, 3)) == [F.pow(a, 3) for a in range(F.q)]
            assert pow_table(F, 0)[0] == 1  # 0^0 convention


class TestTrace:
    def test_identity_on_prime_field(self):
        F = make_field(11)
        for a in range(11):
            assert F.trace(a) == a

    def test_f9_generator_trace_zero(self):
        # x + x^3 = x - x = 0 once x^2 = -1
        F9 = make_field(3, 2)
        assert F9.trace(3) == 0

    def test_f9_trace_of_one(self):
        assert make_field(3, 2).trace(1) == 2

    @pytest.mark.parametrize("p,n", [(3, 2), (2, 3), (5, 2)])
    def test_linearity(self, p, n):
        F = make_field(p, n)
        for a in range(F.q):
            for b in range(F.q):
                assert F.trace(F.add(a, b)) == (F.trace(a) + F.trace(b)) % p
            for lam in range(p):
                assert F.trace(F.mul(lam, a)) == (lam * F.trace(a)) % p

    def test_trace_lands_in_prime_subfield(self):
        F = make_field(2, 4)
        for a in range(F.q):
            assert 0 <= F.trace(a) < 2


class TestCharacter:
    def test_chi_zero_is_one(self):
        assert make_field(7).chi(0) == 1

    def test_prime_field_chi_is_root_of_unity(self):
        F = make_field(7)
        assert abs(F.chi(1) - cmath.exp(2j * cmath.pi / 7)) < 1e-12

    def test_sum_over_field_vanishes(self):
        F9 = make_field(3, 2)
        assert abs(sum(F9.chi(a) for a in range(9))) < 1e-9

    @pytest.mark.parametrize("p,n", [(7, 1), (3, 2), (2, 3), (13, 1)])
    def test_unit_modulus(self, p, n):
        F = make_field(p, n)
        assert np.max(np.abs(np.abs(F.char_table) - 1.0)) < 1e-12

    @pytest.mark.parametrize("p,n", [(7, 1), (3, 2), (2, 3)])
    def test_multiplicative(self, p, n):
        F = make_field(p, n)
        for a in range(F.q):
            for b in range(F.q):
                assert abs(F.chi(F.add(a, b)) - F.chi(a) * F.chi(b)) < 1e-12

    @pytest.mark.parametrize("p,n", [(7, 1), (3, 2), (11, 1)])
    def test_orthogonality_for_every_scaling(self, p, n):
        F = make_field(p, n)
        for c in range(1, F.q):
            total = sum(F.chi(F.mul(c, a)) for a in range(F.q))
            assert abs(total) < 1e-9 * F.q


class TestEncoding:
    def test_roundtrip(self):
        F = make_field(5)
        for idx in range(125):
            assert encode_point(F, decode_point(F, idx, 3)) == idx

    def test_first_coordinate_is_fastest(self):
        F = make_field(5)
        assert decode_point(F, 1, 3) == (1, 0, 0)
        assert decode_point(F, 5, 3) == (0, 1, 0)
        assert encode_point(F, (0, 0, 1)) == 25
