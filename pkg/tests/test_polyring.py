from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import laurent, polynomials, unimodular2, unipolys
from iwalink.errors import (DimensionMismatch, NotDivisible, ParseError, ZeroDivisor,
                            ZeroPolynomial)
from iwalink.linalg import integer_inverse
from iwalink.polyring import (LaurentPoly, UniPoly, cyclotomic, mod_p_reduce, multiplicity,
                              p_content, poly, resultant, resultant_cyclic, resultant_uni,
                              shift_substitute, substitute_monomials, sylvester_resultant,
                              trial_divide, unshift_substitute, x_power_minus_one)

MD = poly(2, {(2, 2): 1, (1, 1): 1, (0, 0): 1})


def _det(M):
    """Plain Gaussian elimination over Q (test-local oracle)."""
    A = [[Fraction(x) for x in row] for row in M]
    n, det = len(A), Fraction(1)
    for i in range(n):
        piv = next((r for r in range(i, n) if A[r][i]), None)
        if piv is None:
            return 0
        if piv != i:
            A[i], A[piv] = A[piv], A[i]
            det = -det
        det *= A[i][i]
        for r in range(i + 1, n):
            f = A[r][i] / A[i][i]
            A[r] = [a - f * b for a, b in zip(A[r], A[i])]
    assert det.denominator == 1
    return int(det)


def _circulant_det(N, g: UniPoly) -> int:
    """Determinant of multiplication by g on Z[x]/(x^N - 1)."""
    M = [[0] * N for _ in range(N)]
    for col in range(N):
        for i, c in enumerate(g.coeffs):
            M[(col + i) % N][col] += c
    return _det(M)


# --- LaurentPoly -----------------------------------------------------------

class TestLaurentPoly:
    def test_canonical_form(self):
        P = LaurentPoly.from_dict(2, {(1, 0): 2, (0, 1): 0, (0, 0): -1})
        assert P.terms == (((0, 0), -1), ((1, 0), 2))
        assert LaurentPoly.zero(3).terms == ()

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            LaurentPoly.from_dict(2, {(1,): 1})
        with pytest.raises(DimensionMismatch):
            poly(2, {(1, 0): 1}) + poly(1, {(1,): 1})

    def test_to_string(self):
        assert MD.to_string() == "x^2*y^2 + x*y + 1"
        assert str(poly(1, {(-1,): 1, (0,): -1})) == "-1 + x^-1"

    @given(laurent(2))
    def test_json_round_trip(self, P):
        assert LaurentPoly.from_json(P.to_json()) == P
        assert P.to_json() == LaurentPoly.from_json(P.to_json()).to_json()

    def test_json_errors_name_the_field(self):
        with pytest.raises(ParseError) as exc:
            LaurentPoly.from_json('{"vars": ["x"], "terms": [{"e": [1, 2], "c": "1"}]}')
        assert exc.value.field == "terms[0].e"
        with pytest.raises(ParseError) as exc:
            LaurentPoly.from_json('{"vars": ["x"],\n "terms": [}')
        assert exc.value.line == 2

    @given(laurent(2), laurent(2), laurent(2))
    def test_ring_axioms(self, P, Q, R):
        assert (P + Q) * R == P * R + Q * R
        assert P * Q == Q * P
        assert (P * Q) * R == P * (Q * R)
        assert P - P == LaurentPoly.zero(2)

    @given(laurent(2), unimodular2())
    def test_unimodular_round_trip(self, P, M):
        assert substitute_monomials(substitute_monomials(P, M), integer_inverse(M)) == P

    @given(laurent(2, nonzero=True))
    def test_unshift_round_trip(self, P):
        Q = shift_substitute(P)
        assert min(Q.min_exponents()) >= 0
        clear = tuple(max(0, -m) for m in P.min_exponents())
        assert unshift_substitute(Q) == P.shift_exponents(clear)


class TestSubstitutions:
    def test_shift_examples(self):
        T1T2 = poly(2, {(1, 1): 1})
        assert shift_substitute(poly(2, {(1, 1): 1, (1, 0): -1, (0, 1): -1, (0, 0): 1})) == T1T2
        expected = poly(2, {(2, 2): 1, (2, 1): 2, (1, 2): 2, (2, 0): 1, (1, 1): 5, (0, 2): 1,
                            (1, 0): 3, (0, 1): 3, (0, 0): 3})
        assert shift_substitute(MD) == expected
        # t^-1 - 1 is cleared by t: 1 - t = -T
        assert shift_substitute(poly(1, {(-1,): 1, (0,): -1})) == poly(1, {(1,): -1})

    def test_shift_zero(self):
        with pytest.raises(ZeroPolynomial):
            shift_substitute(LaurentPoly.zero(2))

    def test_substitute_examples(self):
        P = poly(2, {(1, 1): 1, (0, 0): -1})
        assert substitute_monomials(P, [[1, 0], [0, 1]]) == P
        assert substitute_monomials(poly(2, {(0, 0): 1, (1, 1): 1}), [[1], [1]]) == \
            poly(1, {(0,): 1, (2,): 1})
        # t1^2 - 1 under the inverse of a completion of (1, 0): stays t1^2 - 1; the
        # caller reduces the primitive direction (1, 0) separately
        assert substitute_monomials(poly(1, {(2,): 1, (0,): -1}), [[1, 0]]) == \
            poly(2, {(2, 0): 1, (0, 0): -1})

    def test_mod_p_and_content(self):
        assert mod_p_reduce(poly(2, {(1, 0): 3, (0, 1): 1}), 3) == poly(2, {(0, 1): 1})
        reduced = mod_p_reduce(shift_substitute(MD), 3)
        assert reduced == poly(2, {(2, 2): 1, (2, 1): 2, (1, 2): 2, (2, 0): 1, (1, 1): 2,
                                   (0, 2): 1})
        assert mod_p_reduce(LaurentPoly.zero(1), 5).is_zero()
        assert p_content(shift_substitute(poly(2, {(1, 1): 9, (1, 0): -9, (0, 1): -9,
                                                   (0, 0): 9})), 3) == 2
        assert p_content(MD, 7) == 0
        assert p_content(poly(1, {(1,): 12, (0,): 4}), 2) == 2
        with pytest.raises(ZeroPolynomial):
            p_content(LaurentPoly.zero(1), 2)


class TestTrialDivide:
    def test_examples(self):
        T1T2, T1 = poly(2, {(1, 1): 1}), poly(2, {(1, 0): 1})
        assert trial_divide(T1T2, T1) == poly(2, {(0, 1): 1})
        with pytest.raises(NotDivisible):
            trial_divide(poly(2, {(1, 0): 1, (0, 1): 1}), T1, ring="polynomial")
        # in the Laurent ring T1 is a unit
        assert trial_divide(poly(2, {(1, 0): 1, (0, 1): 1}), T1) == poly(2, {(0, 0): 1, (-1, 1): 1})

    def test_square_mod_3(self):
        P = mod_p_reduce(shift_substitute(MD), 3)
        D = poly(2, {(1, 1): 1, (1, 0): 1, (0, 1): 1})  # (1+T1)(1+T2) - 1
        Q = trial_divide(P, D, modulus=3)
        assert Q == D
        assert multiplicity(P, D, modulus=3) == 2

    def test_zero_divisor(self):
        with pytest.raises(ZeroDivisor):
            trial_divide(poly(1, {(1,): 1}), LaurentPoly.zero(1))

    @given(laurent(2, nonzero=True), laurent(2, nonzero=True))
    def test_exact_products_divide(self, P, D):
        assert trial_divide(P * D, D) == P

    @given(polynomials(2, nonzero=True, hi=2), polynomials(2, nonzero=True, hi=2))
    def test_exact_products_divide_mod_p(self, P, D):
        p = 3
        P, D = mod_p_reduce(P, p), mod_p_reduce(D, p)
        if P.is_zero() or D.is_zero():
            return
        assert trial_divide(mod_p_reduce(P * D, p), D, modulus=p) == P


# --- resultants ------------------------------------------------------------

class TestResultant:
    def test_examples(self):
        assert resultant_uni(UniPoly((1, 1)), UniPoly((1, -1, 1))) == 3   # Res(Phi2, Phi6)
        assert resultant_uni(UniPoly((-1, 1)), UniPoly((1, 1))) == 2
        assert resultant_uni(x_power_minus_one(4), UniPoly((-3, 1))) == 80

    def test_cyclotomic(self):
        assert cyclotomic(2, 2).coeffs == (1, 0, 1)
        assert cyclotomic(3, 1).coeffs == (1, 1, 1)
        assert cyclotomic(7, 0).coeffs == (-1, 1)

    @pytest.mark.parametrize("p,n", [(2, 4), (3, 3), (5, 2)])
    def test_cyclotomic_product(self, p, n):
        prod = UniPoly((1,))
        for k in range(n + 1):
            prod = prod * cyclotomic(p, k)
        assert prod.coeffs == x_power_minus_one(p ** n).coeffs

    @given(unipolys(), unipolys(), unipolys())
    def test_multiplicative(self, f, g, h):
        assert resultant(f, g * h) == resultant(f, g) * resultant(f, h)

    @given(unipolys(5), unipolys(5))
    def test_matches_sylvester(self, f, g):
        assert resultant(f, g) == sylvester_resultant(f, g)

    @given(st.sampled_from([2, 3, 4, 5, 8, 9]), unipolys(6))
    def test_cyclic_matches_circulant(self, N, g):
        assert resultant_cyclic(N, g) == _circulant_det(N, g)

    @given(st.sampled_from([4, 9, 16, 25, 27]), unipolys(6))
    def test_power_method_matches_direct(self, N, g):
        assert resultant_cyclic(N, g, direct_limit=0) == resultant_cyclic(N, g)

    def test_large_cyclic(self):
        # prod over N-th roots of (zeta - 3) = (-1)^N (3^N - 1)
        N = 5 ** 5
        assert resultant_cyclic(N, UniPoly((-3, 1))) == -(3 ** N - 1)
