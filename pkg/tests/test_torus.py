from __future__ import annotations

import cmath
import itertools
import random
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import laurent, polynomials
from iwalink.errors import DimensionMismatch, ScaleExceeded
from iwalink.polyring import LaurentPoly, poly, shift_substitute, vp
from iwalink.torus import (TorusProduct, TorusRegion, Vanishes, factor_binomials, has_zero,
                           norm_det_oracle, orbit_valuations, region_count, region_product,
                           sigma, solve_subgroup, subgroup_order, torus_product, valuation_sum,
                           zeros)
from iwalink.torus import _orbit_order, _orbit_order_taylor, _reduced

T1 = poly(1, {(1,): 1})


def _T1(d):
    return LaurentPoly.from_dict(d, {(1,) + (0,) * (d - 1): 1})


# --- independent oracle: complex floating point over explicit Galois orbits --

def _value(F, x, N):
    z = 0
    for e, c in F.terms:
        z += c * cmath.exp(2j * cmath.pi * sum(a * b for a, b in zip(e, x)) / N)
    return z


def _orbits(points, N):
    seen, out = set(), []
    units = [a for a in range(1, N) if gcd(a, N) == 1] or [1]
    for x in points:
        if x in seen:
            continue
        orb = {tuple(a * v % N for v in x) for a in units}
        seen |= orb
        out.append(sorted(orb))
    return out


def brute_valuation_sum(F, region, policy="skip"):
    """Sum of v(F(zeta)) over the region via rounded orbit norms."""
    N, total = region.N, 0
    for orb in _orbits(list(region.points()), N):
        norm = 1
        for x in orb:
            norm *= _value(F, x, N)
        value = round(norm.real)
        assert abs(norm - value) < 1e-6
        if value == 0:
            if policy == "strict":
                return Vanishes
            continue
        total += vp(value, region.p)
    return total


def brute_product(F, region):
    prod = 1
    for x in region.points():
        prod *= _value(F, x, region.N)
    value = round(prod.real)
    assert abs(prod - value) < 1e-6 * max(1, abs(value))
    return value


def brute_solutions(rows, p, n, d):
    N = p ** n
    return {x for x in itertools.product(range(N), repeat=d)
            if all(sum(a * b for a, b in zip(v, x)) % N == 0 for v in rows)}


small_rows = st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), max_size=2)
small_regions = st.builds(
    lambda p, n, eq, neq: TorusRegion(p, n, 2, tuple(eq), tuple(neq)),
    st.sampled_from([2, 3]), st.integers(0, 2),
    st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), max_size=1),
    st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), max_size=2))


# --- subgroups -------------------------------------------------------------

class TestSubgroups:
    def test_examples(self):
        b = solve_subgroup([(1, 0)], 2, 1, 2)
        assert b.generators == ((0, 1),) and b.orders == (2,)
        b = solve_subgroup([], 3, 2, 2)
        assert b.generators == ((1, 0), (0, 1)) and b.orders == (9, 9)
        b = solve_subgroup([(1, 1)], 2, 1, 2)
        assert b.generators == ((1, 1),) and b.orders == (2,)

    @given(st.sampled_from([2, 3, 5]), st.integers(0, 2), small_rows)
    def test_order_matches_enumeration(self, p, n, rows):
        if p ** n > 27:
            return
        sols = brute_solutions(rows, p, n, 2)
        assert subgroup_order(rows, p, n, 2) == len(sols)
        basis = solve_subgroup(rows, p, n, 2)
        pts = list(basis.points())
        assert len(pts) == len(set(pts)) == basis.order()
        assert set(pts) == sols

    @given(small_regions)
    def test_region_count(self, region):
        assert region_count(region) == sum(1 for _ in region.points())


# --- products ---------------------------------------------------------------

class TestProducts:
    def test_examples(self):
        b = solve_subgroup([], 2, 1, 1)
        assert torus_product(poly(1, {(1,): 1, (0,): -3}), b) == TorusProduct(8, 3)
        x = torus_product(poly(1, {(1,): 1}), solve_subgroup([], 3, 2, 1))
        assert abs(x.value) == 1 and x.valuation == 0
        assert torus_product(poly(1, {(1,): 1, (0,): -1}), solve_subgroup([], 3, 1, 1)).vanishes

    def test_norm_det_examples(self):
        assert norm_det_oracle(poly(1, {(1,): 1, (0,): -3}), 2, 1) == 8
        assert norm_det_oracle(LaurentPoly.constant(1, 1), 3, 2) == 1
        assert norm_det_oracle(poly(2, {(2, 2): 1, (1, 1): 1, (0, 0): 1}), 2, 1) == 9
        with pytest.raises(ScaleExceeded):
            norm_det_oracle(T1, 3, 3)

    @given(laurent(2, lo=-2, hi=3, coeff=4), st.sampled_from([(2, 1), (2, 2), (3, 1)]))
    def test_torus_product_matches_oracle(self, F, pn):
        p, n = pn
        if F.is_zero():
            return
        tp = torus_product(F, solve_subgroup([], p, n, 2))
        det = norm_det_oracle(F, p, n)
        assert (tp.value if not tp.vanishes else 0) == det

    @given(laurent(2, coeff=3, max_terms=3), small_regions)
    def test_region_product_matches_brute(self, F, region):
        if F.is_zero() or region.N > 9:
            return
        got = region_product(F, region)
        want = brute_product(F, region)
        assert (0 if got is Vanishes else got) == want

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            torus_product(T1, solve_subgroup([], 2, 1, 2))


# --- valuation sums ----------------------------------------------------------

class TestSigma:
    def test_examples(self):
        assert sigma(_T1(2), TorusRegion.full(3, 2, 2)) == 18
        assert sigma(LaurentPoly.constant(2, 2), TorusRegion.full(2, 1, 2)) == 4
        assert sigma(LaurentPoly.constant(1, 3), TorusRegion.punctured(3, 1, 3)) == 0

    def test_strict_policy_reports_vanishing(self):
        assert sigma(_T1(2), TorusRegion.full(3, 1, 2), "strict") is Vanishes
        assert sigma(_T1(2), TorusRegion.punctured(3, 2, 2), "strict") == 2 * 8

    @pytest.mark.parametrize("p", [2, 3])
    @pytest.mark.parametrize("n", [1, 2, 3])
    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_anchors(self, p, n, d):
        full = TorusRegion.full(p, n, d)
        for m in (1, 2):
            assert sigma(LaurentPoly.constant(p ** m, d), full) == m * p ** (d * n)
        assert sigma(_T1(d), full) == n * p ** (n * (d - 1))

    @given(st.lists(st.integers(-4, 4), min_size=2, max_size=2), st.sampled_from([2, 3]),
           st.integers(1, 2))
    def test_substitution_invariance(self, e, p, n):
        if gcd(*e) != 1:
            return
        F = shift_substitute(LaurentPoly.binomial(e))
        full = TorusRegion.full(p, n, 2)
        assert sigma(F, full) == sigma(_T1(2), full)

    @given(laurent(2, coeff=4, max_terms=3), small_regions, st.sampled_from(["skip", "strict"]))
    def test_engines_agree_with_brute_force(self, F, region, policy):
        if F.is_zero() or region.N > 9:
            return
        want = brute_valuation_sum(F, region, policy)
        assert valuation_sum(F, region, policy) == want
        assert valuation_sum(F, region, policy, method="orbits") == want
        if policy == "strict":
            assert valuation_sum(F, region, "strict", method="products") == want

    @given(polynomials(2, coeff=4, max_terms=3, nonzero=True),
           polynomials(2, coeff=4, max_terms=3, nonzero=True), small_regions)
    def test_additivity(self, F, G, region):
        a = sigma(F, region, "strict")
        b = sigma(G, region, "strict")
        if a is Vanishes or b is Vanishes:
            return
        assert sigma(F * G, region, "strict") == a + b

    @given(laurent(2, coeff=4, max_terms=3, nonzero=True),
           st.tuples(st.integers(-3, 3), st.integers(-3, 3)), st.sampled_from([1, -1]),
           small_regions, st.sampled_from(["skip", "strict"]))
    def test_unit_invariance(self, F, a, sign, region, policy):
        unit = LaurentPoly.monomial(a, sign)
        assert valuation_sum(unit * F, region, policy) == valuation_sum(F, region, policy)

    @given(laurent(2, coeff=4, max_terms=3, nonzero=True), st.sampled_from([2, 3]),
           st.integers(1, 2),
           st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2)), min_size=1, max_size=2))
    def test_partition(self, F, p, n, family):
        full = TorusRegion.full(p, n, 2)
        total = 0
        for pattern in itertools.product((True, False), repeat=len(family)):
            eq = [w for w, inside in zip(family, pattern) if inside]
            neq = [w for w, inside in zip(family, pattern) if not inside]
            total += valuation_sum(F, full.with_constraints(eq, neq))
        assert total == valuation_sum(F, full)


class TestOrbitEngine:
    @given(st.lists(st.integers(-9, 9), min_size=1, max_size=30), st.sampled_from([2, 3, 5]),
           st.integers(1, 3))
    def test_lucas_matches_taylor(self, coeffs, p, k):
        F = LaurentPoly.from_dict(1, {(i,): c for i, c in enumerate(coeffs)})
        if F.is_zero():
            return
        arr = _reduced(F, p, k, (1,))
        assert _orbit_order(arr, p, k) == _orbit_order_taylor(arr, p, k)

    def test_zeros(self):
        F = poly(2, {(1, 1): 1, (0, 0): -1})
        assert zeros(F, TorusRegion.punctured(2, 1, 2)) == [(1, (1, 1))]
        assert has_zero(F, TorusRegion.full(2, 1, 2))
        assert not has_zero(poly(2, {(0, 0): 2, (1, 0): 1}), TorusRegion.full(3, 2, 2))

    def test_factor_binomials(self):
        F = poly(2, {(1, 1): 3, (1, 0): -3, (0, 1): -3, (0, 0): 3})
        fp = factor_binomials(F)
        assert fp.content == 3 and dict(fp.binomials) == {(1, 0): 1, (0, 1): 1}
        assert fp.cofactor_is_unit() and fp.expand() == F

    def test_random_corpus_orbit_total(self):
        rng = random.Random(7)
        for _ in range(20):
            F = LaurentPoly.from_dict(2, {(rng.randint(0, 3), rng.randint(0, 3)):
                                          rng.randint(-3, 3) for _ in range(3)})
            if F.is_zero():
                continue
            region = TorusRegion.full(3, 1, 2)
            vals = orbit_valuations(F, region)
            assert sum(v for *_, v in vals if v is not None) == valuation_sum(F, region)
