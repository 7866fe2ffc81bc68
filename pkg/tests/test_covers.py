from __future__ import annotations

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from iwalink.covers import (CoverSpec, Infinite, LinkPresentation, PAdic,
                            homology_exponent_branched, homology_growth, homology_order_full,
                            homology_order_tln, padic_limit_nonp, reduced_alexander, teichmuller,
                            tln_polynomial, torres_check, vanishing_check)
from iwalink.errors import (MissingLinkingNumbers, MissingSublink, NotStabilized, ParseError,
                            PrecisionError, SurjectivityFailure, UnsupportedBase)
from iwalink.families import catalog, catalog_names
from iwalink.iwasawa import lambda_by_factors, mu_invariant
from iwalink.polyring import LaurentPoly, poly, shift_substitute, vp

ONE = LaurentPoly.constant(1, 1)


def whitehead(k):
    return catalog(f"W{k}").link


def whitehead_formula(kappa, p, n):
    return (kappa * p ** n + 2 * n - 2 * kappa) * p ** n - 2 * n + kappa


class TestLinkPresentation:
    def test_json_round_trip(self):
        for name in catalog_names():
            link = catalog(name).link
            again = LinkPresentation.from_json_obj(json.loads(link.to_json()))
            assert again == link and again.to_json() == link.to_json()

    def test_delta(self):
        link = whitehead(2)
        assert link.delta(()).is_constant() and link.delta(()).constant_term() == 1
        assert link.full() == poly(2, {(1, 1): 1, (1, 0): -1, (0, 1): -1, (0, 0): 1})
        with pytest.raises(MissingSublink):
            catalog("6_3^3").link.delta((1,))
        with pytest.raises(MissingLinkingNumbers):
            catalog("4_1^2").link.linking(1, 2)

    def test_requires_full_polynomial(self):
        with pytest.raises(MissingSublink):
            LinkPresentation.build(2, {(1,): ONE})

    def test_parse_errors(self):
        with pytest.raises(ParseError):
            LinkPresentation.from_json_obj({"c": 2, "sublinks": {"1,2": "nope"}})
        with pytest.raises(ParseError):
            LinkPresentation.from_json_obj({"c": 0, "sublinks": {}})

    def test_qhs3_rejected(self):
        obj = whitehead(2).to_json_obj()
        obj["base"] = "QHS3"
        link = LinkPresentation.from_json_obj(obj)
        with pytest.raises(UnsupportedBase):
            homology_exponent_branched(link, CoverSpec.identity(3, 2), 1)


class TestCoverSpec:
    def test_surjectivity(self):
        with pytest.raises(SurjectivityFailure):
            CoverSpec(3, 2, ((1, 1), (2, 2)))
        with pytest.raises(SurjectivityFailure):
            CoverSpec(2, 2, ((1, 0), (1, 2)))

    def test_padic_entries(self):
        spec = CoverSpec.from_json_obj({"p": 3, "d": 2, "V": [[1, 0], [{"digits": [1, 2], "precision": 2}, 1]]})
        assert spec.matrix_at_level(1) == [[1, 0], [1, 1]]
        assert spec.matrix_at_level(2) == [[1, 0], [7, 1]]
        with pytest.raises(PrecisionError):
            spec.matrix_at_level(3)
        assert CoverSpec.from_json_obj(spec.to_json_obj()) == spec

    @given(st.integers(0, 80), st.integers(1, 3))
    def test_padic_lift_invariance(self, a, n):
        """Only the residue mod p^n matters at level n."""
        p, link = 3, whitehead(1)
        r = a % p ** n
        digits = [(r // p ** i) % p for i in range(n)]
        lift = digits + [1, 2]  # a different lift with the same residue
        V1 = ((1, 0), (PAdic(tuple(digits), n), 1))
        V2 = ((1, 0), (PAdic(tuple(lift), n + 2), 1))
        e1 = homology_exponent_branched(link, CoverSpec(p, 2, V1), n)
        e2 = homology_exponent_branched(link, CoverSpec(p, 2, V2), n)
        e3 = homology_exponent_branched(link, CoverSpec(p, 2, ((1, 0), (r + p ** n, 1))), n)
        assert e1 == e2 == e3


class TestExponents:
    def test_reduced_alexander(self):
        assert reduced_alexander(whitehead(2), CoverSpec.total_linking(3, 2)) == \
            poly(1, {(2,): 1, (1,): -2, (0,): 1})
        link = catalog("4_1^2").link
        assert reduced_alexander(link, CoverSpec.identity(2, 2)) == link.full()

    def test_examples(self):
        assert homology_exponent_branched(whitehead(6), CoverSpec.identity(3, 2), 1) == 8
        md = catalog("6_1^2").link
        assert homology_exponent_branched(md, CoverSpec.identity(2, 2), 2) == 0
        assert homology_exponent_branched(md, CoverSpec.identity(3, 2), 2) is Infinite

    @pytest.mark.parametrize("p", [2, 3, 5])
    @pytest.mark.parametrize("kappa", [0, 1, 2])
    def test_whitehead_closed_form(self, p, kappa):
        link = whitehead(2 * p ** kappa)
        for n in (1, 2, 3):
            got = homology_exponent_branched(link, CoverSpec.identity(p, 2), n)
            assert got == whitehead_formula(kappa, p, n)

    def test_full_order_examples(self):
        md = catalog("6_1^2").link
        assert homology_order_full(md, 2, 2) == 27
        assert homology_order_full(md, 5, 1) == 81
        assert homology_order_full(md, 3, 0) == 1
        assert homology_order_full(md, 3, 2) is Infinite

    @pytest.mark.parametrize("name,p", [("W1", 2), ("W2", 3), ("W3", 3), ("W4", 2),
                                        ("6_1^2", 2), ("6_1^2", 5), ("W6", 3)])
    def test_full_order_agrees_with_exponent(self, name, p):
        link = catalog(name).link
        for n in (1, 2):
            order = homology_order_full(link, p, n)
            e = homology_exponent_branched(link, CoverSpec.identity(p, 2), n)
            if order is Infinite or e is Infinite:
                assert order is e
            else:
                assert vp(order, p) == e

    def test_tln(self):
        assert homology_order_tln(whitehead(4), 2, 3) == 16
        assert homology_order_tln(whitehead(2), 3, 2) == 6
        assert homology_order_tln(whitehead(2), 3, 0) == 0
        assert tln_polynomial(whitehead(2)) == poly(1, {(3,): 1, (2,): -3, (1,): 3, (0,): -1})

    @pytest.mark.parametrize("p", [2, 3])
    @pytest.mark.parametrize("kappa", [0, 1])
    def test_tln_closed_form(self, p, kappa):
        link = whitehead(2 * p ** kappa)
        for n in range(1, 5):
            assert homology_order_tln(link, p, n) == kappa * p ** n + 3 * n - kappa


class TestGrowth:
    def test_whitehead_table(self):
        r = homology_growth(whitehead(6), CoverSpec.identity(3, 2), 4)
        assert [e for _, e in r.levels] == [whitehead_formula(1, 3, n) for n in range(1, 5)]
        assert (r.growth.mu, r.growth.lam) == (1, 2)

    def test_magen_david(self):
        md = catalog("6_1^2").link
        r = homology_growth(md, CoverSpec.identity(2, 2), 3)
        assert [e for _, e in r.levels] == [0, 0, 0]
        assert r.growth.coefficients == ()
        bad = homology_growth(md, CoverSpec.identity(3, 2), 2)
        assert bad.levels[1] == (2, Infinite)
        assert bad.diagnostics["first_infinite_level"] == 1
        assert bad.diagnostics["vanishing_terms"] == ["sublink 1,2"]

    @pytest.mark.parametrize("name,p", [("W2", 2), ("W3", 2), ("W6", 3), ("W5", 2), ("6_1^2", 2),
                                        ("W10", 5)])
    def test_growth_law_matches_iwasawa(self, name, p):
        link = catalog(name).link
        r = homology_growth(link, CoverSpec.identity(p, 2), 3)
        assert r.fit_status == "ok"
        F = shift_substitute(link.full())
        assert r.growth.mu == mu_invariant(F, p)
        assert r.growth.lam == lambda_by_factors(F, p)
        assert isinstance(r.growth.mu, int) and r.growth.mu >= 0
        assert isinstance(r.growth.lam, int) and r.growth.lam >= 0

    def test_full_order_mode(self):
        r = homology_growth(catalog("6_1^2").link, CoverSpec.identity(5, 2), 2, full_order=True,
                            fit=False)
        assert r.orders == ((1, 3 ** 4), (2, 3 ** 24))
        with pytest.raises(ValueError):
            homology_growth(whitehead(1), CoverSpec(3, 2, ((1, 1), (0, 1))), 1, full_order=True)


class TestTorres:
    def test_catalog(self):
        for name in catalog_names():
            link = catalog(name).link
            if link.lk is not None:
                assert torres_check(link).passed, name

    def test_examples(self):
        r = torres_check(whitehead(1))
        assert r.passed and r.results[0].lhs == poly(1, {(1,): 1, (0,): 1})
        assert torres_check(whitehead(4)).passed

    def test_corrupted(self):
        xy = poly(2, {(1, 0): 1, (0, 1): 1})
        bad = LinkPresentation.build(2, {(1,): ONE, (2,): ONE, (1, 2): xy}, {(1, 2): 0})
        report = torres_check(bad)
        assert not report.passed and report.first_failure == 1
        # with linking number 2 the same polynomial meets the identity: x + 1 = (x^2-1)/(x-1)
        ok = LinkPresentation.build(2, {(1,): ONE, (2,): ONE, (1, 2): xy}, {(1, 2): 2})
        assert torres_check(ok).passed


class TestVanishing:
    def test_magen_david(self):
        md = catalog("6_1^2").link
        assert vanishing_check(md, 2, 3).finiteness_hypothesis
        r = vanishing_check(md, 3, 2)
        assert not r.finiteness_hypothesis
        assert r.levels[2].punctured_zero

    def test_solomon(self):
        r = vanishing_check(catalog("4_1^2").link, 2, 1)
        lvl = r.levels[1]
        assert lvl.punctured_zero
        assert lvl.to_json_obj()["punctured_witness"] == {"order": 2, "exponents": [1, 1]}


class TestPAdicLimit:
    def test_one_third(self):
        orders = [(n, 3 ** (2 ** n - 1)) for n in range(1, 12)]
        r = padic_limit_nonp(orders, 2, 8)
        assert r.residue * 3 % 2 ** 8 == 1
        assert padic_limit_nonp(orders, 2, 6).residue == 43

    def test_constant(self):
        assert padic_limit_nonp([(1, 1), (2, 1), (3, 1)], 5, 4).residue == 1

    def test_teichmuller(self):
        w = teichmuller(3, 5, 3)
        assert pow(w, 5, 125) == w and w % 5 == 3
        orders = [(n, 3 ** (5 ** n - 1)) for n in range(1, 6)]
        r = padic_limit_nonp(orders, 5, 3, base=3)
        assert r.agrees and r.residue == w * pow(3, -1, 125) % 125

    def test_not_stabilized(self):
        with pytest.raises(NotStabilized):
            padic_limit_nonp([(1, 3), (2, 27)], 2, 8)
