"""Torsion in branched abelian p-covers of links in integral homology spheres.

A link is given by the Alexander polynomials of its sublinks
(``LinkPresentation``); a cover by the images of the meridians in
``Z_p^d`` (``CoverSpec``).  The level-n exponent is

    e_n = d*n - sum_i S(t^{v_i} - 1 ; zeta^{v_i} != 1, zeta^{v_j} = 1 for j != i)
              + sum_{L'} S(Delta_{L'}(t^{v_j}) ; zeta^{v_j} != 1 iff j in L')

where ``S(F; R)`` sums ``v(F(zeta))`` over the points of ``W(n)^d`` in R.  Any
zero of a sublink polynomial on its region makes the group infinite.

>>> from iwalink.families import catalog
>>> W6 = catalog("W6").link
>>> homology_exponent_branched(W6, CoverSpec.identity(3, 2), 1)
8
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from ._parallel import pmap
from .errors import (InsufficientSamples, MissingLinkingNumbers, MissingSublink, NoStableFit,
                     NotDivisible, NotStabilized, ParseError, PrecisionError,
                     SurjectivityFailure, UnsupportedBase)
from .iwasawa import GrowthPolynomial, fit_growth_polynomial
from .linalg import rank_mod_p
from .polyring import LaurentPoly, substitute_monomials, trial_divide, vp
from .torus import (TorusRegion, Vanishes, factor_binomials, region_count,
                    region_product, valuation_sum, zeros)


class _InfiniteType:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Infinite"

    def __reduce__(self):
        return (_InfiniteType, ())


Infinite = _InfiniteType()
"""Marker for an infinite first homology group."""

Subset = tuple[int, ...]


def _key(subset) -> Subset:
    return tuple(sorted(int(i) for i in subset))


def _key_name(subset: Subset) -> str:
    return ",".join(str(i) for i in subset)


def _parse_key(text: str, c: int, field_name: str) -> Subset:
    try:
        parts = [int(x) for x in str(text).split(",")]
    except ValueError:
        raise ParseError(f"bad component list {text!r}", field=field_name) from None
    key = _key(parts)
    if len(set(key)) != len(key) or not key or key[0] < 1 or key[-1] > c:
        raise ParseError(f"components must be distinct and within 1..{c}", field=field_name)
    return key


# --- links ------------------------------------------------------------------

@dataclass(frozen=True)
class LinkPresentation:
    """Component count, sublink Alexander polynomials, optional linking numbers.

    Sublink keys are sorted tuples of 1-based component indices; the
    polynomial of a sublink has one variable per component, in index order.
    """

    c: int
    sublinks: tuple[tuple[Subset, LaurentPoly], ...]
    lk: tuple[tuple[tuple[int, int], int], ...] | None = None
    base: str = "ZHS3"

    @classmethod
    def build(cls, c: int, sublinks: Mapping, lk: Mapping | None = None,
              base: str = "ZHS3") -> "LinkPresentation":
        items = {}
        for key, P in sublinks.items():
            k = _key(key)
            if not k or k[0] < 1 or k[-1] > c or len(set(k)) != len(k):
                raise ValueError(f"bad sublink {key!r}")
            if P.nvars != len(k):
                raise ValueError(f"sublink {k} needs {len(k)} variables, got {P.nvars}")
            items[k] = P
        full = tuple(range(1, c + 1))
        if full not in items:
            raise MissingSublink(f"polynomial of the whole link {full} is required")
        lk_items = None
        if lk is not None:
            lk_items = {}
            for key, value in lk.items():
                i, j = _key(key)
                if i == j:
                    raise ValueError("linking numbers need two distinct components")
                lk_items[(i, j)] = int(value)
            lk_items = tuple(sorted(lk_items.items()))
        return cls(c, tuple(sorted(items.items())), lk_items, base)

    def delta(self, subset) -> LaurentPoly:
        k = _key(subset)
        if not k:
            return LaurentPoly.constant(1, 0)
        for key, P in self.sublinks:
            if key == k:
                return P
        raise MissingSublink(f"no Alexander polynomial recorded for sublink {k}")

    def full(self) -> LaurentPoly:
        return self.delta(range(1, self.c + 1))

    def has(self, subset) -> bool:
        k = _key(subset)
        return not k or any(key == k for key, _ in self.sublinks)

    def linking(self, i: int, j: int) -> int:
        if self.lk is None:
            raise MissingLinkingNumbers("link has no recorded linking numbers")
        key = _key((i, j))
        for k, v in self.lk:
            if k == key:
                return v
        raise MissingLinkingNumbers(f"no linking number for components {key}")

    def require_zhs3(self):
        if self.base != "ZHS3":
            raise UnsupportedBase(
                "exact order formulas exist only over integral homology spheres; "
                f"base {self.base!r} is not supported")

    def to_json_obj(self) -> dict:
        obj = {"c": self.c,
               "sublinks": {_key_name(k): P.to_json_obj() for k, P in self.sublinks}}
        if self.lk is not None:
            obj["lk"] = {_key_name(k): v for k, v in self.lk}
        if self.base != "ZHS3":
            obj["base"] = self.base
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json_obj(cls, obj) -> "LinkPresentation":
        if not isinstance(obj, dict):
            raise ParseError("link must be an object")
        c = obj.get("c")
        if not isinstance(c, int) or isinstance(c, bool) or c < 1:
            raise ParseError("component count must be a positive integer", field="c")
        subs = obj.get("sublinks")
        if not isinstance(subs, dict):
            raise ParseError("missing object", field="sublinks")
        polys = {}
        for name, pobj in subs.items():
            key = _parse_key(name, c, f"sublinks.{name}")
            try:
                P = LaurentPoly.from_json_obj(pobj)
            except ParseError as exc:
                raise ParseError(f"in sublink {name}: {exc}", field=f"sublinks.{name}") from None
            if P.nvars != len(key):
                raise ParseError(f"needs {len(key)} variables, got {P.nvars}",
                                 field=f"sublinks.{name}")
            if key in polys:
                raise ParseError("duplicate sublink", field=f"sublinks.{name}")
            polys[key] = P
        if tuple(range(1, c + 1)) not in polys:
            raise ParseError("polynomial of the whole link is required",
                             field=f"sublinks.{_key_name(tuple(range(1, c + 1)))}")
        lk = None
        if "lk" in obj:
            if not isinstance(obj["lk"], dict):
                raise ParseError("must be an object", field="lk")
            lk = {}
            for name, value in obj["lk"].items():
                key = _parse_key(name, c, f"lk.{name}")
                if len(key) != 2 or not isinstance(value, int):
                    raise ParseError("pair of components with an integer", field=f"lk.{name}")
                lk[key] = value
        base = obj.get("base", "ZHS3")
        if base not in ("ZHS3", "QHS3"):
            raise ParseError(f"unknown base {base!r}", field="base")
        return cls.build(c, polys, lk, base)


# --- covers -----------------------------------------------------------------

@dataclass(frozen=True)
class PAdic:
    """Truncated p-adic integer: base-p digits, least significant first."""

    digits: tuple[int, ...]
    precision: int

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(int(x) for x in self.digits))
        if len(self.digits) > self.precision:
            raise ValueError("more digits than the declared precision")

    def residue(self, p: int, n: int) -> int:
        if n > self.precision:
            raise PrecisionError(f"entry known to precision {self.precision}, level {n} requested")
        if any(not 0 <= x < p for x in self.digits):
            raise ValueError(f"digits must lie in 0..{p - 1}")
        return sum(x * p ** i for i, x in enumerate(self.digits[:n]))

    def to_json_obj(self) -> dict:
        return {"digits": list(self.digits), "precision": self.precision}


@dataclass(frozen=True)
class CoverSpec:
    """Prime, cover rank and the c x d matrix of meridian images."""

    p: int
    d: int
    V: tuple[tuple[object, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.V)
        if any(len(row) != self.d for row in rows):
            raise ValueError(f"every meridian image needs {self.d} entries")
        object.__setattr__(self, "V", rows)
        if rank_mod_p(self._residues(1), self.p) != self.d:
            raise SurjectivityFailure(
                f"meridian images do not span (Z/{self.p})^{self.d}; the cover is not surjective")

    @classmethod
    def identity(cls, p: int, c: int) -> "CoverSpec":
        return cls(p, c, tuple(tuple(int(i == j) for j in range(c)) for i in range(c)))

    @classmethod
    def total_linking(cls, p: int, c: int) -> "CoverSpec":
        return cls(p, 1, tuple((1,) for _ in range(c)))

    @property
    def c(self) -> int:
        return len(self.V)

    def _residues(self, n: int):
        return [[x.residue(self.p, n) if isinstance(x, PAdic) else int(x) for x in row]
                for row in self.V]

    def matrix_at_level(self, n: int) -> list[list[int]]:
        """Integer matrix valid at level n (p-adic entries reduced mod p^n)."""
        return self._residues(n)

    def is_integral(self) -> bool:
        return not any(isinstance(x, PAdic) for row in self.V for x in row)

    def to_json_obj(self) -> dict:
        return {"p": self.p, "d": self.d,
                "V": [[x.to_json_obj() if isinstance(x, PAdic) else x for x in row]
                      for row in self.V]}

    @classmethod
    def from_json_obj(cls, obj) -> "CoverSpec":
        if not isinstance(obj, dict):
            raise ParseError("cover must be an object")
        for key in ("p", "d"):
            if not isinstance(obj.get(key), int):
                raise ParseError("missing integer", field=key)
        rows = obj.get("V")
        if not isinstance(rows, list):
            raise ParseError("missing matrix", field="V")
        out = []
        for i, row in enumerate(rows):
            if not isinstance(row, list):
                raise ParseError("row must be a list", field=f"V[{i}]")
            new = []
            for j, x in enumerate(row):
                if isinstance(x, int) and not isinstance(x, bool):
                    new.append(x)
                elif isinstance(x, dict) and isinstance(x.get("digits"), list) \
                        and isinstance(x.get("precision"), int):
                    try:
                        new.append(PAdic(tuple(x["digits"]), x["precision"]))
                    except ValueError as exc:
                        raise ParseError(str(exc), field=f"V[{i}][{j}]") from None
                else:
                    raise ParseError("entry must be an integer or a p-adic object",
                                     field=f"V[{i}][{j}]")
            out.append(tuple(new))
        try:
            return cls(obj["p"], obj["d"], tuple(out))
        except ValueError as exc:
            if isinstance(exc, SurjectivityFailure):
                raise
            raise ParseError(str(exc), field="V") from None


# --- substitution and exponents ---------------------------------------------

def _substituted(link: LinkPresentation, subset: Subset, V) -> LaurentPoly:
    rows = [V[i - 1] for i in subset]
    return substitute_monomials(link.delta(subset), rows)


def reduced_alexander(link: LinkPresentation, spec: CoverSpec, n: int | None = None) -> LaurentPoly:
    """Delta_L with t_i replaced by ``t^{v_i}``, normalized up to +-monomials.

    >>> from iwalink.families import catalog
    >>> str(reduced_alexander(catalog("W2").link, CoverSpec.total_linking(3, 2)))
    'x^2 - 2*x + 1'
    """
    if spec.c != link.c:
        raise ValueError(f"cover has {spec.c} meridian images, link has {link.c} components")
    if n is None and not spec.is_integral():
        raise PrecisionError("p-adic meridian images need an explicit level")
    V = spec.matrix_at_level(n if n is not None else 0)
    out = _substituted(link, tuple(range(1, link.c + 1)), V)
    return out.normalize_unit() if out else out


def _sublinks(c: int):
    for size in range(1, c + 1):
        yield from itertools.combinations(range(1, c + 1), size)


def exponent_terms(link: LinkPresentation, spec: CoverSpec, n: int):
    """The signed valuation sums making up ``e_n``, as ``(label, sign, value)``."""
    link.require_zhs3()
    if spec.c != link.c:
        raise ValueError(f"cover has {spec.c} meridian images, link has {link.c} components")
    p, d = spec.p, spec.d
    V = [tuple(row) for row in spec.matrix_at_level(n)]
    terms = [("|G|", 1, d * n)]
    for i in range(link.c):
        region = TorusRegion(p, n, d, tuple(V[j] for j in range(link.c) if j != i), (V[i],))
        if region_count(region) == 0:
            continue
        val = valuation_sum(LaurentPoly.binomial(V[i]), region, "strict")
        terms.append((f"meridian {i + 1}", -1, val))
    for subset in _sublinks(link.c):
        inside = tuple(V[j - 1] for j in subset)
        outside = tuple(V[j - 1] for j in range(1, link.c + 1) if j not in subset)
        region = TorusRegion(p, n, d, outside, inside)
        if region_count(region) == 0:
            continue
        F = _substituted(link, subset, V)
        val = Vanishes if F.is_zero() else valuation_sum(F, region, "strict")
        terms.append((f"sublink {_key_name(subset)}", 1, val))
    return terms


def homology_exponent_branched(link: LinkPresentation, spec: CoverSpec, n: int):
    """p-exponent of ``|H_1|`` of the level-n branched cover, or ``Infinite``."""
    total = 0
    for _, sign, val in exponent_terms(link, spec, n):
        if val is Vanishes:
            return Infinite
        total += sign * val
    return total


def homology_order_full(link: LinkPresentation, p: int, n: int):
    """Exact ``|H_1|`` for the cover with d = c and identity meridian images.

    >>> from iwalink.families import catalog
    >>> homology_order_full(catalog("6_1^2").link, 2, 2)
    27
    """
    link.require_zhs3()
    total = 1
    for subset in _sublinks(link.c):
        region = TorusRegion.punctured(p, n, len(subset))
        if region_count(region) == 0:
            continue
        value = region_product(link.delta(subset), region)
        if value is Vanishes:
            return Infinite
        total *= value
    return abs(total)


def tln_polynomial(link: LinkPresentation) -> LaurentPoly:
    """``A(t) = (t - 1) * Delta_L(t, ..., t)``."""
    diag = substitute_monomials(link.full(), [[1]] * link.c)
    return diag * LaurentPoly.binomial((1,))


def homology_order_tln(link: LinkPresentation, p: int, n: int):
    """p-exponent of ``|prod_{xi != 1} A(xi)|`` over ``W(n)``, or ``Infinite``.

    >>> from iwalink.families import catalog
    >>> homology_order_tln(catalog("W4").link, 2, 3)
    16
    """
    link.require_zhs3()
    region = TorusRegion(p, n, 1, (), ((1,),))
    if region_count(region) == 0:
        return 0
    A = tln_polynomial(link)
    if A.is_zero():
        return Infinite
    val = valuation_sum(A, region, "strict")
    return Infinite if val is Vanishes else val


# --- Torres condition ---------------------------------------------------------

@dataclass(frozen=True)
class TorresResult:
    component: int
    passed: bool
    lhs: LaurentPoly
    rhs: LaurentPoly


@dataclass(frozen=True)
class TorresReport:
    results: tuple[TorresResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def first_failure(self) -> int | None:
        return next((r.component for r in self.results if not r.passed), None)


def _same_up_to_unit(A: LaurentPoly, B: LaurentPoly) -> bool:
    if A.is_zero() or B.is_zero():
        return A.is_zero() and B.is_zero()
    return A.normalize_unit() == B.normalize_unit()


def torres_check(link: LinkPresentation) -> TorresReport:
    """Check the Torres identity for every deleted component."""
    c = link.c
    full = link.full()
    results = []
    for k in range(1, c + 1):
        if c == 1:
            break
        rest = tuple(i for i in range(1, c + 1) if i != k)
        lhs_full = full.partial_evaluate(k - 1, 1)
        # drop the variable of component k (now constant)
        drop = [[0] * (c - 1) if i == k - 1 else [int(i - (i > k - 1) == j) for j in range(c - 1)]
                for i in range(c)]
        lhs = substitute_monomials(lhs_full, drop)
        lks = [link.linking(i, k) for i in rest]
        sub = link.delta(rest)
        if c == 2:
            l = lks[0]
            if l == 0:
                rhs = LaurentPoly.zero(1)
            else:
                rhs = trial_divide(LaurentPoly.binomial((l,)), LaurentPoly.binomial((1,))) * sub
        else:
            rhs = LaurentPoly.binomial(tuple(lks)) * sub if any(lks) else LaurentPoly.zero(c - 1)
        results.append(TorresResult(k, _same_up_to_unit(lhs, rhs), lhs, rhs))
    return TorresReport(tuple(results))


# --- vanishing diagnostics ---------------------------------------------------

def _witness_obj(p: int, w):
    return None if w is None else {"order": p ** w[0], "exponents": list(w[1])}


@dataclass(frozen=True)
class VanishingLevel:
    """Zeros at one level; witnesses are ``(k, y)``: the point ``zeta^y``, zeta of order p^k."""

    p: int
    n: int
    punctured_witness: tuple | None
    off_identity_witness: tuple | None

    @property
    def punctured_zero(self) -> bool:
        return self.punctured_witness is not None

    @property
    def off_identity_zero(self) -> bool:
        return self.off_identity_witness is not None

    def to_json_obj(self) -> dict:
        return {"n": self.n, "vanishes_on_punctured_torus": self.punctured_zero,
                "vanishes_off_identity": self.off_identity_zero,
                "punctured_witness": _witness_obj(self.p, self.punctured_witness),
                "off_identity_witness": _witness_obj(self.p, self.off_identity_witness)}


@dataclass(frozen=True)
class VanishingReport:
    p: int
    levels: tuple[VanishingLevel, ...]

    @property
    def finiteness_hypothesis(self) -> bool:
        """No zero on ``(W(n) minus 1)^c`` at any checked level."""
        return not any(lv.punctured_zero for lv in self.levels)

    @property
    def nondecomposition_sufficient(self) -> bool:
        """No zero on ``W(n)^c`` minus the identity: a sufficient (not necessary) test."""
        return not any(lv.off_identity_zero for lv in self.levels)

    def to_json_obj(self) -> dict:
        return {"p": self.p, "levels": [lv.to_json_obj() for lv in self.levels],
                "finiteness_hypothesis": self.finiteness_hypothesis,
                "nondecomposition_sufficient_condition": self.nondecomposition_sufficient}


def vanishing_check(link: LinkPresentation, p: int, nmax: int) -> VanishingReport:
    """Zeros of Delta_L on punctured tori and off the identity, level by level."""
    F = link.full()
    c = link.c
    levels = []
    for n in range(0, nmax + 1):
        off = [z for z in zeros(F, TorusRegion.full(p, n, c)) if z[0] > 0]
        punct = zeros(F, TorusRegion.punctured(p, n, c))
        levels.append(VanishingLevel(p, n, punct[0] if punct else None, off[0] if off else None))
    return VanishingReport(p, tuple(levels))


# --- growth reports ----------------------------------------------------------

_FIT_POINT_BUDGET = 5_000_000


def _level_cost(link: LinkPresentation, spec: CoverSpec, n: int) -> int:
    """Rough number of torus points the orbit route would visit at level n."""
    V = spec.matrix_at_level(n)
    cost = 0
    for subset in _sublinks(link.c):
        if not link.has(subset):
            continue
        F = _substituted(link, subset, V)
        if F.is_zero() or F.is_constant():
            continue
        if not factor_binomials(F).cofactor_is_unit():
            cost += spec.p ** (n * spec.d)
    return cost


@dataclass(frozen=True)
class HomologyReport:
    p: int
    d: int
    levels: tuple[tuple[int, object], ...]
    growth: GrowthPolynomial | None
    fit_status: str
    orders: tuple[tuple[int, object], ...] = ()
    diagnostics: dict = field(default_factory=dict)

    def to_json_obj(self) -> dict:
        obj = {"p": self.p, "d": self.d,
               "levels": [{"n": n, "p^n": self.p ** n,
                           "exponent": None if e is Infinite else e,
                           "status": "infinite" if e is Infinite else "finite"}
                          for n, e in self.levels],
               "growth_poly": None if self.growth is None else self.growth.to_json_obj(),
               "fit_status": self.fit_status}
        if self.growth is not None:
            # integers when integral; a non-integral value is a rational string
            obj["mu"] = self.growth.mu if isinstance(self.growth.mu, int) else str(self.growth.mu)
            obj["lambda"] = self.growth.lam if isinstance(self.growth.lam, int) else str(self.growth.lam)
            obj["fit_threshold"] = self.growth.threshold
        if self.orders:
            obj["orders"] = [{"n": n, "order": None if o is Infinite else str(o)}
                             for n, o in self.orders]
        if self.diagnostics:
            obj["diagnostics"] = self.diagnostics
        return obj


def homology_growth(link: LinkPresentation, spec: CoverSpec, nmax: int, *, fit: bool = True,
                    full_order: bool = False, nmin: int = 1) -> HomologyReport:
    """Per-level exponents up to nmax and, when affordable, the growth polynomial.

    The fit needs ``2d+3`` consecutive levels; extra levels past nmax are
    computed for it only when the estimated work stays within budget.
    """
    p, d = spec.p, spec.d
    levels = list(range(nmin, nmax + 1))
    exps = pmap(lambda n: homology_exponent_branched(link, spec, n), levels)
    table = list(zip(levels, exps))
    orders = ()
    if full_order:
        if not (spec.c == d and spec.is_integral()
                and [list(r) for r in spec.V] == [[int(i == j) for j in range(d)] for i in range(d)]):
            raise ValueError("full-order mode needs d = c and identity meridian images")
        orders = tuple((n, homology_order_full(link, p, n)) for n in levels)
    growth, status = None, "skipped"
    diagnostics = {}
    if any(e is Infinite for e in exps):
        status = "infinite levels present"
        bad = next(n for n, e in table if e is Infinite)
        diagnostics["first_infinite_level"] = bad
        diagnostics["vanishing_terms"] = [label for label, _, val in exponent_terms(link, spec, bad)
                                          if val is Vanishes]
    elif fit:
        need = 2 * d + 3
        fit_levels = list(range(nmin, max(nmax, nmin + need - 1) + 1))
        extra = [n for n in fit_levels if n > nmax]
        if sum(_level_cost(link, spec, n) for n in extra) > _FIT_POINT_BUDGET:
            status = "skipped: levels needed for the fit are too expensive"
        else:
            more = pmap(lambda n: homology_exponent_branched(link, spec, n), extra)
            samples = table + list(zip(extra, more))
            if any(e is Infinite for _, e in samples):
                status = "infinite levels present"
            else:
                try:
                    growth = fit_growth_polynomial(samples, p, d)
                    status = "ok"
                except (NoStableFit, InsufficientSamples) as exc:
                    status = f"failed: {exc}"
    return HomologyReport(p, d, tuple(table), growth, status, orders, diagnostics)


# --- p-adic limits -----------------------------------------------------------

def teichmuller(a: int, p: int, precision: int) -> int:
    """Teichmuller representative of a (a unit mod p) modulo ``p^precision``."""
    if a % p == 0:
        raise ValueError("Teichmuller lift needs a unit")
    mod = p ** precision
    x = a % mod
    while True:
        y = pow(x, p, mod)
        if y == x:
            return x
        x = y


@dataclass(frozen=True)
class PAdicLimitReport:
    p: int
    precision: int
    residue: int
    stable_from: int
    prediction: int | None = None
    agrees: bool | None = None

    def to_json_obj(self) -> dict:
        return {"p": self.p, "precision": self.precision, "residue": self.residue,
                "stable_from": self.stable_from, "teichmuller_prediction": self.prediction,
                "agrees": self.agrees}


def padic_limit_nonp(orders: Sequence[tuple[int, int]], p: int, precision: int,
                     base: int | None = None) -> PAdicLimitReport:
    """Limit mod ``p^precision`` of the prime-to-p parts of a sequence of orders.

    With ``base=a`` the orders are taken to be ``a^(p^n - 1)`` and the limit is
    compared with ``omega(a) / a`` for the Teichmuller character omega.

    >>> padic_limit_nonp([(n, 3 ** (2 ** n - 1)) for n in range(1, 10)], 2, 6).residue
    43
    """
    mod = p ** precision
    seq = []
    for n, o in sorted(orders):
        o = abs(int(o))
        if o == 0:
            raise ValueError(f"order at level {n} is zero")
        seq.append((n, (o // p ** vp(o, p)) % mod))
    if len(seq) < 2:
        raise NotStabilized("need at least two levels")
    last = seq[-1][1]
    if seq[-2][1] != last:
        raise NotStabilized(f"residues mod {p}^{precision} still moving at level {seq[-1][0]}")
    start = len(seq) - 1
    while start > 0 and seq[start - 1][1] == last:
        start -= 1
    prediction = agrees = None
    if base is not None:
        prediction = teichmuller(base, p, precision) * pow(base, -1, mod) % mod
        agrees = prediction == last
    return PAdicLimitReport(p, precision, last, seq[start][0], prediction, agrees)
