"""Products and valuation sums of polynomial values over p-power torsion of the torus.

A point of ``W(n)^d`` is written ``zeta = xi^x`` with ``xi = exp(2 pi i / p^n)``
and an exponent vector ``x in (Z/p^n)^d``.  A ``TorusRegion`` cuts out points by
conditions ``zeta^v = 1`` (``v . x = 0 mod p^n``) and ``zeta^w != 1``.

Polynomials handed to ``torus_product``, ``valuation_sum`` and
``region_product`` are in the t-variables and are evaluated at ``zeta``.
``sigma`` takes a polynomial in the shifted variables T and evaluates it at
``zeta - 1``.

Three independent routes exist:

* exact products over subgroups by iterated resultants (``torus_product``),
  combined by inclusion-exclusion;
* per Galois orbit valuations: the sum of ``v(g(zeta))`` over the orbit of a
  primitive ``p^k``-th root is the ``(1 - zeta)``-adic order of ``g(zeta)``,
  read off a Taylor expansion at 1 after reduction modulo the cyclotomic
  polynomial;
* for products of binomials ``t^e - 1`` times a unit, pure point counting,
  which costs nothing in the level n.

``norm_det_oracle`` is a fourth, deliberately naive route used by the tests.

>>> from iwalink.polyring import poly
>>> torus_product(poly(1, {(1,): 1, (0,): -3}), solve_subgroup([], 2, 1, 1)).value
8
>>> sigma(poly(2, {(1, 0): 1}), TorusRegion.full(3, 2, 2))
18
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd
from typing import Sequence

from ._parallel import pmap
from .errors import (DimensionMismatch, NotDivisible, ParseError, ScaleExceeded,
                     ZeroPolynomial)
from .linalg import bareiss_det, diagonal, primitive_directions, smith_normal_form
from .polyring import (LaurentPoly, UniPoly, cyclotomic, resultant, resultant_cyclic,
                       substitute_monomials, to_recursive, trial_divide, unshift_substitute, vp)


class _VanishesType:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Vanishes"

    def __reduce__(self):
        return (_VanishesType, ())


Vanishes = _VanishesType()
"""Marker for a product (or valuation sum) that meets a zero of the polynomial."""

POLICIES = ("skip", "strict")


def _vec(v, d) -> tuple[int, ...]:
    v = tuple(int(x) for x in v)
    if len(v) != d:
        raise DimensionMismatch(f"constraint {v} has length {len(v)}, expected {d}")
    return v


# --- regions ----------------------------------------------------------------

@dataclass(frozen=True)
class TorusRegion:
    """``{zeta in W(n)^d : zeta^v = 1 for v in eq, zeta^w != 1 for w in neq}``."""

    p: int
    n: int
    d: int
    eq: tuple[tuple[int, ...], ...] = ()
    neq: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.n < 0 or self.d < 0:
            raise ValueError("level and dimension must be nonnegative")
        object.__setattr__(self, "eq", tuple(_vec(v, self.d) for v in self.eq))
        object.__setattr__(self, "neq", tuple(_vec(v, self.d) for v in self.neq))

    @classmethod
    def full(cls, p: int, n: int, d: int) -> "TorusRegion":
        return cls(p, n, d)

    @classmethod
    def punctured(cls, p: int, n: int, d: int) -> "TorusRegion":
        """``(W(n) minus 1)^d``."""
        return cls(p, n, d, neq=tuple(_unit(i, d) for i in range(d)))

    @property
    def N(self) -> int:
        return self.p ** self.n

    def is_full(self) -> bool:
        return not self.eq and not self.neq

    def with_constraints(self, eq=(), neq=()) -> "TorusRegion":
        return TorusRegion(self.p, self.n, self.d, self.eq + tuple(eq), self.neq + tuple(neq))

    def at_level(self, n: int) -> "TorusRegion":
        return TorusRegion(self.p, n, self.d, self.eq, self.neq)

    def contains(self, x: Sequence[int]) -> bool:
        N = self.N
        dot = lambda v: sum(a * b for a, b in zip(v, x)) % N
        return all(dot(v) == 0 for v in self.eq) and all(dot(w) for w in self.neq)

    def points(self):
        """Exponent vectors of the region (enumeration; small cases only)."""
        for x in itertools.product(range(self.N), repeat=self.d):
            if self.contains(x):
                yield x

    def count(self) -> int:
        return region_count(self)

    def to_json_obj(self) -> dict:
        return {"p": self.p, "n": self.n, "d": self.d,
                "eq": [list(v) for v in self.eq], "neq": [list(v) for v in self.neq]}

    @classmethod
    def from_json_obj(cls, obj) -> "TorusRegion":
        if not isinstance(obj, dict):
            raise ParseError("region must be an object")
        for key in ("p", "n", "d"):
            if not isinstance(obj.get(key), int):
                raise ParseError("missing integer", field=key)
        try:
            return cls(obj["p"], obj["n"], obj["d"],
                       tuple(tuple(v) for v in obj.get("eq", [])),
                       tuple(tuple(v) for v in obj.get("neq", [])))
        except (TypeError, DimensionMismatch) as exc:
            raise ParseError(str(exc), field="eq/neq") from None


def _unit(i: int, d: int) -> tuple[int, ...]:
    return tuple(int(j == i) for j in range(d))


# --- subgroups --------------------------------------------------------------

@dataclass(frozen=True)
class SubgroupBasis:
    """Parametrization ``zeta_j = prod_k eta_k^{generators[k][j]}``, ``eta_k in W(m_k)``."""

    p: int
    n: int
    d: int
    generators: tuple[tuple[int, ...], ...]
    orders: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.generators)

    def order(self) -> int:
        total = 1
        for o in self.orders:
            total *= o
        return total

    def points(self):
        """Exponent vectors ``x mod p^n`` of the subgroup, each exactly once."""
        N = self.p ** self.n
        for coords in itertools.product(*(range(o) for o in self.orders)):
            x = [0] * self.d
            for a, g, o in zip(coords, self.generators, self.orders):
                step = N // o
                for j in range(self.d):
                    x[j] += a * g[j] * step
            yield tuple(v % N for v in x)


@lru_cache(maxsize=4096)
def _snf_cached(rows: tuple[tuple[int, ...], ...], d: int):
    if not rows:
        return [0] * d, None
    D, _, V = smith_normal_form([list(r) for r in rows])
    diag = diagonal(D)
    return diag + [0] * (d - len(diag)), V


def solve_subgroup(rows, p: int, n: int, d: int) -> SubgroupBasis:
    """Solutions of ``v . x = 0 mod p^n`` for every row v, as a ``SubgroupBasis``.

    >>> solve_subgroup([(1, 1)], 2, 1, 2).generators
    ((1, 1),)
    """
    rows = tuple(_vec(r, d) for r in rows)
    N = p ** n
    diag, V = _snf_cached(rows, d)
    gens, orders = [], []
    for k in range(d):
        o = gcd(diag[k], N)
        if o == 1:
            continue
        col = _unit(k, d) if V is None else tuple(V[j][k] for j in range(d))
        gens.append(tuple(c % o for c in col))
        orders.append(o)
    return SubgroupBasis(p, n, d, tuple(gens), tuple(orders))


def subgroup_order(rows, p: int, n: int, d: int) -> int:
    rows = tuple(_vec(r, d) for r in rows)
    diag, _ = _snf_cached(rows, d)
    N = p ** n
    total = 1
    for s in diag:
        total *= gcd(s, N)
    return total


def region_count(region: TorusRegion, extra_eq=()) -> int:
    """Number of points, by inclusion-exclusion over the inequality rows."""
    eq = region.eq + tuple(extra_eq)
    total = 0
    for T in _subsets(region.neq):
        sign = -1 if len(T) & 1 else 1
        total += sign * subgroup_order(eq + T, region.p, region.n, region.d)
    return total


def _subsets(rows):
    for mask in range(1 << len(rows)):
        yield tuple(r for i, r in enumerate(rows) if mask >> i & 1)


# --- exact products ---------------------------------------------------------

@dataclass(frozen=True)
class TorusProduct:
    value: object  # int, or Vanishes
    valuation: int | None

    @property
    def vanishes(self) -> bool:
        return self.value is Vanishes

    @classmethod
    def of(cls, value, p: int) -> "TorusProduct":
        if value == 0:
            return cls(Vanishes, None)
        return cls(value, vp(value, p))


def _as_int(x) -> int:
    while isinstance(x, UniPoly):
        if x.degree() > 0:
            raise ArithmeticError("elimination left a free variable")
        x = x.coeffs[0] if x.coeffs else 0
    return x


def torus_product(F: LaurentPoly, basis: SubgroupBasis) -> TorusProduct:
    """Exact ``prod F(zeta)`` over the subgroup, by iterated cyclic resultants."""
    if F.is_zero():
        raise ZeroPolynomial("torus_product of 0")
    if F.nvars != basis.d:
        raise DimensionMismatch(f"polynomial has {F.nvars} variables, torus has {basis.d}")
    r = basis.rank
    if r == 0:
        return TorusProduct.of(sum(F.coefficients()), basis.p)
    M = [[basis.generators[k][j] for k in range(r)] for j in range(basis.d)]
    P = substitute_monomials(F, M)
    data: dict = {}
    for e, c in P.terms:
        key = tuple(x % o for x, o in zip(e, basis.orders))
        data[key] = data.get(key, 0) + c
    P = LaurentPoly.from_dict(r, data)
    if P.is_zero():
        return TorusProduct(Vanishes, None)
    order = sorted(range(r), key=lambda k: (basis.orders[k], k))
    rec = to_recursive(P, order)
    for k in order:
        rec = resultant_cyclic(basis.orders[k], rec)
    return TorusProduct.of(_as_int(rec), basis.p)


def norm_det_oracle(F: LaurentPoly, p: int, n: int) -> int:
    """``prod F(zeta)`` over ``W(n)^d`` as the determinant of multiplication by F.

    The operator acts on the group ring of ``(Z/p^n)^d`` in its monomial basis;
    its determinant is the product of F over all characters.  Guarded to
    ``d <= 2`` and ``p^n <= 9``.
    """
    d = F.nvars
    N = p ** n
    if d > 2 or N > 9:
        raise ScaleExceeded(f"oracle limited to d <= 2 and p^n <= 9 (got d={d}, p^n={N})")
    basis = list(itertools.product(range(N), repeat=d))
    index = {b: i for i, b in enumerate(basis)}
    size = len(basis)
    mat = [[0] * size for _ in range(size)]
    for col, b in enumerate(basis):
        for e, c in F.terms:
            target = tuple((x + y) % N for x, y in zip(b, e))
            mat[index[target]][col] += c
    return bareiss_det(mat)


# --- binomial factorization -------------------------------------------------

_DIRECTION_LIMIT = 20000


@dataclass(frozen=True)
class FactoredPoly:
    """``content * prod (t^e - 1)^m * cofactor`` with primitive cofactor over Z."""

    nvars: int
    content: int
    binomials: tuple[tuple[tuple[int, ...], int], ...]
    cofactor: LaurentPoly

    def cofactor_is_unit(self) -> bool:
        return self.cofactor.is_monomial() and abs(self.cofactor.terms[0][1]) == 1

    def expand(self) -> LaurentPoly:
        out = self.cofactor * self.content
        for e, m in self.binomials:
            out = out * LaurentPoly.binomial(e) ** m
        return out


@lru_cache(maxsize=1024)
def factor_binomials(F: LaurentPoly) -> FactoredPoly:
    """Pull out the integer content and every factor ``t^e - 1`` with e primitive.

    Directions are searched inside the exponent span of F; a polynomial with
    an enormous span skips the search and keeps everything in the cofactor.
    """
    if F.is_zero():
        raise ZeroPolynomial("factor_binomials of 0")
    content = F.content()
    Q = LaurentPoly(F.nvars, tuple((e, c // content) for e, c in F.terms))
    found = []
    directions = primitive_directions(Q.span(), limit=_DIRECTION_LIMIT) or []
    for e in directions:
        if any(abs(x) > s for x, s in zip(e, Q.span())):
            continue
        D = LaurentPoly.binomial(e)
        m = 0
        while True:
            try:
                Q = trial_divide(Q, D)
            except NotDivisible:
                break
            m += 1
        if m:
            found.append((e, m))
        if Q.is_monomial():
            break
    return FactoredPoly(F.nvars, content, tuple(found), Q)


# --- Galois orbits ----------------------------------------------------------

def orbit_representatives(p: int, k: int, d: int):
    """One exponent vector per Galois orbit of points of exact order p^k.

    Vectors live in ``(Z/p^k)^d``; the first coordinate prime to p equals 1.
    """
    if k == 0:
        yield (0,) * d
        return
    q = p ** k
    multiples = range(0, q, p)
    for i in range(d):
        for head in itertools.product(multiples, repeat=i):
            for tail in itertools.product(range(q), repeat=d - 1 - i):
                yield head + (1,) + tail


def _region_orbits(region: TorusRegion, skip_identity: bool = False):
    """``(k, y)`` for every orbit inside the region, in canonical order."""
    p, d = region.p, region.d
    for k in range(region.n + 1):
        if k == 0 and skip_identity:
            continue
        q = p ** k
        for y in orbit_representatives(p, k, d):
            ok = True
            for v in region.eq:
                if sum(a * b for a, b in zip(v, y)) % q:
                    ok = False
                    break
            if ok:
                for w in region.neq:
                    if sum(a * b for a, b in zip(w, y)) % q == 0:
                        ok = False
                        break
            if ok:
                yield k, y


def _reduced(F: LaurentPoly, p: int, k: int, y) -> list[int]:
    """Coefficients of ``F(x^y)`` reduced modulo the cyclotomic polynomial of order p^k."""
    if k == 0:
        return [sum(F.coefficients())]
    q = p ** k
    arr = [0] * q
    for e, c in F.terms:
        arr[sum(a * b for a, b in zip(e, y)) % q] += c
    step = q // p
    top = (p - 1) * step
    for r in range(step):
        t = arr[top + r]
        if t:
            for j in range(p - 1):
                arr[j * step + r] -= t
    return arr[:top]


def _taylor_at_one(arr: list[int]) -> list[int]:
    """Coefficients of ``g(1 + w)`` from those of ``g(x)``."""
    res: list[int] = []
    for c in reversed(arr):
        res.append(0)
        for i in range(len(res) - 1, 0, -1):
            res[i] += res[i - 1]
        res[0] += c
    return res


def _binom_mod_p(i: int, j: int, p: int) -> int:
    """Binomial coefficient modulo a prime (Lucas)."""
    out = 1
    while j:
        a, b = i % p, j % p
        if b > a:
            return 0
        out = out * comb(a, b) % p
        i //= p
        j //= p
    return out


def _orbit_order(arr: list[int], p: int, k: int):
    """Sum of valuations over the orbit, or None when the value is zero.

    After removing the p-content ``p^v``, the Taylor coefficients ``b_j`` at 1
    are not all divisible by p (the Pascal transform is unimodular), so the
    order is ``e*v + j0`` with ``j0`` the first index where ``b_j != 0 mod p``.
    """
    nonzero = [(i, a) for i, a in enumerate(arr) if a]
    if not nonzero:
        return None
    if k == 0:
        return vp(arr[0], p)
    e = (p - 1) * p ** (k - 1)
    v = min(vp(a, p) for _, a in nonzero)
    scale = p ** v
    red = [(i, (a // scale) % p) for i, a in nonzero]
    red = [(i, a) for i, a in red if a]
    j = 0
    while True:
        if sum(a * _binom_mod_p(i, j, p) for i, a in red if i >= j) % p:
            return e * v + j
        j += 1


def _orbit_order_taylor(arr: list[int], p: int, k: int):
    """Reference version of ``_orbit_order`` via the full Taylor expansion."""
    if not any(arr):
        return None
    if k == 0:
        return vp(arr[0], p)
    e = (p - 1) * p ** (k - 1)
    return min(e * vp(b, p) + j for j, b in enumerate(_taylor_at_one(arr)) if b)


def orbit_valuations(F: LaurentPoly, region: TorusRegion):
    """List of ``(k, y, orbit valuation or None)`` over the region."""
    if F.nvars != region.d:
        raise DimensionMismatch(f"polynomial has {F.nvars} variables, region has {region.d}")
    orbits = list(_region_orbits(region))
    vals = pmap(lambda ky: _orbit_order(_reduced(F, region.p, ky[0], ky[1]), region.p, ky[0]),
                orbits)
    return [(k, y, v) for (k, y), v in zip(orbits, vals)]


def has_zero(F: LaurentPoly, region: TorusRegion, skip_identity: bool = False) -> bool:
    """Whether F vanishes somewhere on the region (optionally ignoring the point 1)."""
    if F.is_zero():
        return region_count(region) > (1 if skip_identity else 0)
    for k, y in _region_orbits(region, skip_identity):
        if not any(_reduced(F, region.p, k, y)):
            return True
    return False


def zeros(F: LaurentPoly, region: TorusRegion) -> list[tuple[int, tuple[int, ...]]]:
    """Orbit representatives ``(k, y)`` where F vanishes."""
    return [(k, y) for k, y in _region_orbits(region) if not any(_reduced(F, region.p, k, y))]


def orbit_norm(F: LaurentPoly, p: int, k: int, y) -> int:
    """Norm of ``F(zeta^y)`` for a primitive p^k-th root zeta (exact integer)."""
    arr = _reduced(F, p, k, y)
    if k == 0:
        return arr[0]
    return resultant(cyclotomic(p, k), UniPoly(arr))


# --- valuation sums ---------------------------------------------------------

def _phi(p: int, j: int) -> int:
    return (p - 1) * p ** (j - 1)


def binomial_valuation_sum(e, region: TorusRegion) -> int:
    """``sum v(zeta^e - 1)`` over region points with ``zeta^e != 1``."""
    p = region.p
    total = Fraction(0)
    prev = region_count(region, (tuple(e),))
    for j in range(1, region.n + 1):
        cur = region_count(region, (tuple(p ** j * x for x in e),))
        if cur != prev:
            total += Fraction(cur - prev, _phi(p, j))
        prev = cur
    if total.denominator != 1:  # pragma: no cover - orbits are Galois stable
        raise ArithmeticError("non-integral binomial valuation sum")
    return int(total)


def _count_path(fp: FactoredPoly, region: TorusRegion, policy: str):
    p = region.p
    vecs = tuple(e for e, _ in fp.binomials)
    if policy == "strict":
        if any(region_count(region, (e,)) for e in vecs):
            return Vanishes
        work = region
    else:
        work = region.with_constraints(neq=tuple(e for e in vecs if e not in region.neq))
    mu = vp(fp.content, p)
    total = mu * region_count(work) if mu else 0
    for e, m in fp.binomials:
        total += m * binomial_valuation_sum(e, work)
    return total


def _rank_reduce(F: LaurentPoly):
    """``(G, r)`` with ``sum_{W(n)^d} v(F) = p^{n(d-r)} sum_{W(n)^r} v(G)``, or None."""
    base = F.terms[0][0]
    diffs = [[a - b for a, b in zip(e, base)] for e, _ in F.terms[1:]]
    d = F.nvars
    if not diffs:
        return LaurentPoly.constant(F.terms[0][1], 1), 0
    D, _, V = smith_normal_form(diffs)
    r = sum(1 for s in diagonal(D) if s)
    if r >= d:
        return None
    data = {}
    for e, c in F.terms:
        diff = [a - b for a, b in zip(e, base)]
        key = tuple(sum(diff[j] * V[j][i] for j in range(d)) for i in range(max(r, 1)))
        data[key] = data.get(key, 0) + c
    return LaurentPoly.from_dict(max(r, 1), data), r


def valuation_sum(F: LaurentPoly, region: TorusRegion, policy: str = "skip",
                  method: str = "auto"):
    """``sum v(F(zeta))`` over the region (t-variables), as an exact integer.

    ``policy="skip"`` gives zeros of F valuation 0; ``policy="strict"``
    returns ``Vanishes`` as soon as F has a zero in the region.  ``method``
    is ``auto``, ``orbits`` or ``products`` (strict only).
    """
    if policy not in POLICIES:
        raise ValueError(f"unknown policy {policy!r}")
    if F.is_zero():
        raise ZeroPolynomial("valuation_sum of 0")
    if F.nvars != region.d:
        raise DimensionMismatch(f"polynomial has {F.nvars} variables, region has {region.d}")
    if method == "products":
        if policy != "strict":
            raise ValueError("the product route only supports the strict policy")
        return valuation_sum_by_products(F, region)
    if method == "auto":
        fp = factor_binomials(F)
        if fp.cofactor_is_unit():
            return _count_path(fp, region, policy)
        if region.is_full():
            red = _rank_reduce(F)
            if red is not None:
                G, r = red
                sub = valuation_sum(G, TorusRegion.full(region.p, region.n, G.nvars), policy)
                if sub is Vanishes:
                    return Vanishes
                if r == 0:
                    sub = sub // region.N  # constant: G lives on a one-point dummy torus
                return sub * region.N ** (region.d - r)
    elif method != "orbits":
        raise ValueError(f"unknown method {method!r}")
    total = 0
    for _, _, v in orbit_valuations(F, region):
        if v is None:
            if policy == "strict":
                return Vanishes
            continue
        total += v
    return total


def valuation_sum_by_products(F: LaurentPoly, region: TorusRegion):
    """Strict valuation sum via inclusion-exclusion of subgroup product valuations.

    A subgroup product can vanish at a point the region excludes; the orbit
    route then decides whether the region itself meets a zero.
    """
    terms = list(_subsets(region.neq))

    def one(T):
        basis = solve_subgroup(region.eq + T, region.p, region.n, region.d)
        return torus_product(F, basis)

    total = 0
    for T, tp in zip(terms, pmap(one, terms)):
        if tp.vanishes:
            return valuation_sum(F, region, "strict", "orbits")
        total += (-1 if len(T) & 1 else 1) * tp.valuation
    return total


def region_product(F: LaurentPoly, region: TorusRegion):
    """Exact ``prod F(zeta)`` over the region, or ``Vanishes``.

    Inclusion-exclusion of subgroup products; when one of those vanishes
    outside the region the product is rebuilt from per-orbit norms instead.
    """
    if F.is_zero():
        raise ZeroPolynomial("region_product of 0")
    num, den = 1, 1
    for T in _subsets(region.neq):
        tp = torus_product(F, solve_subgroup(region.eq + T, region.p, region.n, region.d))
        if tp.vanishes:
            return _region_product_by_orbits(F, region)
        if len(T) & 1:
            den *= tp.value
        else:
            num *= tp.value
    q, rem = divmod(num, den)
    if rem:  # pragma: no cover - products over nested subgroups divide
        raise ArithmeticError("inclusion-exclusion quotient is not integral")
    return q


def _region_product_by_orbits(F: LaurentPoly, region: TorusRegion):
    total = 1
    for k, y in _region_orbits(region):
        nv = orbit_norm(F, region.p, k, y)
        if nv == 0:
            return Vanishes
        total *= nv
    return total


def sigma(F: LaurentPoly, region: TorusRegion, policy: str = "skip", method: str = "auto"):
    """``sum v(F(zeta - 1))`` over the region, F in the shifted variables T.

    The default policy gives zeros valuation 0, which is what makes
    ``sigma(T_1)`` over a full torus finite.
    """
    if F.is_zero():
        raise ZeroPolynomial("sigma of 0")
    if any(m < 0 for m in F.min_exponents()):
        raise ValueError("sigma expects a polynomial in T (no negative exponents)")
    return valuation_sum(unshift_substitute(F), region, policy, method)
