"""Sparse Laurent polynomials over Z, dense univariate polynomials, resultants.

``LaurentPoly`` is the workhorse: an immutable map from exponent tuples to
nonzero ints, kept in lexicographic order so equal polynomials compare and
serialize identically.  ``UniPoly`` is a dense univariate polynomial whose
coefficients are ints *or* other ``UniPoly`` instances; nesting gives a
recursive representation of Z[x1, ..., xk] that the resultant code uses for
elimination.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from math import comb, gcd
from typing import Iterable, Mapping, Sequence

from .errors import (BothZero, DimensionMismatch, NotDivisible, ParseError, ZeroDivisor,
                     ZeroPolynomial)

Exponent = tuple[int, ...]


def vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0")
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


@dataclass(frozen=True)
class LaurentPoly:
    nvars: int
    terms: tuple[tuple[Exponent, int], ...] = ()

    # construction ---------------------------------------------------------

    @classmethod
    def from_dict(cls, nvars: int, data: Mapping[Sequence[int], int]) -> "LaurentPoly":
        clean = {}
        for e, c in data.items():
            e = tuple(int(x) for x in e)
            if len(e) != nvars:
                raise DimensionMismatch(f"exponent {e} has length {len(e)}, expected {nvars}")
            if c:
                clean[e] = clean.get(e, 0) + int(c)
        return cls(nvars, tuple(sorted((e, c) for e, c in clean.items() if c)))

    @classmethod
    def _from_clean(cls, nvars, data: dict) -> "LaurentPoly":
        return cls(nvars, tuple(sorted((e, c) for e, c in data.items() if c)))

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars, ())

    @classmethod
    def constant(cls, c: int, nvars: int) -> "LaurentPoly":
        return cls.from_dict(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exponent: Sequence[int], c: int = 1) -> "LaurentPoly":
        return cls.from_dict(len(exponent), {tuple(exponent): c})

    @classmethod
    def variable(cls, i: int, nvars: int) -> "LaurentPoly":
        e = [0] * nvars
        e[i] = 1
        return cls.monomial(e)

    @classmethod
    def binomial(cls, vector: Sequence[int]) -> "LaurentPoly":
        """``t^vector - 1``."""
        return cls.from_dict(len(vector), {tuple(vector): 1}) - cls.constant(1, len(vector))

    # basic queries --------------------------------------------------------

    def as_dict(self) -> dict[Exponent, int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(self.terms[0][0]))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_term(self) -> int:
        return self.as_dict().get((0,) * self.nvars, 0)

    def coefficients(self) -> list[int]:
        return [c for _, c in self.terms]

    def min_exponents(self) -> Exponent:
        if not self.terms:
            return (0,) * self.nvars
        return tuple(min(e[i] for e, _ in self.terms) for i in range(self.nvars))

    def max_exponents(self) -> Exponent:
        if not self.terms:
            return (0,) * self.nvars
        return tuple(max(e[i] for e, _ in self.terms) for i in range(self.nvars))

    def span(self) -> Exponent:
        lo, hi = self.min_exponents(), self.max_exponents()
        return tuple(h - l for l, h in zip(lo, hi))

    def content(self) -> int:
        g = 0
        for _, c in self.terms:
            g = gcd(g, c)
        return g

    def leading_term(self) -> tuple[Exponent, int]:
        return self.terms[-1]

    # arithmetic -----------------------------------------------------------

    def _check(self, other):
        if isinstance(other, int):
            return LaurentPoly.constant(other, self.nvars)
        if other.nvars != self.nvars:
            raise DimensionMismatch(f"{self.nvars} vs {other.nvars} variables")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = self.as_dict()
        for e, c in other.terms:
            out[e] = out.get(e, 0) + c
        return LaurentPoly._from_clean(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.nvars, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return LaurentPoly.zero(self.nvars)
            return LaurentPoly(self.nvars, tuple((e, c * other) for e, c in self.terms))
        other = self._check(other)
        out: dict[Exponent, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly._from_clean(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = LaurentPoly.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift_exponents(self, shift: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial ``t^shift``."""
        return LaurentPoly(self.nvars, tuple(
            (tuple(a + s for a, s in zip(e, shift)), c) for e, c in self.terms))

    def normalize_monomial(self) -> "LaurentPoly":
        """Multiply by the monomial that makes every minimal exponent zero."""
        return self.shift_exponents([-m for m in self.min_exponents()])

    def normalize_unit(self) -> "LaurentPoly":
        """Canonical representative up to multiplication by +-t^a."""
        q = self.normalize_monomial()
        if q.terms and q.terms[-1][1] < 0:
            q = -q
        return q

    def evaluate(self, point: Sequence):
        """Evaluate at a point (ints, Fractions or anything with ``**``)."""
        if len(point) != self.nvars:
            raise DimensionMismatch("point has wrong length")
        total = 0
        for e, c in self.terms:
            term = c
            for x, k in zip(point, e):
                term = term * x ** k
            total = total + term
        return total

    def partial_evaluate(self, index: int, value: int) -> "LaurentPoly":
        """Set variable ``index`` to an integer value, keeping the variable count."""
        out: dict[Exponent, int] = {}
        for e, c in self.terms:
            k = e[index]
            if k < 0:
                if value not in (1, -1):
                    raise ValueError("negative exponent at non-unit value")
                factor = value ** (-k)
            else:
                factor = value ** k
            ne = e[:index] + (0,) + e[index + 1:]
            out[ne] = out.get(ne, 0) + c * factor
        return LaurentPoly._from_clean(self.nvars, out)

    # printing / serialization --------------------------------------------

    def to_string(self, names: Sequence[str] | None = None) -> str:
        names = list(names) if names else default_names(self.nvars)
        if not self.terms:
            return "0"
        parts = []
        for e, c in reversed(self.terms):
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self):
        return self.to_string()

    def to_json_obj(self, names: Sequence[str] | None = None) -> dict:
        names = list(names) if names else default_names(self.nvars)
        return {"vars": names,
                "terms": [{"e": list(e), "c": str(c)} for e, c in self.terms]}

    def to_json(self, names: Sequence[str] | None = None) -> str:
        return json.dumps(self.to_json_obj(names), sort_keys=False)

    @classmethod
    def from_json_obj(cls, obj) -> "LaurentPoly":
        if not isinstance(obj, dict):
            raise ParseError("polynomial must be an object")
        if "vars" not in obj or not isinstance(obj["vars"], list):
            raise ParseError("missing or malformed list", field="vars")
        if "terms" not in obj or not isinstance(obj["terms"], list):
            raise ParseError("missing or malformed list", field="terms")
        nvars = len(obj["vars"])
        data: dict[Exponent, int] = {}
        for i, term in enumerate(obj["terms"]):
            if not isinstance(term, dict) or "e" not in term or "c" not in term:
                raise ParseError("term needs 'e' and 'c'", field=f"terms[{i}]")
            e = term["e"]
            if (not isinstance(e, list) or len(e) != nvars
                    or not all(isinstance(x, int) and not isinstance(x, bool) for x in e)):
                raise ParseError(f"exponent must be {nvars} integers", field=f"terms[{i}].e")
            c = term["c"]
            if not isinstance(c, str):
                raise ParseError("coefficient must be a decimal string", field=f"terms[{i}].c")
            try:
                cval = int(c.replace("−", "-"))
            except ValueError:
                raise ParseError(f"bad coefficient {c!r}", field=f"terms[{i}].c") from None
            key = tuple(e)
            data[key] = data.get(key, 0) + cval
        return cls.from_dict(nvars, data)

    @classmethod
    def from_json(cls, text: str) -> "LaurentPoly":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
        return cls.from_json_obj(obj)


def default_names(nvars: int) -> list[str]:
    if nvars <= 4:
        return ["x", "y", "z", "w"][:nvars]
    return [f"t{i + 1}" for i in range(nvars)]


def poly(nvars: int, data: Mapping[Sequence[int], int]) -> LaurentPoly:
    return LaurentPoly.from_dict(nvars, data)


# --- changes of variables ---------------------------------------------------

def _clearing_shift(P: LaurentPoly) -> Exponent:
    return tuple(-m if m < 0 else 0 for m in P.min_exponents())


def shift_substitute(P: LaurentPoly) -> LaurentPoly:
    """``t^m * P`` with ``t_i = 1 + T_i``, where ``t^m`` clears negative exponents."""
    if P.is_zero():
        raise ZeroPolynomial("shift_substitute of 0")
    Q = P.shift_exponents(_clearing_shift(P))
    out: dict[Exponent, int] = {}
    for e, c in Q.terms:
        for b in itertools.product(*(range(k + 1) for k in e)):
            coeff = c
            for k, j in zip(e, b):
                coeff *= comb(k, j)
            out[b] = out.get(b, 0) + coeff
    return LaurentPoly._from_clean(P.nvars, out)


def unshift_substitute(Q: LaurentPoly) -> LaurentPoly:
    """Inverse change of variables ``T_i = t_i - 1`` (Q must be an ordinary polynomial)."""
    if any(m < 0 for m in Q.min_exponents()):
        raise ValueError("unshift_substitute expects nonnegative exponents")
    out: dict[Exponent, int] = {}
    for e, c in Q.terms:
        for b in itertools.product(*(range(k + 1) for k in e)):
            coeff = c
            for k, j in zip(e, b):
                coeff *= comb(k, j) * (-1 if (k - j) & 1 else 1)
            out[b] = out.get(b, 0) + coeff
    return LaurentPoly._from_clean(Q.nvars, out)


def substitute_monomials(P: LaurentPoly, M: Sequence[Sequence[int]]) -> LaurentPoly:
    """Replace variable ``s_j`` by ``t^{M[j]}``; M has one row per variable of P."""
    if len(M) != P.nvars:
        raise DimensionMismatch(f"matrix has {len(M)} rows, polynomial has {P.nvars} variables")
    widths = {len(row) for row in M}
    if len(widths) > 1:
        raise DimensionMismatch("ragged substitution matrix")
    d = widths.pop() if widths else 0
    out: dict[Exponent, int] = {}
    for e, c in P.terms:
        ne = tuple(sum(k * M[j][i] for j, k in enumerate(e)) for i in range(d))
        out[ne] = out.get(ne, 0) + c
    return LaurentPoly._from_clean(d, out)


def mod_p_reduce(P: LaurentPoly, p: int) -> LaurentPoly:
    return LaurentPoly._from_clean(P.nvars, {e: c % p for e, c in P.terms})


def p_content(P: LaurentPoly, p: int) -> int:
    """Largest mu with p^mu dividing every coefficient."""
    if P.is_zero():
        raise ZeroPolynomial("p_content of 0")
    return min(vp(c, p) for _, c in P.terms)


def trial_divide(P: LaurentPoly, D: LaurentPoly, modulus: int | None = None,
                 ring: str = "laurent") -> LaurentPoly:
    """Exact quotient ``P / D`` over Z or over F_modulus.

    ``ring="laurent"`` treats monomials as units; ``ring="polynomial"`` also
    requires the quotient to have nonnegative exponents.  Raises
    ``NotDivisible`` when D does not divide P; no partial quotient is ever
    returned.

    >>> T1, T2 = poly(2, {(1, 0): 1}), poly(2, {(0, 1): 1})
    >>> str(trial_divide(T1 + T2, T1))
    '1 + x^-1*y'
    >>> trial_divide(T1 + T2, T1, ring="polynomial")
    Traceback (most recent call last):
    ...
    iwalink.errors.NotDivisible: quotient has negative exponents
    """
    if ring not in ("laurent", "polynomial"):
        raise ValueError(f"unknown ring {ring!r}")
    if D.is_zero() or (modulus is not None and mod_p_reduce(D, modulus).is_zero()):
        raise ZeroDivisor("division by zero polynomial")
    if modulus is not None:
        P = mod_p_reduce(P, modulus)
        D = mod_p_reduce(D, modulus)
    if P.nvars != D.nvars:
        raise DimensionMismatch("variable counts differ")
    if P.is_zero():
        return P
    p_min = P.min_exponents()
    d_min = D.min_exponents()
    R = P.shift_exponents([-m for m in p_min]).as_dict()
    Dn = D.shift_exponents([-m for m in d_min])
    lead_e, lead_c = Dn.terms[-1]
    lead_inv = pow(lead_c, -1, modulus) if modulus is not None else None
    quotient: dict[Exponent, int] = {}
    while R:
        e = max(R)
        c = R[e]
        qe = tuple(a - b for a, b in zip(e, lead_e))
        if any(x < 0 for x in qe):
            raise NotDivisible("leading monomial not divisible")
        if modulus is not None:
            qc = (c * lead_inv) % modulus
        else:
            qc, rem = divmod(c, lead_c)
            if rem:
                raise NotDivisible("coefficient not divisible")
        quotient[qe] = qc
        for de, dc in Dn.terms:
            te = tuple(a + b for a, b in zip(qe, de))
            v = R.get(te, 0) - qc * dc
            if modulus is not None:
                v %= modulus
            if v:
                R[te] = v
            else:
                R.pop(te, None)
    shift = [a - b for a, b in zip(p_min, d_min)]
    Q = LaurentPoly._from_clean(P.nvars, quotient).shift_exponents(shift)
    if ring == "polynomial" and any(m < 0 for m in Q.min_exponents()):
        raise NotDivisible("quotient has negative exponents")
    return Q


def multiplicity(P: LaurentPoly, D: LaurentPoly, modulus: int | None = None,
                 ring: str = "laurent") -> int:
    """How many times D divides P (P nonzero)."""
    if P.is_zero():
        raise ZeroPolynomial("multiplicity in 0")
    k = 0
    while True:
        try:
            P = trial_divide(P, D, modulus, ring)
        except NotDivisible:
            return k
        k += 1


# --- dense univariate polynomials -----------------------------------------

def _is_zero(c) -> bool:
    return c == 0 if isinstance(c, int) else c.is_zero()


def exquo(a, b):
    """Exact division in Z or in a nested polynomial ring."""
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise NotDivisible(f"{a} not divisible by {b}")
        return q
    if isinstance(a, int):
        a = UniPoly((a,))
    return a.exquo(b)


class UniPoly:
    """Dense univariate polynomial, coefficients lowest degree first.

    Coefficients are ints or ``UniPoly`` (for nested rings).  Instances are
    treated as immutable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = list(coeffs)
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, k: int, c=1) -> "UniPoly":
        return cls([0] * k + [c])

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, int):
            if other == 0:
                return self.is_zero()
            return self.coeffs == (other,)
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)!r})"

    def __add__(self, other):
        if isinstance(other, int):
            other = UniPoly((other,))
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UniPoly([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return UniPoly([c * other for c in self.coeffs]) if other else UniPoly()
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if _is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return UniPoly(out)

    def __rmul__(self, other):
        return self * other

    def scale(self, c) -> "UniPoly":
        """Multiply every coefficient by an element of the coefficient ring."""
        if _is_zero(c):
            return UniPoly()
        return UniPoly([x * c for x in self.coeffs])

    def __pow__(self, k: int):
        result = UniPoly((1,))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def evaluate(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def exquo(self, other) -> "UniPoly":
        """Exact quotient; ``other`` is a coefficient-ring element or a UniPoly."""
        if isinstance(other, int):
            return UniPoly([exquo(c, other) for c in self.coeffs])
        if other.is_zero():
            raise ZeroDivisor("division by zero polynomial")
        rem = list(self.coeffs)
        db = other.degree()
        lcb = other.lc()
        if len(rem) - 1 < db:
            if rem:
                raise NotDivisible("degree too small")
            return UniPoly()
        q = [0] * (len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if _is_zero(c):
                continue
            qc = exquo(c, lcb)
            q[i - db] = qc
            for j, bc in enumerate(other.coeffs):
                rem[i - db + j] = rem[i - db + j] - qc * bc
        if any(not _is_zero(c) for c in rem[:db]):
            raise NotDivisible("nonzero remainder")
        return UniPoly(q)

    def cdiv(self, c) -> "UniPoly":
        """Divide every coefficient exactly by a coefficient-ring element."""
        return UniPoly([exquo(x, c) for x in self.coeffs])

    def fold(self, n: int) -> "UniPoly":
        """Reduce modulo ``x^n - 1``."""
        if len(self.coeffs) <= n:
            return self
        out = [0] * n
        for i, c in enumerate(self.coeffs):
            out[i % n] = out[i % n] + c
        return UniPoly(out)


def prem(A: UniPoly, B: UniPoly) -> UniPoly:
    """Pseudo-remainder ``lc(B)^(deg A - deg B + 1) * A mod B``."""
    if B.is_zero():
        raise ZeroDivisor("pseudo-remainder by zero")
    db = B.degree()
    delta = A.degree() - db
    if delta < 0:
        return A
    lcb = B.lc()
    rem = list(A.coeffs)
    applied = 0
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        rem = [x * lcb for x in rem[:i]]
        applied += 1
        if not _is_zero(c):
            for j in range(db):
                rem[i - db + j] = rem[i - db + j] - c * B.coeffs[j]
    extra = delta + 1 - applied
    R = UniPoly(rem)
    if extra:
        R = R.scale(lcb ** extra) if isinstance(lcb, int) else R.scale(_power(lcb, extra))
    return R


def _power(c, k: int):
    return c ** k


def resultant(f: UniPoly, g: UniPoly):
    """Resultant over an integral domain by the subresultant PRS.

    Convention: ``Res(f, g) = lc(f)^deg(g) * prod g(roots of f)``.
    """
    if f.is_zero() and g.is_zero():
        raise BothZero("resultant of two zero polynomials")
    if f.is_zero() or g.is_zero():
        return 0
    A, B = f, g
    s = 1
    if A.degree() < B.degree():
        A, B = B, A
        if A.degree() & 1 and B.degree() & 1:
            s = -1
    if B.degree() == 0:
        return s * _power(B.lc(), A.degree())
    g_ = 1
    h = 1
    while True:
        delta = A.degree() - B.degree()
        if A.degree() & 1 and B.degree() & 1:
            s = -s
        R = prem(A, B)
        A = B
        if R.is_zero():
            return 0
        B = R.cdiv(g_ * _power(h, delta))
        g_ = A.lc()
        if delta == 1:
            h = g_
        elif delta > 1:
            h = exquo(_power(g_, delta), _power(h, delta - 1))
        if B.degree() == 0:
            dA = A.degree()
            return s * exquo(_power(B.lc(), dA), _power(h, dA - 1))


def sylvester_resultant(f: UniPoly, g: UniPoly) -> int:
    """Resultant as the determinant of the Sylvester matrix (integer coefficients)."""
    from .linalg import bareiss_det

    if f.is_zero() and g.is_zero():
        raise BothZero("resultant of two zero polynomials")
    if f.is_zero() or g.is_zero():
        return 0
    m, n = f.degree(), g.degree()
    size = m + n
    if size == 0:
        return 1
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    rows = []
    for i in range(n):
        rows.append([0] * i + fc + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gc + [0] * (size - n - 1 - i))
    return bareiss_det(rows)


def resultant_uni(f: UniPoly, g: UniPoly) -> int:
    """Integer resultant; small cases are cross-checked against Sylvester."""
    r = resultant(f, g)
    if max(f.degree(), 0) + max(g.degree(), 0) <= 8 and not (f.is_zero() or g.is_zero()):
        check = sylvester_resultant(f, g)
        if check != r:  # pragma: no cover - internal consistency guard
            raise ArithmeticError(f"resultant mismatch: PRS {r} vs Sylvester {check}")
    return r


_DIRECT_CYCLIC_LIMIT = 1024


def resultant_cyclic(n: int, g, *, direct_limit: int | None = None):
    """``Res(x^n - 1, g) = prod over n-th roots of unity of g``.

    ``g`` is a UniPoly over any supported coefficient ring, or a bare ring
    element (constant in x).  Small n use the subresultant chain of
    ``x^n - 1`` and g directly; above ``direct_limit`` the power x^n is
    reduced modulo g by square-and-multiply so the cost grows with log n.
    """
    if not isinstance(g, UniPoly):
        return _power(g, n)
    g = g.fold(n)
    if g.is_zero():
        return 0
    m = g.degree()
    if m == 0:
        return _power(g.lc(), n)
    limit = _DIRECT_CYCLIC_LIMIT if direct_limit is None else direct_limit
    if n <= limit:
        return resultant(x_power_minus_one(n), g)
    lead = g.lc()
    # H = lead^s * x^n mod g, by square-and-multiply on the bits of n
    H = UniPoly((1,))
    s = 0
    for bit in bin(n)[2:]:
        H = H * H
        s *= 2
        if H.degree() >= m:
            s += H.degree() - m + 1
            H = prem(H, g)
        if bit == "1":
            H = H * UniPoly((0, 1))
            if H.degree() >= m:
                s += H.degree() - m + 1
                H = prem(H, g)
    # lead^s * (x^n - 1) == H - lead^s  mod g
    H = H - UniPoly((_power(lead, s),))
    if H.is_zero():
        return 0
    # prod over roots beta of g of H(beta) equals Res(g, H) / lead^deg(H)
    num = resultant(g, H) * _power(lead, n)
    if (n * m) & 1:
        num = -num
    den_exp = H.degree() + s * m
    return exquo(num, _power(lead, den_exp)) if den_exp else num


def cyclotomic(p: int, k: int) -> UniPoly:
    """The cyclotomic polynomial of order p^k."""
    if k == 0:
        return UniPoly((-1, 1))
    step = p ** (k - 1)
    coeffs = [0] * ((p - 1) * step + 1)
    for j in range(p):
        coeffs[j * step] = 1
    return UniPoly(coeffs)


def x_power_minus_one(n: int) -> UniPoly:
    return UniPoly([-1] + [0] * (n - 1) + [1])


def to_unipoly(P: LaurentPoly) -> UniPoly:
    """Univariate LaurentPoly with nonnegative exponents to dense form."""
    if P.nvars != 1:
        raise DimensionMismatch("to_unipoly needs one variable")
    if P.is_zero():
        return UniPoly()
    if P.min_exponents()[0] < 0:
        raise ValueError("negative exponent")
    out = [0] * (P.max_exponents()[0] + 1)
    for (k,), c in P.terms:
        out[k] = c
    return UniPoly(out)


def from_unipoly(f: UniPoly) -> LaurentPoly:
    return LaurentPoly.from_dict(1, {(i,): c for i, c in enumerate(f.coeffs) if c})


def to_recursive(P: LaurentPoly, order: Sequence[int]):
    """Nested UniPoly in the variables ``order`` (outermost first).

    Variables not listed must not occur.  Exponents must be nonnegative.
    The result is an int when ``order`` is empty.
    """
    def build(items, level):
        if level == len(order):
            return sum(c for _, c in items)
        var = order[level]
        groups: dict[int, list] = {}
        for e, c in items:
            groups.setdefault(e[var], []).append((e, c))
        deg = max(groups)
        coeffs = [0] * (deg + 1)
        for k, sub in groups.items():
            coeffs[k] = build(sub, level + 1)
        return UniPoly(coeffs)

    if P.is_zero():
        return 0 if not order else UniPoly()
    return build(list(P.terms), 0)
