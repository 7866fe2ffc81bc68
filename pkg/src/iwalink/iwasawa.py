"""Iwasawa mu and lambda invariants, and exact growth polynomials.

Polynomials here are in the shifted variables ``T_i = t_i - 1`` (an element of
the power series ring restricted to polynomials), as produced by
``shift_substitute``.

>>> from iwalink.polyring import poly, shift_substitute
>>> F = shift_substitute(poly(2, {(2, 2): 1, (1, 1): 1, (0, 0): 1}))
>>> mu_invariant(F, 3), lambda_by_factors(F, 3)
(0, 2)
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ._parallel import pmap
from .errors import (InsufficientSamples, MismatchMuLambda, NoStableFit, NotDivisible,
                     VanishesOnTorus, ZeroPolynomial)
from .linalg import integer_inverse, primitive_directions, solve_rational, unimodular_completion
from .polyring import (LaurentPoly, mod_p_reduce, p_content, substitute_monomials,
                       trial_divide, unshift_substitute)
from .torus import TorusRegion, Vanishes, sigma


def mu_invariant(F: LaurentPoly, p: int) -> int:
    """Largest mu with p^mu dividing F."""
    return p_content(F, p)


def _reduced_t_form(F: LaurentPoly, p: int) -> LaurentPoly:
    """``(F / p^mu) mod p`` rewritten in the t-variables."""
    mu = p_content(F, p)
    scale = p ** mu
    F0 = LaurentPoly(F.nvars, tuple((e, c // scale) for e, c in F.terms))
    if any(m < 0 for m in F0.min_exponents()):
        raise ValueError("expected a polynomial in T (no negative exponents)")
    return mod_p_reduce(unshift_substitute(F0), p).normalize_monomial()


def _direction_multiplicity(G: LaurentPoly, e, p: int) -> int:
    W = unimodular_completion(e)
    Winv = integer_inverse(W)
    H = substitute_monomials(G, Winv)  # t^e becomes s_1
    D = mod_p_reduce(LaurentPoly.binomial([1] + [0] * (G.nvars - 1)), p)
    m = 0
    while True:
        try:
            H = trial_divide(H, D, modulus=p)
        except NotDivisible:
            return m
        m += 1


def lambda_factors(F: LaurentPoly, p: int) -> list[tuple[tuple[int, ...], int]]:
    """Primitive integer directions e with the multiplicity of ``(t^e - 1)`` in F mod p."""
    if F.is_zero():
        raise ZeroPolynomial("lambda of 0")
    G = _reduced_t_form(F, p)
    if G.is_monomial():
        return []
    directions = primitive_directions(G.span())
    mults = pmap(lambda e: _direction_multiplicity(G, e, p), directions)
    return [(e, m) for e, m in zip(directions, mults) if m]


def lambda_by_factors(F: LaurentPoly, p: int) -> int:
    """Sum of multiplicities of the primes ``(sigma - 1)``, sigma an integer direction."""
    return sum(m for _, m in lambda_factors(F, p))


# --- growth polynomials -----------------------------------------------------

def _monomials(d: int) -> list[tuple[int, int]]:
    """Exponents ``(i, j)`` of ``U^i V^j`` with ``j <= 1`` and ``i + j <= d``, highest first."""
    out = [(i, 0) for i in range(d, -1, -1)] + [(i, 1) for i in range(d - 1, -1, -1)]
    out.sort(key=lambda m: (-(m[0] + m[1]), m[1]))
    return out


def _mono_name(i: int, j: int) -> str:
    parts = []
    if i == 1:
        parts.append("U")
    elif i > 1:
        parts.append(f"U^{i}")
    if j:
        parts.append("V")
    return "*".join(parts) or "1"


def _parse_mono(name: str) -> tuple[int, int]:
    i = j = 0
    if name == "1":
        return 0, 0
    for part in name.split("*"):
        if part == "U":
            i = 1
        elif part.startswith("U^"):
            i = int(part[2:])
        elif part == "V":
            j = 1
        else:
            raise ValueError(f"bad monomial {name!r}")
    return i, j


@dataclass(frozen=True)
class IwasawaInvariants:
    mu: int
    lam: int
    lower: dict = field(default_factory=dict)


@dataclass(frozen=True)
class GrowthPolynomial:
    """``f(U, V)`` with rational coefficients, ``deg_V <= 1``, total degree ``<= d``.

    >>> f = GrowthPolynomial.from_values(2, {(2, 0): 1, (1, 1): 2})
    >>> f(9, 2), f.mu, f.lam
    (Fraction(117, 1), 1, 2)
    """

    d: int
    coefficients: tuple[tuple[tuple[int, int], Fraction], ...]
    threshold: int | None = None

    @classmethod
    def from_values(cls, d: int, values: dict, threshold: int | None = None):
        allowed = set(_monomials(d))
        items = []
        for key, c in values.items():
            if key not in allowed:
                raise ValueError(f"monomial {key} not allowed for d={d}")
            c = Fraction(c)
            if c:
                items.append((tuple(key), c))
        items.sort(key=lambda kc: _monomials(d).index(kc[0]))
        return cls(d, tuple(items), threshold)

    def coeff(self, i: int, j: int) -> Fraction:
        return dict(self.coefficients).get((i, j), Fraction(0))

    def __call__(self, U, V) -> Fraction:
        return sum((c * Fraction(U) ** i * Fraction(V) ** j for (i, j), c in self.coefficients),
                   Fraction(0))

    def at_level(self, p: int, n: int) -> Fraction:
        return self(p ** n, n)

    def _integer(self, c: Fraction):
        return int(c) if c.denominator == 1 else c

    @property
    def mu(self):
        return self._integer(self.coeff(self.d, 0))

    @property
    def lam(self):
        return self._integer(self.coeff(self.d - 1, 1)) if self.d >= 1 else 0

    def lower_coefficients(self) -> dict[str, Fraction]:
        """Everything below the two leading terms, keyed by monomial name."""
        top = {(self.d, 0), (self.d - 1, 1)}
        return {_mono_name(i, j): c for (i, j), c in self.coefficients if (i, j) not in top}

    def invariants(self) -> IwasawaInvariants:
        return IwasawaInvariants(self.mu, self.lam, self.lower_coefficients())

    def to_json_obj(self) -> dict:
        return {_mono_name(i, j): str(c) for (i, j), c in self.coefficients}

    @classmethod
    def from_json_obj(cls, d: int, obj: dict) -> "GrowthPolynomial":
        return cls.from_values(d, {_parse_mono(k): Fraction(v) for k, v in obj.items()})

    def __str__(self):
        if not self.coefficients:
            return "0"
        out = ""
        for (i, j), c in self.coefficients:
            name = _mono_name(i, j)
            mag = abs(c)
            body = name if (mag == 1 and name != "1") else (
                str(mag) if name == "1" else f"{mag}*{name}")
            if not out:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out


def _fit_window(samples, p: int, d: int) -> GrowthPolynomial:
    monos = _monomials(d)
    A = [[(p ** n) ** i * n ** j for (i, j) in monos] for n, _ in samples]
    b = [v for _, v in samples]
    x = solve_rational(A, b)
    return GrowthPolynomial.from_values(d, dict(zip(monos, x)), threshold=samples[0][0])


def fit_growth_polynomial(samples: Sequence[tuple[int, int]], p: int, d: int,
                          holdout: int = 2) -> GrowthPolynomial:
    """Exact fit of ``f(p^n, n) = value`` from consecutive samples.

    The first ``2d+1`` samples determine f, the rest must agree.  On
    disagreement the window moves one level up; when fewer than ``holdout``
    verification samples remain, ``NoStableFit`` is raised.

    >>> fit_growth_polynomial([(n, 3 ** n + 3 * n - 1) for n in range(1, 6)], 3, 1).to_json_obj()
    {'U': '1', 'V': '3', '1': '-1'}
    """
    samples = sorted((int(n), v) for n, v in samples)
    for a, b in zip(samples, samples[1:]):
        if b[0] != a[0] + 1:
            raise ValueError("samples must be at consecutive levels")
    width = 2 * d + 1
    if len(samples) < width + holdout:
        raise InsufficientSamples(f"need at least {width + holdout} samples, got {len(samples)}")
    for start in range(0, len(samples) - width - holdout + 1):
        f = _fit_window(samples[start:start + width], p, d)
        if all(f.at_level(p, n) == v for n, v in samples[start + width:]):
            return f
    raise NoStableFit("no window of samples determines a polynomial that fits the rest")


@dataclass(frozen=True)
class AsymptoticReport:
    p: int
    d: int
    mu: int
    lam: int
    growth: GrowthPolynomial
    samples: tuple[tuple[int, int], ...]
    residuals: tuple[Fraction, ...]

    def to_json_obj(self) -> dict:
        return {"p": self.p, "d": self.d, "mu": self.mu, "lambda": self.lam,
                "growth_poly": self.growth.to_json_obj(),
                "samples": [[n, str(v)] for n, v in self.samples],
                "residuals": [str(r) for r in self.residuals],
                "nmax": self.samples[-1][0] if self.samples else None,
                "method": {"mu": "content", "lambda": "factors+fit"}}


def sigma_sequence(F: LaurentPoly, p: int, nmax: int, policy: str = "skip",
                   nmin: int = 1) -> list[tuple[int, int]]:
    """``[(n, Sigma_n(F))]`` over full tori; raises VanishesOnTorus under the strict policy."""
    d = F.nvars
    levels = list(range(nmin, nmax + 1))
    values = pmap(lambda n: sigma(F, TorusRegion.full(p, n, d), policy), levels)
    for n, v in zip(levels, values):
        if v is Vanishes:
            raise VanishesOnTorus(f"F(zeta - 1) = 0 for some zeta in W({n})^{d}")
    return list(zip(levels, values))


def verify_asymptotic(F: LaurentPoly, p: int, nmax: int | None = None,
                      policy: str = "skip") -> AsymptoticReport:
    """Fit the Sigma_n sequence and check it against the structural mu and lambda.

    An ``nmax`` below ``2d+3`` cannot support a verified fit and is raised to
    that minimum; the report records the level actually used.
    """
    if F.is_zero():
        raise ZeroPolynomial("verify_asymptotic of 0")
    d = F.nvars
    nmax = max(2 * d + 3, 6) if nmax is None else max(nmax, 2 * d + 3)
    samples = sigma_sequence(F, p, nmax, policy)
    f = fit_growth_polynomial(samples, p, d)
    mu = mu_invariant(F, p)
    lam = lambda_by_factors(F, p)
    if f.coeff(d, 0) != mu or f.coeff(d - 1, 1) != lam:
        raise MismatchMuLambda(
            f"structural mu={mu}, lambda={lam} but fitted mu={f.mu}, lambda={f.lam} (p={p})")
    residuals = tuple(Fraction(v - mu * p ** (d * n) - lam * n * p ** ((d - 1) * n),
                               p ** ((d - 1) * n)) for n, v in samples)
    return AsymptoticReport(p, d, mu, lam, f, tuple(samples), residuals)
