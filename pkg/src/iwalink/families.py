"""Built-in example links and closed-form families.

Polynomial conventions follow the symmetric normalization used throughout
the package: for the twisted Whitehead links

    Delta_{W_{2m+1}}(x, y) = 1 + m - m x - m y + (1 + m) x y,
    Delta_{W_{2m}}(x, y)   = m (1 + x y - x - y).

>>> str(whitehead_delta(0, "odd"))
'x*y + 1'
>>> catalog("6_1^2").link.full().to_string()
'x^2*y^2 + x*y + 1'
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .covers import LinkPresentation, torres_check
from .errors import IndexOutOfRange, ParseError, UnknownName
from .polyring import LaurentPoly, poly, substitute_monomials


def _parity(parity: str) -> str:
    if parity not in ("odd", "even"):
        raise ValueError("parity must be 'odd' or 'even'")
    return parity


def whitehead_delta(m: int, parity: str) -> LaurentPoly:
    """Alexander polynomial of ``W_{2m+1}`` (odd) or ``W_{2m}`` (even)."""
    if _parity(parity) == "odd":
        if m < 0:
            raise IndexOutOfRange("odd twisted Whitehead links need m >= 0")
        return poly(2, {(0, 0): 1 + m, (1, 0): -m, (0, 1): -m, (1, 1): 1 + m})
    if m < 1:
        raise IndexOutOfRange("even twisted Whitehead links need m >= 1")
    return poly(2, {(0, 0): m, (1, 1): m, (1, 0): -m, (0, 1): -m})


def whitehead_by_index(k: int) -> LaurentPoly:
    """``Delta_{W_k}`` for k >= 1."""
    if k < 1:
        raise IndexOutOfRange("twisted Whitehead index must be positive")
    return whitehead_delta(k // 2, "odd" if k % 2 else "even")


def conway_whitehead(m: int, parity: str) -> LaurentPoly:
    """Conway potential of ``W_{2m+1}`` or ``W_{2m}`` in the variables ``t_a, t_b``."""
    if _parity(parity) == "odd":
        if m < 0:
            raise IndexOutOfRange("odd twisted Whitehead links need m >= 0")
        return poly(2, {(1, 1): -(m + 1), (-1, -1): -(m + 1), (1, -1): m, (-1, 1): m})
    if m < 1:
        raise IndexOutOfRange("even twisted Whitehead links need m >= 1")
    return poly(2, {(1, 1): m, (1, -1): -m, (-1, 1): -m, (-1, -1): m})


_DIAG = poly(2, {(1, 1): 1, (-1, -1): 1})     # t_a t_b + t_a^-1 t_b^-1
_ANTI = poly(2, {(1, -1): 1, (-1, 1): 1})     # t_a t_b^-1 + t_a^-1 t_b


def conway_recurrence_failures(mmax: int = 20) -> list[str]:
    """Indices where either skein recurrence fails (empty when all hold)."""
    bad = []
    for m in range(1, mmax + 1):
        if conway_whitehead(m, "odd") != -conway_whitehead(m, "even") - _DIAG:
            bad.append(f"odd recurrence at m={m}")
        if conway_whitehead(m, "even") != -conway_whitehead(m - 1, "odd") - _ANTI:
            bad.append(f"even recurrence at m={m}")
    return bad


def _invert(P: LaurentPoly) -> LaurentPoly:
    return substitute_monomials(P, [[-int(i == j) for j in range(P.nvars)] for i in range(P.nvars)])


def conway_symmetry_failures(mmax: int = 20) -> list[str]:
    """Indices where ``nabla(t) = (-1)^2 nabla(t^-1)`` fails."""
    bad = []
    for m in range(0, mmax + 1):
        for parity in ("odd", "even"):
            if parity == "even" and m == 0:
                continue
            P = conway_whitehead(m, parity)
            if P != _invert(P):
                bad.append(f"{parity} m={m}")
    return bad


def conway_alexander_failures(mmax: int = 20) -> list[str]:
    """Indices where nabla differs from ``Delta(t_a^2, t_b^2)`` beyond a unit."""
    bad = []
    squares = [[2, 0], [0, 2]]
    for m in range(0, mmax + 1):
        for parity in ("odd", "even"):
            if parity == "even" and m == 0:
                continue
            lhs = conway_whitehead(m, parity).normalize_unit()
            rhs = substitute_monomials(whitehead_delta(m, parity), squares).normalize_unit()
            if lhs != rhs:
                bad.append(f"{parity} m={m}")
    return bad


# --- catalog ----------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    name: str
    link: LinkPresentation
    provenance: str
    expected: tuple[tuple[str, object], ...] = ()
    aliases: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "expected", tuple(sorted(self.expected)))

    def expected_value(self, key: str):
        return dict(self.expected).get(key)

    def to_json_obj(self) -> dict:
        obj = {"name": self.name, "link": self.link.to_json_obj(), "provenance": self.provenance}
        if self.expected:
            obj["expected"] = {k: v for k, v in self.expected}
        return obj


_ONE = LaurentPoly.constant(1, 1)


def _whitehead_entry(k: int) -> CatalogEntry:
    link = LinkPresentation.build(2, {(1,): _ONE, (2,): _ONE, (1, 2): whitehead_by_index(k)},
                                  {(1, 2): 2 if k % 2 else 0})
    m = k // 2
    expected = [("mu", "v_p(%d)" % m if k % 2 == 0 else "0")]
    if k % 2 == 0:
        expected.append(("lambda", 2))
    return CatalogEntry(f"W{k}", link,
                        "twisted Whitehead family closed form; unknotted components", tuple(expected))


def _static_entries() -> list[CatalogEntry]:
    md = LinkPresentation.build(2, {(1,): _ONE, (2,): _ONE,
                                    (1, 2): poly(2, {(2, 2): 1, (1, 1): 1, (0, 0): 1})},
                                {(1, 2): 3})
    solomon = LinkPresentation.build(2, {(1,): _ONE, (2,): _ONE,
                                         (1, 2): poly(2, {(1, 1): 1, (0, 0): -1})})
    borromean_like = LinkPresentation.build(3, {(1, 2, 3): poly(3, {(0, 0, 0): 1, (1, 1, 1): -1})})
    four = LinkPresentation.build(
        4, {(1, 2, 3, 4): poly(4, {(1, 0, 0, 1): 1, (0, 0, 0, 0): -1})
            * poly(4, {(0, 1, 1, 0): 1, (0, 0, 0, 0): -1})})
    return [
        CatalogEntry("6_1^2", md,
                     "two-component link 6_1^2 (torus link of type (2,6)); unknotted components",
                     (("order", "3^(p^n-1) for p != 3"), ("lambda@3", 2), ("mu@3", 0))),
        CatalogEntry("4_1^2", solomon,
                     "Solomon's knot 4_1^2; polynomial in the convention xy - 1, "
                     "no linking number recorded", (("rank_assumption", "fails"),)),
        CatalogEntry("6_3^3", borromean_like,
                     "three-component link 6_3^3; sublink polynomials not recorded",
                     (("lambda", 1),)),
        CatalogEntry("8_3^4", four,
                     "four-component link 8_3^4; sublink polynomials not recorded",
                     (("lambda", 2),), aliases=("8_4^3",)),
    ]


_STATIC = {e.name: e for e in _static_entries()}
_ALIASES = {a: e.name for e in _STATIC.values() for a in e.aliases}
_LISTED_WHITEHEAD = 10


def catalog_names() -> list[str]:
    return [f"W{k}" for k in range(1, _LISTED_WHITEHEAD + 1)] + list(_STATIC)


def catalog(name: str) -> CatalogEntry:
    """Look up a shipped link; ``W<k>`` works for every k >= 1."""
    m = re.fullmatch(r"W(\d+)", name)
    if m:
        k = int(m.group(1))
        if k < 1:
            raise UnknownName(f"no link named {name!r}")
        return _whitehead_entry(k)
    name = _ALIASES.get(name, name)
    if name not in _STATIC:
        raise UnknownName(f"no link named {name!r}; known: {', '.join(catalog_names())}")
    return _STATIC[name]


def export_catalog() -> list[dict]:
    return [catalog(n).to_json_obj() for n in catalog_names()]


# --- ingestion --------------------------------------------------------------

def entry_from_json_obj(obj, where: str = "entry") -> CatalogEntry:
    if not isinstance(obj, dict):
        raise ParseError("entry must be an object", field=where)
    if "c" in obj and "sublinks" in obj:
        obj = {"name": where, "link": obj}
    name = obj.get("name")
    if not isinstance(name, str) or not name:
        raise ParseError("missing name", field=f"{where}.name")
    try:
        link = LinkPresentation.from_json_obj(obj.get("link"))
    except ParseError as exc:
        raise ParseError(str(exc), field=f"{where}.link") from None
    except (ValueError, KeyError) as exc:
        raise ParseError(str(exc), field=f"{where}.link") from None
    if link.lk is not None:
        report = torres_check(link)
        if not report.passed:
            raise ParseError(f"Torres condition fails at component {report.first_failure}",
                             field=f"{where}.link")
    expected = obj.get("expected", {})
    if not isinstance(expected, dict):
        raise ParseError("must be an object", field=f"{where}.expected")
    return CatalogEntry(name, link, str(obj.get("provenance", "user supplied")),
                        tuple(expected.items()))


def ingest(path) -> list[CatalogEntry]:
    """Read links from a JSON file: one entry, a list of entries, or empty."""
    text = Path(path).read_text(encoding="utf-8")
    if not text.strip():
        return []
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
    if isinstance(data, dict) and "entries" in data:
        data = data["entries"]
    if isinstance(data, dict):
        return [entry_from_json_obj(data, Path(path).stem)]
    if not isinstance(data, list):
        raise ParseError("expected an object or a list of entries")
    return [entry_from_json_obj(obj, f"entries[{i}]") for i, obj in enumerate(data)]


def dumps_entries(entries) -> str:
    return json.dumps([e.to_json_obj() for e in entries], indent=2, sort_keys=True) + "\n"
