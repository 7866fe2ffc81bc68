from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from iwalink.polyring import LaurentPoly, UniPoly

# Fixed seeds: every property run is reproducible.
settings.register_profile("default", derandomize=True, deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


def laurent(nvars: int, *, lo: int = -2, hi: int = 2, coeff: int = 5, max_terms: int = 4,
            nonzero: bool = False):
    exps = st.tuples(*[st.integers(lo, hi)] * nvars)
    coeffs = st.integers(-coeff, coeff)
    s = st.dictionaries(exps, coeffs, max_size=max_terms).map(
        lambda d: LaurentPoly.from_dict(nvars, d))
    return s.filter(lambda P: not P.is_zero()) if nonzero else s


def polynomials(nvars: int, **kw):
    """Ordinary polynomials (nonnegative exponents)."""
    kw.setdefault("lo", 0)
    return laurent(nvars, **kw)


def unipolys(max_degree: int = 4, coeff: int = 6, nonzero: bool = True):
    s = st.lists(st.integers(-coeff, coeff), min_size=1, max_size=max_degree + 1).map(UniPoly)
    return s.filter(lambda f: not f.is_zero()) if nonzero else s


# 2x2 unimodular matrices built from elementary moves.
_ELEMENTARY = [[[1, 1], [0, 1]], [[1, 0], [1, 1]], [[1, -1], [0, 1]], [[0, 1], [1, 0]],
               [[-1, 0], [0, 1]]]


@st.composite
def unimodular2(draw):
    from iwalink.linalg import identity, matmul
    M = identity(2)
    for _ in range(draw(st.integers(0, 4))):
        M = matmul(M, _ELEMENTARY[draw(st.integers(0, len(_ELEMENTARY) - 1))])
    return M


@pytest.fixture
def tmp_json(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return write
