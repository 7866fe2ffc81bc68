"""Sigma_n(T_1) over the full torus W(n)^d equals n p^(n(d-1))."""
import tempfile

from _common import check, cli
from iwalink.polyring import LaurentPoly

for d in (1, 2, 3):
    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
        fh.write(LaurentPoly.from_dict(d, {(1,) + (0,) * (d - 1): 1}).to_json())
    for p in (2, 3):
        for n in (1, 2, 3):
            rep = cli("sigma", "--poly", fh.name, "-p", p, "-n", n, "--region", "full")
            check(f"d={d} p={p} n={n}", rep["result"]["sigma"], n * p ** (n * (d - 1)))
