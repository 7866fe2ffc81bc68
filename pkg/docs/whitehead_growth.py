"""Twisted Whitehead links W_{2p^k}: exponents (k p^n + 2n - 2k) p^n - 2n + k, mu = k, lambda = 2."""
from _common import check, cli

for p in (2, 3, 5):
    for k in (0, 1, 2):
        rep = cli("growth", "--catalog", f"W{2 * p ** k}", "-p", p, "--nmax", 3)["result"]
        got = [lvl["exponent"] for lvl in rep["levels"]]
        want = [(k * p ** n + 2 * n - 2 * k) * p ** n - 2 * n + k for n in (1, 2, 3)]
        check(f"W{2 * p ** k} p={p} exponents", got, want)
        check(f"W{2 * p ** k} p={p} (mu, lambda)", (rep["mu"], rep["lambda"]), (k, 2))
