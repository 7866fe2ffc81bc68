"""Total linking number covers of W_{2p^k}: exponent k p^n + 3n - k."""
from _common import check, cli

for p in (2, 3):
    for k in (0, 1):
        rep = cli("tln", "--catalog", f"W{2 * p ** k}", "-p", p, "--nmax", 4)["result"]
        got = [lvl["exponent"] for lvl in rep["levels"]]
        check(f"W{2 * p ** k} p={p}", got, [k * p ** n + 3 * n - k for n in range(1, 5)])
