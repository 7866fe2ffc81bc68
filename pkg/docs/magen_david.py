"""Link 6_1^2: |H_1| = 3^(p^n - 1) for p != 3; infinite groups for p = 3."""
from _common import check, cli

for p in (2, 5):
    rep = cli("growth", "--catalog", "6_1^2", "-p", p, "--nmax", 3, "--full-order", "--no-fit")
    got = [int(o["order"]) for o in rep["result"]["orders"]]
    check(f"p={p} orders", got, [3 ** (p ** n - 1) for n in (1, 2, 3)])
rep = cli("growth", "--catalog", "6_1^2", "-p", 3, "--nmax", 2, expect=3)
check("p=3 n=2 status", rep["result"]["levels"][1]["status"], "infinite")
