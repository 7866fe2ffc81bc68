"""Prime-to-p parts of 3^(2^n - 1) converge 2-adically to 1/3; Teichmuller check at p = 5."""
from _common import check, cli

rep = cli("padic-limit", "--base", 3, "-p", 2, "--precision", 8, "--nmax", 14)["result"]
check("residue * 3 mod 2^8", rep["residue"] * 3 % 256, 1)
rep = cli("padic-limit", "--base", 3, "-p", 5, "--precision", 3, "--nmax", 6)["result"]
check("p=5 Teichmuller agreement", rep["agrees"], True)
