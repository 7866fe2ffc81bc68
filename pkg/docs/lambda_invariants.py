"""lambda of 6_1^2 at p=3, 6_3^3 and 8_4^3 at p in {2, 3, 5}."""
import json
import tempfile

from _common import check, cli
from iwalink.families import catalog
from iwalink.polyring import shift_substitute

cases = [("6_1^2", 3, 2)] + [("6_3^3", p, 1) for p in (2, 3, 5)] + [("8_4^3", p, 2) for p in (2, 3, 5)]
for name, p, lam in cases:
    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
        fh.write(shift_substitute(catalog(name).link.full()).to_json())
    rep = cli("mu-lambda", "--poly", fh.name, "-p", p)["result"]
    check(f"{name} p={p} (mu, lambda)", (rep["mu"], rep["lambda"]), (0, lam))
