"""Checking the volume chain from an external VolumeReport.

Volumes are engine data, never computed here.  The chain says every
twisted knot's volume stays below the filled link's, which stays below the
augmented parent's: vol(K^n) <= vol(L') <= vol(L).  The pyverify package
produces real reports when a geometry engine (SnapPy) is installed; this
demo feeds a hand-written report through the same checker.
"""

import json
import tempfile
from pathlib import Path

from platforge.bounds import load_volume_report, volume_chain_report

entries = [
    {"name": "k_n(n=5)", "volume": 24.90, "hyperbolic": True,
     "engine": "demo", "tolerance": 1e-6},
    {"name": "k_n(n=10)", "volume": 25.10, "hyperbolic": True,
     "engine": "demo", "tolerance": 1e-6},
    {"name": "l_prime(g=1)", "volume": 25.30, "hyperbolic": True,
     "engine": "demo", "tolerance": 1e-6},
    {"name": "script_l(g=1)", "volume": 92.00, "hyperbolic": True,
     "engine": "demo", "tolerance": 1e-6},
]

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "volume_report.json"
    path.write_text(json.dumps(entries, indent=2))
    report = volume_chain_report(load_volume_report(path))

for chk in report["checks"]:
    print(("pass " if chk["holds"] else "FAIL "), chk["inequality"])
print("uniform upper bound V =", report["uniform_upper_bound"])
print("chain ok:", report["ok"])
print("\n(real runs: `pyverify --g 1 --n 5 10` then "
      "`platforge volume-chain --report volume_report.json`)")
