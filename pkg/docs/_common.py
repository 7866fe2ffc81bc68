"""Shared helper: run the CLI and return its parsed JSON report."""
from __future__ import annotations

import json
import subprocess
import sys


def cli(*args, expect=0):
    proc = subprocess.run([sys.executable, "-m", "iwalink", *map(str, args)],
                          capture_output=True, text=True)
    if proc.returncode != expect:
        sys.exit(f"iwalink {' '.join(map(str, args))}: exit {proc.returncode}\n{proc.stderr}")
    return json.loads(proc.stdout) if proc.stdout.strip().startswith("{") else proc.stdout


def check(label, got, want):
    status = "ok" if got == want else "MISMATCH"
    print(f"{status:8} {label}: {got}")
    if got != want:
        sys.exit(1)
