"""
Fuzzing and the command line
============================

Throw random fields at the audit, then do the same from the shell.
"""

# %%
import json
import subprocess
import sys
import tempfile
from pathlib import Path

from rigidity_lab import fuzz, generate

for kind, params in [("octahedron", ()), ("flat_vertex", ("octahedron", 0))]:
    s = fuzz(generate(kind, *params), trials=200, seed=1)
    print(kind, "sound:", s["sound"])
    for name, row in s["samplers"].items():
        print(f"  {name:15s} admissible={row['admissible']:4d} verdicts={row['verdicts']}")

# %%
# The ``rigidity-lab`` command wraps the same calls.  Exit codes: 0 rigid or
# pass, 2 flexible, 3 bad input, 4 audit violation.
cli = [sys.executable, "-m", "rigidity_lab.cli"]
with tempfile.TemporaryDirectory() as tmp:
    off = Path(tmp) / "flat.off"
    subprocess.run(cli + ["generate", "flat_vertex", "octahedron", "0", "--out", str(off)],
                   check=True)
    r = subprocess.run(cli + ["rigidity", str(off)], capture_output=True, text=True)
    print("rigidity exit", r.returncode, json.loads(r.stdout)["verdict"])
    witness = off.with_name("flat.witness.json")
    r = subprocess.run(cli + ["certify", str(off), str(witness), "--format", "text"],
                       capture_output=True, text=True)
    print("certify exit", r.returncode, r.stdout.strip())
