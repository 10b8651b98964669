"""Runs the CLI over a query corpus and checks every output line against the report schema."""
import json
import subprocess
import sys

import jsonschema

exe, schema_path, corpus = sys.argv[1:4]
schema = json.load(open(schema_path))
validator = jsonschema.Draft202012Validator(schema)

proc = subprocess.run([exe, "batch", corpus, "--jobs", "4"], capture_output=True, text=True, timeout=120)
lines = proc.stdout.splitlines()
queries = [l for l in open(corpus) if l.strip()]
failures = 0
if len(lines) != len(queries):
    print(f"expected {len(queries)} report lines, got {len(lines)}")
    failures += 1
for n, line in enumerate(lines, 1):
    errors = list(validator.iter_errors(json.loads(line)))
    for e in errors:
        print(f"line {n}: {e.message}")
    failures += bool(errors)

# batch exit code is the worst per-line code; the corpus has a degree-cap line
if proc.returncode != 2:
    print(f"batch exit code {proc.returncode}, expected 2")
    failures += 1

singles = [
    (["da-hypergeom", "--case", "shift", "--b", "x"], 0, "DIFFERENTIALLY_TRANSCENDENTAL"),
    (["classify-group", "--case", "q", "--q", "2", "--f", "1/(x-1)"], 0, "FULL_GA"),
    (["integrability", "--case", "shift", "--matrix", "[[0,-1],[1,x]]"], 0, "NOT_CONSTANT_CONJUGATE"),
    (["classify-group", "--case", "q", "--q", "-1", "--f", "1"], 1, None),
    (["da-hypergeom", "--b", "x +* 1"], 1, None),
    (["solve-first-order", "--a", "1", "--b", "x^250"], 2, None),
]
for args, code, verdict in singles:
    p = subprocess.run([exe] + args, capture_output=True, text=True, timeout=60)
    out = json.loads(p.stdout.splitlines()[-1])
    ok = p.returncode == code and not list(validator.iter_errors(out))
    if verdict is not None:
        ok = ok and out.get("verdict") == verdict
    if not ok:
        print(f"{args}: exit {p.returncode}, output {p.stdout.strip()}")
        failures += 1

print(f"{len(lines)} batch lines and {len(singles)} single queries checked, {failures} failures")
sys.exit(1 if failures else 0)
