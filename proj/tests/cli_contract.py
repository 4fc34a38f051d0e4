"""CLI contract: schemas, exit codes, determinism, cache transparency."""

import json
import pathlib
import subprocess
import sys
import tempfile

from jsonschema import Draft202012Validator
from referencing import Registry, Resource

CLI = sys.argv[1]
DOCS = pathlib.Path(sys.argv[2])

registry = Registry()
for path in DOCS.glob("*.schema.json"):
    registry = registry.with_resource(path.name, Resource.from_contents(json.loads(path.read_text())))


def run(*args, code=0):
    proc = subprocess.run([CLI, *args, "--quiet"], capture_output=True, text=True)
    assert proc.returncode == code, (args, proc.returncode, proc.stderr)
    return proc.stdout


def check(schema, text):
    doc = json.loads(text)
    schema_doc = json.loads((DOCS / schema).read_text())
    Draft202012Validator(schema_doc, registry=registry).validate(doc)
    return doc


check("ring_info.schema.json", run("ring", "info", "--ring", "z/9"))
sc = check("scissors.schema.json", run("scissors", "--ring", "gf(2,3)", "--relations"))
assert sc["report"]["RB"] == ["9"]
check("exactness.schema.json", run("xcomplex", "audit", "--ring", "gf(2,2)", "--dmax", "3"))
run("xcomplex", "audit", "--ring", "gf(2,3)", "--budget-tuples", "100", code=2)

d222 = check("certify.schema.json", run("certify", "d2_22", "--ring", "gf(2,3)", "--all-triples", "--brief"))
assert d222["summary"]["passed"] == 343
full = check("certify.schema.json", run("certify", "d1_22", "--ring", "gf(2,2)", "--all-pairs"))
assert all(c["intermediate"] for c in full["certificates"])
check("certify.schema.json", run("certify", "theta", "--ring", "gf(2,4)", "--all"))
check("certify.schema.json", run("certify", "d1_11", "--ring", "z/9"))
check("certify.schema.json", run("certify", "d1_21", "--ring", "gf(2,1)[t]/t^3", "--b", "1+t^2"))
run("certify", "d1_22", "--ring", "z/9", "--a", "2", "--b", "4", code=3)
run("certify", "d1_21", "--ring", "z/9", "--b", "2", code=3)
run("certify", "d1_22", "--ring", "gf(2,3)", "--a", "x", code=3)
run("scissors", "--ring", "gf(4,1)", code=3)
run("bogus", code=3)

check("conditions.schema.json", run("conditions", "--rings", "gf(2,3),gf(2,6),z/9"))

# Same config and seed give the same bytes, whatever the worker count.
a = run("certify", "d2_22", "--ring", "gf(2,4)", "--sample", "20", "--seed", "7", "--jobs", "1")
b = run("certify", "d2_22", "--ring", "gf(2,4)", "--sample", "20", "--seed", "7", "--jobs", "8")
assert a == b
assert a != run("certify", "d2_22", "--ring", "gf(2,4)", "--sample", "20", "--seed", "8")

# Cache hits and misses give the same report.
rings = "gf(2,3),gf(2,4)"
plain = run("bw-table", "--rings", rings)
check("bw_table.schema.json", plain)
with tempfile.TemporaryDirectory() as d:
    assert run("bw-table", "--rings", rings, "--cache-dir", d) == plain
    assert run("bw-table", "--rings", rings, "--cache-dir", d) == plain
csv = run("bw-table", "--rings", rings, "--format", "csv").splitlines()
assert csv[0].startswith("ring,flags") and len(csv) == 3
md = run("conditions", "--ring", "z/9", "--format", "md").splitlines()
assert md[1].startswith("| ---") and "\\|N\\|" in md[2]
print("cli contract ok")
