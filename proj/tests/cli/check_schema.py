"""Validates shipped manifests and a sample report against the JSON schemas."""
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

root = pathlib.Path(sys.argv[1])
cli = sys.argv[2]
manifest_schema = json.loads((root / "schema/manifest.schema.json").read_text())
report_schema = json.loads((root / "schema/report.schema.json").read_text())

files = sorted((root / "data").rglob("*.json"))
assert files, "no manifests found"
for f in files:
    jsonschema.validate(json.loads(f.read_text()), manifest_schema)
    print("ok", f.relative_to(root))

with tempfile.TemporaryDirectory() as d:
    out = pathlib.Path(d) / "r.json"
    subprocess.run([cli, "--report", str(out), "pairing", "compare", "--problem",
                    str(root / "data/problems/su2_single_block.json")], check=True,
                   stdout=subprocess.DEVNULL)
    jsonschema.validate(json.loads(out.read_text()), report_schema)
    print("ok report")

bad = {"version": 1, "group": "su2", "extra": 1}
try:
    jsonschema.validate(bad, manifest_schema)
except jsonschema.ValidationError:
    print("ok unknown key rejected")
else:
    sys.exit("schema accepted an unknown key")
