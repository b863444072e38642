"""Runs CLI commands with --out and validates every JSON artifact against docs/schemas."""
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

cli, schemas = sys.argv[1], pathlib.Path(sys.argv[2])
kinds = {
    "family.json": "family",
    "branches.json": "branches",
    "expansion.json": "expansion",
    "chart_tree.json": "chart-tree",
    "manifest.json": "manifest",
    "report.json": "report",
}
runs = [
    ["corpus", "ex1", "family"],
    ["corpus", "ex1", "track", "--mode", "c1"],
    ["corpus", "ex1", "resolve"],
    ["corpus", "ex3", "expand"],
    ["corpus", "excont", "track", "--loop"],
    ["corpus", "excont", "certify", "continuity"],
    ["corpus", "ex1", "check"],
]
failures = 0
with tempfile.TemporaryDirectory() as tmp:
    for i, args in enumerate(runs):
        out = pathlib.Path(tmp) / str(i)
        subprocess.run([cli, *args, "--out", str(out)], capture_output=True)
        for f in sorted(out.glob("*.json")):
            schema = json.loads((schemas / f"{kinds[f.name]}.schema.json").read_text())
            try:
                jsonschema.Draft202012Validator(schema).validate(json.loads(f.read_text()))
            except jsonschema.ValidationError as e:
                failures += 1
                print(f"{' '.join(args)}: {f.name}: {e.message}")
    err = subprocess.run([cli, "track", str(pathlib.Path(tmp) / "missing.json")], capture_output=True, text=True)
    try:
        jsonschema.Draft202012Validator(json.loads((schemas / "error.schema.json").read_text())).validate(json.loads(err.stderr))
    except (jsonschema.ValidationError, json.JSONDecodeError) as e:
        failures += 1
        print(f"diagnostic: {e}")
print("schema violations:", failures)
sys.exit(1 if failures else 0)
