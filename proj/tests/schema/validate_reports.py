"""Run the CLI over a few inputs and validate every report against docs/schemas."""
import json
import pathlib
import subprocess
import sys

from jsonschema import Draft202012Validator
from referencing import Registry, Resource

cli, schema_dir, fixture_dir = sys.argv[1], pathlib.Path(sys.argv[2]), sys.argv[3]

registry = Registry()
for path in schema_dir.glob("*.schema.json"):
    schema = json.loads(path.read_text())
    Draft202012Validator.check_schema(schema)
    registry = registry.with_resource(schema["$id"], Resource.from_contents(schema))
validator = Draft202012Validator(json.loads((schema_dir / "report.schema.json").read_text()), registry=registry)

runs = [
    ["states", "k3_1"], ["jones", "k3_1"], ["jones", "l11n376"],
    ["kh", "k3_1"], ["kh", "k8_19", "--j", "5..9"], ["kh", "k8_19", "--jmin-only"], ["kh", "unlink2"],
    ["classify", "t34_almost_alternating"], ["classify", "k8_19"],
    ["tb", "k3_1"], ["tb", "k8_19"], ["tb", "unlink2"], ["front", "k3_1"],
    ["verify", "k3_1", "--theorem", "all"], ["verify", "t34_almost_alternating", "--theorem", "all"],
    ["verify", "k13n_588", "--theorem", "diagonal"],
    ["corpus", "run", "--dir", fixture_dir, "--max-crossings", "8"],
]
failed = 0
for args in runs:
    for extra in (["--stable"], []):
        proc = subprocess.run([cli, *args, *extra], capture_output=True, text=True)
        if proc.returncode not in (0, 1):
            print("exit", proc.returncode, args, proc.stderr.strip())
            failed += 1
            continue
        for err in validator.iter_errors(json.loads(proc.stdout)):
            print(" ".join(args), list(err.absolute_path), err.message)
            failed += 1
print("schema errors:", failed)
sys.exit(1 if failed else 0)
