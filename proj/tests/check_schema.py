"""Validates records emitted by every subcommand against docs/result_record.schema.json."""
import json
import pathlib
import subprocess
import sys

import jsonschema

cli, root = sys.argv[1], pathlib.Path(sys.argv[2])
schema = json.loads((root / "docs" / "result_record.schema.json").read_text())
jsonschema.Draft202012Validator.check_schema(schema)
validator = jsonschema.Draft202012Validator(schema)

runs = [
    ["eval", "--problem", "riemann_zeta", "--alpha", "0.75", "--w", "2", "--gamma", "1"],
    ["eval", "--problem", "faddeev", "--w", "1", "--gamma", "0.2"],
    ["expand", "--problem", "faddeev", "--w", "1", "--gamma", "0.2", "--n", "6"],
    ["expand", "--problem", "gamma", "--w", "0.5", "--gamma", "0.5", "--n", "4"],
    ["certify", "--problem", "faddeev", "--theorem", "FE", "--n", "1..5", "--w", "1", "--gamma", "0.2"],
    ["certify", "--problem", "faddeev", "--w", "1", "--gamma", "0.2", "--n", "1", "--delta1", "2"],
    ["certify", "--problem", "faddeev", "--theorem", "T1_5", "--n", "0", "--w", "1", "--gamma", "0.2"],
    ["certify", "--problem", "faddeev", "--theorem", "T1_75", "--n", "3", "--w", "1", "--gamma", "0.2"],
    ["certify", "--problem", "hurwitz_zeta", "--theorem", "T77", "--n", "2..3", "--w", "3", "--gamma", "0.5"],
    ["borel", "--problem", "faddeev", "--w", "1", "--xi", "0.5"],
    ["stokes", "--problem", "faddeev", "--w", "1", "--gamma", "0.3", "--scan", "8"],
    ["roots", "--orders", "2,4,6,8,10"],
    ["verify"],
]

failed = 0
for args in runs:
    proc = subprocess.run([cli, *args], capture_output=True, text=True)
    label = " ".join(args)
    if proc.returncode != 0:
        print(f"FAIL {label}: exit {proc.returncode} {proc.stderr.strip()}")
        failed += 1
        continue
    errors = sorted(validator.iter_errors(json.loads(proc.stdout)), key=lambda e: list(e.path))
    for e in errors:
        print(f"FAIL {label}: /{'/'.join(map(str, e.path))}: {e.message}")
    failed += bool(errors)
    if not errors:
        print(f"ok   {label}")

sys.exit(1 if failed else 0)
