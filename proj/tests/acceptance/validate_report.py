#!/usr/bin/env python3
"""Validate CLI JSON reports against docs/report-schema.json.

Given --files, each file is validated and, when there are two, they must be
byte-identical once wall_time_ms values are masked. Given --cli, the tool is
run twice to produce those files first.
"""

import argparse
import json
import re
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

TIMING = re.compile(rb'"wall_time_ms": \d+')


def masked(path):
    return TIMING.sub(b'"wall_time_ms": 0', Path(path).read_bytes())


def check(files, schema, require_pass, min_reports):
    validator = jsonschema.Draft202012Validator(schema)
    ok = True
    for f in files:
        doc = json.loads(Path(f).read_text())
        errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
        for e in errors:
            print(f"{f}: schema violation at {list(e.path)}: {e.message}")
        ok = ok and not errors
        if require_pass and doc.get("status") != "pass":
            print(f"{f}: status is {doc.get('status')}")
            ok = False
        if min_reports and len(doc.get("reports", [])) < min_reports:
            print(f"{f}: {len(doc.get('reports', []))} reports, expected at least {min_reports}")
            ok = False
    if len(files) == 2 and masked(files[0]) != masked(files[1]):
        print("reruns differ beyond wall_time_ms")
        ok = False
    return ok


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--schema", required=True)
    ap.add_argument("--files", nargs="+")
    ap.add_argument("--cli")
    ap.add_argument("--mode", choices=["report", "verify"], default="report")
    ap.add_argument("--allow-fail", action="store_true")
    args = ap.parse_args()
    schema = json.loads(Path(args.schema).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)

    if args.files:
        ok = check(args.files, schema, not args.allow_fail, 0)
    elif args.cli:
        with tempfile.TemporaryDirectory() as tmp:
            files = [str(Path(tmp) / f"run{i}.json") for i in (1, 2)]
            for f in files:
                if args.mode == "report":
                    cmd = [args.cli, "report", "--all", "--q", "3", "--seed", "0", "--out", f]
                else:
                    cmd = [args.cli, "verify", "--suite", "all", "--q", "3", "--seed", "0", "--out", f]
                rc = subprocess.run(cmd, stdout=subprocess.DEVNULL).returncode
                if rc != 0:
                    print(f"{' '.join(cmd)} exited {rc}")
                    return 1
            ok = check(files, schema, True, 6 if args.mode == "report" else 0)
    else:
        ap.error("give --files or --cli")
    print("valid" if ok else "invalid")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
