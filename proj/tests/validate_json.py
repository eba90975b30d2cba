"""Runs CLI commands with --json and validates each output against its schema."""

import json
import pathlib
import subprocess
import sys
import tempfile

from jsonschema import Draft202012Validator
from referencing import Registry, Resource


def main() -> int:
    cli, schemas, data = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
    resources = []
    for path in schemas.glob("*.schema.json"):
        doc = json.loads(path.read_text())
        Draft202012Validator.check_schema(doc)
        resources.append((doc["$id"], Resource.from_contents(doc)))
    registry = Registry().with_resources(resources)

    tmp = pathlib.Path(tempfile.mkdtemp())
    d = str(data)
    cases = [
        ("relation_class", ["classify-relation", "imp"]),
        ("relation_class", ["classify-relation", "or3"]),
        ("relation_class", ["classify-relation", "eq3", "--k", "4"]),
        ("relation_class", ["classify-relation", f"{d}/example.rel"]),
        ("relation_class", ["classify-language", f"{d}/ornand.lang"]),
        ("verdict", ["verdict", f"{d}/imp.lang", "--d", "3"]),
        ("verdict", ["verdict", f"{d}/ornand.lang", "--d", "25"]),
        ("verdict", ["verdict", f"{d}/example.rel", "--d", "3"]),
        ("verdict", ["verdict", "eq;neq", "--unbounded"]),
        ("verdict", ["verdict", "imp", "--d", "2"]),
        ("verdict", ["verdict", "or", "--d", "1"]),
        ("certificate", ["gadget", f"{d}/ornand.lang", "--k", "3", "--verify"]),
        ("certificate", ["gadget", "imp", "--k", "5", "--verify"]),
        ("certificate", ["gadget", "neq;or", "--k", "3"]),
        ("formula", ["normalize", f"{d}/example.rel", "--kind", "or"]),
        ("formula", ["normalize", "eq3", "--kind", "affine"]),
        ("formula", ["normalize", "{000,001,011,111}", "--kind", "im"]),
        ("count", ["count", f"{d}/triangle.hg"]),
        ("count", ["count", f"{d}/xor.inst", "--method", "affine"]),
        ("sidecar", ["reduce", "inflate", f"{d}/star.inst", "--d", "3", "-o", str(tmp / "a.inst")]),
        ("sidecar", ["reduce", "his2csp", f"{d}/triangle.hg", "-o", str(tmp / "b.inst")]),
        ("sidecar", ["reduce", "his2rel", f"{d}/triangle.hg", "--relation", "or3", "-o", str(tmp / "c.inst")]),
        ("sidecar", ["reduce", "csp2his", str(tmp / "b.inst"), "-o", str(tmp / "d.hg")]),
        ("table1", ["table1"]),
        ("table1", ["table1", "--w", "4", "--d", "3"]),
    ]
    failures = 0
    for schema, args in cases:
        proc = subprocess.run([cli, *args, "--json"], capture_output=True, text=True)
        label = " ".join(args)
        if proc.returncode != 0:
            print(f"FAIL {label}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        validator = Draft202012Validator({"$ref": f"{schema}.schema.json"}, registry=registry)
        errors = sorted(validator.iter_errors(json.loads(proc.stdout)), key=lambda e: list(e.path))
        if errors:
            print(f"FAIL {label}: {errors[0].message} at {list(errors[0].path)}")
            failures += 1
        else:
            print(f"ok   {label}")
    # The schemas must reject obviously broken documents too.
    proc = subprocess.run([cli, "verdict", "imp", "--json"], capture_output=True, text=True)
    broken = json.loads(proc.stdout)
    broken["branch"] = "polynomial"
    del broken["tags"]
    validator = Draft202012Validator({"$ref": "verdict.schema.json"}, registry=registry)
    if validator.is_valid(broken):
        print("FAIL a malformed verdict was accepted")
        failures += 1
    else:
        print("ok   malformed verdict rejected")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
