#!/usr/bin/env python3
# Copyright 2026 The excov Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""CLI checks: schema validity, byte-identical reruns and exit codes."""

import json
import os
import subprocess
import sys

import jsonschema

EXE, SCHEMAS = sys.argv[1], sys.argv[2]

CASES = [
    ("field", ["field", "--field", "3^2", "--list"]),
    ("field", ["field", "--field", "2^8"]),
    ("map", ["map", "--field", "7^1", "--map", "dickson:5,3", "--at", "2", "--at", "inf"]),
    ("map", ["map", "--field", "5^1", "--map", "poly:1,0,0,0,0,0,1", "--decompose"]),
    ("map", ["map", "--field", "7^1", "--map", "redei:3,3", "--compose", "cyclic:5"]),
    ("scan", ["scan", "--field", "3^1", "--map", "dickson:5,1", "--tmax", "12"]),
    ("scan", ["scan", "--field", "5^1", "--map", "cyclic:3", "--tmax", "6", "--fast"]),
    ("frobset", ["frobset", "--mod", "12", "--residues", "2"]),
    ("frobset", ["frobset", "--mod", "4", "--residues", "1", "--and", "6:1"]),
    ("dp", ["dp", "--field", "5^1", "--f", "poly:0,0,1", "--g", "poly:0,0,2", "--tmax", "2"]),
    ("group-analyze", ["group", "analyze", "--gen", "(1 2 3 4 5)", "--gen", "(2 5)(3 4)"]),
    ("group-analyze", ["group", "analyze", "--gen", "(1 2 3 4)", "--gen", "(1 3)"]),
    ("group-model", ["group", "model", "--family", "dickson", "--n", "5", "--q", "3"]),
    ("group-model", ["group", "model", "--family", "cyclic", "--n", "7", "--q", "2"]),
    ("group-coset", ["group", "coset", "--data",
                     '{"geomGens":["(1 2 3 4 5 6 7)"],"tau":"(2 3 5)(4 7 6)",'
                     '"geomGens2":["(1 2 3 4 5 6 7)"],"tau2":"(2 3 5)(4 7 6)"}']),
    ("nielsen-validate", ["nielsen", "validate", "--perm", "(1 5)(2 4)", "--perm", "(2 5)(3 4)",
                          "--perm", "(1 5 4 3 2)"]),
    ("nielsen-validate", ["nielsen", "validate", "--perm", "(1 2)", "--perm", "(1 2)", "--perm", "(1 2)"]),
    ("nielsen-braid", ["nielsen", "braid", "--perm", "(1 5)(2 4)", "--perm", "(2 5)(3 4)",
                       "--perm", "(1 5 4 3 2)", "--all"]),
    ("nielsen-dickson", ["nielsen", "dickson", "--n", "7"]),
    ("nielsen-tower", ["nielsen", "tower", "--n", "3", "--labels", "1,2", "--q", "5"]),
    ("nielsen-modular", ["nielsen", "modular", "--p", "5"]),
    ("nielsen-rational", ["nielsen", "rational", "--class", "(1 2 3 4 5 6 7)", "--group", "(1 2 3 4 5 6 7)"]),
    ("nielsen-diffsets", ["nielsen", "diffsets", "--n", "13", "--k", "4"]),
    ("oit", ["oit", "--curve", "ogg", "--p", "5", "--lmax", "60", "--tmax", "2", "--json"]),
    ("pencil", ["pencil", "--p", "31", "--f", "poly:0,0,0,1", "--json"]),
    ("pencil", ["pencil", "--p", "11", "--f", "cyclic:5"]),
]

EXIT = [
    (2, ["scan", "--map", "foo:1"]),
    (2, ["map", "--field", "4^1", "--map", "cyclic:3"]),
    (2, ["frobset", "--mod", "0"]),
    (2, ["nielsen", "validate", "--perm", "(1 2"]),
    (2, ["oit", "--curve", "[0,0,0,0,0]"]),
    (2, ["no-such-command"]),
    (3, ["field", "--field", "2^30"]),
    (3, ["scan", "--field", "3^1", "--map", "cyclic:5", "--cap", "2"]),
]


def run(args, env=None):
    return subprocess.run([EXE] + args, capture_output=True, env=env)


def main():
    failures = 0
    schemas = {}
    for name, args in CASES:
        if name not in schemas:
            with open(os.path.join(SCHEMAS, name + ".schema.json")) as f:
                schemas[name] = json.load(f)
        a, b = run(args), run(args)
        label = " ".join(args)
        if a.returncode != 0:
            print(f"FAIL exit {a.returncode}: {label}: {a.stderr.decode()}")
            failures += 1
            continue
        if a.stdout != b.stdout:
            print(f"FAIL not deterministic: {label}")
            failures += 1
        try:
            jsonschema.validate(json.loads(a.stdout), schemas[name])
        except jsonschema.ValidationError as e:
            print(f"FAIL schema {name}: {label}: {e.message}")
            failures += 1
        t = run(args + ["--tsv"])
        if t.returncode != 0 or not t.stdout:
            print(f"FAIL tsv: {label}")
            failures += 1
    for code, args in EXIT:
        r = run(args)
        if r.returncode != code:
            print(f"FAIL expected exit {code}, got {r.returncode}: {' '.join(args)}")
            failures += 1
    env = dict(os.environ, EXCOV_CAP="100")
    r = run(["field", "--field", "11^2"], env)
    if r.returncode != 3:
        print(f"FAIL EXCOV_CAP not honoured: exit {r.returncode}")
        failures += 1
    frob = json.loads(run(["frobset", "--mod", "12", "--residues", "2"]).stdout)
    if frob != {"modulus": 12, "residues": [2, 10]}:
        print(f"FAIL frobset example: {frob}")
        failures += 1
    scan = json.loads(run(["scan", "--field", "3^1", "--map", "dickson:5,1", "--tmax", "12"]).stdout)
    if scan["fitted"] != {"modulus": 2, "residues": [1]}:
        print(f"FAIL scan example: {scan['fitted']}")
        failures += 1
    with open(os.path.join(SCHEMAS, "selftest.schema.json")) as f:
        selftest_schema = json.load(f)
    r = run(["selftest"])
    try:
        report = json.loads(r.stdout)
        jsonschema.validate(report, selftest_schema)
        if r.returncode != 0 or not report["pass"]:
            print(f"FAIL selftest exit {r.returncode}")
            failures += 1
    except (json.JSONDecodeError, jsonschema.ValidationError) as e:
        print(f"FAIL selftest report: {e}")
        failures += 1
    print(f"{len(CASES)} schema cases, {len(EXIT) + 1} exit-code cases, {failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
