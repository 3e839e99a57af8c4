#!/usr/bin/env python3
"""Runs hypex subcommands and validates their JSON against the published schemas.

usage: cli_schemas.py HYPEX SCHEMA_DIR WORK_DIR
"""
import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource

hypex, schema_dir, work = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
work.mkdir(parents=True, exist_ok=True)

schemas = {p.name: json.loads(p.read_text()) for p in schema_dir.glob("*.schema.json")}
registry = Registry().with_resources((name, Resource.from_contents(s)) for name, s in schemas.items())


def validator(name):
    return jsonschema.Draft202012Validator(schemas[name + ".schema.json"], registry=registry)


def write(name, obj):
    path = work / name
    path.write_text(json.dumps(obj))
    return str(path)


plane = write("plane.json", {"equations": [[1, -2, 0, 0]]})
facet = write("facet.json", {"equations": [[1, 0, 0, 0]]})
segment = write("segment.json", {"rows": [[1, 1, 1], [1, 0, -1]]})
system = write("system.json", {"nvars": 3, "polys": ["1:2,0,0 + -1:0,2,0", "1:1,1,0 + -1:0,0,2"]})

failures = []


def run(args, schema, code=0, check=None):
    proc = subprocess.run([hypex] + args, capture_output=True, text=True, timeout=600)
    label = " ".join(args)
    if proc.returncode != code:
        failures.append(f"{label}: exit {proc.returncode}, expected {code}\n{proc.stdout}{proc.stderr}")
        return None
    try:
        doc = json.loads(proc.stdout)
    except json.JSONDecodeError as e:
        failures.append(f"{label}: stdout is not JSON ({e})")
        return None
    errors = sorted(validator(schema).iter_errors(doc), key=str)
    if errors:
        failures.append(f"{label}: {schema} schema: {errors[0].message} at {list(errors[0].path)}")
        return doc
    if check:
        try:
            check(doc)
        except AssertionError as e:
            failures.append(f"{label}: {e}")
    return doc


def expect(cond, msg):
    if not cond:
        raise AssertionError(msg)


E3 = ["--poly", "elem(4,3)"]

run(["cone-member"] + E3 + ["--point", "1,1,1,1"], "cone-member",
    check=lambda d: expect(d["status"] == "interior", d["status"]))
run(["cone-member"] + E3 + ["--point", "1,0,0,0"], "cone-member",
    check=lambda d: expect(d["status"] == "boundary" and d["witness"] is not None, d["status"]))
run(["cone-member"] + E3 + ["--point", "1,1,1,1", "--dual"], "cone-member",
    check=lambda d: expect(d["status"] == "interior", d["status"]))
run(["hyperbolic-check"] + E3 + ["--seed", "3", "--trials", "50"], "hyperbolic-check",
    check=lambda d: expect(d["certified"] and not d["refuted"], "not certified"))
run(["hyperbolic-check", "--poly", "1:2,0,0 + 1:0,2,0 + 1:0,0,2", "--tau", "1,0,0", "--seed", "3"], "hyperbolic-check",
    check=lambda d: expect(d["refuted"], "sum of squares not refuted"))
run(["mle"] + E3 + ["--sigma", "0.75,0.75,0.75,0.75"], "mle",
    check=lambda d: expect(max(abs(x - 1) for x in d["theta_hat"]) < 1e-8, d["theta_hat"]))
run(["mle"] + E3 + ["--sigma", "1,0,0,0"], "error", code=1,
    check=lambda d: expect(d["error"]["kind"] == "not_exist", d["error"]))
run(["fiber"] + E3 + ["--sigma", "0.7,0.8,0.9,1.1", "--seed", "7"], "fiber",
    check=lambda d: expect(d["complex_count"] == 4 and d["in_cone"] == 1, (d["complex_count"], d["in_cone"])))
run(["multidegree"] + E3 + ["--closed-form"], "multidegree",
    check=lambda d: expect(d["alphas"] == [1, 2, 4, 4], d["alphas"]))
run(["multidegree", "--poly", "elem(7,3)", "--numeric", "--only", "7", "--seed", "5"], "multidegree",
    check=lambda d: expect(d["alphas"][6] == 57 and d["provenance"][6] == "numeric", d["alphas"]))
run(["multidegree", "--poly", "laplacian(0-1;0-2;0-3;1-2;1-3;2-3)", "--seed", "5"], "multidegree",
    check=lambda d: expect(d["alphas"] == [1, 2, 4, 4, 2, 1], d["alphas"]))
run(["expvar"] + E3 + ["--subspace", plane, "--seed", "5", "--points"], "expvar",
    check=lambda d: expect(d["degree"]["degree"] == 2 and d["ml"]["ml_degree"] <= 2, d["degree"]))
run(["expvar"] + E3 + ["--subspace", facet, "--seed", "5", "--degree"], "expvar",
    check=lambda d: expect(d["degree"]["degree"] == 1 and "ml" not in d, d))
run(["lperp"] + E3 + ["--subspace", plane, "--seed", "5"], "lperp",
    check=lambda d: expect(d["lperp"]["verdict"] == "empty", d["lperp"]["verdict"]))
csv = str(work / "path.csv")
run(["central-path", "--poly", "1:1,1,1", "--subspace", segment, "--n", "9", "--seed", "1", "--csv-out", csv],
    "central-path", check=lambda d: expect(len(d["rows"]) == 9 and pathlib.Path(csv).read_text().startswith("t,theta_1"), "csv"))
run(["hankel", "--m", "4", "--verify", "50", "--seed", "2"], "hankel",
    check=lambda d: expect(d["verify"]["passed"] + d["verify"]["singular_skipped"] == 50, d["verify"]))
run(["hankel", "--m", "3", "--degrees", "--seed", "2"], "hankel",
    check=lambda d: expect(d["degree"] == 2 and d["ml_degree"] == 2, d))
run(["hankel", "--r", "2", "--s", "3", "--seed", "2"], "hankel",
    check=lambda d: expect(d["m"] == 6 and d["c"] == 15, d))
run(["gram-center", "--coeffs", "1,0,2,0,1"], "gram-center",
    check=lambda d: expect(abs(d["sigma"][1][1] - 8 / 3) < 1e-8 and abs(d["sigma"][0][2] + 1 / 3) < 1e-8, d["sigma"]))
run(["gram-center", "--coeffs", "0,0,1"], "error", code=1)
run(["riesz-check", "--kernel", "diagonal", "--m", "2", "--alpha", "0.5", "--theta", "1,2", "--seed", "1"], "riesz-check",
    check=lambda d: expect(d["pass"], d["rel_error"]))
run(["riesz-check", "--kernel", "wishart", "--m", "2", "--alpha", "2", "--theta", "1,1,0", "--samples", "100000",
     "--tol", "0.05", "--seed", "1"], "riesz-check", check=lambda d: expect(d["pass"], d["rel_error"]))
steiner_csv = str(work / "steiner.csv")
run(["steiner", "--probe", "20", "--witness", "1,1,1,-1/3", "--seed", "4", "--csv-out", steiner_csv], "steiner",
    check=lambda d: expect(d["probe"]["max_abs_q"] <= 1e-8 and d["witness"]["q"] == "0", d))
run(["solve", "--system", system, "--seed", "9"], "solve",
    check=lambda d: expect(d["total_degree"] == 4 and d["stable"], d["finite_count"]))
run(["solve", "--system", str(work / "missing.json"), "--seed", "9"], "error", code=1)

# unknown subcommand and unknown flag are usage errors
for args in (["no-such-command"], ["mle", "--no-such-flag"]):
    proc = subprocess.run([hypex] + args, capture_output=True, text=True)
    if proc.returncode != 64:
        failures.append(f"{' '.join(args)}: exit {proc.returncode}, expected 64")

# identical inputs give identical digests; --json-out mirrors stdout
out_file = work / "fiber.json"
args = ["fiber"] + E3 + ["--sigma", "0.7,0.8,0.9,1.1", "--seed", "7", "--threads", "1"]
a = run(args + ["--json-out", str(out_file)], "fiber")
b = run(args[:-2] + ["--threads", "2"], "fiber")
if a and b and a["manifest"]["digest"] != b["manifest"]["digest"]:
    failures.append("digest differs between reruns with identical inputs")
if a and json.loads(out_file.read_text())["manifest"]["digest"] != a["manifest"]["digest"]:
    failures.append("--json-out content differs from stdout")

# an omitted seed is generated and recorded
d = run(["hyperbolic-check"] + E3 + ["--trials", "5"], "hyperbolic-check")
if d and (len(d["manifest"]["seeds"]) != 1 or d["manifest"]["seeds"][0] != d["seed"]):
    failures.append("auto-generated seed not recorded in the manifest")

for f in failures:
    print("FAIL", f)
print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
