#!/usr/bin/env python3
"""End-to-end checks for the command-line front end."""

import csv
import json
import shutil
import subprocess
import sys
from pathlib import Path

FAILURES = []


def check(condition, message):
    if not condition:
        FAILURES.append(message)
        print(f"FAIL: {message}")


def run(binary, *args, expect_code=0):
    proc = subprocess.run([binary, *args], capture_output=True, text=True)
    check(
        proc.returncode == expect_code,
        f"exit code {proc.returncode} != {expect_code} for args {args}\n"
        f"stdout: {proc.stdout}\nstderr: {proc.stderr}",
    )
    return proc


def main():
    binary, workdir = sys.argv[1], Path(sys.argv[2])
    shutil.rmtree(workdir, ignore_errors=True)
    workdir.mkdir(parents=True)

    # full run with the reference samples
    out = workdir / "full"
    run(binary, "--sigma", "8", "6", "3", "--methods", "analytic,cn",
        "--cn-meshes", "40", "80", "--out", str(out))
    table = list(csv.DictReader((out / "table.csv").open()))
    check(len(table) == 6, "table.csv must have six rows")
    expected = {
        "constant": 1.89036, "affine": 1.99533, "quadratic": 1.86593,
        "piecewise": 1.89454, "semi_quadratic": 1.85769,
        "semi_piecewise": 1.88614,
    }
    for row in table:
        lam = float(row["lambda_analytic"])
        check(abs(lam - expected[row["kind"]]) <= 2e-4,
              f"{row['kind']}: lambda {lam}")
        check(abs(float(row["k_eff"]) - 1.0 / lam) <= 1e-10,
              f"{row['kind']}: k_eff inconsistent")

    report = json.loads((out / "report.json").read_text())
    check(report["schema"] == 1, "schema field")
    check(len(report["cases"]) == 6, "six cases in report.json")
    check(report["sigma"] == [8.0, 6.0, 3.0], "sigma echoed")

    profile = list(csv.DictReader((out / "profile_quadratic.csv").open()))
    check(profile[0]["z"] == "0" and profile[0]["h"] == "0", "profile start")
    check(abs(float(profile[-1]["z"]) - 1.0) < 1e-8, "profile end z=1")
    sigma_v = list(csv.DictReader((out / "sigma_v_quadratic.csv").open()))
    check(abs(float(sigma_v[0]["sigma"]) - 8.0) < 1e-12, "sigma at h=0")
    check(float(sigma_v[len(sigma_v) // 2]["v"]) < 0.0, "V negative inside")

    # config file with a flag override: the flag wins
    config_path = workdir / "run.json"
    config_path.write_text(json.dumps({
        "sigma": [1.0, 1.0, 1.0],
        "kinds": ["constant"],
        "methods": ["analytic"],
        "out": str(workdir / "cfg_out"),
    }))
    run(binary, "--config", str(config_path), "--sigma", "2", "2", "2",
        "--out", str(workdir / "cfg_out"))
    report = json.loads((workdir / "cfg_out" / "report.json").read_text())
    check(report["sigma"] == [2.0, 2.0, 2.0], "flag must override file")
    lam = report["cases"][0]["analytic"]["lambda"]
    check(abs(lam * 2.0 - (1.0 + 3.141592653589793 ** 2)) < 1e-9,
          "constant-case eigenvalue from config run")

    # config errors exit with code 1
    run(binary, "--sigma", "8", "6", "3", "--methods", "nonsense",
        expect_code=1)
    run(binary, "--sigma", "-8", "6", "3", expect_code=1)
    bad = workdir / "bad.json"
    bad.write_text('{"sigma": [8, 6, 3], "bogus_key": 1}')
    run(binary, "--config", str(bad), expect_code=1)

    # per-case failure: projected endpoints go negative -> exit code 2
    run(binary, "--sigma", "1", "1", "20", "--methods", "analytic",
        "--out", str(workdir / "partial"), expect_code=2)
    report = json.loads((workdir / "partial" / "report.json").read_text())
    errors = [c for c in report["cases"] if "error" in c]
    check(len(errors) >= 1, "failing case must be reported")
    check(any("analytic" in c for c in report["cases"]),
          "healthy cases must still run")

    if FAILURES:
        print(f"{len(FAILURES)} CLI check(s) failed")
        return 1
    print("cli checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
