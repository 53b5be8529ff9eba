"""Run milnor-kit --json over the bundled corpus, validate every report
against the schema, compare against expected values and check that a
second run is byte-identical."""

import argparse
import json
import subprocess
import sys
from pathlib import Path

import jsonschema


def run(kit, args):
    p = subprocess.run([kit, "--json", "--no-cache", *args], capture_output=True, text=True, timeout=600)
    return p.returncode, p.stdout


def expected_values(command, results):
    """Flatten the interesting integers of a report for comparison."""
    if command == "degree":
        return {"degree": results["elk"]["degree"]}
    if command in ("chi", "szafraniec"):
        e = results["euler"]
        out = {"chi_fibre_neg": e["chi_fibre_neg"], "chi_fibre_pos": e["chi_fibre_pos"]}
        for d in e["degrees"]:
            if d["germ"] in ("g1", "g2"):
                out["deg_" + d["germ"]] = d["report"]["degree"]
        return out
    if command == "polar":
        keys = ["lambda_plus", "lambda_minus", "gamma_plus", "gamma_minus", "gamma_pp", "gamma_pm", "gamma_mp",
                "gamma_mm", "chi_fibre_neg", "chi_fibre_pos", "chi_link"]
        return {k: results[k] for k in keys}
    return {}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--kit", required=True)
    ap.add_argument("--data", required=True)
    args = ap.parse_args()

    data = Path(args.data)
    schema = json.loads((data / "report.schema.json").read_text())
    validator = jsonschema.Draft202012Validator(schema)
    corpus = json.loads((data / "corpus.json").read_text())

    cases = []
    for g in corpus["germs"]:
        for cmd in g["commands"]:
            if cmd == "degree-pair":
                continue
            flags = ["--oracle"] if cmd == "degree" else []
            cases.append((g, cmd, [cmd, *flags, g["germ"]], 0))
    extra = [
        (["degree", "(x-y)^2"], 2),
        (["degree", "x^2 +"], 1),
        (["chi", "y^2 + x^3*y^2"], 2),
        (["polar", "x^3"], 2),
        (["polar", "--direction", "1,1", "y^2 - z*x^2"], 1),
        (["le-iomdine", "y^2 - z*x^2"], 0),
        (["le-iomdine", "--k", "2", "y^2 - z*x^2"], 2),
        (["chi", "--d", "2", "x^2 - y^2"], 0),
        (["szafraniec", "x^3 + x^2*z - y^2"], 0),
    ]
    for a, code in extra:
        cases.append((None, a[0], a, code))

    failures = 0
    for g, cmd, argv, want_code in cases:
        label = " ".join(argv)
        code, out = run(args.kit, argv)
        problems = []
        if code != want_code:
            problems.append(f"exit {code}, want {want_code}")
        try:
            report = json.loads(out)
        except json.JSONDecodeError as e:
            problems.append(f"not JSON: {e}")
            report = None
        if report is not None:
            errs = sorted(validator.iter_errors(report), key=lambda e: list(e.path))
            problems += [f"schema: {list(e.path)}: {e.message}" for e in errs[:5]]
            if g is not None and "results" in report:
                got = expected_values(cmd, report["results"])
                for k, v in g.get("expected", {}).items():
                    if k in got and got[k] != v:
                        problems.append(f"{k} = {got[k]}, want {v}")
        code2, out2 = run(args.kit, argv)
        if code2 != code or out2 != out:
            problems.append("second run differs")
        status = "ok  " if not problems else "FAIL"
        print(f"{status} {label}")
        for p in problems:
            print(f"     {p}")
        failures += bool(problems)
    print(f"{len(cases) - failures}/{len(cases)} reports valid")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
