"""Smoke tests for the python bindings and the CLI end to end."""

import json
import os
import subprocess
import sys
from fractions import Fraction

import blspectral as bls


def check(cond, what):
    if not cond:
        print(f"FAIL {what}")
        sys.exit(1)
    print(f"ok   {what}")


def main():
    p = bls.new_model(2, 2, 2)
    check(p.states == 3 and p.nb == 2, "new_model derives counts")

    check(
        bls.spectrum(p) == [Fraction(1), Fraction(0), Fraction(-1, 2)],
        "spectrum(2,2,2) = {1, 0, -1/2} exactly",
    )
    check(
        bls.stationary(p) == [Fraction(1, 6), Fraction(2, 3), Fraction(1, 6)],
        "stationary(2,2,2) = (1/6, 2/3, 1/6) exactly",
    )
    check(
        bls.eigenvector(p, 1) == [Fraction(1), Fraction(0), Fraction(-1)],
        "eigenvector k=1 = (1, 0, -1)",
    )
    check(abs(sum(bls.stationary(p, backend="float")) - 1.0) < 1e-12,
          "float stationary sums to 1 within 1e-12")

    t2 = bls.spectral_power(p, 2)
    check(
        [row[0] for row in t2] == [Fraction(1, 4), Fraction(1, 2), Fraction(1, 4)],
        "T^2 column 0 = (1/4, 1/2, 1/4) exactly",
    )

    canon, relabel = bls.canonicalize(4, 3, 3)
    check((canon.n1, canon.n2, canon.nw) == (3, 4, 3), f"canonicalize(4,3,3): {relabel}")
    try:
        bls.canonicalize(2, 5, 3)
        check(False, "canonicalize(2,5,3) raises")
    except ValueError:
        check(True, "canonicalize(2,5,3) raises")

    big = bls.new_model(100, 100, 100)
    tv = bls.tv_curve(big, 0, [0, 50, 117, 700])
    check(tv[0] > 0.9 and tv[1] > 0.9, "tv curve starts near 1")
    check(tv[2] <= 0.5 < tv[1], "tv crosses 1/2 by m = 117")
    check(tv[3] < 0.01, "tv(700) < 0.01")
    check(bls.cutoff_scan(big, 0, 0.5) == 117, "cutoff_scan finds the frozen crossing")

    m_up, bound_up = bls.mixing_bound(big, "upper", 0.0)
    check(m_up == 248 and abs(bound_up - 1.0) < 1e-12, "upper bound step count at c = 0")

    rep1 = bls.simulate(bls.new_model(10, 10, 10), 0, 30, walkers=20000, seed=7)
    rep2 = bls.simulate(bls.new_model(10, 10, 10), 0, 30, walkers=20000, seed=7)
    check(rep1["counts"] == rep2["counts"], "simulate deterministic per seed")
    check(rep1["tv_vs_exact"] < 0.05, "simulate matches the exact law")

    try:
        bls.cutoff_scan(bls.new_model(1, 1, 1), 0, 0.1)
        check(False, "periodic chain raises NonConvergenceError")
    except bls.NonConvergenceError:
        check(True, "periodic chain raises NonConvergenceError")

    results = bls.verify(max_n=6)
    check(all(r["pass"] for r in results) and len(results) >= 20, "verify(max_n=6) all pass")

    cli = os.environ.get("BL_CLI")
    if cli:
        out = subprocess.run(
            [cli, "spectrum", "--n1", "2", "--n2", "2", "--nw", "2", "--backend", "exact"],
            capture_output=True, text=True, check=True,
        )
        check(out.stdout == "k,lambda\n0,1\n1,0\n2,-1/2\n", "CLI spectrum golden rows")

        sim = subprocess.run(
            [cli, "simulate", "--n1", "4", "--n2", "4", "--nw", "4", "--start", "0",
             "--m", "9", "--walkers", "4000", "--seed", "11"],
            capture_output=True, text=True, check=True,
        )
        doc = json.loads(sim.stdout)
        check(doc["command"] == "simulate" and doc["data"]["walkers"] == 4000,
              "CLI simulate JSON envelope")

        bad = subprocess.run([cli, "spectrum", "--n1", "2", "--n2", "2", "--nw", "9"],
                             capture_output=True, text=True)
        check(bad.returncode == 1, "CLI domain error exits 1")

        schema_path = os.path.join(os.path.dirname(__file__), "..", "..", "schemas",
                                   "output.schema.json")
        try:
            import jsonschema
        except ImportError:
            jsonschema = None
        if jsonschema is not None and os.path.exists(schema_path):
            with open(schema_path) as f:
                schema = json.load(f)
            for args, name in [
                (["spectrum", "--backend", "exact"], "spectrum/exact"),
                (["stationary", "--backend", "float"], "stationary/float"),
                (["power", "--m", "3"], "power"),
                (["tv-curve", "--m-max", "4"], "tv-curve"),
                (["bounds", "--kind", "lower"], "bounds"),
            ]:
                run_doc = subprocess.run(
                    [cli, args[0], "--n1", "3", "--n2", "3", "--nw", "3", "--format", "json",
                     *args[1:]],
                    capture_output=True, text=True, check=True,
                )
                jsonschema.validate(json.loads(run_doc.stdout), schema)
                check(True, f"CLI {name} validates against the schema")
            jsonschema.validate(doc, schema)
            check(True, "CLI simulate validates against the schema")

    print("all smoke tests passed")


if __name__ == "__main__":
    main()
