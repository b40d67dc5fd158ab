"""Scan output is byte-identical across runs and worker counts, and respects the flux region."""

import csv
import pathlib
import sys
import tempfile

from common import Checks, run

binary = sys.argv[1]
checks = Checks()

with tempfile.TemporaryDirectory() as tmp:
    out = pathlib.Path(tmp)
    base = ["scan", "--n1", 1, "--n2", 1, "--L", 0, "--alpha-min", -10, "--alpha-max", 14, "--alpha-steps", 49]
    outputs = {}
    for tag, jobs in [("a", 1), ("b", 4), ("c", 7), ("d", 4)]:
        code, _, err = run(binary, *base, "--jobs", jobs, "--out-dir", out, "--name", f"scan_{tag}")
        checks.expect(code == 0, f"scan with {jobs} jobs exits 0 ({err.strip()})")
        outputs[tag] = ((out / f"scan_{tag}.csv").read_bytes(), (out / f"scan_{tag}_flux_region.csv").read_bytes())
    checks.expect(len(set(outputs.values())) == 1, "identical bytes for every run and worker count")

    with open(out / "scan_a.csv", newline="", encoding="utf-8") as f:
        rows = list(csv.DictReader(f))
    checks.expect(len(rows) == 49, "one row per grid point")
    alphas = [float(r["alpha"]) for r in rows]
    checks.expect(alphas == sorted(alphas), "rows in grid order")
    good = [r for r in rows if r["verdict"] == "integrable"]
    checks.expect(len(good) > 10, f"{len(good)} integrable rows")
    checks.expect(all(2 < float(r["flux2_over_2pi"]) < 3 < float(r["flux1_over_2pi"]) for r in good),
                  "integrable rows satisfy 2 < flux2 < 3 < flux1")
    last = good[-1]
    checks.expect(abs(float(last["flux1_over_2pi"]) - 3) < 0.05 and abs(float(last["flux2_over_2pi"]) - 3) < 0.05,
                  f"both fluxes near 3 at the high end ({last['flux1_over_2pi']}, {last['flux2_over_2pi']})")
    with open(out / "scan_a_flux_region.csv", newline="", encoding="utf-8") as f:
        region = list(csv.DictReader(f))
    checks.expect(len(region) == len(good), "flux-region rows are the integrable rows")

checks.finish()
