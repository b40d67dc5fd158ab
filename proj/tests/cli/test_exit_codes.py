"""Exit codes, configuration precedence and input-file error reporting."""

import pathlib
import sys
import tempfile

from common import Checks, load_strict, run

binary = sys.argv[1]
checks = Checks()


def expect_code(expected, *args, cwd=None, contains=None):
    code, out, err = run(binary, *args, cwd=cwd)
    label = " ".join(map(str, args))
    checks.expect(code == expected, f"[{expected}] {label} (got {code})")
    if contains is not None:
        checks.expect(contains in err, f"stderr of '{label}' mentions '{contains}' (got: {err.strip()})")
    return out


with tempfile.TemporaryDirectory() as tmp:
    out = pathlib.Path(tmp)
    model = ["--n1", 1, "--n2", 1]

    expect_code(0, "--help")
    expect_code(0, "solve", "--help")
    expect_code(4)
    expect_code(4, "nonsense")
    expect_code(4, "solve", *model)
    expect_code(4, "solve", *model, "--alpha", 1, "--target-flux2", 2.5)
    expect_code(4, "solve", *model, "--target-flux2", 2.0)
    expect_code(4, "solve", *model, "--target-flux2", 3.0)
    expect_code(4, "solve", *model, "--target-flux1", 2.5)
    expect_code(4, "solve", *model, "--target-energy", -1)
    expect_code(4, "solve", *model, "--target-flux2", 2.5, "--tol", 0)
    expect_code(4, "solve", "--n1", 0, "--n2", 1, "--alpha", 1)
    expect_code(4, "solve", "--n1", "x", "--n2", 1, "--alpha", 1)
    expect_code(4, "solve", *model, "--alpha", 1, "--format", "xml")
    expect_code(4, "solve", *model, "--alpha", 1, "--rtol", -1)
    expect_code(4, "solve", *model, "--alpha", 1, "--sigma", 0)
    expect_code(4, "scan", *model, "--alpha-steps", 0)
    expect_code(4, "scan", *model, "--jobs", 0)
    expect_code(4, "perturb", *model)
    expect_code(4, "perturb", *model, "--eps-list", "0.1,1.5")
    expect_code(4, "baseline", *model, "--r-min", 10, "--r-max", 1)

    # A box too small to bracket the target.
    expect_code(2, "solve", *model, "--target-flux2", 2.99999, "--alpha-lo", -5, "--alpha-hi", 5,
                "--alpha-limit", 5, "--out-dir", out, "--name", "far")

    # Direct shots: divergence is a verdict, not an error.
    expect_code(0, "solve", *model, "--alpha", -15, "--out-dir", out, "--name", "div")
    # A band wider than any distance to the threshold leaves the verdict open.
    expect_code(3, "solve", *model, "--alpha", 3, "--band", 10, "--out-dir", out, "--name", "open")

    # --format csv adds a flattened key,value report next to the JSON.
    expect_code(0, "solve", *model, "--alpha", 3, "--format", "csv", "--out-dir", out, "--name", "flat")
    flat = (out / "flat_report.csv").read_text(encoding="utf-8").splitlines()
    checks.expect(flat[0] == "key,value" and any(l.startswith("/flux2_over_2pi,") for l in flat),
                  "flattened report has key,value rows")

    # Configuration file: values apply unless the command line overrides them.
    cfg = out / "run.toml"
    cfg.write_text('# comment\nn1 = 2\nn2 = 1\nalpha = 3\nname = "cfg"\nout-dir = "%s"\n' % out.as_posix())
    expect_code(0, "solve", "--config", cfg)
    report = load_strict(out / "cfg_report.json")
    checks.expect(report["params"]["n1"] == 2 and report["init"]["alpha1"] == 3, "config values applied")
    expect_code(0, "solve", "--config", cfg, "--n1", 1, "--alpha", 4)
    report = load_strict(out / "cfg_report.json")
    checks.expect(report["params"]["n1"] == 1 and report["init"]["alpha1"] == 4, "command line beats config")
    checks.expect(report["params"]["n2"] == 1, "config still fills the rest")
    section = out / "section.toml"
    section.write_text('[solve]\nn1 = 3\nn2 = 2\nalpha = 1\nname = "sec"\nout-dir = "%s"\n' % out.as_posix())
    expect_code(0, "solve", "--config", section)
    checks.expect(load_strict(out / "sec_report.json")["params"]["n1"] == 3, "[solve] section accepted")
    bad = out / "bad.toml"
    bad.write_text("bogus = 1\n")
    expect_code(4, "solve", "--config", bad, *model, "--alpha", 1, contains="bogus")
    expect_code(4, "solve", "--config", out / "missing.toml", *model, "--alpha", 1)

    # check: unreadable, truncated and corrupted profiles.
    expect_code(0, "solve", *model, "--alpha", 4, "--out-dir", out, "--name", "good")
    good = (out / "good_profile.csv").read_text(encoding="utf-8").splitlines(keepends=True)
    expect_code(0, "check", out / "good_profile.csv")
    expect_code(5, "check", out / "absent.csv")

    (out / "trunc.csv").write_text("".join(good[:40]))
    expect_code(5, "check", out / "trunc.csv", contains="trunc.csv:40:")

    corrupt = list(good)
    corrupt[17] = corrupt[17].replace(",", ",x", 1)
    (out / "corrupt.csv").write_text("".join(corrupt))
    expect_code(5, "check", out / "corrupt.csv", contains="corrupt.csv:18:")

    short = list(good)
    short[25] = short[25].rsplit(",", 1)[0] + "\n"
    (out / "short.csv").write_text("".join(short))
    expect_code(5, "check", out / "short.csv", contains="short.csv:26:")

    swapped = list(good)
    swapped[30], swapped[31] = swapped[31], swapped[30]
    (out / "swapped.csv").write_text("".join(swapped))
    expect_code(5, "check", out / "swapped.csv", contains="swapped.csv:32:")

    (out / "header.csv").write_text("r,U,V\n0,1,1\n")
    expect_code(5, "check", out / "header.csv", contains="header.csv:1:")

    # Without metadata the multiplicities must be supplied.
    bare = [line for line in good if not line.startswith("#")]
    (out / "bare.csv").write_text("".join(bare))
    expect_code(5, "check", out / "bare.csv")
    expect_code(0, "check", out / "bare.csv", *model)

checks.finish()
