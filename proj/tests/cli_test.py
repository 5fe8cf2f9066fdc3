#!/usr/bin/env python3
"""End-to-end checks of the univalence-check executable.

usage: cli_test.py <univalence-check> <report.schema.json> <scratch-dir>
"""
import filecmp
import json
import shutil
import subprocess
import sys
from pathlib import Path

import jsonschema

TOOL, SCHEMA, SCRATCH = sys.argv[1], json.loads(Path(sys.argv[2]).read_text()), Path(sys.argv[3])
failures = []


def run(name, *args):
    out = SCRATCH / name
    shutil.rmtree(out, ignore_errors=True)
    proc = subprocess.run([TOOL, "--out-dir", str(out), *args], capture_output=True, text=True)
    return proc, out


def expect(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


def report_of(out):
    doc = json.loads((out / "run.report").read_text())
    jsonschema.validate(doc, SCHEMA)
    return doc


SCRATCH.mkdir(parents=True, exist_ok=True)

proc, out = run("pass", "--criterion", "becker", "--f", "identity")
expect(proc.returncode == 0, "identity under becker exits 0")
expect(report_of(out)["status"] == "pass", "identity report status pass")

proc, out = run("violation", "--criterion", "becker", "--f", "koebe", "--emit", "report,heatmap2")
expect(proc.returncode == 1, "koebe under becker exits 1")
doc = report_of(out)
expect(doc["criterion"]["witness"] is not None, "koebe report carries a witness")
expect((out / "heatmap2.ppm").read_bytes().startswith(b"P6\n256 128\n255\n"), "heatmap2 is a 256x128 P6 image")

proc, out = run("invalid", "--criterion", "general", "--alpha", "0.25")
expect(proc.returncode == 2, "alpha = 0.25 exits 2")
expect("re_alpha_le_half" in report_of(out)["message"], "invalid alpha is named in the report")

proc, _ = run("badflag", "--nr", "many")
expect(proc.returncode == 2 and "--nr" in proc.stderr, "malformed flag exits 2 naming the flag")

proc, out = run("fault", "--criterion", "c2", "--f-coeffs", "0;1;1", "--fault-rhs-scale", "10")
expect(proc.returncode == 3, "faulted c2 on z+z^2 exits 3")
expect("INTERNAL INCONSISTENCY" in proc.stderr, "inconsistency is printed to stderr")
expect(report_of(out)["status"] == "inconsistent", "faulted report status inconsistent")

proc, out = run("qc", "--criterion", "qc-becker", "--f-coeffs", "0;1;0.1", "--k", "0.25",
                "--emit", "report,beltrami,diagnostics")
expect(proc.returncode == 0, "qc-becker on z+0.1z^2 exits 0")
doc = report_of(out)
expect(doc["beltrami"]["sup_abs_mu"] <= 0.27, "sup |mu| within 0.27")
expect(doc["seam"]["max_gap"] <= 1e-4, "seam gap within 1e-4")
expect((out / "beltrami.ppm").exists(), "beltrami image written")

# flag overrides config file; file errors carry path:line
cfg = SCRATCH / "run.cfg"
cfg.write_text("# starlike run\ncriterion = starlike\nf = z_exp_cz:0.5\nk = 0.3\n")
proc, out = run("override", "--config", str(cfg), "--k", "0.4")
doc = report_of(out)
expect(proc.returncode == 0 and doc["criterion"]["id"] == "starlike", "config file selects the preset")
expect(doc["config"]["k"] == "0.4", "flag overrides config file")
bad = SCRATCH / "bad.cfg"
bad.write_text("criterion = becker\n\nrmax = 2\n")
proc, _ = run("badcfg", "--config", str(bad))
expect(proc.returncode == 2 and "bad.cfg:3:" in proc.stderr, "config file error names path and line")

# determinism across thread counts
files = ["run.report", "heatmap1.ppm", "heatmap2.ppm", "domain.ppm", "beltrami.ppm"]
common = ["--criterion", "qc-c6", "--f", "z_exp_cz:0.1", "--k", "0.5",
          "--emit", "report,heatmap1,heatmap2,domain,beltrami,diagnostics"]
_, one = run("threads1", *common, "--threads", "1")
_, eight = run("threads8", *common, "--threads", "8")
for name in files:
    expect(filecmp.cmp(one / name, eight / name, shallow=False), f"{name} identical for 1 and 8 threads")

help_text = subprocess.run([TOOL, "--help"], capture_output=True, text=True).stdout
for flag in ["--criterion", "--f", "--f-coeffs", "--g", "--g-coeffs", "--alpha", "--beta", "--A", "--B", "--k",
             "--nr", "--ntheta", "--rmax", "--tol", "--refine", "--out-dir", "--emit", "--config", "--threads"]:
    expect(f"{flag} " in help_text or f"{flag}," in help_text, f"help lists {flag}")
expect("--fault-rhs-scale" not in help_text, "fault flag is hidden")

print(f"{len(failures)} failures")
sys.exit(1 if failures else 0)
