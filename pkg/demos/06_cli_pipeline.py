"""Drive the whole pipeline through the command line interface.

Every stage reads files and writes files, so the same steps work in a shell
script or a Makefile. Run twice with the same seed, every artifact comes
out byte for byte identical.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

workdir = Path(tempfile.mkdtemp(prefix="bugdebt-demo-"))
print(f"working in {workdir}\n")


def cli(*args: str) -> None:
    command = [sys.executable, "-m", "bugdebt", *args]
    print("$ bugdebt " + " ".join(args))
    subprocess.run(command, check=True)


bugs = workdir / "bugs.jsonl"
debt = workdir / "debt.jsonl"
features = workdir / "features.csv"
corr = workdir / "corr.json"
metrics = workdir / "metrics.json"
model = workdir / "model.json"
predictions = workdir / "predictions.csv"

# ---------------------------------------------------------------------------
# 1. Generate a corpus (a sidecar ground_truth.json lands next to it).
# 2. Mark the debt-prone bugs.
# 3. Aggregate per-product attributes; products under 100 bugs are dropped.
# 4. Correlate attributes with average fix time.
# 5. Cross-validate a predictor and save the fitted model.
# 6. Predict fix times for a feature table.
# ---------------------------------------------------------------------------
cli("synth", "--out", str(bugs), "--seed", "12",
    "--products", "15", "--bugs-min", "110", "--bugs-max", "170")
cli("identify", "--in", str(bugs), "--out", str(debt))
cli("features", "--in", str(bugs), "--debt", str(debt), "--out", str(features))
cli("correlate", "--in", str(features), "--out", str(corr))
cli("train", "--in", str(features), "--out", str(metrics),
    "--model", "mtree", "--folds", "10", "--seed", "3",
    "--model-file", str(model))
cli("predict", "--in", str(features), "--out", str(predictions),
    "--model-file", str(model))

# ---------------------------------------------------------------------------
# The artifacts are plain JSON and CSV.
# ---------------------------------------------------------------------------
print("\ncross-validation metrics:")
print(metrics.read_text().rstrip())

strongest = max(
    (entry for entry in json.loads(corr.read_text())["correlations"]
     if entry["r"] is not None),
    key=lambda entry: abs(entry["r"]),
)
print(f"\nstrongest correlate of fix time: {strongest['attribute']}"
      f" (r = {strongest['r']:.3f}, {strongest['level']})")

print("\nfirst predictions:")
for line in predictions.read_text().splitlines()[:4]:
    print(f"  {line}")
