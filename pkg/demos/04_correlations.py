"""Correlate the debt attributes with average fix time across products.

Each attribute gets a Pearson coefficient against the per-product average
fix time, banded into none / weak / modest / strong so the table reads at
a glance. Time attributes of a debt type usually track the target closely;
counts and frequencies are the interesting part of such a study.
"""

import numpy as np

from bugdebt import (
    SynthSpec,
    aggregate_products,
    classify_debt,
    classify_level,
    correlation_report,
    generate,
    pearson,
    resolve_duplicate_masters,
)

# ---------------------------------------------------------------------------
# pearson on its own: two noisy, linearly related series.
# ---------------------------------------------------------------------------
rng = np.random.default_rng(0)
x = rng.normal(size=40)
y = 2.0 * x + rng.normal(scale=0.8, size=40)
r = pearson(x, y)
level, sign = classify_level(r)
print(f"hand-made series: r = {r:.3f} ({sign} {level.value})")

# ---------------------------------------------------------------------------
# The full report over a generated repository. Thirty products keep the
# coefficients reasonably stable.
# ---------------------------------------------------------------------------
snapshot, _ = generate(
    SynthSpec(seed=21, n_products=30, bugs_per_product=(60, 120), noise_sigma=4.0)
)
marks = classify_debt(snapshot)
rows = aggregate_products(snapshot, marks, resolve_duplicate_masters(snapshot))
report = correlation_report(rows)

print(f"\n{'attribute':<14} {'r':>8}  band")
for entry in report.entries:
    if entry.r is None:
        print(f"{entry.attribute:<14} {'-':>8}  undefined (constant column)")
        continue
    band = entry.level.value + (f", {entry.sign}" if entry.sign else "")
    print(f"{entry.attribute:<14} {entry.r:>8.3f}  {band}")

# ---------------------------------------------------------------------------
# Band edges: |r| <= 0.1 none, <= 0.3 weak, <= 0.5 modest, above that strong.
# ---------------------------------------------------------------------------
for value in (0.05, -0.3, 0.45, 0.804):
    level, sign = classify_level(value)
    print(f"r = {value:+.3f} falls in the {level.value} band")
