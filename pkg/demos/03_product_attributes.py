"""Aggregate per-product debt attributes from a generated repository.

Each product row carries nine attributes (three per debt type: how many
bugs, how intense the signal, how long those bugs took to fix) plus the
average fix time over all bugs, which is the quantity the predictors target.
"""

from bugdebt import (
    FEATURE_CSV_HEADER,
    SynthSpec,
    aggregate_products,
    classify_debt,
    filter_products,
    generate,
    resolve_duplicate_masters,
    summarize_repository,
)

snapshot, _ = generate(SynthSpec(seed=7, n_products=6, bugs_per_product=(80, 140)))
marks = classify_debt(snapshot)
clusters = resolve_duplicate_masters(snapshot)
rows = aggregate_products(snapshot, marks, clusters)

# ---------------------------------------------------------------------------
# One row per product, in the canonical column order used by the CSV files.
# ---------------------------------------------------------------------------
print(",".join(FEATURE_CSV_HEADER))
for row in rows:
    cells = [row.key.product_name, row.key.version, str(row.n_bugs)]
    cells += [f"{value:.3f}" for value in row.attribute_values()]
    cells += [f"{row.avg_fix_time:.3f}"]
    print(",".join(cells))

# ---------------------------------------------------------------------------
# Fix time is measured in whole days between assignment and last change;
# unassigned bugs are left out of every mean. Count attributes say how many
# bugs of a type exist, freq attributes how strong the signal is per bug
# (tag hits, reopen events, duplicates in the cluster), time attributes how
# long that type took to fix.
# ---------------------------------------------------------------------------
first = rows[0]
print(f"\n{first.key.product_name}: {first.tag_count} tag bugs,")
print(f"  {first.tag_freq:.2f} tag hits per tag bug,")
print(f"  {first.tag_time:.2f} days to fix a tag bug,")
print(f"  {first.avg_fix_time:.2f} days to fix an average bug")

# ---------------------------------------------------------------------------
# Small products are usually dropped before any statistics: below ~100 bugs
# the frequencies get too noisy to compare. The summary shows the size bands.
# ---------------------------------------------------------------------------
kept = filter_products(rows, min_bugs=100)
print(f"\nsize filter kept {len(kept)} of {len(rows)} products")

summary = summarize_repository(rows)
print("size bands:", summary["bands"])
print("debt totals:", summary["totals"])
print("debt ratios:", {k: f"{v:.3f}" for k, v in summary["ratios"].items()})
