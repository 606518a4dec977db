"""Generate a synthetic bug repository and look at what is inside.

The generator plants debt-prone bugs (tagged comments, reopen events,
duplicate chains) with known per-bug fix times, and hands back the ground
truth next to the corpus, so every later stage can be checked end to end.
"""

from bugdebt import DebtType, SynthSpec, generate

# ---------------------------------------------------------------------------
# A spec is a frozen bundle of knobs. Everything flows from one seed: the
# same spec always yields the same corpus, byte for byte.
# ---------------------------------------------------------------------------
spec = SynthSpec(
    seed=42,
    n_products=4,
    bugs_per_product=(30, 50),
    tag_rate=0.25,
    reopen_rate=0.15,
    dup_rate=0.10,
    noise_sigma=1.5,
)
snapshot, truth = generate(spec)

print(f"generated {len(snapshot)} bugs across {spec.n_products} products")

# ---------------------------------------------------------------------------
# Bug records look like a slice of a real tracker export: status history,
# threaded comments, optional duplicate links.
# ---------------------------------------------------------------------------
bug = next(iter(snapshot.bugs.values()))
print(f"\nbug {bug.bug_id} in {bug.product.product_name} {bug.product.version}")
print(f"  summary:       {bug.summary!r}")
print(f"  assigned:      {bug.assigned_date}")
print(f"  last change:   {bug.last_change_date}")
print(f"  status events: {[event.status.value for event in bug.status_history]}")
print(f"  comments:      {len(bug.comments)}")

# ---------------------------------------------------------------------------
# The ground truth says which bugs the generator made debt-prone. A mark can
# carry several types at once; most bugs carry none.
# ---------------------------------------------------------------------------
by_type = {debt_type: 0 for debt_type in DebtType}
for mark in truth.marks.values():
    for debt_type in mark.types:
        by_type[debt_type] += 1

print("\nplanted debt-prone bugs:")
for debt_type, count in by_type.items():
    print(f"  {debt_type.value:<10} {count}")

clean = sum(1 for mark in truth.marks.values() if not mark.types)
print(f"  (and {clean} bugs with no debt signal at all)")

# ---------------------------------------------------------------------------
# The truth also carries the per-product attribute rows the analysis stages
# are expected to reproduce exactly.
# ---------------------------------------------------------------------------
print("\nground-truth attribute rows:")
for row in truth.attributes:
    print(
        f"  {row.key.product_name:<12} n={row.n_bugs:<3}"
        f" tag_time={row.tag_time:6.2f} reopen_time={row.reopen_time:6.2f}"
        f" dup_time={row.dup_time:6.2f} avg_fix_time={row.avg_fix_time:6.2f}"
    )
