"""Per-product debt attributes and the prediction target.

For each product (name + version) and each debt type, three attributes are
computed: the count of bugs of that type, the average per-bug multiplicity
of the debt (tag hits, reopenings, or duplicate-cluster size), and the mean
fixing time of those bugs in whole days. The target is the mean fixing time
over all bugs of the product. Means use exact summation (math.fsum), so
aggregation is invariant under bug ordering.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import timezone
from typing import Iterable, Mapping

from .errors import EmptyProductError, InsufficientDataError
from .identify import DuplicateClusters
from .model import BugRecord, DebtMark, DebtType, ProductKey, RepositorySnapshot

FEATURE_COLUMNS: tuple[str, ...] = (
    "tag_count",
    "tag_freq",
    "tag_time",
    "reopen_count",
    "reopen_freq",
    "reopen_time",
    "dup_count",
    "dup_freq",
    "dup_time",
)

FEATURE_CSV_HEADER: tuple[str, ...] = ("product", "version", "n_bugs") + FEATURE_COLUMNS + (
    "avg_fix_time",
)

SIZE_BANDS: tuple[tuple[str, int, float], ...] = (
    ("[100,500)", 100, 500),
    ("[500,1000)", 500, 1000),
    ("[1000,5000)", 1000, 5000),
    ("[5000,inf)", 5000, math.inf),
)


@dataclass(frozen=True, slots=True)
class FeatureConfig:
    """Knobs for attribute computation.

    ``include_master_in_freq`` counts the master bug into the duplicate
    multiplicity (cluster of master + 2 duplicates -> 3 instead of 2).
    ``freq_over_all_bugs`` divides summed multiplicities by the product's
    bug count instead of by the count of bugs of that type.
    """

    include_master_in_freq: bool = False
    freq_over_all_bugs: bool = False


@dataclass(frozen=True, slots=True)
class ProductAttributes:
    """The nine debt attributes plus the target for one product."""

    key: ProductKey
    n_bugs: int
    tag_count: int
    tag_freq: float
    tag_time: float
    reopen_count: int
    reopen_freq: float
    reopen_time: float
    dup_count: int
    dup_freq: float
    dup_time: float
    avg_fix_time: float

    def attribute_values(self) -> tuple[float, ...]:
        """The nine attributes in FEATURE_COLUMNS order."""
        return (
            self.tag_count,
            self.tag_freq,
            self.tag_time,
            self.reopen_count,
            self.reopen_freq,
            self.reopen_time,
            self.dup_count,
            self.dup_freq,
            self.dup_time,
        )


def fix_time_days(bug: BugRecord) -> int | None:
    """Whole UTC days from assignment to the last change; None if never assigned."""
    if bug.assigned_date is None:
        return None
    assigned = bug.assigned_date.astimezone(timezone.utc).date()
    last = bug.last_change_date.astimezone(timezone.utc).date()
    return (last - assigned).days


def type_frequency(
    bug_id: int,
    marks: Mapping[int, DebtMark],
    clusters: DuplicateClusters,
    debt_type: DebtType,
    config: FeatureConfig | None = None,
) -> int:
    """Per-bug debt multiplicity: tag hits, reopenings, or duplicate-cluster size.

    The bug must actually carry ``debt_type``; callers filter first.
    """
    config = config or FeatureConfig()
    mark = marks[bug_id]
    if debt_type not in mark.types:
        raise ValueError(f"bug {bug_id} does not carry type {debt_type.value}")
    if debt_type is DebtType.TAG:
        return len(mark.tag_hits)
    if debt_type is DebtType.REOPENED:
        return mark.reopen_count
    size = clusters.cluster_size(bug_id)
    return size + 1 if config.include_master_in_freq else size


def _mean(values: list[float]) -> float:
    if not values:
        return 0.0
    return math.fsum(values) / len(values)


def aggregate_product(
    snapshot: RepositorySnapshot,
    marks: Mapping[int, DebtMark],
    clusters: DuplicateClusters,
    key: ProductKey,
    config: FeatureConfig | None = None,
) -> ProductAttributes:
    """Compute the nine attributes and the target for one product.

    Bugs without an assignment date have no defined fix time and are left out
    of the time means (never imputed). Empty-type attributes are 0, so every
    product yields a complete feature vector.
    """
    config = config or FeatureConfig()
    bugs = [rec for rec in snapshot.bugs.values() if rec.product == key]
    if not bugs:
        raise EmptyProductError(f"product {key.product_name!r} {key.version!r} has no bugs")
    bugs.sort(key=lambda rec: rec.bug_id)

    fix_times = {rec.bug_id: fix_time_days(rec) for rec in bugs}
    all_times = [float(t) for t in fix_times.values() if t is not None]

    per_type: dict[DebtType, tuple[int, float, float]] = {}
    for debt_type in DebtType:
        typed = [rec for rec in bugs if debt_type in marks[rec.bug_id].types]
        multiplicities = [
            float(type_frequency(rec.bug_id, marks, clusters, debt_type, config))
            for rec in typed
        ]
        if config.freq_over_all_bugs:
            freq = math.fsum(multiplicities) / len(bugs) if multiplicities else 0.0
        else:
            freq = _mean(multiplicities)
        times = [float(fix_times[rec.bug_id]) for rec in typed if fix_times[rec.bug_id] is not None]
        per_type[debt_type] = (len(typed), freq, _mean(times))

    tag_count, tag_freq, tag_time = per_type[DebtType.TAG]
    reopen_count, reopen_freq, reopen_time = per_type[DebtType.REOPENED]
    dup_count, dup_freq, dup_time = per_type[DebtType.DUPLICATE]
    return ProductAttributes(
        key=key,
        n_bugs=len(bugs),
        tag_count=tag_count,
        tag_freq=tag_freq,
        tag_time=tag_time,
        reopen_count=reopen_count,
        reopen_freq=reopen_freq,
        reopen_time=reopen_time,
        dup_count=dup_count,
        dup_freq=dup_freq,
        dup_time=dup_time,
        avg_fix_time=_mean(all_times),
    )


def product_keys(snapshot: RepositorySnapshot) -> list[ProductKey]:
    """All distinct product keys in the snapshot, sorted."""
    return sorted({rec.product for rec in snapshot.bugs.values()})


def aggregate_products(
    snapshot: RepositorySnapshot,
    marks: Mapping[int, DebtMark],
    clusters: DuplicateClusters,
    config: FeatureConfig | None = None,
) -> list[ProductAttributes]:
    """Aggregate every product in the snapshot, sorted by product key."""
    return [
        aggregate_product(snapshot, marks, clusters, key, config)
        for key in product_keys(snapshot)
    ]


def filter_products(
    rows: Iterable[ProductAttributes], min_bugs: int = 100
) -> list[ProductAttributes]:
    """Drop products with fewer than ``min_bugs`` bugs; order is preserved."""
    return [row for row in rows if row.n_bugs >= min_bugs]


def summarize_repository(rows: list[ProductAttributes]) -> dict:
    """Product-size histogram, per-type totals, and debt ratios.

    Band edges follow the product-size bands used in the reports; rows below
    the lowest edge count toward the totals but land in no band. Keys are
    fixed: ``bands``, ``totals``, ``ratios``.
    """
    if not rows:
        raise InsufficientDataError("summary needs at least one product row")
    bands = {label: 0 for label, _, _ in SIZE_BANDS}
    for row in rows:
        for label, lo, hi in SIZE_BANDS:
            if lo <= row.n_bugs < hi:
                bands[label] += 1
                break
    n_bugs = sum(row.n_bugs for row in rows)
    totals = {
        "n_products": len(rows),
        "n_bugs": n_bugs,
        "tag_bugs": sum(row.tag_count for row in rows),
        "reopened_bugs": sum(row.reopen_count for row in rows),
        "duplicate_bugs": sum(row.dup_count for row in rows),
    }
    ratios = {
        "tag": totals["tag_bugs"] / n_bugs,
        "reopened": totals["reopened_bugs"] / n_bugs,
        "duplicate": totals["duplicate_bugs"] / n_bugs,
    }
    return {"bands": bands, "totals": totals, "ratios": ratios}
