"""Deterministic synthetic bug repositories with ground-truth labels.

The generator plants tag comments, reopen events, and duplicate chains into
otherwise-bland bug records and keeps its own record of what it planted, so
the identification and aggregation pipeline can be checked in a closed loop:
classifying a generated snapshot must reproduce the ground truth exactly.

Fixing times follow a linear day model,

    days = base + tag_coefficient * hits + reopen_coefficient * reopens
         + dup_coefficient * cluster_size (+ rounded Gaussian noise),

realized as ``assigned_date + days`` so the pipeline exercises real date
arithmetic. All coefficients are integers; with ``noise_sigma == 0`` every
planted day count is exact and the product's mean fixing time equals the
model's value with no rounding error.

Duplicate clusters are built as chains (each member points to the previous
one) rather than stars, which stresses master resolution.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from typing import IO

import numpy as np

from .features import ProductAttributes
from .identify import _mark_to_obj
from .model import (
    BugRecord,
    Comment,
    DebtMark,
    DebtType,
    ProductKey,
    RepositorySnapshot,
    Status,
    StatusEvent,
    TagHit,
)

_PLANT_KEYWORDS = ("TODO", "FIXME", "XXX")

# Filler vocabulary; nothing here collides with a tag keyword.
_WORDS = (
    "parser", "layout", "cache", "render", "crash", "null", "input",
    "startup", "session", "widget", "scroll", "focus", "print", "network",
)

_EPOCH = datetime(2009, 1, 1, tzinfo=timezone.utc)


@dataclass(frozen=True, slots=True)
class SynthSpec:
    """Parameters of one synthetic repository.

    Rates are independent per-bug probabilities, except duplicates: a draw
    below ``dup_rate`` starts a whole chain whose length comes from
    ``cluster_size_range`` (bounds inclusive, master included).
    """

    seed: int = 0
    n_products: int = 10
    bugs_per_product: tuple[int, int] = (20, 60)
    tag_rate: float = 0.2
    reopen_rate: float = 0.15
    dup_rate: float = 0.08
    cluster_size_range: tuple[int, int] = (2, 5)
    base_fix_days: int = 10
    tag_coefficient: int = 3
    reopen_coefficient: int = 5
    dup_coefficient: int = 2
    noise_sigma: float = 0.0
    unassigned_rate: float = 0.0

    def __post_init__(self) -> None:
        if self.n_products < 1:
            raise ValueError("n_products must be positive")
        lo, hi = self.bugs_per_product
        if not 1 <= lo <= hi:
            raise ValueError(f"bugs_per_product bounds must satisfy 1 <= lo <= hi, got {lo, hi}")
        for name in ("tag_rate", "reopen_rate", "dup_rate", "unassigned_rate"):
            rate = getattr(self, name)
            if not 0.0 <= rate <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {rate}")
        clo, chi = self.cluster_size_range
        if not 2 <= clo <= chi:
            raise ValueError(f"cluster sizes must satisfy 2 <= lo <= hi, got {clo, chi}")
        for name in ("base_fix_days", "tag_coefficient", "reopen_coefficient", "dup_coefficient"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.noise_sigma < 0:
            raise ValueError(f"noise_sigma must be non-negative, got {self.noise_sigma}")


@dataclass(frozen=True, slots=True)
class GroundTruth:
    """What the generator planted: a mark per bug and true per-product rows.

    Attribute rows use the default feature configuration (multiplicities per
    typed bug; duplicate size excludes the master).
    """

    marks: dict[int, DebtMark]
    attributes: tuple[ProductAttributes, ...]


@dataclass(slots=True)
class _Plan:
    """Per-bug generation bookkeeping before records are materialized."""

    bug_id: int
    n_hits: int = 0
    reopens: int = 0
    duplicate_of: int | None = None
    master_id: int | None = None
    dup_size: int = 0
    assigned: bool = True
    fix_days: int = 0


def _mean(values: list[float]) -> float:
    return math.fsum(values) / len(values) if values else 0.0


def _true_attributes(key: ProductKey, plans: list[_Plan]) -> ProductAttributes:
    tagged = [p for p in plans if p.n_hits > 0]
    reopened = [p for p in plans if p.reopens > 0]
    duplicates = [p for p in plans if p.duplicate_of is not None]

    def time_mean(subset: list[_Plan]) -> float:
        return _mean([float(p.fix_days) for p in subset if p.assigned])

    return ProductAttributes(
        key=key,
        n_bugs=len(plans),
        tag_count=len(tagged),
        tag_freq=_mean([float(p.n_hits) for p in tagged]),
        tag_time=time_mean(tagged),
        reopen_count=len(reopened),
        reopen_freq=_mean([float(p.reopens) for p in reopened]),
        reopen_time=time_mean(reopened),
        dup_count=len(duplicates),
        dup_freq=_mean([float(p.dup_size) for p in duplicates]),
        dup_time=time_mean(duplicates),
        avg_fix_time=time_mean(plans),
    )


def _plan_product(
    spec: SynthSpec, rng: np.random.Generator, first_id: int
) -> list[_Plan]:
    n_bugs = int(rng.integers(spec.bugs_per_product[0], spec.bugs_per_product[1] + 1))
    plans = [_Plan(bug_id=first_id + i) for i in range(n_bugs)]

    # Duplicate chains first: claim runs of consecutive bugs.
    slot = 0
    while slot < n_bugs:
        if rng.random() >= spec.dup_rate:
            slot += 1
            continue
        clo, chi = spec.cluster_size_range
        size = min(int(rng.integers(clo, chi + 1)), n_bugs - slot)
        if size < 2:
            slot += 1
            continue
        master = plans[slot].bug_id
        for offset in range(1, size):
            member = plans[slot + offset]
            member.duplicate_of = plans[slot + offset - 1].bug_id
            member.master_id = master
            member.dup_size = size - 1
        slot += size

    for plan in plans:
        if rng.random() < spec.tag_rate:
            plan.n_hits = int(rng.integers(1, 4))
        if rng.random() < spec.reopen_rate:
            plan.reopens = int(rng.integers(1, 3))
        plan.assigned = rng.random() >= spec.unassigned_rate
        days = (
            spec.base_fix_days
            + spec.tag_coefficient * plan.n_hits
            + spec.reopen_coefficient * plan.reopens
            + spec.dup_coefficient * plan.dup_size
        )
        if spec.noise_sigma > 0:
            days = max(0, days + round(float(rng.normal(0.0, spec.noise_sigma))))
        plan.fix_days = days
    return plans


def _materialize(
    plan: _Plan, key: ProductKey, rng: np.random.Generator
) -> tuple[BugRecord, DebtMark]:
    created = _EPOCH + timedelta(
        days=int(rng.integers(0, 365)), hours=int(rng.integers(0, 24))
    )

    comments = [
        Comment(index=0, ts=created, author="synth", body=_describe(plan.bug_id, rng))
    ]
    hits = []
    for i in range(plan.n_hits):
        keyword = _PLANT_KEYWORDS[int(rng.integers(0, len(_PLANT_KEYWORDS)))]
        prefix = f"{_word(rng)} {_word(rng)} "
        body = f"{prefix}{keyword} {_word(rng)}."
        comments.append(
            Comment(index=i + 1, ts=created + timedelta(minutes=5 * (i + 1)),
                    author="synth", body=body)
        )
        hits.append(
            TagHit(comment_index=i + 1, keyword=keyword, start=len(prefix),
                   end=len(prefix) + len(keyword))
        )

    history = [StatusEvent(ts=created, status=Status.NEW, actor="synth")]
    if plan.assigned:
        assigned = created
        last_change = assigned + timedelta(days=plan.fix_days)
        span = last_change - assigned
        inner = [Status.ASSIGNED]
        for _ in range(plan.reopens):
            inner += [Status.RESOLVED, Status.REOPENED]
        inner.append(Status.RESOLVED)
        for i, status in enumerate(inner, start=1):
            history.append(
                StatusEvent(ts=assigned + span * (i / len(inner)), status=status, actor="synth")
            )
    else:
        assigned = None
        last_change = created + timedelta(days=int(rng.integers(1, 30)))
        for i in range(plan.reopens):
            history.append(
                StatusEvent(ts=created + timedelta(hours=2 * i + 1),
                            status=Status.RESOLVED, actor="synth")
            )
            history.append(
                StatusEvent(ts=created + timedelta(hours=2 * i + 2),
                            status=Status.REOPENED, actor="synth")
            )

    record = BugRecord(
        bug_id=plan.bug_id,
        product=key,
        summary=f"synthetic defect report {plan.bug_id}",
        assigned_date=assigned,
        last_change_date=last_change,
        duplicate_of=plan.duplicate_of,
        status_history=tuple(history),
        comments=tuple(comments),
    )

    types = set()
    if plan.n_hits > 0:
        types.add(DebtType.TAG)
    if plan.reopens > 0:
        types.add(DebtType.REOPENED)
    if plan.duplicate_of is not None:
        types.add(DebtType.DUPLICATE)
    mark = DebtMark(
        bug_id=plan.bug_id,
        types=frozenset(types),
        tag_hits=tuple(hits),
        reopen_count=plan.reopens,
        master_id=plan.master_id,
    )
    return record, mark


def _word(rng: np.random.Generator) -> str:
    return _WORDS[int(rng.integers(0, len(_WORDS)))]


def _describe(bug_id: int, rng: np.random.Generator) -> str:
    return f"{_word(rng)} {_word(rng)} misbehaves in the {_word(rng)} path (report {bug_id})"


def generate(spec: SynthSpec) -> tuple[RepositorySnapshot, GroundTruth]:
    """Generate a snapshot and its ground truth; same spec, same bytes."""
    rng = np.random.default_rng(spec.seed)
    records: list[BugRecord] = []
    marks: dict[int, DebtMark] = {}
    attribute_rows: list[ProductAttributes] = []

    next_id = 1
    for p in range(spec.n_products):
        key = ProductKey(f"product-{p:03d}", "1.0")
        plans = _plan_product(spec, rng, next_id)
        next_id += len(plans)
        for plan in plans:
            record, mark = _materialize(plan, key, rng)
            records.append(record)
            marks[mark.bug_id] = mark
        attribute_rows.append(_true_attributes(key, plans))

    snapshot = RepositorySnapshot.from_records(
        records,
        source_description=f"synthetic corpus (seed {spec.seed})",
        ingest_timestamp=_EPOCH,
    )
    return snapshot, GroundTruth(marks=marks, attributes=tuple(attribute_rows))


def _attributes_to_obj(row: ProductAttributes) -> dict:
    return {
        "product": row.key.product_name,
        "version": row.key.version,
        "n_bugs": row.n_bugs,
        "tag_count": row.tag_count,
        "tag_freq": row.tag_freq,
        "tag_time": row.tag_time,
        "reopen_count": row.reopen_count,
        "reopen_freq": row.reopen_freq,
        "reopen_time": row.reopen_time,
        "dup_count": row.dup_count,
        "dup_freq": row.dup_freq,
        "dup_time": row.dup_time,
        "avg_fix_time": row.avg_fix_time,
    }


def ground_truth_to_obj(truth: GroundTruth) -> dict:
    return {
        "marks": [_mark_to_obj(truth.marks[bug_id]) for bug_id in sorted(truth.marks)],
        "attributes": [_attributes_to_obj(row) for row in truth.attributes],
    }


def write_ground_truth(truth: GroundTruth, sink: IO[bytes]) -> None:
    payload = json.dumps(ground_truth_to_obj(truth), ensure_ascii=False, indent=2)
    sink.write(payload.encode("utf-8"))
    sink.write(b"\n")
