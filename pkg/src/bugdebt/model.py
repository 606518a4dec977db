"""Domain types for bug repositories.

Everything here is immutable after construction (frozen dataclasses holding
tuples), so records and snapshots can be shared freely across workers.
Timestamps keep full resolution; day-level cost arithmetic truncates to UTC
dates downstream.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from datetime import datetime, timezone


class Status(str, enum.Enum):
    """Lifecycle states a tracker assigns to a bug."""

    NEW = "NEW"
    ASSIGNED = "ASSIGNED"
    RESOLVED = "RESOLVED"
    REOPENED = "REOPENED"
    VERIFIED = "VERIFIED"
    CLOSED = "CLOSED"


class DebtType(str, enum.Enum):
    """The three classes of debt-prone bugs."""

    TAG = "tag"
    REOPENED = "reopened"
    DUPLICATE = "duplicate"


@dataclass(frozen=True, slots=True, order=True)
class ProductKey:
    """Identity of a product: name plus version.

    Long-lived products that never branch use the literal version "trunk".
    Ordering is lexicographic by name, then version.
    """

    product_name: str
    version: str

    def __post_init__(self) -> None:
        if not self.product_name:
            raise ValueError("product_name must be non-empty")


@dataclass(frozen=True, slots=True)
class StatusEvent:
    ts: datetime
    status: Status
    actor: str | None = None


@dataclass(frozen=True, slots=True)
class Comment:
    index: int
    ts: datetime
    author: str | None
    body: str


@dataclass(frozen=True, slots=True)
class BugRecord:
    """One bug: identity, product, lifecycle events, comments, duplicate link."""

    bug_id: int
    product: ProductKey
    summary: str
    assigned_date: datetime | None
    last_change_date: datetime
    duplicate_of: int | None = None
    status_history: tuple[StatusEvent, ...] = ()
    comments: tuple[Comment, ...] = ()


@dataclass(frozen=True, slots=True)
class TagHit:
    """One tag-keyword occurrence inside a comment body.

    ``start``/``end`` are character offsets within the body. Allowlist
    overrides with no textual match are recorded as a single hit with
    ``manual=True`` and ``comment_index=-1``.
    """

    comment_index: int
    keyword: str
    start: int
    end: int
    manual: bool = False


@dataclass(frozen=True, slots=True)
class DebtMark:
    """Classification of one bug into zero or more debt types, with evidence."""

    bug_id: int
    types: frozenset[DebtType]
    tag_hits: tuple[TagHit, ...] = ()
    reopen_count: int = 0
    master_id: int | None = None

    def __post_init__(self) -> None:
        if (DebtType.TAG in self.types) != bool(self.tag_hits):
            raise ValueError("TAG type must carry at least one tag hit, and vice versa")
        if (DebtType.REOPENED in self.types) != (self.reopen_count >= 1):
            raise ValueError("REOPENED type must carry reopen_count >= 1, and vice versa")
        has_master = self.master_id is not None and self.master_id != self.bug_id
        if (DebtType.DUPLICATE in self.types) != has_master:
            raise ValueError("DUPLICATE type must carry a master_id distinct from bug_id")


@dataclass(frozen=True, slots=True)
class RepositorySnapshot:
    """All bugs of one repository export, keyed by bug id."""

    bugs: dict[int, BugRecord] = field(default_factory=dict)
    source_description: str = ""
    ingest_timestamp: datetime = datetime(1970, 1, 1, tzinfo=timezone.utc)

    @classmethod
    def from_records(
        cls,
        records: list[BugRecord] | tuple[BugRecord, ...],
        source_description: str = "",
        ingest_timestamp: datetime | None = None,
    ) -> RepositorySnapshot:
        bugs: dict[int, BugRecord] = {}
        for rec in records:
            if rec.bug_id in bugs:
                raise ValueError(f"duplicate bug_id {rec.bug_id}")
            bugs[rec.bug_id] = rec
        ts = ingest_timestamp or datetime(1970, 1, 1, tzinfo=timezone.utc)
        return cls(bugs=bugs, source_description=source_description, ingest_timestamp=ts)

    def __len__(self) -> int:
        return len(self.bugs)


def _utc_date(ts: datetime):
    return ts.astimezone(timezone.utc).date()


def validate_record(record: BugRecord) -> list[str]:
    """Check every BugRecord invariant; return one description per violation.

    Pure: violations are data, not failures. An empty list means the record
    is well-formed.
    """
    violations: list[str] = []
    if not isinstance(record.bug_id, int) or record.bug_id <= 0:
        violations.append(f"bug_id: must be a positive integer, got {record.bug_id!r}")
    if record.duplicate_of is not None and record.duplicate_of == record.bug_id:
        violations.append(f"duplicate_of: bug {record.bug_id} marked as a duplicate of itself")
    if record.assigned_date is not None:
        if _utc_date(record.last_change_date) < _utc_date(record.assigned_date):
            violations.append(
                "last_change_date: earlier (by UTC day) than assigned_date"
            )
    prev: datetime | None = None
    for i, event in enumerate(record.status_history):
        if prev is not None and event.ts < prev:
            violations.append(
                f"status_history[{i}]: timestamp decreases within the history"
            )
        prev = event.ts
    for i, comment in enumerate(record.comments):
        if comment.index != i:
            violations.append(
                f"comments[{i}]: index {comment.index} breaks the dense 0..n-1 ordering"
            )
    return violations
