"""Parse, validate, and persist bug repositories and feature tables.

The canonical repository format is JSON-lines: one bug object per line,
UTF-8, fixed key order, compact separators. Serialization is canonical, so
two snapshots with equal contents produce byte-identical files. Timestamps
are ISO-8601 with an explicit UTC offset and are normalized to UTC on read.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import IO, Any, Iterable, Literal

from .errors import DuplicateBugIdError, FeatureTableError, InsufficientDataError, ParseError
from .features import FEATURE_CSV_HEADER, ProductAttributes
from .model import (
    BugRecord,
    Comment,
    ProductKey,
    RepositorySnapshot,
    Status,
    StatusEvent,
    validate_record,
)

MalformedPolicy = Literal["skip", "abort"]


@dataclass(frozen=True, slots=True)
class IngestConfig:
    """Parser policy: what to do with malformed lines, and how to map
    non-standard status strings onto the closed status enum. Unmapped
    unknown statuses make the line malformed."""

    on_malformed: MalformedPolicy = "abort"
    status_map: dict[str, Status] = field(default_factory=dict)


@dataclass(frozen=True, slots=True)
class SkippedLine:
    line_number: int
    reason: str


@dataclass(frozen=True, slots=True)
class IngestResult:
    """A parsed snapshot plus the per-line report of skipped input."""

    snapshot: RepositorySnapshot
    skipped: tuple[SkippedLine, ...] = ()


def parse_timestamp(text: str) -> datetime:
    """Parse an ISO-8601 timestamp with an explicit offset, normalized to UTC."""
    if not isinstance(text, str):
        raise ValueError(f"timestamp must be a string, got {type(text).__name__}")
    raw = text.strip()
    if raw.endswith("Z") or raw.endswith("z"):
        raw = raw[:-1] + "+00:00"
    try:
        ts = datetime.fromisoformat(raw)
    except ValueError:
        raise ValueError(f"invalid ISO-8601 timestamp: {text!r}") from None
    if ts.tzinfo is None:
        raise ValueError(f"timestamp {text!r} lacks a UTC offset")
    return ts.astimezone(timezone.utc)


def _format_timestamp(ts: datetime) -> str:
    return ts.astimezone(timezone.utc).isoformat()


def _require(obj: dict[str, Any], key: str, kind: type | tuple[type, ...]) -> Any:
    if key not in obj:
        raise ValueError(f"missing field {key!r}")
    value = obj[key]
    if not isinstance(value, kind):
        raise ValueError(f"field {key!r} has wrong type {type(value).__name__}")
    return value


def _parse_status(text: Any, config: IngestConfig) -> Status:
    if not isinstance(text, str):
        raise ValueError(f"status must be a string, got {type(text).__name__}")
    try:
        return Status(text)
    except ValueError:
        pass
    if text in config.status_map:
        return config.status_map[text]
    raise ValueError(f"unknown status {text!r} (not in the status map)")


def record_from_obj(obj: Any, config: IngestConfig | None = None) -> BugRecord:
    """Build a BugRecord from one decoded JSON object; raise ValueError on any
    schema or invariant violation."""
    config = config or IngestConfig()
    if not isinstance(obj, dict):
        raise ValueError("line is not a JSON object")
    bug_id = _require(obj, "bug_id", int)
    if isinstance(bug_id, bool):
        raise ValueError("field 'bug_id' has wrong type bool")
    product = ProductKey(_require(obj, "product", str), _require(obj, "version", str))
    summary = _require(obj, "summary", str)
    assigned_raw = obj.get("assigned_date")
    assigned = parse_timestamp(assigned_raw) if assigned_raw is not None else None
    last_change = parse_timestamp(_require(obj, "last_change_date", str))
    dup = obj.get("duplicate_of")
    if dup is not None and (not isinstance(dup, int) or isinstance(dup, bool)):
        raise ValueError("field 'duplicate_of' must be an integer or null")

    history = []
    for item in _require(obj, "status_history", list):
        if not isinstance(item, dict):
            raise ValueError("status_history entries must be objects")
        history.append(
            StatusEvent(
                ts=parse_timestamp(_require(item, "ts", str)),
                status=_parse_status(item.get("status"), config),
                actor=item.get("actor"),
            )
        )
    comments = []
    for item in _require(obj, "comments", list):
        if not isinstance(item, dict):
            raise ValueError("comments entries must be objects")
        comments.append(
            Comment(
                index=_require(item, "index", int),
                ts=parse_timestamp(_require(item, "ts", str)),
                author=item.get("author"),
                body=_require(item, "body", str),
            )
        )

    record = BugRecord(
        bug_id=bug_id,
        product=product,
        summary=summary,
        assigned_date=assigned,
        last_change_date=last_change,
        duplicate_of=dup,
        status_history=tuple(history),
        comments=tuple(comments),
    )
    violations = validate_record(record)
    if violations:
        raise ValueError("; ".join(violations))
    return record


def record_to_obj(record: BugRecord) -> dict[str, Any]:
    """Serialize one BugRecord to a JSON-ready dict in canonical key order."""
    return {
        "bug_id": record.bug_id,
        "product": record.product.product_name,
        "version": record.product.version,
        "summary": record.summary,
        "assigned_date": (
            _format_timestamp(record.assigned_date) if record.assigned_date else None
        ),
        "last_change_date": _format_timestamp(record.last_change_date),
        "duplicate_of": record.duplicate_of,
        "status_history": [
            {"ts": _format_timestamp(e.ts), "status": e.status.value, "actor": e.actor}
            for e in record.status_history
        ],
        "comments": [
            {"index": c.index, "ts": _format_timestamp(c.ts), "author": c.author, "body": c.body}
            for c in record.comments
        ],
    }


def parse_bug_stream(
    stream: IO[bytes] | Iterable[bytes],
    config: IngestConfig | None = None,
    source_description: str = "",
) -> IngestResult:
    """Parse a JSONL byte stream into a snapshot.

    Malformed lines are skipped and reported, or abort with a ParseError
    carrying the line number, per ``config.on_malformed``. A repeated bug_id
    is always an error naming both occurrences.
    """
    config = config or IngestConfig()
    bugs: dict[int, BugRecord] = {}
    first_line_of: dict[int, int] = {}
    skipped: list[SkippedLine] = []

    for line_number, raw in enumerate(stream, start=1):
        try:
            line = raw.decode("utf-8") if isinstance(raw, (bytes, bytearray)) else raw
        except UnicodeDecodeError as exc:
            line = ""
            reason = f"invalid UTF-8: {exc}"
            if config.on_malformed == "abort":
                raise ParseError(line_number, reason) from None
            skipped.append(SkippedLine(line_number, reason))
            continue
        if not line.strip():
            continue
        try:
            record = record_from_obj(json.loads(line), config)
        except (json.JSONDecodeError, ValueError) as exc:
            reason = str(exc)
            if config.on_malformed == "abort":
                raise ParseError(line_number, reason) from None
            skipped.append(SkippedLine(line_number, reason))
            continue
        if record.bug_id in bugs:
            raise DuplicateBugIdError(record.bug_id, first_line_of[record.bug_id], line_number)
        bugs[record.bug_id] = record
        first_line_of[record.bug_id] = line_number

    snapshot = RepositorySnapshot(
        bugs=bugs,
        source_description=source_description,
        ingest_timestamp=datetime.now(timezone.utc),
    )
    return IngestResult(snapshot=snapshot, skipped=tuple(skipped))


def write_snapshot(snapshot: RepositorySnapshot, sink: IO[bytes]) -> int:
    """Write one line per bug in ascending bug_id order; return the line count."""
    count = 0
    for bug_id in sorted(snapshot.bugs):
        obj = record_to_obj(snapshot.bugs[bug_id])
        sink.write(json.dumps(obj, ensure_ascii=False, separators=(",", ":")).encode("utf-8"))
        sink.write(b"\n")
        count += 1
    return count


def load_snapshot(path: str, config: IngestConfig | None = None) -> IngestResult:
    with open(path, "rb") as handle:
        return parse_bug_stream(handle, config, source_description=path)


def save_snapshot(snapshot: RepositorySnapshot, path: str) -> int:
    with open(path, "wb") as handle:
        return write_snapshot(snapshot, handle)


def _format_number(value: float | int) -> str:
    # repr round-trips float64 exactly; ints stay integral
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def write_feature_table(rows: Iterable[ProductAttributes], sink: IO[bytes]) -> int:
    """Write the per-product feature CSV, sorted by product name then version."""
    rows = sorted(rows, key=lambda r: r.key)
    if not rows:
        raise InsufficientDataError("feature table needs at least one row")
    text = io.TextIOWrapper(sink, encoding="utf-8", newline="")
    writer = csv.writer(text, lineterminator="\n")
    writer.writerow(FEATURE_CSV_HEADER)
    for row in rows:
        writer.writerow(
            [row.key.product_name, row.key.version, _format_number(row.n_bugs)]
            + [_format_number(v) for v in row.attribute_values()]
            + [_format_number(row.avg_fix_time)]
        )
    text.flush()
    text.detach()
    return len(rows)


def read_feature_table(stream: IO[bytes]) -> list[ProductAttributes]:
    """Read a feature CSV back; the header must match the canonical one exactly."""
    text = io.TextIOWrapper(stream, encoding="utf-8", newline="")
    reader = csv.reader(text)
    try:
        header = next(reader)
    except StopIteration:
        raise FeatureTableError("feature table is empty (no header)") from None
    if tuple(header) != FEATURE_CSV_HEADER:
        raise FeatureTableError(
            f"unexpected header {header!r}; expected {list(FEATURE_CSV_HEADER)!r}"
        )
    rows: list[ProductAttributes] = []
    for line_number, cells in enumerate(reader, start=2):
        if not cells:
            continue
        if len(cells) != len(FEATURE_CSV_HEADER):
            raise FeatureTableError(f"row {line_number}: expected {len(FEATURE_CSV_HEADER)} cells")
        try:
            rows.append(
                ProductAttributes(
                    key=ProductKey(cells[0], cells[1]),
                    n_bugs=int(cells[2]),
                    tag_count=int(cells[3]),
                    tag_freq=float(cells[4]),
                    tag_time=float(cells[5]),
                    reopen_count=int(cells[6]),
                    reopen_freq=float(cells[7]),
                    reopen_time=float(cells[8]),
                    dup_count=int(cells[9]),
                    dup_freq=float(cells[10]),
                    dup_time=float(cells[11]),
                    avg_fix_time=float(cells[12]),
                )
            )
        except ValueError as exc:
            raise FeatureTableError(f"row {line_number}: {exc}") from None
    text.detach()
    return rows


def load_feature_table(path: str) -> list[ProductAttributes]:
    with open(path, "rb") as handle:
        return read_feature_table(handle)


def save_feature_table(rows: Iterable[ProductAttributes], path: str) -> int:
    with open(path, "wb") as handle:
        return write_feature_table(rows, handle)
