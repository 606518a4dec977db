"""Classify bugs into the three debt-prone types: tag, reopened, duplicate.

Tag bugs are found by whole-token keyword search over comment bodies (TODO,
FIXME, XXX by default), reopened bugs by counting REOPENED status events, and
duplicate bugs by following duplicate-of chains to their terminal master.
"""

from __future__ import annotations

import functools
import json
import re
from dataclasses import dataclass, field
from typing import IO, Iterable

from .errors import DataError, DuplicateCycleError
from .model import BugRecord, DebtMark, DebtType, RepositorySnapshot, Status, TagHit


@dataclass(frozen=True, slots=True)
class TagRuleSet:
    """Keyword rules for tag-bug detection, plus reviewed override lists.

    Matching is whole-token: a keyword hits only when not flanked by word
    characters, so TODO matches "TODO:" but not "TODOS". Case-sensitive by
    default. Allowlisted bug ids count as tag bugs even without a textual
    hit (recorded as one manual hit); denylisted ids never do.
    """

    keywords: tuple[str, ...] = ("TODO", "FIXME", "XXX")
    case_sensitive: bool = True
    allowlist: frozenset[int] = frozenset()
    denylist: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        if not self.keywords:
            raise ValueError("keywords must be non-empty")
        if self.allowlist & self.denylist:
            raise ValueError("allowlist and denylist must be disjoint")


@functools.lru_cache(maxsize=64)
def _keyword_pattern(keyword: str, case_sensitive: bool) -> re.Pattern[str]:
    flags = 0 if case_sensitive else re.IGNORECASE
    return re.compile(r"(?<!\w)" + re.escape(keyword) + r"(?!\w)", flags)


def scan_tags(bug: BugRecord, rules: TagRuleSet) -> list[TagHit]:
    """Return every whole-token keyword occurrence in the bug's comments.

    Hits are ordered by comment index, then position. Adding a keyword to the
    rules never removes hits (each keyword is scanned independently).
    """
    if bug.bug_id in rules.denylist:
        return []
    hits: list[TagHit] = []
    for comment in bug.comments:
        for keyword in rules.keywords:
            pattern = _keyword_pattern(keyword, rules.case_sensitive)
            for match in pattern.finditer(comment.body):
                hits.append(
                    TagHit(
                        comment_index=comment.index,
                        keyword=keyword,
                        start=match.start(),
                        end=match.end(),
                    )
                )
    hits.sort(key=lambda h: (h.comment_index, h.start, h.end, h.keyword))
    if not hits and bug.bug_id in rules.allowlist:
        hits.append(TagHit(comment_index=-1, keyword="", start=0, end=0, manual=True))
    return hits


def detect_reopened(bug: BugRecord) -> int:
    """Count REOPENED events in the bug's status history."""
    return sum(1 for event in bug.status_history if event.status is Status.REOPENED)


@dataclass(frozen=True, slots=True)
class DuplicateClusters:
    """Resolved duplicate structure of a snapshot.

    ``master_of`` maps every bug that has a duplicate link to its terminal
    master; masters themselves never appear as keys. ``clusters`` groups
    those duplicates by master. ``dangling`` flags master ids that are not
    present in the snapshot (tolerated: real exports are partial).
    """

    master_of: dict[int, int] = field(default_factory=dict)
    clusters: dict[int, frozenset[int]] = field(default_factory=dict)
    dangling: frozenset[int] = frozenset()

    def cluster_size(self, bug_id: int) -> int:
        """Number of duplicates sharing this bug's master (the bug included)."""
        master = self.master_of.get(bug_id)
        if master is None:
            return 0
        return len(self.clusters[master])


def resolve_duplicate_masters(snapshot: RepositorySnapshot) -> DuplicateClusters:
    """Follow duplicate-of chains to their terminal bug and group by master.

    A chain's terminal bug (one with no outgoing link, or one absent from the
    snapshot) is the master. Cycles have no master and raise
    DuplicateCycleError listing the cycle's bug ids.
    """
    link: dict[int, int] = {
        bug_id: rec.duplicate_of
        for bug_id, rec in snapshot.bugs.items()
        if rec.duplicate_of is not None
    }
    master_of: dict[int, int] = {}
    dangling: set[int] = set()

    for start in sorted(link):
        if start in master_of:
            continue
        path: list[int] = []
        on_path: set[int] = set()
        node = start
        while node in link and node not in master_of:
            if node in on_path:
                cycle = path[path.index(node):]
                smallest = cycle.index(min(cycle))
                raise DuplicateCycleError(tuple(cycle[smallest:] + cycle[:smallest]))
            path.append(node)
            on_path.add(node)
            node = link[node]
        master = master_of.get(node, node)
        if master not in snapshot.bugs:
            dangling.add(master)
        for visited in path:
            master_of[visited] = master

    clusters: dict[int, set[int]] = {}
    for bug_id, master in master_of.items():
        clusters.setdefault(master, set()).add(bug_id)
    return DuplicateClusters(
        master_of=master_of,
        clusters={m: frozenset(members) for m, members in clusters.items()},
        dangling=frozenset(dangling),
    )


def clusters_from_marks(marks: dict[int, DebtMark]) -> DuplicateClusters:
    """Rebuild the duplicate structure from already-classified marks.

    The dangling set is not recoverable from marks alone and is left empty;
    it is a resolution-time diagnostic only.
    """
    master_of = {
        mark.bug_id: mark.master_id for mark in marks.values() if mark.master_id is not None
    }
    clusters: dict[int, set[int]] = {}
    for bug_id, master in master_of.items():
        clusters.setdefault(master, set()).add(bug_id)
    return DuplicateClusters(
        master_of=master_of,
        clusters={m: frozenset(members) for m, members in clusters.items()},
    )


def classify_debt(
    snapshot: RepositorySnapshot, rules: TagRuleSet | None = None
) -> dict[int, DebtMark]:
    """Produce a DebtMark for every bug in the snapshot.

    A bug may carry several types at once; each type's evidence is collected
    independently. Marking never adds or removes records: only duplicate bugs
    are themselves records, tag and reopen evidence lives inside existing ones.
    """
    rules = rules or TagRuleSet()
    resolved = resolve_duplicate_masters(snapshot)
    marks: dict[int, DebtMark] = {}
    for bug_id, bug in snapshot.bugs.items():
        tag_hits = tuple(scan_tags(bug, rules))
        reopen_count = detect_reopened(bug)
        master_id = resolved.master_of.get(bug_id)
        types = set()
        if tag_hits:
            types.add(DebtType.TAG)
        if reopen_count >= 1:
            types.add(DebtType.REOPENED)
        if master_id is not None and master_id != bug_id:
            types.add(DebtType.DUPLICATE)
        marks[bug_id] = DebtMark(
            bug_id=bug_id,
            types=frozenset(types),
            tag_hits=tag_hits,
            reopen_count=reopen_count,
            master_id=master_id,
        )
    return marks


_TYPE_ORDER = (DebtType.TAG, DebtType.REOPENED, DebtType.DUPLICATE)


def _mark_to_obj(mark: DebtMark) -> dict:
    return {
        "bug_id": mark.bug_id,
        "types": [t.value for t in _TYPE_ORDER if t in mark.types],
        "reopen_count": mark.reopen_count,
        "master_id": mark.master_id,
        "tag_hits": [
            {
                "comment": h.comment_index,
                "keyword": h.keyword,
                "span": [h.start, h.end],
                "manual": h.manual,
            }
            for h in mark.tag_hits
        ],
    }


def _mark_from_obj(obj: dict) -> DebtMark:
    hits = tuple(
        TagHit(
            comment_index=h["comment"],
            keyword=h["keyword"],
            start=h["span"][0],
            end=h["span"][1],
            manual=h.get("manual", False),
        )
        for h in obj["tag_hits"]
    )
    return DebtMark(
        bug_id=obj["bug_id"],
        types=frozenset(DebtType(t) for t in obj["types"]),
        tag_hits=hits,
        reopen_count=obj["reopen_count"],
        master_id=obj["master_id"],
    )


def write_debt_report(marks: dict[int, DebtMark], sink: IO[bytes]) -> int:
    """Write one JSON line per bug in ascending bug_id order."""
    count = 0
    for bug_id in sorted(marks):
        obj = _mark_to_obj(marks[bug_id])
        sink.write(json.dumps(obj, ensure_ascii=False, separators=(",", ":")).encode("utf-8"))
        sink.write(b"\n")
        count += 1
    return count


def read_debt_report(stream: IO[bytes] | Iterable[bytes]) -> dict[int, DebtMark]:
    """Read a debt report back into a marks mapping."""
    marks: dict[int, DebtMark] = {}
    for line_number, raw in enumerate(stream, start=1):
        line = raw.decode("utf-8") if isinstance(raw, (bytes, bytearray)) else raw
        if not line.strip():
            continue
        try:
            mark = _mark_from_obj(json.loads(line))
        except (json.JSONDecodeError, KeyError, ValueError, TypeError) as exc:
            raise DataError(f"debt report line {line_number}: {exc}") from None
        marks[mark.bug_id] = mark
    return marks
