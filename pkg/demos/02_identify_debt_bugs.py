"""Identify the three kinds of debt-prone bugs in a tiny hand-built corpus.

Tag bugs carry developer annotations (TODO, FIXME, XXX) in their comments.
Reopened bugs went through at least one REOPENED status event. Duplicate
bugs point at another report, possibly through a chain of links.
"""

from datetime import datetime, timedelta, timezone

from bugdebt import (
    BugRecord,
    Comment,
    ProductKey,
    RepositorySnapshot,
    Status,
    StatusEvent,
    TagRuleSet,
    classify_debt,
    resolve_duplicate_masters,
    scan_tags,
)

T0 = datetime(2010, 6, 1, 9, 0, tzinfo=timezone.utc)


def bug(bug_id, *, comments=("looks broken",), duplicate_of=None, reopens=0):
    history = [StatusEvent(ts=T0, status=Status.NEW, actor="dev")]
    step = T0
    for _ in range(reopens):
        step += timedelta(hours=2)
        history.append(StatusEvent(ts=step, status=Status.RESOLVED, actor="dev"))
        step += timedelta(hours=2)
        history.append(StatusEvent(ts=step, status=Status.REOPENED, actor="dev"))
    return BugRecord(
        bug_id=bug_id,
        product=ProductKey("editor", "2.1"),
        summary=f"report {bug_id}",
        assigned_date=T0,
        last_change_date=T0 + timedelta(days=4),
        duplicate_of=duplicate_of,
        status_history=tuple(history),
        comments=tuple(
            Comment(index=i, ts=T0 + timedelta(minutes=i), author="dev", body=body)
            for i, body in enumerate(comments)
        ),
    )


snapshot = RepositorySnapshot.from_records([
    bug(1, comments=("crash on save", "FIXME: the cache is stale here")),
    bug(2, duplicate_of=1),
    bug(3, duplicate_of=2),          # two steps away from its master
    bug(4, reopens=2),
    bug(5, comments=("a fixme-like word does not count: SUFFIXME",)),
])

# ---------------------------------------------------------------------------
# Tag scanning matches whole tokens only, so SUFFIXME is not a FIXME.
# ---------------------------------------------------------------------------
rules = TagRuleSet()   # TODO, FIXME, XXX; case-sensitive by default
for bug_id in sorted(snapshot.bugs):
    hits = scan_tags(snapshot.bugs[bug_id], rules)
    where = [f"comment {hit.comment_index} at {hit.start}" for hit in hits]
    print(f"bug {bug_id}: {len(hits)} tag hit(s) {where}")

# ---------------------------------------------------------------------------
# Duplicate links resolve through chains: 3 -> 2 -> 1 collapses to master 1.
# ---------------------------------------------------------------------------
resolved = resolve_duplicate_masters(snapshot)
print(f"\nmaster of each duplicate: {dict(sorted(resolved.master_of.items()))}")
for master, members in sorted(resolved.clusters.items()):
    print(f"cluster around bug {master}: duplicates {sorted(members)}")

# ---------------------------------------------------------------------------
# classify_debt runs all three detectors and marks every bug, including the
# ones that carry no debt signal.
# ---------------------------------------------------------------------------
marks = classify_debt(snapshot)
print()
for bug_id, mark in sorted(marks.items()):
    types = ", ".join(sorted(t.value for t in mark.types)) or "none"
    extras = []
    if mark.reopen_count:
        extras.append(f"reopened {mark.reopen_count}x")
    if mark.master_id is not None:
        extras.append(f"duplicate of {mark.master_id}")
    print(f"bug {bug_id}: {types}" + (f"  ({'; '.join(extras)})" if extras else ""))
