"""Shared builders and independent oracles for the test suite.

The oracles deliberately use different routes than the library: raw-sum
formulas instead of centered dot products, repeated substitution instead of
memoized chain walking, plain sum()/len() loops instead of fsum aggregation.
Agreement between the two routes is the point of the tests.
"""

from __future__ import annotations

import math
from datetime import datetime, timedelta, timezone

import numpy as np

from bugdebt import BugRecord, Comment, ProductKey, RepositorySnapshot, Status, StatusEvent

UTC = timezone.utc


def ts(text: str) -> datetime:
    if text.endswith("Z"):
        text = text[:-1] + "+00:00"
    return datetime.fromisoformat(text)


def make_bug(
    bug_id: int,
    product: str = "alpha",
    version: str = "1.0",
    created: str = "2009-03-10T09:30:00Z",
    fix_days: int | None = 5,
    duplicate_of: int | None = None,
    comment_bodies: tuple[str, ...] = ("initial report",),
    reopens: int = 0,
) -> BugRecord:
    """One synthetic bug; fix_days=None leaves it unassigned."""
    created_ts = ts(created)
    if fix_days is None:
        assigned = None
        last_change = created_ts + timedelta(days=3)
    else:
        assigned = created_ts
        last_change = created_ts + timedelta(days=fix_days)

    history = [StatusEvent(ts=created_ts, status=Status.NEW, actor="t")]
    step = created_ts
    for _ in range(reopens):
        step += timedelta(hours=1)
        history.append(StatusEvent(ts=step, status=Status.RESOLVED, actor="t"))
        step += timedelta(hours=1)
        history.append(StatusEvent(ts=step, status=Status.REOPENED, actor="t"))

    comments = tuple(
        Comment(index=i, ts=created_ts + timedelta(minutes=i), author="t", body=body)
        for i, body in enumerate(comment_bodies)
    )
    return BugRecord(
        bug_id=bug_id,
        product=ProductKey(product, version),
        summary=f"bug {bug_id}",
        assigned_date=assigned,
        last_change_date=last_change,
        duplicate_of=duplicate_of,
        status_history=tuple(history),
        comments=comments,
    )


def snapshot_of(*bugs: BugRecord) -> RepositorySnapshot:
    return RepositorySnapshot.from_records(list(bugs))


def pearson_oracle(x, y) -> float:
    """Raw-sums Pearson formula (the textbook route)."""
    n = len(x)
    sx = math.fsum(x)
    sy = math.fsum(y)
    sxy = math.fsum(a * b for a, b in zip(x, y))
    sxx = math.fsum(a * a for a in x)
    syy = math.fsum(b * b for b in y)
    return (n * sxy - sx * sy) / math.sqrt((n * sxx - sx * sx) * (n * syy - sy * sy))


def rrse_oracle(predicted, actual) -> float:
    mean = math.fsum(actual) / len(actual)
    num = math.fsum((p - a) ** 2 for p, a in zip(predicted, actual))
    den = math.fsum((a - mean) ** 2 for a in actual)
    return 100.0 * math.sqrt(num / den)


def ridge_oracle(X: np.ndarray, y: np.ndarray, ridge: float) -> tuple[np.ndarray, float]:
    """Explicit normal equations with an unpenalized intercept column."""
    n, p = X.shape
    design = np.hstack([X, np.ones((n, 1))])
    penalty = np.diag([ridge] * p + [0.0])
    beta = np.linalg.solve(design.T @ design + penalty, design.T @ y)
    return beta[:p], float(beta[p])


def masters_by_substitution(links: dict[int, int]) -> dict[int, int]:
    """Transitive closure by repeated one-step substitution; loops never settle."""
    masters = dict(links)
    for _ in range(len(links) + 1):
        changed = False
        for bug, master in masters.items():
            if master in links:
                masters[bug] = links[master]
                changed = True
        if not changed:
            return masters
    raise AssertionError("substitution did not converge: the links contain a cycle")


def random_forest_links(rng: np.random.Generator, n_bugs: int, max_depth: int = 6) -> dict[int, int]:
    """Random duplicate links forming a forest with bounded chain depth."""
    depth = {1: 0}
    links: dict[int, int] = {}
    for bug in range(2, n_bugs + 1):
        if rng.random() < 0.7:
            parent = int(rng.integers(1, bug))
            if depth[parent] < max_depth:
                links[bug] = parent
                depth[bug] = depth[parent] + 1
                continue
        depth[bug] = 0
    return links
