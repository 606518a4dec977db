"""Pearson correlation between debt attributes and average fix time.

Coefficients are banded into four named levels:

    none    -0.1 <= r <= 0.1
    weak    0.1 < r <= 0.3      or  -0.3 <= r < -0.1
    modest  0.3 < r <= 0.5      or  -0.5 <= r < -0.3
    strong  0.5 < r <= 1.0      or  -1.0 <= r < -0.5

Boundary values land in the band whose inequality is non-strict, read
literally from the table above.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import IO, Sequence

import numpy as np

from .errors import ConstantInputError, InsufficientDataError
from .features import FEATURE_COLUMNS, ProductAttributes

_CLAMP_TOLERANCE = 1e-12


class CorrelationLevel(str, enum.Enum):
    NONE = "none"
    WEAK = "weak"
    MODEST = "modest"
    STRONG = "strong"
    UNDEFINED = "undefined"  # constant column: the coefficient does not exist


def pearson(x: Sequence[float] | np.ndarray, y: Sequence[float] | np.ndarray) -> float:
    """Sample Pearson correlation coefficient between two vectors.

    Both vectors need at least two elements and neither may be constant.
    The result is clamped into [-1, 1] when rounding pushes it out by less
    than 1e-12.
    """
    xv = np.asarray(x, dtype=np.float64)
    yv = np.asarray(y, dtype=np.float64)
    if xv.ndim != 1 or yv.ndim != 1:
        raise ValueError("pearson expects one-dimensional vectors")
    if xv.shape[0] != yv.shape[0]:
        raise ValueError(f"length mismatch: {xv.shape[0]} vs {yv.shape[0]}")
    if xv.shape[0] < 2:
        raise ValueError("pearson needs at least two elements")
    if np.ptp(xv) == 0 or np.ptp(yv) == 0:
        raise ConstantInputError("correlation is undefined for a constant vector")
    dx = xv - xv.mean()
    dy = yv - yv.mean()
    # sample covariance over the product of sample standard deviations; the
    # shared 1/(n-1) cancels in the ratio
    r = float(np.dot(dx, dy) / np.sqrt(np.dot(dx, dx) * np.dot(dy, dy)))
    if abs(r) > 1.0:
        if abs(r) > 1.0 + _CLAMP_TOLERANCE:
            raise ArithmeticError(f"correlation escaped [-1, 1]: {r}")
        r = 1.0 if r > 0 else -1.0
    return r


def classify_level(r: float) -> tuple[CorrelationLevel, str | None]:
    """Band a coefficient into its level; sign is None inside the none-band."""
    if abs(r) > 1.0:
        if abs(r) > 1.0 + _CLAMP_TOLERANCE:
            raise ValueError(f"coefficient out of range: {r}")
        r = 1.0 if r > 0 else -1.0
    magnitude = abs(r)
    if magnitude <= 0.1:
        return CorrelationLevel.NONE, None
    sign = "positive" if r > 0 else "negative"
    if magnitude <= 0.3:
        return CorrelationLevel.WEAK, sign
    if magnitude <= 0.5:
        return CorrelationLevel.MODEST, sign
    return CorrelationLevel.STRONG, sign


@dataclass(frozen=True, slots=True)
class CorrelationEntry:
    attribute: str
    r: float | None
    level: CorrelationLevel
    sign: str | None
    sample_size: int


@dataclass(frozen=True, slots=True)
class CorrelationReport:
    entries: tuple[CorrelationEntry, ...]

    def entry(self, attribute: str) -> CorrelationEntry:
        for e in self.entries:
            if e.attribute == attribute:
                return e
        raise KeyError(attribute)


def correlation_report(rows: Sequence[ProductAttributes]) -> CorrelationReport:
    """Correlate each of the nine attributes with average fix time.

    Attributes whose column is constant (or when the target is constant) get
    the UNDEFINED level with no coefficient instead of failing the report.
    """
    if len(rows) < 3:
        raise InsufficientDataError(
            f"correlation needs at least 3 product rows, got {len(rows)}"
        )
    target = [row.avg_fix_time for row in rows]
    entries = []
    for position, attribute in enumerate(FEATURE_COLUMNS):
        column = [float(row.attribute_values()[position]) for row in rows]
        try:
            r = pearson(column, target)
        except ConstantInputError:
            entries.append(
                CorrelationEntry(attribute, None, CorrelationLevel.UNDEFINED, None, len(rows))
            )
            continue
        level, sign = classify_level(r)
        entries.append(CorrelationEntry(attribute, r, level, sign, len(rows)))
    return CorrelationReport(entries=tuple(entries))


def report_to_json(report: CorrelationReport) -> str:
    payload = [
        {
            "attribute": e.attribute,
            "r": e.r,
            "level": e.level.value,
            "sign": e.sign,
            "sample_size": e.sample_size,
        }
        for e in report.entries
    ]
    return json.dumps({"correlations": payload}, ensure_ascii=False, indent=2) + "\n"


def write_report_csv(report: CorrelationReport, sink: IO[bytes]) -> None:
    """Plot-ready CSV: attribute,r,level,sign (empty cells for undefined entries)."""
    lines = ["attribute,r,level,sign"]
    for e in report.entries:
        r_text = repr(e.r) if e.r is not None else ""
        lines.append(f"{e.attribute},{r_text},{e.level.value},{e.sign or ''}")
    sink.write(("\n".join(lines) + "\n").encode("utf-8"))
