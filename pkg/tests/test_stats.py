import io
import json

import numpy as np
import pytest

from bugdebt import (
    ConstantInputError,
    CorrelationLevel,
    InsufficientDataError,
    ProductKey,
    classify_level,
    correlation_report,
    pearson,
    report_to_json,
    write_report_csv,
)
from bugdebt.features import ProductAttributes
from helpers import pearson_oracle


class TestPearson:
    def test_matches_raw_sum_oracle(self):
        rng = np.random.default_rng(21)
        for _ in range(200):
            n = int(rng.integers(3, 40))
            x = rng.normal(scale=rng.uniform(0.1, 50), size=n)
            y = rng.normal(scale=rng.uniform(0.1, 50), size=n)
            assert pearson(x, y) == pytest.approx(pearson_oracle(x, y), abs=1e-10)

    def test_perfect_correlation_is_exactly_one(self):
        x = np.arange(10.0)
        assert pearson(x, 3 * x + 2) == 1.0
        assert pearson(x, -3 * x + 2) == -1.0

    def test_constant_vector_rejected(self):
        with pytest.raises(ConstantInputError):
            pearson([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])
        with pytest.raises(ConstantInputError):
            pearson([1.0, 2.0, 3.0], [5.0, 5.0, 5.0])

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError, match="length mismatch"):
            pearson([1.0, 2.0], [1.0, 2.0, 3.0])

    def test_too_short_rejected(self):
        with pytest.raises(ValueError, match="two elements"):
            pearson([1.0], [2.0])


class TestClassifyLevel:
    @pytest.mark.parametrize(
        "r,level,sign",
        [
            (0.0, CorrelationLevel.NONE, None),
            (0.1, CorrelationLevel.NONE, None),
            (-0.1, CorrelationLevel.NONE, None),
            (0.10000001, CorrelationLevel.WEAK, "positive"),
            (0.3, CorrelationLevel.WEAK, "positive"),
            (-0.3, CorrelationLevel.WEAK, "negative"),
            (0.30000001, CorrelationLevel.MODEST, "positive"),
            (0.5, CorrelationLevel.MODEST, "positive"),
            (0.50000001, CorrelationLevel.STRONG, "positive"),
            (0.804, CorrelationLevel.STRONG, "positive"),
            (1.0, CorrelationLevel.STRONG, "positive"),
            (-1.0, CorrelationLevel.STRONG, "negative"),
        ],
    )
    def test_band_boundaries(self, r, level, sign):
        assert classify_level(r) == (level, sign)

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError, match="out of range"):
            classify_level(1.5)

    def test_bands_are_exhaustive_and_disjoint(self):
        defined = {CorrelationLevel.NONE, CorrelationLevel.WEAK,
                   CorrelationLevel.MODEST, CorrelationLevel.STRONG}
        for r in np.linspace(-1, 1, 2001):
            level, sign = classify_level(float(r))
            assert level in defined
            assert (sign is None) == (level is CorrelationLevel.NONE)


def _row(i: int, tag_freq: float, avg: float) -> ProductAttributes:
    return ProductAttributes(
        key=ProductKey(f"p{i:02d}", "1"), n_bugs=100,
        tag_count=5, tag_freq=tag_freq, tag_time=2.0,
        reopen_count=3, reopen_freq=1.0, reopen_time=4.0,
        dup_count=2, dup_freq=2.0, dup_time=3.0, avg_fix_time=avg,
    )


class TestCorrelationReport:
    def test_planted_linear_relation_is_strong(self):
        rows = [_row(i, tag_freq=float(i), avg=3.0 * i + 1.0) for i in range(10)]
        report = correlation_report(rows)
        entry = report.entry("tag_freq")
        assert entry.level is CorrelationLevel.STRONG
        assert entry.r == pytest.approx(1.0)
        assert entry.sign == "positive"
        assert entry.sample_size == 10

    def test_constant_column_is_undefined_not_fatal(self):
        rows = [_row(i, tag_freq=float(i), avg=3.0 * i + 1.0) for i in range(10)]
        report = correlation_report(rows)
        entry = report.entry("reopen_freq")
        assert entry.level is CorrelationLevel.UNDEFINED
        assert entry.r is None and entry.sign is None

    def test_too_few_rows_rejected(self):
        rows = [_row(i, tag_freq=float(i), avg=float(i)) for i in range(2)]
        with pytest.raises(InsufficientDataError, match="at least 3"):
            correlation_report(rows)

    def test_json_and_csv_outputs(self):
        rows = [_row(i, tag_freq=float(i), avg=3.0 * i + 1.0) for i in range(5)]
        report = correlation_report(rows)
        payload = json.loads(report_to_json(report))
        assert [e["attribute"] for e in payload["correlations"]] == [
            "tag_count", "tag_freq", "tag_time", "reopen_count", "reopen_freq",
            "reopen_time", "dup_count", "dup_freq", "dup_time",
        ]
        buf = io.BytesIO()
        write_report_csv(report, buf)
        lines = buf.getvalue().decode().splitlines()
        assert lines[0] == "attribute,r,level,sign"
        assert len(lines) == 10
        undefined = [line for line in lines if "undefined" in line]
        assert all(line.split(",")[1] == "" for line in undefined)
