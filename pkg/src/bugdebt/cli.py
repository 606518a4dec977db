"""Command-line pipeline over the library: every stage reads files and writes
files, so runs are replayable and independently testable.

Exit codes are a stable contract: 0 success, 1 usage, 2 data error,
3 precondition error, 4 I/O error. Diagnostics go to stderr only; stdout and
output files stay machine-parseable.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .errors import DataError, PreconditionError
from .features import FeatureConfig, aggregate_products, filter_products, summarize_repository
from .identify import TagRuleSet, classify_debt, clusters_from_marks, read_debt_report, write_debt_report
from .ingest import (
    IngestConfig,
    load_feature_table,
    load_snapshot,
    save_feature_table,
    save_snapshot,
)
from .learn import (
    Dataset,
    MlpConfig,
    ModelKind,
    cross_validate,
    load_model,
    metrics_to_json,
    predict,
    save_model,
    train_linear,
    train_mlp,
    train_model_tree,
)
from .stats import correlation_report, report_to_json, write_report_csv
from .synthgen import SynthSpec, generate, write_ground_truth


def _info(message: str) -> None:
    print(message, file=sys.stderr)


def _parse_id_list(text: str) -> frozenset[int]:
    if not text:
        return frozenset()
    try:
        return frozenset(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {text!r}") from None


def _rules_from_args(args: argparse.Namespace) -> TagRuleSet:
    keywords = tuple(k for k in args.tags.split(",") if k)
    return TagRuleSet(
        keywords=keywords,
        case_sensitive=not args.case_insensitive,
        allowlist=_parse_id_list(args.allowlist),
        denylist=_parse_id_list(args.denylist),
    )


def cmd_ingest(args: argparse.Namespace) -> int:
    config = IngestConfig(on_malformed=args.on_malformed)
    result = load_snapshot(args.in_path, config)
    count = save_snapshot(result.snapshot, args.out)
    _info(f"ingested {count} bugs ({len(result.skipped)} lines skipped)")
    for skipped in result.skipped:
        _info(f"  skipped line {skipped.line_number}: {skipped.reason}")
    return 0


def cmd_identify(args: argparse.Namespace) -> int:
    result = load_snapshot(args.in_path)
    marks = classify_debt(result.snapshot, _rules_from_args(args))
    with open(args.out, "wb") as sink:
        count = write_debt_report(marks, sink)
    flagged = sum(1 for mark in marks.values() if mark.types)
    _info(f"marked {count} bugs ({flagged} debt-prone)")
    return 0


def cmd_features(args: argparse.Namespace) -> int:
    result = load_snapshot(args.in_path)
    with open(args.debt, "rb") as stream:
        marks = read_debt_report(stream)
    missing = [bug_id for bug_id in result.snapshot.bugs if bug_id not in marks]
    if missing:
        raise DataError(
            f"debt report is missing {len(missing)} bugs (first: {missing[0]})"
        )
    config = FeatureConfig(include_master_in_freq=args.include_master_in_freq)
    rows = aggregate_products(
        result.snapshot, marks, clusters_from_marks(marks), config
    )
    kept = filter_products(rows, args.min_bugs)
    count = save_feature_table(kept, args.out)
    _info(f"wrote {count} product rows ({len(rows) - count} below {args.min_bugs} bugs)")
    return 0


def cmd_correlate(args: argparse.Namespace) -> int:
    rows = load_feature_table(args.in_path)
    report = correlation_report(rows)
    Path(args.out).write_text(report_to_json(report), encoding="utf-8")
    if args.csv_out:
        with open(args.csv_out, "wb") as sink:
            write_report_csv(report, sink)
    _info(f"correlated {len(report.entries)} attributes over {len(rows)} products")
    return 0


def cmd_train(args: argparse.Namespace) -> int:
    rows = load_feature_table(args.in_path)
    data = Dataset.from_rows(rows)
    kind = ModelKind(args.model)
    metrics = cross_validate(data, kind, k=args.folds, seed=args.seed)
    Path(args.out).write_text(metrics_to_json(metrics), encoding="utf-8")
    if args.model_file:
        if kind is ModelKind.LINEAR:
            model = train_linear(data)
        elif kind is ModelKind.MODEL_TREE:
            model = train_model_tree(data)
        else:
            model = train_mlp(data, MlpConfig(seed=args.seed))
        save_model(model, args.model_file)
    _info(
        f"{metrics.model}: r={metrics.correlation_coefficient:.4f} "
        f"rrse={metrics.rrse_percent:.2f}% ({args.folds}-fold, seed {args.seed})"
    )
    return 0


def cmd_predict(args: argparse.Namespace) -> int:
    model = load_model(args.model_file)
    rows = load_feature_table(args.in_path)
    lines = ["product,version,predicted_fix_time"]
    for row in rows:
        value = float(predict(model, np.asarray(row.attribute_values(), dtype=float)))
        lines.append(f"{row.key.product_name},{row.key.version},{value!r}")
    Path(args.out).write_text("\n".join(lines) + "\n", encoding="utf-8")
    _info(f"predicted {len(rows)} products")
    return 0


def cmd_synth(args: argparse.Namespace) -> int:
    spec = SynthSpec(
        seed=args.seed,
        n_products=args.products,
        bugs_per_product=(args.bugs_min, args.bugs_max),
        tag_rate=args.tag_rate,
        reopen_rate=args.reopen_rate,
        dup_rate=args.dup_rate,
        cluster_size_range=(args.cluster_min, args.cluster_max),
        base_fix_days=args.base_days,
        tag_coefficient=args.tag_coef,
        reopen_coefficient=args.reopen_coef,
        dup_coefficient=args.dup_coef,
        noise_sigma=args.noise_sigma,
        unassigned_rate=args.unassigned_rate,
    )
    snapshot, truth = generate(spec)
    count = save_snapshot(snapshot, args.out)
    truth_path = args.truth_out or str(Path(args.out).parent / "ground_truth.json")
    with open(truth_path, "wb") as sink:
        write_ground_truth(truth, sink)
    _info(f"generated {count} bugs across {spec.n_products} products (seed {spec.seed})")
    return 0


def cmd_summary(args: argparse.Namespace) -> int:
    rows = load_feature_table(args.in_path)
    summary = summarize_repository(rows)
    Path(args.out).write_text(
        json.dumps(summary, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )
    _info(f"summarized {len(rows)} products")
    return 0


def _add_io(parser: argparse.ArgumentParser, out_help: str) -> None:
    parser.add_argument("--in", dest="in_path", required=True, help="input file path")
    parser.add_argument("--out", required=True, help=out_help)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bugdebt",
        description="Identify debt-prone bugs, aggregate product attributes, and predict fixing time.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse and canonicalize a bug JSONL file")
    _add_io(p, "canonical snapshot path")
    p.add_argument("--on-malformed", choices=("skip", "abort"), default="abort")
    p.set_defaults(handler=cmd_ingest)

    p = sub.add_parser("identify", help="classify bugs into debt types")
    _add_io(p, "debt report path (JSONL)")
    p.add_argument("--tags", default="TODO,FIXME,XXX", help="comma-separated tag keywords")
    p.add_argument("--case-insensitive", action="store_true")
    p.add_argument("--allowlist", default="", help="comma-separated bug ids forced to tag bugs")
    p.add_argument("--denylist", default="", help="comma-separated bug ids never tag bugs")
    p.set_defaults(handler=cmd_identify)

    p = sub.add_parser("features", help="aggregate per-product attributes")
    _add_io(p, "feature CSV path")
    p.add_argument("--debt", required=True, help="debt report from the identify stage")
    p.add_argument("--min-bugs", type=int, default=100, help="drop products below this size")
    p.add_argument("--include-master-in-freq", action="store_true")
    p.set_defaults(handler=cmd_features)

    p = sub.add_parser("correlate", help="correlate attributes with average fix time")
    _add_io(p, "correlation report path (JSON)")
    p.add_argument("--csv-out", default="", help="also write a plot-ready CSV here")
    p.set_defaults(handler=cmd_correlate)

    p = sub.add_parser("train", help="cross-validate and fit a predictor")
    _add_io(p, "metrics JSON path")
    p.add_argument("--model", choices=tuple(k.value for k in ModelKind), default="linear")
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--model-file", default="", help="also fit on all rows and save the model here")
    p.set_defaults(handler=cmd_train)

    p = sub.add_parser("predict", help="predict average fix time for new products")
    _add_io(p, "predictions CSV path")
    p.add_argument("--model-file", required=True, help="model saved by the train stage")
    p.set_defaults(handler=cmd_predict)

    p = sub.add_parser("synth", help="generate a synthetic corpus with ground truth")
    p.add_argument("--out", required=True, help="bug JSONL path")
    p.add_argument("--truth-out", default="", help="ground truth path (default: ground_truth.json beside --out)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--products", type=int, default=10)
    p.add_argument("--bugs-min", type=int, default=20)
    p.add_argument("--bugs-max", type=int, default=60)
    p.add_argument("--tag-rate", type=float, default=0.2)
    p.add_argument("--reopen-rate", type=float, default=0.15)
    p.add_argument("--dup-rate", type=float, default=0.08)
    p.add_argument("--cluster-min", type=int, default=2)
    p.add_argument("--cluster-max", type=int, default=5)
    p.add_argument("--base-days", type=int, default=10)
    p.add_argument("--tag-coef", type=int, default=3)
    p.add_argument("--reopen-coef", type=int, default=5)
    p.add_argument("--dup-coef", type=int, default=2)
    p.add_argument("--noise-sigma", type=float, default=0.0)
    p.add_argument("--unassigned-rate", type=float, default=0.0)
    p.set_defaults(handler=cmd_synth)

    p = sub.add_parser("summary", help="size bands, per-type totals, and debt ratios")
    _add_io(p, "summary JSON path")
    p.set_defaults(handler=cmd_summary)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.handler(args)
    except DataError as exc:
        _info(f"error: {exc}")
        return 2
    except PreconditionError as exc:
        _info(f"error: {exc}")
        return 3
    except ValueError as exc:
        _info(f"usage error: {exc}")
        return 1
    except OSError as exc:
        _info(f"i/o error: {exc}")
        return 4


def main() -> None:
    sys.exit(run())
