"""Bug-repository debt analytics: identification, attributes, correlation,
and fix-time prediction.

The package mines three kinds of debt-prone bugs out of a tracker snapshot
(tag bugs, reopened bugs, duplicate bugs), aggregates them into per-product
attributes, correlates the attributes with average fixing time, and trains
small regression models to predict fixing time for new products. A
deterministic synthetic-corpus generator with ground-truth labels supports
closed-loop testing at desk scale.
"""

from .errors import (
    ConstantInputError,
    DataError,
    DivergenceError,
    DuplicateBugIdError,
    DuplicateCycleError,
    EmptyProductError,
    FeatureTableError,
    FoldTrainingError,
    InsufficientDataError,
    ModelLoadError,
    ParseError,
    PreconditionError,
    SingularFitError,
)
from .features import (
    FEATURE_COLUMNS,
    FEATURE_CSV_HEADER,
    FeatureConfig,
    ProductAttributes,
    aggregate_product,
    aggregate_products,
    filter_products,
    fix_time_days,
    product_keys,
    summarize_repository,
    type_frequency,
)
from .identify import (
    DuplicateClusters,
    TagRuleSet,
    classify_debt,
    clusters_from_marks,
    detect_reopened,
    read_debt_report,
    resolve_duplicate_masters,
    scan_tags,
    write_debt_report,
)
from .ingest import (
    IngestConfig,
    IngestResult,
    SkippedLine,
    load_feature_table,
    load_snapshot,
    parse_bug_stream,
    parse_timestamp,
    read_feature_table,
    record_from_obj,
    record_to_obj,
    save_feature_table,
    save_snapshot,
    write_feature_table,
    write_snapshot,
)
from .learn import (
    Dataset,
    EvalMetrics,
    LinearModel,
    MlpConfig,
    MlpModel,
    ModelKind,
    TreeConfig,
    TreeModel,
    cross_validate,
    kfold_split,
    load_model,
    metrics_to_json,
    predict,
    rrse,
    save_model,
    train_linear,
    train_mlp,
    train_model_tree,
)
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
    validate_record,
)
from .stats import (
    CorrelationEntry,
    CorrelationLevel,
    CorrelationReport,
    classify_level,
    correlation_report,
    pearson,
    report_to_json,
    write_report_csv,
)
from .synthgen import GroundTruth, SynthSpec, generate, ground_truth_to_obj, write_ground_truth

__version__ = "0.1.0"

__all__ = [
    "ConstantInputError",
    "DataError",
    "DivergenceError",
    "DuplicateBugIdError",
    "DuplicateCycleError",
    "EmptyProductError",
    "FeatureTableError",
    "FoldTrainingError",
    "InsufficientDataError",
    "ModelLoadError",
    "ParseError",
    "PreconditionError",
    "SingularFitError",
    "FEATURE_COLUMNS",
    "FEATURE_CSV_HEADER",
    "FeatureConfig",
    "ProductAttributes",
    "aggregate_product",
    "aggregate_products",
    "filter_products",
    "fix_time_days",
    "product_keys",
    "summarize_repository",
    "type_frequency",
    "DuplicateClusters",
    "TagRuleSet",
    "classify_debt",
    "clusters_from_marks",
    "detect_reopened",
    "read_debt_report",
    "resolve_duplicate_masters",
    "scan_tags",
    "write_debt_report",
    "IngestConfig",
    "IngestResult",
    "SkippedLine",
    "load_feature_table",
    "load_snapshot",
    "parse_bug_stream",
    "parse_timestamp",
    "read_feature_table",
    "record_from_obj",
    "record_to_obj",
    "save_feature_table",
    "save_snapshot",
    "write_feature_table",
    "write_snapshot",
    "Dataset",
    "EvalMetrics",
    "LinearModel",
    "MlpConfig",
    "MlpModel",
    "ModelKind",
    "TreeConfig",
    "TreeModel",
    "cross_validate",
    "kfold_split",
    "load_model",
    "metrics_to_json",
    "predict",
    "rrse",
    "save_model",
    "train_linear",
    "train_mlp",
    "train_model_tree",
    "BugRecord",
    "Comment",
    "DebtMark",
    "DebtType",
    "ProductKey",
    "RepositorySnapshot",
    "Status",
    "StatusEvent",
    "TagHit",
    "validate_record",
    "CorrelationEntry",
    "CorrelationLevel",
    "CorrelationReport",
    "classify_level",
    "correlation_report",
    "pearson",
    "report_to_json",
    "write_report_csv",
    "GroundTruth",
    "SynthSpec",
    "generate",
    "ground_truth_to_obj",
    "write_ground_truth",
    "__version__",
]
