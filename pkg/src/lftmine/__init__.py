"""Data-mining design workflow for lattice-structure-filled thin-walled tubes.

The package covers the full loop: parametric geometry and mass, Latin
Hypercube sampling of the design box, a phenomenological crush surrogate,
crashworthiness indicators, three-objective grading, gain-ratio decision
trees with pessimistic pruning, and interval design rules with
sampling-based validation. See the README for the file formats and the
CLI in :mod:`lftmine.cli`.
"""

from ._version import __version__
from .crush import CrushTrace, SurrogateParams, hollow_trace, ingest_trace, simulate_crush, write_trace
from .doe import VARIABLE_ORDER, DesignSpace, VariableBounds, lhs_sample
from .dtree import (
    ATTRIBUTE_ORDER,
    Dataset,
    DecisionTree,
    PruneResult,
    TreeStats,
    branch_count,
    build_tree,
    format_tree,
    load_tree,
    mean_class_recall,
    predict,
    prune_tree,
    prune_with_ladder,
    save_tree,
    split_scores,
    tree_stats,
    tree_to_dot,
    upper_error_bound,
)
from .errors import (
    BoundsError,
    InfeasibleRuleError,
    LftError,
    RuleNotFoundError,
    SchemaError,
    TraceError,
)
from .geometry import (
    AL6063_T5,
    ALSI10MG,
    DESIGN_BOUNDS,
    DerivedGeometry,
    DesignPoint,
    MassBreakdown,
    MaterialSpec,
    TubeConstants,
    compute_mass,
    derive_geometry,
    tube_mass_kg,
)
from .labeling import (
    CLASS_ORDER,
    OBJECTIVES,
    label_all,
    label_efficiency,
    label_lightweight,
    label_metrics,
    label_total_energy,
)
from .metrics import CrashMetrics, compute_metrics
from .pipeline import (
    DesignRecord,
    HollowComparison,
    RunConfig,
    default_jobs,
    evaluate_design,
    hollow_baseline_sea,
    read_dataset_csv,
    run_hollow_report,
    run_pipeline,
    run_sweep,
    training_dataset,
    validation_report_csv,
    write_dataset_csv,
)
from .rules import (
    Interval,
    Rule,
    RuleValidation,
    extract_rules,
    format_rules,
    sample_in_rule,
    select_rule,
    validate_rule,
)

__all__ = [
    "__version__",
    "AL6063_T5",
    "ALSI10MG",
    "ATTRIBUTE_ORDER",
    "BoundsError",
    "CLASS_ORDER",
    "CrashMetrics",
    "CrushTrace",
    "DESIGN_BOUNDS",
    "Dataset",
    "DecisionTree",
    "DerivedGeometry",
    "DesignPoint",
    "DesignRecord",
    "DesignSpace",
    "HollowComparison",
    "InfeasibleRuleError",
    "Interval",
    "LftError",
    "MassBreakdown",
    "MaterialSpec",
    "OBJECTIVES",
    "PruneResult",
    "Rule",
    "RuleNotFoundError",
    "RuleValidation",
    "RunConfig",
    "SchemaError",
    "SurrogateParams",
    "TraceError",
    "TreeStats",
    "TubeConstants",
    "VARIABLE_ORDER",
    "VariableBounds",
    "branch_count",
    "build_tree",
    "compute_mass",
    "compute_metrics",
    "default_jobs",
    "derive_geometry",
    "evaluate_design",
    "extract_rules",
    "format_rules",
    "format_tree",
    "hollow_baseline_sea",
    "hollow_trace",
    "ingest_trace",
    "label_all",
    "label_efficiency",
    "label_lightweight",
    "label_metrics",
    "label_total_energy",
    "lhs_sample",
    "load_tree",
    "mean_class_recall",
    "predict",
    "prune_tree",
    "prune_with_ladder",
    "read_dataset_csv",
    "run_hollow_report",
    "run_pipeline",
    "run_sweep",
    "sample_in_rule",
    "save_tree",
    "select_rule",
    "simulate_crush",
    "split_scores",
    "training_dataset",
    "tree_stats",
    "tree_to_dot",
    "tube_mass_kg",
    "upper_error_bound",
    "validate_rule",
    "validation_report_csv",
    "write_dataset_csv",
    "write_trace",
]
