"""End-to-end orchestration: sample, evaluate, label, train, prune, rules.

The stages communicate through plain files in an output directory so each
can also run as a separate command:

    designs.csv      sampled design variables
    metrics.csv      designs + derived geometry + crash indicators
    dataset.csv      metrics.csv + the three grade columns
    tree_OBJ.json    unpruned tree (OBJ in eff/tea/light), plus .txt form
    pruned_OBJ.json  tree after the confidence ladder (.txt and .dot too)
    rules_OBJ.json   all leaf rules + one selected rule per class
    validation_OBJ.csv  sampled designs behind each selected rule
    scatter_OBJ.svg  mass vs SEA scatter, one series per grade
    rules.json       the three per-objective rule documents in one file
    manifest.json    config echo + artifact list, written atomically

All floats are written with repr so a rerun with the same seed produces
byte-identical files.
"""

from __future__ import annotations

import json
import math
import os
from collections.abc import Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._version import __version__
from .crush import CrushTrace, SurrogateParams, hollow_trace, simulate_crush, write_trace
from .doe import lhs_sample
from .dtree import (
    ATTRIBUTE_ORDER,
    PRUNE_CF_LADDER,
    RECALL_FLOOR,
    Dataset,
    DecisionTree,
    PruneResult,
    build_tree,
    format_tree,
    leaf_count,
    prune_with_ladder,
    save_tree,
    tree_depth,
    tree_to_dot,
)
from .errors import (
    BoundsError,
    InfeasibleRuleError,
    LftError,
    RuleNotFoundError,
    SchemaError,
)
from .geometry import (
    AL6063_T5,
    ALSI10MG,
    DESIGN_BOUNDS,
    INTEGER_VARIABLES,
    DesignPoint,
    MaterialSpec,
    TubeConstants,
    compute_mass,
    derive_geometry,
    tube_mass_kg,
)
from .labeling import CLASS_ORDER, OBJECTIVES, label_all, label_metrics
from .metrics import CrashMetrics, compute_metrics
from .rules import (
    Rule,
    RuleValidation,
    extract_rules,
    format_rules,
    rules_doc,
    save_rules,
    select_rule,
    validate_rule,
)
from .svgplot import Series, bar_svg, scatter_svg

MATERIALS = {m.name: m for m in (AL6063_T5, ALSI10MG)}

DATASET_HEADER = (
    "index,n,m,d_mm,t_mm,h_mm,omega_deg,l_mm,mass_kg,tea_kj,sea_kj_per_kg,"
    "pm_kn,pcf_kn,cfe_pct,label_eff,label_tea,label_light"
)
METRICS_HEADER = DATASET_HEADER.rsplit(",", 3)[0]
DESIGNS_HEADER = "index,n,m,d_mm,t_mm,h_mm"

# published hollow-tube SEA reference points, kJ/kg by wall thickness mm
HOLLOW_SEA_BASELINES = {0.8: 7.50, 1.1: 9.76, 1.4: 11.03, 1.7: 12.90, 2.0: 13.64}
HOLLOW_THICKNESS_GRID = (0.8, 1.1, 1.4, 1.7, 2.0)

# fixed reference design for one-variable sweeps
SWEEP_ANCHOR = {"n": 3, "m": 4, "d": 2.0, "t": 1.1, "h": 3.0}


def material_by_name(name: str) -> MaterialSpec:
    try:
        return MATERIALS[name]
    except KeyError:
        known = ", ".join(sorted(MATERIALS))
        raise SchemaError(f"unknown material {name!r}, known materials: {known}") from None


@dataclass(frozen=True)
class RunConfig:
    """Everything a run needs besides the output directory."""

    seed: int = 0
    k: int = 150
    min_leaf: int = 2
    peak_window: float = 0.2
    recall_floor: float = RECALL_FLOOR
    cf_ladder: tuple[float, ...] = PRUNE_CF_LADDER
    tube_material: str = "Al6063-T5"
    lattice_material: str = "AlSi10Mg"
    surrogate: SurrogateParams = field(default_factory=SurrogateParams)

    def __post_init__(self) -> None:
        if self.seed < 0:
            raise BoundsError(f"seed={self.seed} must be non-negative")
        if self.k < 1:
            raise BoundsError(f"sample count k={self.k} must be at least 1")
        if self.min_leaf < 1:
            raise BoundsError(f"min_leaf={self.min_leaf} must be at least 1")
        if not 0 < self.peak_window <= 1:
            raise BoundsError(f"peak_window={self.peak_window} must be in (0, 1]")
        if not 0 < self.recall_floor <= 1:
            raise BoundsError(f"recall_floor={self.recall_floor} must be in (0, 1]")
        if not self.cf_ladder or any(not 0 < cf < 1 for cf in self.cf_ladder):
            raise BoundsError("cf_ladder must be non-empty with entries in (0, 1)")
        material_by_name(self.tube_material)
        material_by_name(self.lattice_material)

    @property
    def tube(self) -> MaterialSpec:
        return material_by_name(self.tube_material)

    @property
    def lattice(self) -> MaterialSpec:
        return material_by_name(self.lattice_material)


def config_to_dict(cfg: RunConfig) -> dict:
    return {
        "seed": cfg.seed,
        "k": cfg.k,
        "min_leaf": cfg.min_leaf,
        "peak_window": cfg.peak_window,
        "recall_floor": cfg.recall_floor,
        "cf_ladder": list(cfg.cf_ladder),
        "tube_material": cfg.tube_material,
        "lattice_material": cfg.lattice_material,
        "surrogate": {
            "crush_fraction": cfg.surrogate.crush_fraction,
            "peak_factor": cfg.surrogate.peak_factor,
            "fold_amplitude": cfg.surrogate.fold_amplitude,
            "fold_count": cfg.surrogate.fold_count,
            "lattice_efficiency": cfg.surrogate.lattice_efficiency,
            "interaction_factor": cfg.surrogate.interaction_factor,
            "sample_step": cfg.surrogate.sample_step,
        },
    }


def config_from_dict(doc: dict) -> RunConfig:
    if not isinstance(doc, dict):
        raise SchemaError("config document must be a JSON object")
    defaults = config_to_dict(RunConfig())
    unknown = sorted(set(doc) - set(defaults))
    if unknown:
        raise SchemaError(f"unknown config keys: {', '.join(unknown)}")
    merged = {**defaults, **doc}
    sur_doc = merged["surrogate"]
    unknown = sorted(set(sur_doc) - set(defaults["surrogate"]))
    if unknown:
        raise SchemaError(f"unknown surrogate keys: {', '.join(unknown)}")
    sur = {**defaults["surrogate"], **sur_doc}
    try:
        return RunConfig(
            seed=int(merged["seed"]),
            k=int(merged["k"]),
            min_leaf=int(merged["min_leaf"]),
            peak_window=float(merged["peak_window"]),
            recall_floor=float(merged["recall_floor"]),
            cf_ladder=tuple(float(c) for c in merged["cf_ladder"]),
            tube_material=str(merged["tube_material"]),
            lattice_material=str(merged["lattice_material"]),
            surrogate=SurrogateParams(
                crush_fraction=float(sur["crush_fraction"]),
                peak_factor=float(sur["peak_factor"]),
                fold_amplitude=float(sur["fold_amplitude"]),
                fold_count=None if sur["fold_count"] is None else int(sur["fold_count"]),
                lattice_efficiency=float(sur["lattice_efficiency"]),
                interaction_factor=float(sur["interaction_factor"]),
                sample_step=float(sur["sample_step"]),
            ),
        )
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"malformed config value: {exc}") from exc


def load_config(path: str | Path) -> RunConfig:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except ValueError as exc:
        raise SchemaError(f"{path}: not valid JSON: {exc}") from exc
    return config_from_dict(doc)


@dataclass(frozen=True)
class DesignRecord:
    """One fully evaluated design; labels empty until graded."""

    index: int
    point: DesignPoint
    omega_deg: float
    l_mm: float
    metrics: CrashMetrics
    labels: dict[str, str]

    def attribute_row(self) -> tuple[float, ...]:
        p = self.point
        values = {"d": p.d, "n": float(p.n), "m": float(p.m), "t": p.t, "h": p.h}
        return tuple(values[a] for a in ATTRIBUTE_ORDER)


def evaluate_design(
    dp: DesignPoint,
    cfg: RunConfig = RunConfig(),
    c: TubeConstants = TubeConstants(),
    trace: CrushTrace | None = None,
) -> tuple[float, float, CrushTrace, CrashMetrics]:
    """Geometry, mass, trace, and indicators for one design.

    Returns (omega_deg, l_mm, trace, metrics). A supplied trace (from an
    external curve) replaces the surrogate simulation.
    """
    g = derive_geometry(dp, c)
    mass = compute_mass(dp, g, c, cfg.tube, cfg.lattice)
    if trace is None:
        trace = simulate_crush(dp, g, cfg.tube, cfg.lattice, cfg.surrogate, c)
    m = compute_metrics(trace, mass.total_mass, cfg.peak_window)
    return math.degrees(g.omega), g.l, trace, m


def record_for(
    index: int,
    dp: DesignPoint,
    cfg: RunConfig,
    trace: CrushTrace | None = None,
    trace_path: str | Path | None = None,
) -> DesignRecord:
    omega_deg, l_mm, tr, m = evaluate_design(dp, cfg, trace=trace)
    if trace_path is not None:
        write_trace(tr, trace_path)
    return DesignRecord(
        index=index, point=dp, omega_deg=omega_deg, l_mm=l_mm, metrics=m, labels=label_all(m)
    )


def default_jobs() -> int:
    """Worker count when none is requested: the available cores."""
    return os.cpu_count() or 1


def evaluate_many(
    points: Sequence[DesignPoint],
    cfg: RunConfig,
    jobs: int | None = None,
    traces: Sequence[CrushTrace] | None = None,
    trace_dir: str | Path | None = None,
) -> list[DesignRecord]:
    """Evaluate designs in input order, optionally dumping each trace.

    Traces land in trace_dir as design_<index>.csv. A failure names the
    design it happened on.
    """
    if jobs is None:
        jobs = default_jobs()
    if jobs < 1:
        raise BoundsError(f"jobs={jobs} must be at least 1")
    if traces is not None and len(traces) != len(points):
        raise SchemaError(f"got {len(traces)} traces for {len(points)} designs")
    if trace_dir is not None:
        trace_dir = Path(trace_dir)
        trace_dir.mkdir(parents=True, exist_ok=True)

    def one(i: int) -> DesignRecord:
        path = None if trace_dir is None else trace_dir / f"design_{i}.csv"
        try:
            return record_for(i, points[i], cfg, None if traces is None else traces[i], path)
        except LftError as exc:
            raise type(exc)(f"evaluate: design {i}: {exc}") from exc

    if jobs == 1:
        return [one(i) for i in range(len(points))]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(one, range(len(points))))


def write_designs_csv(points: Sequence[DesignPoint], path: str | Path) -> None:
    lines = [DESIGNS_HEADER]
    for i, p in enumerate(points):
        lines.append(f"{i},{p.n},{p.m},{p.d!r},{p.t!r},{p.h!r}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_designs_csv(path: str | Path) -> list[DesignPoint]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != DESIGNS_HEADER:
        raise SchemaError(f"{path}: expected header '{DESIGNS_HEADER}'")
    points = []
    for row, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 6:
            raise SchemaError(f"{path}: row {row}: expected 6 columns, got {len(parts)}")
        try:
            points.append(
                DesignPoint(
                    n=int(parts[1]),
                    m=int(parts[2]),
                    d=float(parts[3]),
                    t=float(parts[4]),
                    h=float(parts[5]),
                )
            )
        except ValueError as exc:
            raise SchemaError(f"{path}: row {row}: {exc}") from exc
    return points


def _record_line(r: DesignRecord, labeled: bool) -> str:
    p, m = r.point, r.metrics
    cells = (
        f"{r.index},{p.n},{p.m},{p.d!r},{p.t!r},{p.h!r},{r.omega_deg!r},{r.l_mm!r},"
        f"{m.mass_kg!r},{m.tea_kj!r},{m.sea_kj_per_kg!r},{m.pm_kn!r},{m.pcf_kn!r},{m.cfe_pct!r}"
    )
    if labeled:
        cells += f",{r.labels['eff']},{r.labels['tea']},{r.labels['light']}"
    return cells


def write_dataset_csv(records: Sequence[DesignRecord], path: str | Path, labeled: bool = True):
    header = DATASET_HEADER if labeled else METRICS_HEADER
    lines = [header]
    lines.extend(_record_line(r, labeled) for r in records)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_dataset_csv(path: str | Path) -> list[DesignRecord]:
    """Read a metrics or dataset table; grade columns are optional."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] not in (DATASET_HEADER, METRICS_HEADER):
        raise SchemaError(f"{path}: unrecognized header")
    labeled = lines[0] == DATASET_HEADER
    width = 17 if labeled else 14
    records = []
    for row, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != width:
            raise SchemaError(f"{path}: row {row}: expected {width} columns, got {len(parts)}")
        try:
            point = DesignPoint(
                n=int(parts[1]),
                m=int(parts[2]),
                d=float(parts[3]),
                t=float(parts[4]),
                h=float(parts[5]),
            )
            metrics = CrashMetrics(
                mass_kg=float(parts[8]),
                tea_kj=float(parts[9]),
                sea_kj_per_kg=float(parts[10]),
                pm_kn=float(parts[11]),
                pcf_kn=float(parts[12]),
                cfe_pct=float(parts[13]),
            )
            labels = (
                {"eff": parts[14], "tea": parts[15], "light": parts[16]} if labeled else {}
            )
            records.append(
                DesignRecord(
                    index=int(parts[0]),
                    point=point,
                    omega_deg=float(parts[6]),
                    l_mm=float(parts[7]),
                    metrics=metrics,
                    labels=labels,
                )
            )
        except ValueError as exc:
            raise SchemaError(f"{path}: row {row}: {exc}") from exc
    return records


def relabel(records: Sequence[DesignRecord]) -> list[DesignRecord]:
    """Fill the grade columns from the stored indicator values."""
    return [
        DesignRecord(
            index=r.index,
            point=r.point,
            omega_deg=r.omega_deg,
            l_mm=r.l_mm,
            metrics=r.metrics,
            labels=label_all(r.metrics),
        )
        for r in records
    ]


def training_dataset(records: Sequence[DesignRecord], objective: str) -> Dataset:
    """Attribute table (d, n, m, t, h) with one objective's grades."""
    if objective not in OBJECTIVES:
        raise SchemaError(f"unknown objective {objective!r}, expected one of {OBJECTIVES}")
    missing = [r.index for r in records if objective not in r.labels]
    if missing:
        raise SchemaError(f"records not graded yet (e.g. index {missing[0]}); run labeling first")
    return Dataset(
        attributes=ATTRIBUTE_ORDER,
        rows=tuple(r.attribute_row() for r in records),
        labels=tuple(r.labels[objective] for r in records),
    )


def write_json_atomic(doc: dict, path: str | Path) -> None:
    """Write JSON via a sibling temp file and atomic rename."""
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    os.replace(tmp, path)


def class_counts(records: Sequence[DesignRecord], objective: str) -> dict[str, int]:
    counts = {c: 0 for c in CLASS_ORDER}
    for r in records:
        counts[r.labels[objective]] += 1
    return counts


def _validation_seed(seed: int, objective: str, label: str) -> int:
    # arbitrary fixed offsets so each rule gets its own stream
    return seed + 7919 * (OBJECTIVES.index(objective) * len(CLASS_ORDER) + CLASS_ORDER.index(label) + 1)


@dataclass(frozen=True)
class ObjectiveArtifacts:
    objective: str
    tree: DecisionTree
    pruned: PruneResult
    rules: list[Rule]
    selected: dict[str, Rule]
    validations: dict[str, RuleValidation]
    average_fidelity: float | None

    @property
    def fidelity(self) -> dict[str, float]:
        return {label: v.fidelity_pct for label, v in self.validations.items()}


def analyze_objective(
    records: Sequence[DesignRecord],
    objective: str,
    cfg: RunConfig,
    validation_k: int = 5,
) -> ObjectiveArtifacts:
    """Train, prune, extract and select rules, validate them by sampling."""
    data = training_dataset(records, objective)
    tree = build_tree(data, min_leaf=cfg.min_leaf)
    pruned = prune_with_ladder(tree, data, cfg.cf_ladder, cfg.recall_floor)
    rules = extract_rules(pruned.tree)
    selected: dict[str, Rule] = {}
    for label in CLASS_ORDER:
        try:
            selected[label] = select_rule(rules, label, pruned.tree.attributes)
        except RuleNotFoundError:
            continue
    validations: dict[str, RuleValidation] = {}
    for label, rule in selected.items():
        try:
            validations[label] = validate_rule(
                rule,
                labeler=lambda dp: label_metrics(record_for(0, dp, cfg).metrics, objective),
                k=validation_k,
                seed=_validation_seed(cfg.seed, objective, label),
            )
        except InfeasibleRuleError:
            continue
    average = (
        math.fsum(v.fidelity_pct for v in validations.values()) / len(validations)
        if validations
        else None
    )
    return ObjectiveArtifacts(
        objective=objective,
        tree=tree,
        pruned=pruned,
        rules=rules,
        selected=selected,
        validations=validations,
        average_fidelity=average,
    )


# second report column per objective, next to SEA
VALIDATION_SECOND = {"eff": "cfe_pct", "tea": "tea_kj", "light": "mass_kg"}


def validation_report_csv(
    objective: str, validations: Mapping[str, RuleValidation], cfg: RunConfig
) -> str:
    """Report table for the sampled rule checks: one row per design.

    Columns follow the printed validation tables: variables, SEA, the
    objective's second indicator, and the observed grade. The rule column
    is quoted because rule text contains commas.
    """
    second = VALIDATION_SECOND[objective]
    lines = [f"rule,no,d_mm,n,m,h_mm,t_mm,sea_kj_per_kg,{second},label"]
    no = 0
    for label in CLASS_ORDER:
        check = validations.get(label)
        if check is None:
            continue
        desc = check.rule.describe()
        for dp, observed in zip(check.designs, check.labels):
            no += 1
            met = record_for(0, dp, cfg).metrics
            lines.append(
                f'"{desc}",{no},{dp.d!r},{dp.n},{dp.m},{dp.h!r},{dp.t!r},'
                f"{met.sea_kj_per_kg!r},{getattr(met, second)!r},{observed}"
            )
    return "\n".join(lines) + "\n"


def _scatter_doc(records: Sequence[DesignRecord], objective: str) -> str:
    series = []
    for label in CLASS_ORDER:
        pts = tuple(
            (r.metrics.mass_kg, r.metrics.sea_kj_per_kg)
            for r in records
            if r.labels[objective] == label
        )
        if pts:
            series.append(Series(name=label, points=pts))
    return scatter_svg(
        series,
        title=f"mass vs SEA by grade ({objective})",
        x_label="mass, kg",
        y_label="SEA, kJ/kg",
    )


@dataclass(frozen=True)
class PipelineResult:
    out_dir: Path
    records: list[DesignRecord]
    artifacts: dict[str, ObjectiveArtifacts]
    files: list[str]


def run_pipeline(
    cfg: RunConfig,
    out_dir: str | Path,
    objectives: Sequence[str] = OBJECTIVES,
    jobs: int | None = None,
    validation_k: int = 5,
    trace_dir: str | Path | None = None,
) -> PipelineResult:
    """Full run: sample, evaluate, grade, and analyze every objective."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    points = lhs_sample(k=cfg.k, seed=cfg.seed)
    records = evaluate_many(points, cfg, jobs=jobs, trace_dir=trace_dir)
    files: list[str] = []

    def emit(name: str, text: str) -> None:
        (out / name).write_text(text, encoding="utf-8")
        files.append(name)

    write_designs_csv(points, out / "designs.csv")
    files.append("designs.csv")
    write_dataset_csv(records, out / "dataset.csv", labeled=True)
    files.append("dataset.csv")

    arts: dict[str, ObjectiveArtifacts] = {}
    summary: list[str] = [f"designs evaluated: {len(records)}"]
    for objective in objectives:
        art = analyze_objective(records, objective, cfg, validation_k)
        arts[objective] = art
        save_tree(art.tree, out / f"tree_{objective}.json")
        files.append(f"tree_{objective}.json")
        emit(f"tree_{objective}.txt", format_tree(art.tree) + "\n")
        save_tree(art.pruned.tree, out / f"pruned_{objective}.json")
        files.append(f"pruned_{objective}.json")
        emit(f"pruned_{objective}.txt", format_tree(art.pruned.tree) + "\n")
        emit(f"pruned_{objective}.dot", tree_to_dot(art.pruned.tree))
        save_rules(art.rules, art.selected, out / f"rules_{objective}.json")
        files.append(f"rules_{objective}.json")
        emit(f"rules_{objective}.txt", format_rules(art.rules) + "\n")
        emit(f"validation_{objective}.csv", validation_report_csv(objective, art.validations, cfg))
        emit(f"scatter_{objective}.svg", _scatter_doc(records, objective))

        counts = class_counts(records, objective)
        summary.append("")
        summary.append(f"objective {objective}: " + " ".join(f"{c}={counts[c]}" for c in CLASS_ORDER))
        summary.append(
            f"  tree: {leaf_count(art.tree.root)} leaves, depth {tree_depth(art.tree.root)}; "
            f"pruned: {leaf_count(art.pruned.tree.root)} leaves, cf={art.pruned.cf}, "
            f"recall={art.pruned.recall:.3f}"
        )
        for label in CLASS_ORDER:
            if label in art.selected:
                summary.append(f"  rule {label}: {art.selected[label].describe()}")
                if label in art.fidelity:
                    summary.append(f"    fidelity: {art.fidelity[label]:.1f}%")
        if art.average_fidelity is not None:
            summary.append(f"  average fidelity: {art.average_fidelity:.1f}%")
    emit("summary.txt", "\n".join(summary) + "\n")

    write_json_atomic(
        {obj: rules_doc(arts[obj].rules, arts[obj].selected) for obj in objectives},
        out / "rules.json",
    )
    files.append("rules.json")

    manifest = {
        "package": "lftmine",
        "version": __version__,
        "config": config_to_dict(cfg),
        "objectives": list(objectives),
        "rows": {
            "designs": len(points),
            "evaluated": len(records),
            "labeled": len(records),
            "validated": {
                obj: sum(len(v.designs) for v in arts[obj].validations.values())
                for obj in objectives
            },
        },
        "class_counts": {obj: class_counts(records, obj) for obj in objectives},
        "pruning": {
            obj: {"cf": arts[obj].pruned.cf, "recall": arts[obj].pruned.recall}
            for obj in objectives
        },
        "fidelity_pct": {
            obj: {**arts[obj].fidelity, "average": arts[obj].average_fidelity}
            for obj in objectives
        },
        "artifacts": sorted(files),
    }
    write_json_atomic(manifest, out / "manifest.json")
    files.append("manifest.json")
    return PipelineResult(out_dir=out, records=records, artifacts=arts, files=files)


def hollow_baseline_sea(t: float) -> float:
    """Published hollow-tube SEA at wall thickness t, linear between knots."""
    knots = sorted(HOLLOW_SEA_BASELINES)
    if not knots[0] <= t <= knots[-1]:
        raise BoundsError(
            f"thickness t={t} outside baseline range [{knots[0]}, {knots[-1]}]"
        )
    for t0, t1 in zip(knots, knots[1:]):
        if t <= t1:
            if t <= t0:
                return HOLLOW_SEA_BASELINES[t0]
            w = (t - t0) / (t1 - t0)
            return (1 - w) * HOLLOW_SEA_BASELINES[t0] + w * HOLLOW_SEA_BASELINES[t1]
    return HOLLOW_SEA_BASELINES[knots[-1]]


def hollow_row(t: float, cfg: RunConfig = RunConfig(), c: TubeConstants = TubeConstants()):
    """Indicators for the hollow tube at one wall thickness."""
    trace = hollow_trace(t, cfg.tube, cfg.surrogate, c)
    return compute_metrics(trace, tube_mass_kg(t, cfg.tube, c), cfg.peak_window)


@dataclass(frozen=True)
class HollowComparison:
    """Dataset-level SEA comparison against same-thickness hollow tubes."""

    baseline: str
    total: int
    above: int
    above_pct: float
    above_20: int
    above_50: int
    below: int
    max_increase_index: int
    max_increase_pct: float
    max_decrease_index: int
    max_decrease_pct: float

    def to_dict(self) -> dict:
        return {
            "baseline": self.baseline,
            "total": self.total,
            "above": self.above,
            "above_pct": self.above_pct,
            "above_20": self.above_20,
            "above_50": self.above_50,
            "below": self.below,
            "max_increase": {"index": self.max_increase_index, "pct": self.max_increase_pct},
            "max_decrease": {"index": self.max_decrease_index, "pct": self.max_decrease_pct},
        }


def run_hollow_report(
    cfg: RunConfig,
    out_dir: str | Path,
    records: Sequence[DesignRecord],
    paper_baselines: bool = False,
    thicknesses: Sequence[float] = HOLLOW_THICKNESS_GRID,
) -> HollowComparison:
    """Compare every evaluated design against its hollow-tube baseline.

    The baseline SEA at a design's wall thickness comes from the crush
    model by default, or from the published reference points (linearly
    interpolated) when paper_baselines is set. Writes hollow.csv with one
    row per design, hollow_grid.csv with the baseline curve on the
    standard thickness grid, hollow_summary.json with the counts, and
    hollow.svg charting them.
    """
    if not records:
        raise SchemaError("hollow report needs at least one evaluated design")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    def baseline_for(t: float) -> float:
        if paper_baselines:
            return hollow_baseline_sea(t)
        return hollow_row(t, cfg).sea_kj_per_kg

    deltas: list[float] = []
    lines = ["index,t_mm,sea_kj_per_kg,baseline_sea_kj_per_kg,delta_pct"]
    for r in records:
        base = baseline_for(r.point.t)
        delta = 100.0 * (r.metrics.sea_kj_per_kg - base) / base
        deltas.append(delta)
        lines.append(
            f"{r.index},{r.point.t!r},{r.metrics.sea_kj_per_kg!r},{base!r},{delta!r}"
        )
    (out / "hollow.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")

    grid_lines = ["t_mm,surrogate_sea_kj_per_kg,reference_sea_kj_per_kg"]
    for t in thicknesses:
        grid_lines.append(
            f"{float(t)!r},{hollow_row(t, cfg).sea_kj_per_kg!r},{hollow_baseline_sea(t)!r}"
        )
    (out / "hollow_grid.csv").write_text("\n".join(grid_lines) + "\n", encoding="utf-8")

    best = max(range(len(deltas)), key=lambda i: deltas[i])
    worst = min(range(len(deltas)), key=lambda i: deltas[i])
    above = sum(1 for x in deltas if x > 0)
    report = HollowComparison(
        baseline="reference" if paper_baselines else "surrogate",
        total=len(deltas),
        above=above,
        above_pct=100.0 * above / len(deltas),
        above_20=sum(1 for x in deltas if x > 20.0),
        above_50=sum(1 for x in deltas if x > 50.0),
        below=sum(1 for x in deltas if x <= 0),
        max_increase_index=records[best].index,
        max_increase_pct=deltas[best],
        max_decrease_index=records[worst].index,
        max_decrease_pct=deltas[worst],
    )
    write_json_atomic(report.to_dict(), out / "hollow_summary.json")

    svg = bar_svg(
        categories=("above baseline", "above +20%", "above +50%", "at or below"),
        values=(report.above, report.above_20, report.above_50, report.below),
        title="designs vs hollow-tube SEA baseline",
        y_label="designs",
    )
    (out / "hollow.svg").write_text(svg, encoding="utf-8")
    return report


def sweep_values(variable: str, points: int = 9) -> list[float]:
    if variable not in DESIGN_BOUNDS:
        raise SchemaError(f"unknown design variable {variable!r}")
    lo, hi = DESIGN_BOUNDS[variable]
    if variable in INTEGER_VARIABLES:
        return [float(v) for v in range(int(lo), int(hi) + 1)]
    return [float(v) for v in np.linspace(lo, hi, points)]


def run_sweep(
    variable: str,
    cfg: RunConfig,
    out_dir: str | Path,
    values: Sequence[float] | None = None,
    anchor: Mapping[str, float] | None = None,
) -> list[DesignRecord]:
    """One-variable sweep with the other four variables held fixed.

    The fixed point defaults to SWEEP_ANCHOR; overrides outside the
    design box raise the usual bounds error. Writes a two-column CSV
    (variable value, SEA) and a connected scatter chart.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if values is None:
        values = sweep_values(variable)
    if not values:
        raise BoundsError("sweep needs at least one grid value")
    base = dict(SWEEP_ANCHOR)
    if anchor:
        unknown = sorted(set(anchor) - set(base))
        if unknown:
            raise SchemaError(f"unknown anchor variables: {', '.join(unknown)}")
        base.update(anchor)
    records = []
    for i, v in enumerate(values):
        spec = dict(base)
        spec[variable] = int(v) if variable in INTEGER_VARIABLES else float(v)
        dp = DesignPoint(
            n=int(spec["n"]), m=int(spec["m"]), d=float(spec["d"]), t=float(spec["t"]), h=float(spec["h"])
        )
        records.append(record_for(i, dp, cfg))
    lines = [f"{variable},sea_kj_per_kg"]
    for v, r in zip(values, records):
        cell = str(int(v)) if variable in INTEGER_VARIABLES else repr(float(v))
        lines.append(f"{cell},{r.metrics.sea_kj_per_kg!r}")
    (out / f"sweep_{variable}.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    pts = tuple(
        (float(values[i]), records[i].metrics.sea_kj_per_kg) for i in range(len(records))
    )
    svg = scatter_svg(
        [Series(name="SEA", points=pts, connect=True)],
        title=f"SEA vs {variable} at the reference design",
        x_label=variable,
        y_label="SEA, kJ/kg",
    )
    (out / f"sweep_{variable}.svg").write_text(svg, encoding="utf-8")
    return records
