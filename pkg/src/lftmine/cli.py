"""Command-line interface.

Commands mirror the pipeline stages and communicate through files in the
output directory, so the full flow can run as one ``pipeline`` call or be
replayed stage by stage:

    lftmine sample   --out-dir out --k 150 --seed 0
    lftmine evaluate --out-dir out
    lftmine label    --out-dir out
    lftmine train    --out-dir out --objective eff
    lftmine prune    --out-dir out --objective eff [--cf 0.25]
    lftmine rules    --out-dir out --objective eff
    lftmine validate --out-dir out --objective eff
    lftmine pipeline --out-dir out
    lftmine sweep d  --out-dir out
    lftmine hollow-report --out-dir out [--paper-baselines]
    lftmine config

``--config`` points at a JSON file (template from ``lftmine config``);
``--seed`` and ``--k`` override the file. ``--trace-dir`` makes evaluate
and pipeline dump one force-displacement curve per design as
``design_<index>.csv``.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import replace
from pathlib import Path

from .doe import lhs_sample
from .dtree import (
    build_tree,
    format_tree,
    leaf_count,
    load_tree,
    mean_class_recall,
    prune_tree,
    prune_with_ladder,
    save_tree,
)
from .errors import InfeasibleRuleError, LftError, RuleNotFoundError
from .labeling import CLASS_ORDER, OBJECTIVES, label_metrics
from .pipeline import (
    RunConfig,
    _validation_seed,
    class_counts,
    config_to_dict,
    default_jobs,
    evaluate_many,
    load_config,
    read_dataset_csv,
    read_designs_csv,
    record_for,
    relabel,
    run_hollow_report,
    run_pipeline,
    run_sweep,
    training_dataset,
    validation_report_csv,
    write_dataset_csv,
    write_designs_csv,
)
from .rules import (
    extract_rules,
    format_rules,
    load_rules,
    save_rules,
    select_rule,
    validate_rule,
)


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    cfg = load_config(args.config) if getattr(args, "config", None) else RunConfig()
    overrides = {}
    if getattr(args, "seed", None) is not None:
        overrides["seed"] = args.seed
    if getattr(args, "k", None) is not None:
        overrides["k"] = args.k
    return replace(cfg, **overrides) if overrides else cfg


def _require(path: Path, producer: str) -> Path:
    if not path.exists():
        raise LftError(f"{path} not found; run 'lftmine {producer}' first")
    return path


def _cmd_sample(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    points = lhs_sample(k=cfg.k, seed=cfg.seed)
    write_designs_csv(points, out / "designs.csv")
    print(f"wrote {len(points)} designs to {out / 'designs.csv'}")
    return 0


def _cmd_evaluate(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args)
    out = Path(args.out_dir)
    points = read_designs_csv(_require(out / "designs.csv", "sample"))
    records = evaluate_many(points, cfg, jobs=args.jobs, trace_dir=args.trace_dir)
    write_dataset_csv(records, out / "metrics.csv", labeled=False)
    print(f"wrote {len(records)} evaluated designs to {out / 'metrics.csv'}")
    if args.trace_dir:
        print(f"wrote {len(records)} traces to {args.trace_dir}")
    return 0


def _cmd_label(args: argparse.Namespace) -> int:
    out = Path(args.out_dir)
    records = relabel(read_dataset_csv(_require(out / "metrics.csv", "evaluate")))
    write_dataset_csv(records, out / "dataset.csv", labeled=True)
    print(f"wrote graded dataset to {out / 'dataset.csv'}")
    for obj in OBJECTIVES:
        counts = class_counts(records, obj)
        print(f"  {obj}: " + " ".join(f"{c}={counts[c]}" for c in CLASS_ORDER))
    return 0


def _cmd_train(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args)
    out = Path(args.out_dir)
    records = read_dataset_csv(_require(out / "dataset.csv", "label"))
    tree = build_tree(training_dataset(records, args.objective), min_leaf=cfg.min_leaf)
    save_tree(tree, out / f"tree_{args.objective}.json")
    rendered = format_tree(tree)
    (out / f"tree_{args.objective}.txt").write_text(rendered + "\n", encoding="utf-8")
    print(rendered)
    print(f"wrote tree to {out / f'tree_{args.objective}.json'}")
    return 0


def _cmd_prune(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args)
    out = Path(args.out_dir)
    tree = load_tree(_require(out / f"tree_{args.objective}.json", "train"))
    records = read_dataset_csv(_require(out / "dataset.csv", "label"))
    data = training_dataset(records, args.objective)
    if args.cf is not None:
        pruned_tree = prune_tree(tree, args.cf)
        cf: float | None = args.cf
        recall = mean_class_recall(pruned_tree, data)
    else:
        result = prune_with_ladder(tree, data, cfg.cf_ladder, cfg.recall_floor)
        pruned_tree, cf, recall = result.tree, result.cf, result.recall
    save_tree(pruned_tree, out / f"pruned_{args.objective}.json")
    print(
        f"pruned {leaf_count(tree.root)} -> {leaf_count(pruned_tree.root)} leaves "
        f"(cf={cf}, mean class recall={recall:.3f})"
    )
    print(format_tree(pruned_tree))
    return 0


def _cmd_rules(args: argparse.Namespace) -> int:
    out = Path(args.out_dir)
    pruned_path = out / f"pruned_{args.objective}.json"
    tree_path = pruned_path if pruned_path.exists() else out / f"tree_{args.objective}.json"
    tree = load_tree(_require(tree_path, "train"))
    rules = extract_rules(tree)
    selected = {}
    for label in CLASS_ORDER:
        try:
            selected[label] = select_rule(rules, label, tree.attributes)
        except RuleNotFoundError:
            print(f"note: no rule predicts class {label}")
    save_rules(rules, selected, out / f"rules_{args.objective}.json")
    (out / f"rules_{args.objective}.txt").write_text(
        format_rules(rules) + "\n", encoding="utf-8"
    )
    print(f"extracted {len(rules)} rules from {tree_path.name}")
    print(format_rules(rules))
    print("selected:")
    for label, rule in selected.items():
        print(f"  [{label}] {rule.describe()}")
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args)
    out = Path(args.out_dir)
    _, selected = load_rules(_require(out / f"rules_{args.objective}.json", "rules"))
    validation_k = args.k if args.k is not None else 5
    validations = {}
    for label in CLASS_ORDER:
        rule = selected.get(label)
        if rule is None:
            continue
        try:
            check = validate_rule(
                rule,
                labeler=lambda dp: label_metrics(record_for(0, dp, cfg).metrics, args.objective),
                k=validation_k,
                seed=_validation_seed(cfg.seed, args.objective, label),
            )
        except InfeasibleRuleError:
            print(f"  [{label}] region infeasible, skipped")
            continue
        validations[label] = check
        print(f"  [{label}] fidelity {check.fidelity_pct:.1f}% ({check.hits}/{len(check.labels)})")
    report = validation_report_csv(args.objective, validations, cfg)
    path = out / f"validation_{args.objective}.csv"
    path.write_text(report, encoding="utf-8")
    if validations:
        average = math.fsum(v.fidelity_pct for v in validations.values()) / len(validations)
        print(f"average fidelity: {average:.1f}%")
    print(f"wrote {path}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args)
    records = run_sweep(args.variable, cfg, args.out_dir)
    out = Path(args.out_dir)
    print(f"wrote {len(records)} rows to {out / f'sweep_{args.variable}.csv'}")
    return 0


def _cmd_hollow(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args)
    out = Path(args.out_dir)
    dataset = out / "dataset.csv"
    source = dataset if dataset.exists() else out / "metrics.csv"
    records = read_dataset_csv(_require(source, "label"))
    report = run_hollow_report(cfg, out, records, paper_baselines=args.paper_baselines)
    print(f"baseline source: {report.baseline}")
    print(
        f"{report.above} of {report.total} designs ({report.above_pct:.1f}%) "
        "exceed the same-thickness hollow-tube SEA"
    )
    print(f"  above +20%: {report.above_20}")
    print(f"  above +50%: {report.above_50}")
    print(
        f"  largest increase: design {report.max_increase_index} "
        f"({report.max_increase_pct:+.1f}%)"
    )
    print(
        f"  largest decrease: design {report.max_decrease_index} "
        f"({report.max_decrease_pct:+.1f}%)"
    )
    print(f"wrote {out / 'hollow.csv'}")
    return 0


def _cmd_pipeline(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args)
    result = run_pipeline(cfg, args.out_dir, jobs=args.jobs, trace_dir=args.trace_dir)
    print((result.out_dir / "summary.txt").read_text(encoding="utf-8"), end="")
    print(f"wrote {len(result.files)} files to {result.out_dir}")
    return 0


def _cmd_config(args: argparse.Namespace) -> int:
    cfg = load_config(args.config) if args.config else RunConfig()
    print(json.dumps(config_to_dict(cfg), indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lftmine",
        description="data-mining design workflow for lattice-filled thin-walled tubes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, objective: bool = False, jobs: bool = False):
        p.add_argument("--config", help="JSON config file (see 'lftmine config')")
        p.add_argument("--out-dir", default="out", help="artifact directory (default: out)")
        p.add_argument("--seed", type=int, help="override the config seed")
        p.add_argument("--k", type=int, help="override the config sample count")
        if objective:
            p.add_argument(
                "--objective",
                choices=list(OBJECTIVES),
                default="eff",
                help="grading objective (default: eff)",
            )
        if jobs:
            p.add_argument(
                "--jobs",
                type=int,
                default=None,
                help=f"worker threads (default: all cores, here {default_jobs()})",
            )

    p = sub.add_parser("sample", help="draw the Latin Hypercube design table")
    common(p)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("evaluate", help="evaluate designs.csv into metrics.csv")
    common(p, jobs=True)
    p.add_argument(
        "--trace-dir",
        help="directory to write one design_<index>.csv force curve per design",
    )
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("label", help="grade metrics.csv into dataset.csv")
    common(p)
    p.set_defaults(func=_cmd_label)

    p = sub.add_parser("train", help="grow the decision tree for one objective")
    common(p, objective=True)
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("prune", help="pessimistically prune a trained tree")
    common(p, objective=True)
    p.add_argument("--cf", type=float, help="single confidence factor instead of the ladder")
    p.set_defaults(func=_cmd_prune)

    p = sub.add_parser("rules", help="extract and select design rules from the tree")
    common(p, objective=True)
    p.set_defaults(func=_cmd_rules)

    p = sub.add_parser("validate", help="check selected rules on fresh sampled designs")
    common(p, objective=True)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("sweep", help="one-variable sweep around the reference design")
    p.add_argument("variable", choices=["n", "m", "d", "t", "h"])
    common(p)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser(
        "hollow-report", help="compare the dataset against hollow-tube SEA baselines"
    )
    common(p)
    p.add_argument(
        "--paper-baselines",
        action="store_true",
        help="take baselines from the published reference points instead of the model",
    )
    p.set_defaults(func=_cmd_hollow)

    p = sub.add_parser("pipeline", help="run every stage end to end")
    common(p, jobs=True)
    p.add_argument(
        "--trace-dir",
        help="directory to write one design_<index>.csv force curve per design",
    )
    p.set_defaults(func=_cmd_pipeline)

    p = sub.add_parser("config", help="print the effective configuration as JSON")
    p.add_argument("--config", help="JSON config file to normalize and echo")
    p.set_defaults(func=_cmd_config)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LftError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
