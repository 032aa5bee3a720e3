"""Command-line surface.

    querysynth gen    --config cfg.yaml --out DIR
    querysynth query  --config cfg.yaml --out DIR
    querysynth synth  --config cfg.yaml --tasks DIR/tasks.jsonl --out DIR
    querysynth eval   --config cfg.yaml --out DIR
    querysynth report --records DIR/records.jsonl [--config cfg.yaml] [--out DIR]

Every command is deterministic given its config file.  eval, report, and
synth run invariant checks over what they produce and exit nonzero iff a
check fails; gen and query only fail on hard errors.
"""

from __future__ import annotations

import argparse
import json
import os

import yaml

from ..query import Oracle, run_query_loop
from ..synth import is_consistent, synthesize
from .config import ExperimentConfig, build_budget, build_domain
from .experiment import (
    build_strategy,
    check_invariants,
    fspace_params_for,
    read_records,
    run_experiment,
    sample_task,
    summarize,
    task_rng,
    write_artifacts,
    write_records,
    write_summary,
)
from ..synth import sample_heldout_inputs


def _config_from_args(args) -> ExperimentConfig:
    raw: dict = {}
    if getattr(args, "config", None):
        with open(args.config, encoding="utf-8") as fh:
            loaded = yaml.safe_load(fh) or {}
        if not isinstance(loaded, dict):
            raise SystemExit(f"config root must be a mapping: {args.config}")
        raw.update(loaded)
    for key, attr in (("dsl", "dsl"), ("tasks", "tasks"), ("steps", "steps"),
                      ("master_seed", "seed")):
        value = getattr(args, attr, None)
        if value is not None:
            raw[key] = value
    return ExperimentConfig.from_dict(raw)


def _print_rows(rows) -> None:
    if not rows:
        print("(no rows)")
        return
    columns = list(rows[0].keys())

    def fmt(value) -> str:
        if isinstance(value, float):
            return f"{value:.4f}"
        return str(value)

    widths = [max(len(c), *(len(fmt(r[c])) for r in rows)) for c in columns]
    print("  ".join(c.ljust(w) for c, w in zip(columns, widths)))
    for row in rows:
        print("  ".join(fmt(row[c]).ljust(w) for c, w in zip(columns, widths)))


def cmd_gen(args) -> int:
    cfg = _config_from_args(args)
    domain = build_domain(cfg)
    os.makedirs(args.out, exist_ok=True)
    path = os.path.join(args.out, "tasks.jsonl")
    with open(path, "w", encoding="utf-8") as fh:
        for task_id in range(cfg.tasks):
            truth, pool = sample_task(domain, cfg, task_id)
            rng = task_rng(cfg, task_id, "gen")
            inputs = sample_heldout_inputs(domain, truth, cfg.steps, rng)
            row = {
                "task_id": task_id,
                "dsl": cfg.dsl,
                "truth": domain.program_text(truth),
                "pool": [domain.program_text(p) for p in pool],
                "examples": [
                    {
                        "query": domain.serialize_query(q),
                        "response": domain.serialize_response(domain.respond(truth, q)),
                    }
                    for q in inputs
                ],
            }
            fh.write(json.dumps(row, sort_keys=True) + "\n")
    print(f"wrote {cfg.tasks} tasks to {path}")
    return 0


def cmd_query(args) -> int:
    cfg = _config_from_args(args)
    domain = build_domain(cfg)
    budget = build_budget(cfg)
    fspace_params = fspace_params_for(cfg, domain) if "fspace" in cfg.strategies else None
    os.makedirs(args.out, exist_ok=True)
    path = os.path.join(args.out, "histories.jsonl")
    count = 0
    with open(path, "w", encoding="utf-8") as fh:
        for task_id in range(cfg.tasks):
            truth, pool = sample_task(domain, cfg, task_id)
            for name in cfg.strategies:
                rng = task_rng(cfg, task_id, name)
                oracle = Oracle(domain, truth)
                strategy = build_strategy(name, domain, rng, pool, cfg, budget, fspace_params)
                history = run_query_loop(oracle, strategy, cfg.steps)
                row = {
                    "task_id": task_id,
                    "strategy": name,
                    "truth": domain.program_text(truth),
                    "records": [
                        {
                            "query": domain.serialize_query(r.query),
                            "response": domain.serialize_response(r.response),
                            "is_start": r.is_start,
                        }
                        for r in history
                    ],
                    "probe_counts": list(strategy.probe_counts),
                }
                fh.write(json.dumps(row, sort_keys=True) + "\n")
                count += 1
    print(f"wrote {count} query histories to {path}")
    return 0


def cmd_synth(args) -> int:
    cfg = _config_from_args(args)
    domain = build_domain(cfg)
    budget = build_budget(cfg)
    os.makedirs(args.out, exist_ok=True)
    out_path = os.path.join(args.out, "synthesis.jsonl")
    failures = []
    with open(args.tasks_file, encoding="utf-8") as fh:
        tasks = [json.loads(line) for line in fh if line.strip()]
    with open(out_path, "w", encoding="utf-8") as fh:
        for row in tasks:
            pairs = [
                (domain.parse_query(ex["query"]), domain.parse_response(ex["response"]))
                for ex in row["examples"]
            ]
            result = synthesize(domain, pairs, budget, mode=args.mode, k=args.k)
            for cand in result.candidates:
                if not is_consistent(domain, cand, pairs):
                    failures.append(
                        f"task {row['task_id']}: inconsistent candidate "
                        f"{domain.program_text(cand)!r}"
                    )
            fh.write(json.dumps({
                "task_id": row["task_id"],
                "stop_reason": result.stats.stop_reason,
                "programs_enumerated": result.stats.programs_enumerated,
                "candidates": [domain.program_text(c) for c in result.candidates],
            }, sort_keys=True) + "\n")
    print(f"wrote {len(tasks)} synthesis results to {out_path}")
    for failure in failures:
        print(f"INVARIANT FAIL: {failure}")
    return 1 if failures else 0


def cmd_eval(args) -> int:
    cfg = _config_from_args(args)
    report = run_experiment(cfg)
    paths = write_artifacts(report, args.out)
    _print_rows(report.summary)
    print(f"records: {paths['records']}")
    print(f"summary: {paths['summary']}")
    for failure in report.invariant_failures:
        print(f"INVARIANT FAIL: {failure}")
    return 1 if report.invariant_failures else 0


def cmd_report(args) -> int:
    config_path = args.config
    if config_path is None:
        sibling = os.path.join(os.path.dirname(os.path.abspath(args.records)), "config.yaml")
        if os.path.exists(sibling):
            config_path = sibling
        else:
            raise SystemExit("report needs --config (no config.yaml beside the records file)")
    with open(config_path, encoding="utf-8") as fh:
        cfg = ExperimentConfig.from_dict(yaml.safe_load(fh) or {})
    records = read_records(args.records)
    summary = summarize(records, cfg)
    failures = check_invariants(records, cfg)
    out_dir = args.out or os.path.dirname(os.path.abspath(args.records))
    os.makedirs(out_dir, exist_ok=True)
    summary_path = os.path.join(out_dir, "summary.csv")
    write_summary(summary, summary_path)
    _print_rows(summary)
    print(f"summary: {summary_path}")
    for failure in failures:
        print(f"INVARIANT FAIL: {failure}")
    return 1 if failures else 0


def _add_common(sub, with_out: bool = True):
    sub.add_argument("--config", help="YAML experiment config")
    sub.add_argument("--dsl", choices=("karel", "list"), help="override dsl")
    sub.add_argument("--tasks", type=int, dest="tasks", help="override task count")
    sub.add_argument("--steps", type=int, help="override query steps (T)")
    sub.add_argument("--seed", type=int, help="override master seed")
    if with_out:
        sub.add_argument("--out", required=True, help="output directory")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="querysynth",
        description="Query-driven program synthesis experiments",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("gen", help="sample tasks with example sets")
    _add_common(gen)
    gen.set_defaults(func=cmd_gen)

    query = commands.add_parser("query", help="run query strategies, save histories")
    _add_common(query)
    query.set_defaults(func=cmd_query)

    synth = commands.add_parser("synth", help="synthesize from a generated task file")
    synth.add_argument("--config", help="YAML experiment config")
    synth.add_argument("--dsl", choices=("karel", "list"), help="override dsl")
    synth.add_argument("--seed", type=int, help="override master seed")
    synth.add_argument("--tasks", dest="tasks_file", required=True,
                       help="tasks.jsonl produced by gen")
    synth.add_argument("--out", required=True, help="output directory")
    synth.add_argument("--mode", choices=("first", "top_k"), default="first")
    synth.add_argument("--k", type=int, default=10)
    synth.set_defaults(func=cmd_synth)

    evaluate = commands.add_parser("eval", help="full experiment: query, synthesize, score")
    _add_common(evaluate)
    evaluate.set_defaults(func=cmd_eval)

    report = commands.add_parser("report", help="re-aggregate an existing records file")
    report.add_argument("--records", required=True, help="records.jsonl from eval")
    report.add_argument("--config", help="config.yaml (default: beside the records)")
    report.add_argument("--out", help="directory for summary.csv")
    report.set_defaults(func=cmd_report)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
