"""Seeded experiment runner and its artifact formats.

Every random draw comes from a string-seeded generator keyed by
(master_seed, task, strategy), so a config runs to byte-identical artifacts
on every execution.  Wall-clock durations are deliberately kept out of the
records for the same reason.  Per-task component errors are recorded and
the run continues; the summary reports them per strategy.
"""

from __future__ import annotations

import csv
import json
import os
import random
from dataclasses import dataclass

from ..fspace import EncoderConfig, init_params
from ..fspace.training import load_checkpoint
from ..query import (
    FspaceStrategy,
    IgStrategy,
    Oracle,
    QbcStrategy,
    RandomStrategy,
    pool_from_history,
    run_query_loop,
)
from ..synth import SynthesisBudget, make_synth_committee, sample_heldout_inputs, synthesize
from .config import ExperimentConfig, build_budget, build_domain, dump_config
from .metrics import MetricVerdicts, coverage_by_rung, evaluate_metrics, ladder_holds


def task_rng(cfg: ExperimentConfig, task_id: int, label: str) -> random.Random:
    return random.Random(f"{cfg.master_seed}:{task_id}:{label}")


def sample_task(domain, cfg: ExperimentConfig, task_id: int):
    """Ground truth plus a text-distinct candidate pool containing it; all
    members sampled from the same size-bounded distribution so the truth is
    always inside the enumeration-complete synthesis space."""
    rng = task_rng(cfg, task_id, "task")

    def bounded_program():
        while True:
            prog = domain.sample_program(rng)
            if domain.program_size(prog) <= cfg.synth_max_size:
                return prog

    truth = bounded_program()
    pool = [truth]
    seen = {domain.program_text(truth)}
    while len(pool) < cfg.pool_size:
        prog = bounded_program()
        text = domain.program_text(prog)
        if text not in seen:
            seen.add(text)
            pool.append(prog)
    return truth, tuple(pool)


def fspace_params_for(cfg: ExperimentConfig, domain):
    """Checkpointed encoder parameters when configured, otherwise a fresh
    (untrained) initialization; the strategy is well defined either way."""
    if cfg.fspace_checkpoint:
        return load_checkpoint(cfg.fspace_checkpoint)
    enc = EncoderConfig(
        example_dim=domain.example_feature_dim,
        program_dim=domain.program_feature_dim,
        seed=cfg.master_seed,
    )
    return init_params(enc)


def build_strategy(name: str, domain, rng, pool, cfg: ExperimentConfig,
                   budget: SynthesisBudget, fspace_params=None,
                   committee_programs=None):
    if name == "random":
        return RandomStrategy(domain, rng, crash_filter=False)
    if name in ("qbc-aware", "qbc-unaware"):
        committee = make_synth_committee(domain, budget, k=cfg.committee_size,
                                         programs=committee_programs)
        return QbcStrategy(
            domain, rng, committee,
            crash_aware=(name == "qbc-aware"),
            sample_size=cfg.qbc_sample_size,
        )
    if name == "ig":
        return IgStrategy(domain, rng, pool, query_sample_size=cfg.ig_query_sample_size)
    if name == "fspace":
        if fspace_params is None:
            raise ValueError("fspace strategy needs encoder parameters")
        return FspaceStrategy(domain, rng, fspace_params, pool,
                              candidate_count=cfg.fspace_candidate_count)
    raise ValueError(f"unknown strategy {name!r}")


def run_task_strategy(domain, cfg: ExperimentConfig, budget: SynthesisBudget,
                      task_id: int, truth, pool, name: str, fspace_params=None,
                      committee_programs=None) -> dict:
    rng = task_rng(cfg, task_id, name)
    oracle = Oracle(domain, truth)
    strategy = build_strategy(name, domain, rng, pool, cfg, budget, fspace_params,
                              committee_programs)
    history = run_query_loop(oracle, strategy, cfg.steps)
    # the truth answers its own queries, so the posterior can never empty out
    surviving = len(pool_from_history(pool, history, domain.respond))

    result = synthesize(domain, history, budget, mode="first")
    predicted = result.candidates[0] if result.candidates else None

    query_inputs = [r.query for r in history if not r.is_start]
    examples = [(r.query, r.response) for r in history if not r.is_start]
    hrng = task_rng(cfg, task_id, f"{name}:heldout")
    heldout = sample_heldout_inputs(domain, truth, cfg.heldout, hrng, exclude=query_inputs)
    verdicts = evaluate_metrics(domain, predicted, truth, examples, heldout[0], heldout)

    record = {
        "task_id": task_id,
        "strategy": name,
        "dsl": domain.name,
        "truth": domain.program_text(truth),
        "predicted": domain.program_text(predicted) if predicted is not None else None,
        "stop_reason": result.stats.stop_reason,
        "programs_enumerated": result.stats.programs_enumerated,
        "surviving_pool": surviving,
        "pool_size": len(pool),
        "oracle_calls": oracle.query_count,
        "probe_counts": list(strategy.probe_counts),
        "queries": [domain.serialize_query(q) for q in query_inputs],
        "responses": [domain.serialize_response(r) for _, r in examples],
    }
    record.update(verdicts.to_dict())
    if domain.name == "karel":
        record["coverage"] = coverage_by_rung(truth, query_inputs, heldout[0], heldout)
    return record


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    records: list
    summary: list
    invariant_failures: list


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    domain = build_domain(cfg)
    budget = build_budget(cfg)
    fspace_params = fspace_params_for(cfg, domain) if "fspace" in cfg.strategies else None
    # committees rebuild their ranking every proposal step; share one list
    committee_programs = None
    if any(name.startswith("qbc") for name in cfg.strategies):
        committee_programs = list(domain.enumerate_programs(budget.max_size))
    records = []
    for task_id in range(cfg.tasks):
        truth, pool = sample_task(domain, cfg, task_id)
        for name in cfg.strategies:
            try:
                rec = run_task_strategy(domain, cfg, budget, task_id, truth, pool,
                                        name, fspace_params, committee_programs)
            except Exception as exc:  # per-task isolation: record and continue
                rec = {
                    "task_id": task_id,
                    "strategy": name,
                    "dsl": domain.name,
                    "error": f"{type(exc).__name__}: {exc}",
                }
            records.append(rec)
    summary = summarize(records, cfg)
    failures = check_invariants(records, cfg)
    return ExperimentReport(cfg, records, summary, failures)


def _mean(values) -> float:
    values = list(values)
    return sum(values) / len(values) if values else 0.0


def summarize(records, cfg: ExperimentConfig) -> list:
    """One aggregate row per strategy, in config order."""
    rows = []
    for name in cfg.strategies:
        ok = [r for r in records if r["strategy"] == name and "error" not in r]
        errors = sum(1 for r in records if r["strategy"] == name and "error" in r)
        probes = [p for r in ok for p in r["probe_counts"]]
        row = {
            "strategy": name,
            "tasks": len(ok),
            "errors": errors,
            "semantics_rate": _mean(float(r["semantics"]) for r in ok),
            "generalization_rate": _mean(float(r["generalization"]) for r in ok),
            "fe_rate": _mean(float(r["functional_equivalence"]) for r in ok),
            "exact_rate": _mean(float(r["exact"]) for r in ok),
            "mean_surviving_pool": _mean(r["surviving_pool"] for r in ok),
            "mean_probes_per_step": _mean(probes),
            "mean_oracle_calls": _mean(r["oracle_calls"] for r in ok),
        }
        if cfg.dsl == "karel":
            row["coverage_semantics"] = _mean(r["coverage"]["semantics"] for r in ok)
            row["coverage_generalization"] = _mean(r["coverage"]["generalization"] for r in ok)
            row["coverage_fe"] = _mean(r["coverage"]["fe"] for r in ok)
        rows.append(row)
    return rows


def check_invariants(records, cfg: ExperimentConfig) -> list:
    """Structural checks every run must satisfy; failures are reported,
    and a nonzero exit code is the caller's contract."""
    failures = []
    for r in records:
        where = f"task {r.get('task_id')} strategy {r.get('strategy')}"
        if "error" in r:
            failures.append(f"{where}: recorded error: {r['error']}")
            continue
        verdicts = MetricVerdicts(
            r["semantics"], r["generalization"], r["functional_equivalence"], r["exact"]
        )
        if not ladder_holds(verdicts):
            failures.append(f"{where}: metric ladder violated: {verdicts}")
        if r["surviving_pool"] < 1:
            failures.append(f"{where}: surviving pool emptied out")
        if len(r["probe_counts"]) != cfg.steps:
            failures.append(f"{where}: expected {cfg.steps} probe entries, "
                            f"got {len(r['probe_counts'])}")
        cov = r.get("coverage")
        if cov is not None:
            if not (cov["semantics"] <= cov["generalization"] + 1e-12
                    and cov["generalization"] <= cov["fe"] + 1e-12):
                failures.append(f"{where}: coverage not monotone: {cov}")
    return failures


# ---------------------------------------------------------------------------
# artifacts

def write_records(records, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")


def read_records(path: str) -> list:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(json.loads(line))
    return out


_INT_COLUMNS = {"tasks", "errors"}
_STR_COLUMNS = {"strategy"}


def write_summary(summary, path: str) -> None:
    if not summary:
        raise ValueError("summary must have at least one row")
    fieldnames = list(summary[0].keys())
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fieldnames, lineterminator="\n")
        writer.writeheader()
        for row in summary:
            writer.writerow(row)


def read_summary(path: str) -> list:
    """Reads a summary CSV back into typed rows; round-trips write_summary
    exactly (floats via repr)."""
    out = []
    with open(path, encoding="utf-8", newline="") as fh:
        for raw in csv.DictReader(fh):
            row = {}
            for key, value in raw.items():
                if key in _STR_COLUMNS:
                    row[key] = value
                elif key in _INT_COLUMNS:
                    row[key] = int(value)
                else:
                    row[key] = float(value)
            out.append(row)
    return out


def write_artifacts(report: ExperimentReport, out_dir: str) -> dict:
    """config.yaml + records.jsonl + summary.csv under out_dir; returns
    the path of each artifact."""
    os.makedirs(out_dir, exist_ok=True)
    paths = {
        "config": os.path.join(out_dir, "config.yaml"),
        "records": os.path.join(out_dir, "records.jsonl"),
        "summary": os.path.join(out_dir, "summary.csv"),
    }
    dump_config(report.config, paths["config"])
    write_records(report.records, paths["records"])
    write_summary(report.summary, paths["summary"])
    return paths
