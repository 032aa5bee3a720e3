"""Experiment harness: config, metric ladder, runner, artifacts, CLI."""

from .config import (
    KNOWN_STRATEGIES,
    LIST_REGIMES,
    ExperimentConfig,
    build_budget,
    build_domain,
    dump_config,
    load_config,
)
from .experiment import (
    ExperimentReport,
    build_strategy,
    check_invariants,
    read_records,
    read_summary,
    run_experiment,
    run_task_strategy,
    sample_task,
    summarize,
    write_artifacts,
    write_records,
    write_summary,
)
from .metrics import (
    METRIC_NAMES,
    MetricVerdicts,
    coverage_by_rung,
    coverage_report,
    evaluate_metrics,
    ladder_holds,
    verdict_counts,
)

__all__ = [
    "KNOWN_STRATEGIES",
    "LIST_REGIMES",
    "METRIC_NAMES",
    "ExperimentConfig",
    "ExperimentReport",
    "MetricVerdicts",
    "build_budget",
    "build_domain",
    "build_strategy",
    "check_invariants",
    "coverage_by_rung",
    "coverage_report",
    "dump_config",
    "evaluate_metrics",
    "ladder_holds",
    "load_config",
    "read_records",
    "read_summary",
    "run_experiment",
    "run_task_strategy",
    "sample_task",
    "summarize",
    "verdict_counts",
    "write_artifacts",
    "write_records",
    "write_summary",
]
