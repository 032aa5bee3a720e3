"""Experiment configuration: one declarative record, YAML in and out.

Desk-scale defaults are sized so a full comparison run finishes in minutes:
the grid DSL uses shallow program bounds and a small committee, the list
DSL enumerates completely at two statements.  Dataset regimes for the list
DSL: "desk" samples 1..max_statements statements, "D1" exactly 4, "D2"
uniformly 1..12 (featurization supports at most 6 statements, so the
embedding strategy is desk-regime only).
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

import yaml

from ..domains import KarelDomain, ListDomain
from ..karel import ProgramBounds
from ..synth import SynthesisBudget

KNOWN_STRATEGIES = ("random", "qbc-aware", "qbc-unaware", "ig", "fspace")
LIST_REGIMES = ("desk", "D1", "D2")


@dataclass(frozen=True)
class ExperimentConfig:
    dsl: str = "list"
    strategies: tuple[str, ...] = ("random", "qbc-aware", "qbc-unaware", "ig")
    tasks: int = 200
    steps: int = 5
    master_seed: int = 0
    pool_size: int = 16
    committee_size: int = 8
    qbc_sample_size: int = 100
    ig_query_sample_size: int = 16
    fspace_candidate_count: int = 16
    synth_max_size: int = 2
    synth_max_programs: int | None = None
    heldout: int = 95
    list_regime: str = "desk"
    list_max_statements: int = 2
    karel_max_depth: int = 1
    karel_max_stmts: int = 2
    karel_repeat_counts: tuple[int, ...] = (2, 3, 4)
    fspace_checkpoint: str | None = None

    def __post_init__(self) -> None:
        if self.dsl not in ("karel", "list"):
            raise ValueError(f"unknown dsl {self.dsl!r}")
        for name in self.strategies:
            if name not in KNOWN_STRATEGIES:
                raise ValueError(f"unknown strategy {name!r}; known: {KNOWN_STRATEGIES}")
        if self.list_regime not in LIST_REGIMES:
            raise ValueError(f"unknown list regime {self.list_regime!r}")
        if self.tasks < 1 or self.steps < 1:
            raise ValueError("tasks and steps must be >= 1")
        if self.pool_size < 2:
            raise ValueError("pool_size must be >= 2")
        if self.heldout < 1:
            raise ValueError("heldout must be >= 1")

    def to_dict(self) -> dict:
        raw = dataclasses.asdict(self)
        raw["strategies"] = list(self.strategies)
        raw["karel_repeat_counts"] = list(self.karel_repeat_counts)
        return raw

    @classmethod
    def from_dict(cls, raw: dict) -> "ExperimentConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(raw) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        cooked = dict(raw)
        if "strategies" in cooked:
            cooked["strategies"] = tuple(cooked["strategies"])
        if "karel_repeat_counts" in cooked:
            cooked["karel_repeat_counts"] = tuple(cooked["karel_repeat_counts"])
        return cls(**cooked)


def load_config(path: str) -> ExperimentConfig:
    with open(path, encoding="utf-8") as fh:
        raw = yaml.safe_load(fh)
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ValueError(f"config root must be a mapping, got {type(raw).__name__}")
    return ExperimentConfig.from_dict(raw)


def dump_config(cfg: ExperimentConfig, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        yaml.safe_dump(cfg.to_dict(), fh, sort_keys=True, default_flow_style=False)


def build_domain(cfg: ExperimentConfig):
    """The domain object an experiment runs against."""
    if cfg.dsl == "karel":
        bounds = ProgramBounds(
            max_depth=cfg.karel_max_depth,
            max_stmts=cfg.karel_max_stmts,
            repeat_counts=tuple(cfg.karel_repeat_counts),
        )
        return KarelDomain(bounds=bounds)
    if cfg.list_regime == "D1":
        lo, hi = 4, 4
    elif cfg.list_regime == "D2":
        lo, hi = 1, 12
    else:
        lo, hi = 1, cfg.list_max_statements
    return ListDomain(min_statements=lo, max_statements=hi)


def build_budget(cfg: ExperimentConfig) -> SynthesisBudget:
    return SynthesisBudget(max_size=cfg.synth_max_size, max_programs=cfg.synth_max_programs)
