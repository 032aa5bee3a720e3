"""The metric ladder and branch-coverage reporting.

Four rungs, strictly nested by construction: semantics (the queried
examples), generalization (one extra held-out input), functional
equivalence (the full held-out set), and exact match (canonical text
equality).  Nesting makes count(FE) <= count(generalization) <=
count(semantics) a structural fact rather than a statistical one.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..karel.executor import STAY_STILL, execute
from ..synth import is_consistent

METRIC_NAMES = ("semantics", "generalization", "functional_equivalence", "exact")


@dataclass(frozen=True)
class MetricVerdicts:
    semantics: bool
    generalization: bool
    functional_equivalence: bool
    exact: bool

    def to_dict(self) -> dict:
        return {
            "semantics": self.semantics,
            "generalization": self.generalization,
            "functional_equivalence": self.functional_equivalence,
            "exact": self.exact,
        }


def evaluate_metrics(domain, predicted, truth, examples, heldout1, heldout95) -> MetricVerdicts:
    """Score one prediction against the ground truth.

    examples: the queried (input, response) pairs; heldout1 is the single
    extra input for the generalization rung and must be heldout95[0] when
    the standard nesting is wanted; heldout95 the full held-out draw.
    predicted may be None (synthesis came back empty): every rung is False.
    """
    if predicted is None:
        return MetricVerdicts(False, False, False, False)
    examples = list(examples)
    semantics = is_consistent(domain, predicted, examples)
    generalization = semantics and (
        domain.respond(predicted, heldout1) == domain.respond(truth, heldout1)
    )
    fe = generalization
    if fe:
        seen = {domain.serialize_query(q) for q, _ in examples}
        seen.add(domain.serialize_query(heldout1))
        for q in heldout95:
            key = domain.serialize_query(q)
            if key in seen:
                continue
            seen.add(key)
            if domain.respond(predicted, q) != domain.respond(truth, q):
                fe = False
                break
    exact = domain.program_text(predicted) == domain.program_text(truth)
    return MetricVerdicts(semantics, generalization, fe, exact)


def verdict_counts(rows) -> dict:
    counts = dict.fromkeys(METRIC_NAMES, 0)
    for v in rows:
        d = v.to_dict() if isinstance(v, MetricVerdicts) else v
        for name in METRIC_NAMES:
            counts[name] += bool(d[name])
    return counts


def ladder_holds(verdicts: MetricVerdicts) -> bool:
    """Per-row nesting: FE implies generalization implies semantics."""
    if verdicts.functional_equivalence and not verdicts.generalization:
        return False
    if verdicts.generalization and not verdicts.semantics:
        return False
    return True


def coverage_by_rung(truth, example_inputs, heldout1, heldout95) -> dict:
    """Branch coverage of the ground-truth grid program under each rung's
    input set.  One stay-still run per distinct world; rung unions nest, so
    the coverage ratios are monotone by construction."""
    sem_worlds = list(example_inputs)
    gen_worlds = sem_worlds + [heldout1]
    fe_worlds = gen_worlds + [w for w in heldout95 if w != heldout1]
    traces = {}
    visited: set = set()
    total = None
    consumed = 0
    for rung, worlds in (("semantics", sem_worlds), ("generalization", gen_worlds), ("fe", fe_worlds)):
        for world in worlds[consumed:]:
            _, trace = execute(truth, world, STAY_STILL, detect_cycles=True)
            visited |= trace.visited
            total = trace.total_sites
        consumed = len(worlds)
        ratio = 1.0 if not total else len(visited) / total
        traces[rung] = ratio
    return traces


def coverage_report(tasks, metric_filter: str | None = None):
    """Mean ground-truth branch coverage per rung over grid tasks.

    Each task is (truth, example_inputs, heldout1, heldout95).  Returns the
    dict of per-rung means, or a single mean when metric_filter is given.
    """
    tasks = list(tasks)
    if not tasks:
        raise ValueError("need at least one task")
    sums = {"semantics": 0.0, "generalization": 0.0, "fe": 0.0}
    for truth, example_inputs, heldout1, heldout95 in tasks:
        ratios = coverage_by_rung(truth, example_inputs, heldout1, heldout95)
        for rung in sums:
            sums[rung] += ratios[rung]
    means = {rung: total / len(tasks) for rung, total in sums.items()}
    if metric_filter is not None:
        if metric_filter not in means:
            raise ValueError(f"unknown rung {metric_filter!r}; expected one of {sorted(means)}")
        return means[metric_filter]
    return means
