"""Enumerative program search over queried examples.

Programs come from the domain's canonical enumeration (size strata
ascending, text order within each stratum), so ranks are deterministic and
"first consistent" is well defined.  A candidate is checked example by
example and discarded at the first contradiction; start records carry no
evidence and are skipped.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from ..query.strategies import QueryRecord

FIRST_CONSISTENT = "first-consistent"
BUDGET_EXHAUSTED = "budget-exhausted"
POOL_EXHAUSTED = "pool-exhausted"

MODES = ("first", "top_k", "exact")


@dataclass(frozen=True)
class SynthesisBudget:
    """Caps on one search.

    max_size bounds program size in the domain's units (statement nodes
    for the grid DSL, statement count for the list DSL).  max_programs
    caps how many programs are enumerated, max_seconds wall time; either
    may be None for unlimited.
    """

    max_size: int = 3
    max_programs: int | None = None
    max_seconds: float | None = None

    def __post_init__(self) -> None:
        if self.max_size < 1:
            raise ValueError("max_size must be >= 1")
        if self.max_programs is not None and self.max_programs < 1:
            raise ValueError("max_programs must be >= 1 when set")
        if self.max_seconds is not None and self.max_seconds <= 0:
            raise ValueError("max_seconds must be positive when set")


@dataclass(frozen=True)
class SynthesisStats:
    programs_enumerated: int
    elapsed_seconds: float
    stop_reason: str


@dataclass(frozen=True)
class SynthesisResult:
    """candidates are ranked by enumeration order (size, then text)."""

    candidates: tuple
    stats: SynthesisStats


def evidence_pairs(examples) -> list[tuple]:
    """Normalize history records or plain pairs into (query, response)
    evidence, dropping start records."""
    pairs = []
    for rec in examples:
        if isinstance(rec, QueryRecord):
            if rec.is_start:
                continue
            pairs.append((rec.query, rec.response))
        else:
            query, response = rec
            pairs.append((query, response))
    return pairs


def is_consistent(domain, prog, pairs) -> bool:
    """True iff prog reproduces every response; short-circuits on the
    first disagreement."""
    return all(domain.respond(prog, query) == response for query, response in pairs)


def synthesize(
    domain,
    examples,
    budget: SynthesisBudget,
    mode: str = "first",
    k: int = 10,
    target_text: str | None = None,
    programs=None,
) -> SynthesisResult:
    """Search the bounded program space for candidates consistent with the
    examples.

    mode "first" stops at the first consistent program; "top_k" collects
    up to k; "exact" keeps collecting consistent programs until one
    pretty-prints identically to target_text (an evaluation-only mode for
    when the ground truth is known).

    Stop reasons: "first-consistent" when the searched-for program was
    found (first mode hit, or exact-mode text match); "budget-exhausted"
    when a cap ended the search early (max_programs, max_seconds, or the
    top_k candidate cap); "pool-exhausted" when the bounded space was
    enumerated completely.  Empty candidates with an exhausted budget or
    pool is a normal result, not an error.

    programs, when given, replaces the enumeration with a pre-built ranked
    list (callers that search repeatedly pass the same canonical ranking
    to avoid rebuilding it); budget caps still apply while scanning it.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    if mode == "exact" and target_text is None:
        raise ValueError("exact mode requires target_text")
    if mode == "top_k" and k < 1:
        raise ValueError("k must be >= 1")
    examples = list(examples)
    if not examples:
        raise ValueError("need at least one example")
    pairs = evidence_pairs(examples)

    started = time.perf_counter()
    found: list = []
    enumerated = 0
    stop = POOL_EXHAUSTED
    source = programs if programs is not None else domain.enumerate_programs(budget.max_size)
    for prog in source:
        if budget.max_programs is not None and enumerated >= budget.max_programs:
            stop = BUDGET_EXHAUSTED
            break
        if budget.max_seconds is not None and time.perf_counter() - started > budget.max_seconds:
            stop = BUDGET_EXHAUSTED
            break
        enumerated += 1
        if not is_consistent(domain, prog, pairs):
            continue
        found.append(prog)
        if mode == "first":
            stop = FIRST_CONSISTENT
            break
        if mode == "top_k" and len(found) >= k:
            stop = BUDGET_EXHAUSTED
            break
        if mode == "exact" and domain.program_text(prog) == target_text:
            stop = FIRST_CONSISTENT
            break
    elapsed = time.perf_counter() - started
    return SynthesisResult(tuple(found), SynthesisStats(enumerated, elapsed, stop))


def make_synth_committee(domain, budget: SynthesisBudget, k: int = 32, programs=None):
    """Committee source for query-by-committee: the top-k programs from the
    bounded enumeration that are consistent with the history so far.  With
    no evidence yet (start record only) this is simply the first k programs,
    which is what gives the committee its disagreement to score.

    The ranking is enumerated once up front (or taken from programs, which
    lets several committees over the same domain share one list) because
    the committee is re-derived on every proposal step.
    """
    if programs is None:
        programs = list(domain.enumerate_programs(budget.max_size))

    def committee(history):
        result = synthesize(domain, history, budget, mode="top_k", k=k, programs=programs)
        return list(result.candidates)

    return committee
