"""Enumerative synthesis and the functional-equivalence proxy."""

from .equivalence import functional_equivalence, sample_heldout_inputs
from .synthesizer import (
    BUDGET_EXHAUSTED,
    FIRST_CONSISTENT,
    MODES,
    POOL_EXHAUSTED,
    SynthesisBudget,
    SynthesisResult,
    SynthesisStats,
    evidence_pairs,
    is_consistent,
    make_synth_committee,
    synthesize,
)

__all__ = [
    "BUDGET_EXHAUSTED",
    "FIRST_CONSISTENT",
    "MODES",
    "POOL_EXHAUSTED",
    "SynthesisBudget",
    "SynthesisResult",
    "SynthesisStats",
    "evidence_pairs",
    "functional_equivalence",
    "is_consistent",
    "make_synth_committee",
    "sample_heldout_inputs",
    "synthesize",
]
