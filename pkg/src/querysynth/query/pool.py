"""Posterior bookkeeping over a finite candidate-program pool."""

from __future__ import annotations

from dataclasses import dataclass


class InconsistentPoolError(RuntimeError):
    """No pool program matches the evidence; the oracle is outside the pool."""


@dataclass(frozen=True)
class CandidatePool:
    """Surviving programs with a uniform posterior.

    Hard filtering keeps the posterior uniform over survivors; soft
    likelihoods add nothing when the oracle is deterministic.
    """

    programs: tuple
    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.programs) != len(self.weights):
            raise ValueError("one weight per program")
        if self.programs and abs(sum(self.weights) - 1.0) > 1e-9:
            raise ValueError("weights must sum to 1")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative")

    def __len__(self) -> int:
        return len(self.programs)


def make_pool(programs) -> CandidatePool:
    programs = tuple(programs)
    if not programs:
        raise ValueError("pool needs at least one program")
    w = 1.0 / len(programs)
    return CandidatePool(programs, (w,) * len(programs))


def posterior_update(pool: CandidatePool, query, response, resp_fn) -> CandidatePool:
    """Drop programs that answer differently; renormalize over survivors."""
    survivors = tuple(p for p in pool.programs if resp_fn(p, query) == response)
    if not survivors:
        raise InconsistentPoolError("every candidate contradicts the observed example")
    if len(survivors) == len(pool.programs):
        return pool
    return make_pool(survivors)


def pool_from_history(programs, history, resp_fn) -> CandidatePool:
    """Uniform pool filtered by every non-start record in order."""
    pool = make_pool(programs)
    for record in history:
        if record.is_start:
            continue
        pool = posterior_update(pool, record.query, record.response, resp_fn)
    return pool
