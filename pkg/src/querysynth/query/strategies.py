"""Query strategies and the query loop.

Every strategy implements propose(oracle, history) -> query and appends
one entry to its probe_counts list per call (zero for strategies that
never touch the oracle while choosing).  The loop owns the actual
response calls; strategies only probe for crashes when crash-aware.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from .infogain import ig_lookahead
from .oracle import Oracle
from .pool import InconsistentPoolError, pool_from_history


@dataclass(frozen=True)
class QueryRecord:
    query: object
    response: object
    is_start: bool = False


def run_query_loop(oracle: Oracle, strategy, steps: int) -> list[QueryRecord]:
    """Start signal plus `steps` queried pairs; strategy sees the full
    history each round."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    start_query, start_response = oracle.domain.start_example()
    history = [QueryRecord(start_query, start_response, is_start=True)]
    for _ in range(steps):
        query = strategy.propose(oracle, history)
        history.append(QueryRecord(query, oracle.respond(query)))
    return history


def replay_matches(oracle_domain, program, history) -> bool:
    """True iff the hidden program reproduces every recorded response."""
    return all(
        oracle_domain.respond(program, rec.query) == rec.response
        for rec in history
        if not rec.is_start
    )


class _RespCache:
    """Memoized program-on-query execution shared across a strategy's steps."""

    def __init__(self, domain):
        self._domain = domain
        self._memo: dict = {}

    def __call__(self, prog, query):
        key = (prog, query)
        if key not in self._memo:
            self._memo[key] = self._domain.respond(prog, query)
        return self._memo[key]


class RandomStrategy:
    """Uniform input sampling; optionally rejects crashing inputs by
    probing the oracle (each probe is a counted call)."""

    def __init__(self, domain, rng: random.Random, crash_filter: bool = False):
        self.domain = domain
        self.rng = rng
        self.crash_filter = crash_filter
        self.probe_counts: list[int] = []

    def propose(self, oracle: Oracle, history) -> object:
        probes = 0
        while True:
            query = self.domain.sample_query_input(self.rng)
            if not self.crash_filter:
                break
            probes += 1
            if not oracle.probe_crash(query):
                break
        self.probe_counts.append(probes)
        return query


class QbcStrategy:
    """Query by committee: most-diverse-output sampling, optionally
    crash-aware.

    The first step has no committee evidence and falls back to a random
    query (crash-probed when aware).  Later steps draw sample_size
    candidate inputs, score each by the number of distinct committee
    outputs, and sort descending with a lexicographic tie-break.  Aware
    mode probes down the ranking and starts a fresh round if every
    candidate crashes; unaware mode returns the top candidate as-is.
    """

    def __init__(self, domain, rng: random.Random, committee_fn, crash_aware: bool,
                 sample_size: int = 100):
        if sample_size < 1:
            raise ValueError("sample_size must be >= 1")
        self.domain = domain
        self.rng = rng
        self.committee_fn = committee_fn
        self.crash_aware = crash_aware
        self.sample_size = sample_size
        self.probe_counts: list[int] = []
        self._resp = _RespCache(domain)

    def _random_query(self, oracle: Oracle) -> tuple[object, int]:
        probes = 0
        while True:
            query = self.domain.sample_query_input(self.rng)
            if not self.crash_aware:
                return query, probes
            probes += 1
            if not oracle.probe_crash(query):
                return query, probes

    def propose(self, oracle: Oracle, history) -> object:
        committee = list(self.committee_fn(history))
        if len(history) <= 1 or len(committee) < 2:
            query, probes = self._random_query(oracle)
            self.probe_counts.append(probes)
            return query
        probes = 0
        while True:
            candidates = [self.domain.sample_query_input(self.rng) for _ in range(self.sample_size)]
            ranked = sorted(
                candidates,
                key=lambda q: (-len({self._resp(p, q) for p in committee}),
                               self.domain.serialize_query(q)),
            )
            if not self.crash_aware:
                self.probe_counts.append(probes)
                return ranked[0]
            for query in ranked:
                probes += 1
                if not oracle.probe_crash(query):
                    self.probe_counts.append(probes)
                    return query
            # every candidate crashed; Algorithm keeps sampling rounds


class IgStrategy:
    """Exact information gain over a candidate pool, with optional
    sequence lookahead."""

    def __init__(self, domain, rng: random.Random, pool_programs, query_sample_size: int = 24,
                 lookahead: int = 1, query_pool_fn=None):
        self.domain = domain
        self.rng = rng
        self.pool_programs = tuple(pool_programs)
        self.query_sample_size = query_sample_size
        self.lookahead = lookahead
        self.query_pool_fn = query_pool_fn
        self.probe_counts: list[int] = []
        self._resp = _RespCache(domain)

    def _query_pool(self) -> list:
        if self.query_pool_fn is not None:
            return list(self.query_pool_fn(self.rng))
        return [self.domain.sample_query_input(self.rng) for _ in range(self.query_sample_size)]

    def propose(self, oracle: Oracle, history) -> object:
        pool = pool_from_history(self.pool_programs, history, self._resp)
        self.probe_counts.append(0)
        return ig_lookahead(
            pool,
            self._query_pool(),
            self._resp,
            depth=self.lookahead,
            serialize=self.domain.serialize_query,
        )


class FspaceStrategy:
    """Scores candidate queries by expected entropy of the intersected
    Gaussian after appending each hypothetical response.

    Hypothetical responses come from the surviving candidate pool under
    the uniform posterior; the intersection is the learned attention
    combination, so a trained encoder steers which query looks most
    informative.
    """

    def __init__(self, domain, rng: random.Random, params, pool_programs,
                 candidate_count: int = 16):
        from ..fspace.encoders import attention_forward, encode_example_batch

        if candidate_count < 1:
            raise ValueError("candidate_count must be >= 1")
        self.domain = domain
        self.rng = rng
        self.params = params
        self.pool_programs = tuple(pool_programs)
        self.candidate_count = candidate_count
        self.probe_counts: list[int] = []
        self._resp = _RespCache(domain)
        self._attention_forward = attention_forward
        self._encode_batch = encode_example_batch

    def _history_encodings(self, history):
        feats = np.stack([self.domain.example_features(r.query, r.response) for r in history])
        mu, lv, _ = self._encode_batch(self.params, feats)
        return mu, lv

    def _entropy_after(self, hist_mu, hist_lv, record_feats) -> float:
        mu, lv, _ = self._encode_batch(self.params, record_feats[None, :])
        full_mu = np.concatenate([hist_mu, mu])
        full_lv = np.concatenate([hist_lv, lv])
        _, lv_out, _, _ = self._attention_forward(self.params, full_mu, full_lv)
        d = lv_out.shape[0]
        return float(0.5 * np.sum(lv_out) + 0.5 * d * (1.0 + math.log(2.0 * math.pi)))

    def propose(self, oracle: Oracle, history) -> object:
        self.probe_counts.append(0)
        candidates = [self.domain.sample_query_input(self.rng) for _ in range(self.candidate_count)]
        if len(candidates) == 1:
            return candidates[0]
        pool = pool_from_history(self.pool_programs, history, self._resp)
        hist_mu, hist_lv = self._history_encodings(history)
        best_q, best_score, best_key = None, math.inf, None
        for q in candidates:
            groups: dict = {}
            for prog, w in zip(pool.programs, pool.weights):
                resp = self._resp(prog, q)
                groups[resp] = groups.get(resp, 0.0) + w
            expected = 0.0
            for resp, mass in groups.items():
                feats = self.domain.example_features(q, resp)
                expected += mass * self._entropy_after(hist_mu, hist_lv, feats)
            key = self.domain.serialize_query(q)
            if expected < best_score - 1e-12 or (abs(expected - best_score) <= 1e-12 and key < best_key):
                best_q, best_score, best_key = q, expected, key
        return best_q


def make_pool_committee(pool_programs, resp_fn, k: int):
    """Committee = the first K pool programs still consistent with the
    history, padded from the front of the pool when fewer than two
    survive (QBC needs disagreement to score anything)."""
    pool_programs = tuple(pool_programs)

    def committee(history):
        try:
            pool = pool_from_history(pool_programs, history, resp_fn)
            members = list(pool.programs[:k])
        except InconsistentPoolError:
            members = []
        for prog in pool_programs:
            if len(members) >= 2:
                break
            if prog not in members:
                members.append(prog)
        return members

    return committee
