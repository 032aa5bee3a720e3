"""Information-gain scoring and exact lookahead over candidate pools.

All scores are in bits.  Functions take a resp_fn(program, query) so they
work identically over live domain programs and table-backed fixtures.
"""

from __future__ import annotations

import itertools
import math

from .pool import CandidatePool


def entropy_bits(weights) -> float:
    return -sum(w * math.log2(w) for w in weights if w > 0.0)


def partition_by_response(pool: CandidatePool, query, resp_fn) -> dict:
    """Groups pool programs by their output on the query; values are
    (programs, posterior mass)."""
    groups: dict = {}
    for prog, w in zip(pool.programs, pool.weights):
        resp = resp_fn(prog, query)
        progs, mass = groups.get(resp, ((), 0.0))
        groups[resp] = (progs + (prog,), mass + w)
    return groups


def _joint_groups(pool: CandidatePool, queries, resp_fn) -> list[list[float]]:
    """Member weights grouped by the joint response tuple."""
    groups: dict = {}
    for prog, w in zip(pool.programs, pool.weights):
        key = tuple(resp_fn(prog, q) for q in queries)
        groups.setdefault(key, []).append(w)
    return list(groups.values())


def joint_information_gain(pool: CandidatePool, queries, resp_fn) -> float:
    """Information carried by the joint response tuple of several queries.

    With a deterministic oracle the responses partition the pool, so this
    is H(prior) minus the mass-weighted entropy within each part.
    """
    expected = 0.0
    for member_weights in _joint_groups(pool, queries, resp_fn):
        mass = sum(member_weights)
        if mass > 0.0:
            expected += mass * entropy_bits([w / mass for w in member_weights])
    return entropy_bits(pool.weights) - expected


def information_gain(pool: CandidatePool, query, resp_fn) -> float:
    """H(pool) - E_y[H(pool | y)] under the current posterior."""
    return joint_information_gain(pool, (query,), resp_fn)


def lookahead_scores(pool: CandidatePool, query_pool, resp_fn, depth: int) -> list[tuple]:
    """Score each first query by the best joint MI over length-depth
    sequences beginning with it.  Returns (query, sequence_bits,
    immediate_bits) triples in query_pool order; the immediate single-query
    gain disambiguates first queries whose sequences carry equal totals."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    query_pool = list(query_pool)
    scores = []
    for q in query_pool:
        best = 0.0
        for rest in itertools.product(query_pool, repeat=depth - 1):
            best = max(best, joint_information_gain(pool, (q,) + rest, resp_fn))
        scores.append((q, best, information_gain(pool, q, resp_fn)))
    return scores


def ig_lookahead(pool: CandidatePool, query_pool, resp_fn, depth: int = 1, serialize=str):
    """Best first query under depth-L sequence scoring.

    Sequence-score ties break toward the query with the larger immediate
    gain (front-loading information; a deferred-value first query must not
    displace one that splits the pool now), then toward the
    lexicographically smallest serialization.  A singleton posterior
    carries no further information, so the tree is not expanded and the
    lex-smallest query is returned directly.
    """
    query_pool = list(query_pool)
    if not query_pool:
        raise ValueError("empty query pool")
    if len(pool) <= 1:
        return min(query_pool, key=serialize)
    best_q = None
    best_seq = -math.inf
    best_now = -math.inf
    best_key = None
    for q, seq_bits, now_bits in lookahead_scores(pool, query_pool, resp_fn, depth):
        key = serialize(q)
        better = (
            seq_bits > best_seq + 1e-12
            or (abs(seq_bits - best_seq) <= 1e-12 and now_bits > best_now + 1e-12)
            or (abs(seq_bits - best_seq) <= 1e-12 and abs(now_bits - best_now) <= 1e-12 and key < best_key)
        )
        if better:
            best_q, best_seq, best_now, best_key = q, seq_bits, now_bits, key
    return best_q


def expected_queries_to_isolate(pool: CandidatePool, query_pool, resp_fn, first_query=None) -> float:
    """Expected number of queries an optimal adaptive questioner needs to
    shrink the pool to one program, optionally pinning the first query.

    Assumes the uniform posterior; returns inf when some pair of programs
    cannot be separated by any query in the pool.
    """
    query_pool = list(query_pool)
    programs = pool.programs
    memo: dict[frozenset, float] = {}

    def split(idxs: frozenset, q) -> list[frozenset]:
        groups: dict = {}
        for i in idxs:
            groups.setdefault(resp_fn(programs[i], q), set()).add(i)
        return [frozenset(g) for g in groups.values()]

    def cost(idxs: frozenset) -> float:
        if len(idxs) <= 1:
            return 0.0
        if idxs in memo:
            return memo[idxs]
        memo[idxs] = math.inf  # guard: unsplittable sets recurse to themselves
        best = math.inf
        for q in query_pool:
            parts = split(idxs, q)
            if len(parts) == 1:
                continue
            total = 1.0 + sum(len(p) / len(idxs) * cost(p) for p in parts)
            best = min(best, total)
        memo[idxs] = best
        return best

    everyone = frozenset(range(len(programs)))
    if first_query is None:
        return cost(everyone)
    parts = split(everyone, first_query)
    if len(parts) == 1:
        return 1.0 + cost(everyone) if len(everyone) > 1 else 1.0
    return 1.0 + sum(len(p) / len(everyone) * cost(p) for p in parts)
