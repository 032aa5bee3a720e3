"""Query strategies over deterministic oracles, with posterior tracking."""

from .infogain import (
    entropy_bits,
    expected_queries_to_isolate,
    ig_lookahead,
    information_gain,
    joint_information_gain,
    lookahead_scores,
    partition_by_response,
)
from .oracle import Oracle
from .pool import CandidatePool, InconsistentPoolError, make_pool, pool_from_history, posterior_update
from .strategies import (
    FspaceStrategy,
    IgStrategy,
    QbcStrategy,
    QueryRecord,
    RandomStrategy,
    make_pool_committee,
    replay_matches,
    run_query_loop,
)

__all__ = [
    "Oracle",
    "CandidatePool",
    "InconsistentPoolError",
    "make_pool",
    "posterior_update",
    "pool_from_history",
    "entropy_bits",
    "partition_by_response",
    "information_gain",
    "joint_information_gain",
    "lookahead_scores",
    "ig_lookahead",
    "expected_queries_to_isolate",
    "QueryRecord",
    "run_query_loop",
    "replay_matches",
    "RandomStrategy",
    "QbcStrategy",
    "IgStrategy",
    "FspaceStrategy",
    "make_pool_committee",
]
