"""Information-gain arithmetic on a fixed 8-program, 4-query truth table.

The table below is the worked instance used throughout: eight candidate
programs, four yes/no queries.  Every frozen constant in this file was
derived from the table by hand (entropy arithmetic and the exact
decision-tree recursion) before being asserted here.
"""

import math
import random

import pytest

from querysynth.domains import ListDomain
from querysynth.query import (
    CandidatePool,
    InconsistentPoolError,
    entropy_bits,
    expected_queries_to_isolate,
    ig_lookahead,
    information_gain,
    joint_information_gain,
    lookahead_scores,
    make_pool,
    partition_by_response,
    posterior_update,
)

# rows: programs p0..p7; columns: queries A..D; True = "yes" response
TABLE = {
    "p0": {"A": True, "B": False, "C": False, "D": False},
    "p1": {"A": True, "B": False, "C": False, "D": True},
    "p2": {"A": True, "B": False, "C": True, "D": True},
    "p3": {"A": True, "B": True, "C": True, "D": False},
    "p4": {"A": False, "B": True, "C": True, "D": False},
    "p5": {"A": False, "B": True, "C": True, "D": True},
    "p6": {"A": False, "B": True, "C": False, "D": False},
    "p7": {"A": False, "B": False, "C": False, "D": True},
}
QUERIES = ("A", "B", "C", "D")
PROGRAMS = tuple(sorted(TABLE))

# 3 - (6/8)*log2(3): two size-3 and two size-1 response groups
UNEVEN_PAIR_BITS = 1.8112781244591327


def table_resp(prog, query):
    return TABLE[prog][query]


def table_pool() -> CandidatePool:
    return make_pool(PROGRAMS)


def test_every_single_query_is_one_bit():
    pool = table_pool()
    for q in QUERIES:
        assert information_gain(pool, q, table_resp) == pytest.approx(1.0, abs=1e-12)


def test_pair_information_exact_values():
    pool = table_pool()
    even = [("A", "C"), ("A", "D"), ("C", "D")]
    uneven = [("A", "B"), ("B", "C"), ("B", "D")]
    for pair in even:
        assert joint_information_gain(pool, pair, table_resp) == pytest.approx(2.0, abs=1e-12)
    for pair in uneven:
        assert joint_information_gain(pool, pair, table_resp) == pytest.approx(
            UNEVEN_PAIR_BITS, abs=1e-12
        )


def test_repeated_query_adds_nothing():
    pool = table_pool()
    assert joint_information_gain(pool, ("B", "B"), table_resp) == pytest.approx(1.0, abs=1e-12)


def test_depth_two_ranks_b_strictly_worst():
    pool = table_pool()
    triples = lookahead_scores(pool, QUERIES, table_resp, depth=2)
    scores = {q: seq_bits for q, seq_bits, _ in triples}
    immediate = {q: now_bits for q, _, now_bits in triples}
    assert scores["B"] == pytest.approx(UNEVEN_PAIR_BITS, abs=1e-9)
    for q in ("A", "C", "D"):
        assert scores[q] == pytest.approx(2.0, abs=1e-9)
        assert scores["B"] < scores[q] - 0.1
    # every single query splits the 8 programs evenly, so the immediate
    # tie-break is itself tied and the lex order decides among the 2.0 scorers
    for q in QUERIES:
        assert immediate[q] == pytest.approx(1.0, abs=1e-12)
    assert ig_lookahead(pool, QUERIES, table_resp, depth=2) == "A"


def test_depth_one_equals_greedy_argmax():
    pool = table_pool()
    rng = random.Random(4)
    for _ in range(30):
        # random sub-table instances
        progs = tuple(rng.sample(PROGRAMS, rng.randint(2, 8)))
        sub = make_pool(progs)
        greedy = max(
            sorted(QUERIES),
            key=lambda q: (information_gain(sub, q, table_resp), ),
        )
        # replicate the exact tie-break: max score, then lex-smallest
        best_score = max(information_gain(sub, q, table_resp) for q in QUERIES)
        greedy = min(
            q for q in QUERIES
            if abs(information_gain(sub, q, table_resp) - best_score) <= 1e-12
        )
        assert ig_lookahead(sub, QUERIES, table_resp, depth=1) == greedy
    assert ig_lookahead(pool, QUERIES, table_resp, depth=1) == "A"


def test_expected_queries_starting_with_the_poor_query():
    pool = table_pool()
    assert expected_queries_to_isolate(pool, QUERIES, table_resp, first_query="B") == pytest.approx(
        3.25, abs=1e-9
    )
    best = expected_queries_to_isolate(pool, QUERIES, table_resp)
    assert best <= 3.25 - 0.2
    for q in ("A", "C", "D"):
        pinned = expected_queries_to_isolate(pool, QUERIES, table_resp, first_query=q)
        assert pinned < 3.25


def test_expected_queries_unsplittable_is_infinite():
    pool = make_pool(("p0", "p0b"))
    resp = lambda p, q: True  # no query separates the pair
    assert expected_queries_to_isolate(pool, QUERIES, resp) == math.inf


def test_information_gain_bounds_and_extremes():
    pool = table_pool()
    agree = lambda p, q: 7
    assert information_gain(pool, "A", agree) == pytest.approx(0.0, abs=1e-12)
    distinct = lambda p, q: p  # every program answers differently
    assert information_gain(pool, "A", distinct) == pytest.approx(3.0, abs=1e-12)
    for q in QUERIES:
        ig = information_gain(pool, q, table_resp)
        assert 0.0 <= ig <= math.log2(len(pool)) + 1e-12


def test_entropy_bits_and_partition():
    assert entropy_bits([0.5, 0.5]) == pytest.approx(1.0)
    assert entropy_bits([1.0]) == 0.0
    groups = partition_by_response(table_pool(), "A", table_resp)
    assert set(groups) == {True, False}
    progs_true, mass_true = groups[True]
    assert set(progs_true) == {"p0", "p1", "p2", "p3"}
    assert mass_true == pytest.approx(0.5)


def test_singleton_pool_short_circuits_lookahead():
    pool = make_pool(("p3",))
    assert ig_lookahead(pool, ("D", "C", "B", "A"), table_resp, depth=2) == "A"


def test_pool_construction_validation():
    with pytest.raises(ValueError):
        make_pool(())
    with pytest.raises(ValueError):
        CandidatePool(("a", "b"), (0.9, 0.2))
    with pytest.raises(ValueError):
        CandidatePool(("a",), (1.0, 0.0))


def test_posterior_update_on_live_list_programs():
    domain = ListDomain()
    double = domain.parse_program("v1 = INPUT LIST\nv2 = MAP (*2) v1")
    square = domain.parse_program("v1 = INPUT LIST\nv2 = MAP (**2) v1")
    pool = make_pool((double, square))
    resp = domain.respond

    both = posterior_update(pool, ((2,),), resp(double, ((2,),)), resp)
    assert len(both) == 2 and both is pool  # consistent with all: unchanged

    only_square = posterior_update(pool, ((3,),), (9,), resp)
    assert only_square.programs == (square,)
    assert only_square.weights == (1.0,)

    with pytest.raises(InconsistentPoolError):
        posterior_update(pool, ((3,),), (7,), resp)
