"""Strategy behavior: loop protocol, probe accounting, determinism."""

import random

import pytest

from querysynth.domains import KarelDomain, ListDomain
from querysynth.fspace import EncoderConfig, init_params
from querysynth.listproc import NULL, is_null
from querysynth.query import (
    FspaceStrategy,
    IgStrategy,
    Oracle,
    QbcStrategy,
    RandomStrategy,
    make_pool_committee,
    pool_from_history,
    replay_matches,
    run_query_loop,
)
from tests.test_query_infogain import PROGRAMS, QUERIES, TABLE, table_resp


class TableDomain:
    """Tiny fake domain driven by a response table; used to pin down
    strategy mechanics without interpreter noise."""

    name = "table"

    def __init__(self, table, queries, crashes=frozenset()):
        self.table = table
        self.queries = tuple(queries)
        self.crashes = crashes

    def respond(self, prog, query):
        return self.table[prog][query]

    def is_crash(self, prog, query):
        return query in self.crashes

    def sample_query_input(self, rng):
        return rng.choice(self.queries)

    def serialize_query(self, query):
        return str(query)

    def start_example(self):
        return "start", "start"


def test_loop_shape_and_counter_for_non_probing_strategies():
    domain = ListDomain()
    rng = random.Random(0)
    truth = domain.sample_program(rng)
    oracle = Oracle(domain, truth)
    strat = RandomStrategy(domain, random.Random(1), crash_filter=False)
    history = run_query_loop(oracle, strat, steps=1)
    assert len(history) == 2
    assert history[0].is_start and not history[1].is_start
    assert oracle.query_count == 1
    assert strat.probe_counts == [0]

    oracle2 = Oracle(domain, truth)
    history5 = run_query_loop(oracle2, RandomStrategy(domain, random.Random(2)), steps=5)
    assert oracle2.query_count == 5
    assert len(history5) == 6
    assert replay_matches(domain, truth, history5)


def test_crash_filtered_random_avoids_crashing_queries():
    domain = ListDomain()
    truth = domain.parse_program("v1 = INPUT LIST\nv2 = HEAD v1")  # NULL on empty lists
    oracle = Oracle(domain, truth)
    strat = RandomStrategy(domain, random.Random(3), crash_filter=True)
    history = run_query_loop(oracle, strat, steps=8)
    for rec in history[1:]:
        assert not is_null(rec.response)
    probes = sum(strat.probe_counts)
    assert probes >= 8  # every accepted query was probed at least once
    assert oracle.query_count == 8 + probes


def test_strategies_are_deterministic_per_seed():
    domain = ListDomain()
    truth = domain.parse_program("v1 = INPUT LIST\nv2 = SORT v1")
    for make in (
        lambda r: RandomStrategy(domain, r, crash_filter=True),
        lambda r: IgStrategy(domain, r, _small_list_pool(domain), query_sample_size=6),
    ):
        h1 = run_query_loop(Oracle(domain, truth), make(random.Random(7)), steps=3)
        h2 = run_query_loop(Oracle(domain, truth), make(random.Random(7)), steps=3)
        assert [(r.query, r.response) for r in h1] == [(r.query, r.response) for r in h2]


def _small_list_pool(domain):
    texts = [
        "v1 = INPUT LIST\nv2 = SORT v1",
        "v1 = INPUT LIST\nv2 = REVERSE v1",
        "v1 = INPUT LIST\nv2 = MAP (+1) v1",
        "v1 = INPUT LIST\nv2 = MAP (-1) v1",
        "v1 = INPUT LIST\nv2 = MAXIMUM v1",
    ]
    return [domain.parse_program(t) for t in texts]


def test_qbc_prefers_the_most_splitting_query():
    # committee answers: on "X" all three differ, on "Y" all agree
    table = {
        "c0": {"X": 0, "Y": 9},
        "c1": {"X": 1, "Y": 9},
        "c2": {"X": 2, "Y": 9},
    }
    domain = TableDomain(table, queries=("X", "Y"))
    oracle = Oracle(domain, "c0")
    strat = QbcStrategy(
        domain, random.Random(0), committee_fn=lambda h: ["c0", "c1", "c2"],
        crash_aware=False, sample_size=20,
    )
    history = [type("R", (), {"query": "start", "response": "start", "is_start": True})()]
    before = oracle.query_count
    assert strat.propose(oracle, history + [_rec("Y", 9)]) == "X"
    assert oracle.query_count == before  # unaware never touches the oracle


def _rec(query, response):
    from querysynth.query import QueryRecord

    return QueryRecord(query, response)


def test_qbc_first_step_is_random_and_aware_probes():
    table = {"c0": {"X": 0, "Y": 1}, "c1": {"X": 0, "Y": 2}}
    domain = TableDomain(table, queries=("X", "Y"), crashes=frozenset({"Y"}))
    oracle = Oracle(domain, "c0")
    strat = QbcStrategy(domain, random.Random(1), committee_fn=lambda h: ["c0", "c1"],
                        crash_aware=True, sample_size=10)
    from querysynth.query import QueryRecord

    start = [QueryRecord("start", "start", is_start=True)]
    q = strat.propose(oracle, start)
    assert q == "X"  # only non-crashing input
    assert strat.probe_counts[0] >= 1
    assert oracle.query_count == strat.probe_counts[0]


def test_qbc_aware_retries_rounds_until_a_clean_query_appears():
    class FlakySampler(TableDomain):
        def __init__(self, *a, **k):
            super().__init__(*a, **k)
            self.calls = 0

        def sample_query_input(self, rng):
            self.calls += 1
            # the first full round only ever offers the crashing query
            return "BAD" if self.calls <= 10 else "GOOD"

    table = {"c0": {"BAD": 0, "GOOD": 1}, "c1": {"BAD": 0, "GOOD": 2}}
    domain = FlakySampler(table, queries=("BAD", "GOOD"), crashes=frozenset({"BAD"}))
    oracle = Oracle(domain, "c0")
    strat = QbcStrategy(domain, random.Random(0), committee_fn=lambda h: ["c0", "c1"],
                        crash_aware=True, sample_size=10)
    q = strat.propose(oracle, [_start_rec(), _rec("GOOD", 1)])
    assert q == "GOOD"
    assert strat.probe_counts[0] > 10  # burned a whole crashing round first


def _start_rec():
    from querysynth.query import QueryRecord

    return QueryRecord("start", "start", is_start=True)


def test_ig_isolates_every_hidden_program_within_three_queries():
    domain = TableDomain(TABLE, queries=QUERIES)
    for truth in PROGRAMS:
        oracle = Oracle(domain, truth)
        strat = IgStrategy(
            domain, random.Random(0), PROGRAMS,
            lookahead=2, query_pool_fn=lambda rng: QUERIES,
        )
        history = run_query_loop(oracle, strat, steps=3)
        survivors = pool_from_history(PROGRAMS, history, table_resp)
        assert len(survivors) == 1
        assert survivors.programs[0] == truth
        assert oracle.query_count == 3  # IG never probes


def test_fspace_strategy_returns_valid_inputs_untrained():
    domain = ListDomain()
    params = init_params(EncoderConfig(
        example_dim=domain.example_feature_dim,
        program_dim=domain.program_feature_dim,
        embed_dim=4, hidden_dim=8, attention_hidden_dim=4,
    ))
    pool = _small_list_pool(domain)
    truth = pool[0]
    oracle = Oracle(domain, truth)
    strat = FspaceStrategy(domain, random.Random(5), params, pool, candidate_count=6)
    history = run_query_loop(oracle, strat, steps=3)
    assert len(history) == 4
    for rec in history[1:]:
        assert isinstance(rec.query, tuple) and len(rec.query) == 1
    assert oracle.query_count == 3

    lone = FspaceStrategy(domain, random.Random(5), params, pool, candidate_count=1)
    q = lone.propose(Oracle(domain, truth), history[:1])
    assert isinstance(q, tuple)


def test_pool_committee_pads_below_two_members():
    domain = TableDomain(TABLE, queries=QUERIES)
    committee_fn = make_pool_committee(PROGRAMS, table_resp, k=4)
    full = committee_fn([_start_rec()])
    assert full == list(PROGRAMS[:4])
    # history consistent only with p3
    narrowing = [_start_rec(), _rec("A", True), _rec("B", True)]
    members = committee_fn(narrowing)
    assert len(members) == 2 and members[0] == "p3"
    # impossible history: fall back to the pool front
    impossible = [_start_rec(), _rec("A", "no-such-response")]
    assert len(committee_fn(impossible)) == 2


def test_run_query_loop_rejects_zero_steps():
    domain = ListDomain()
    oracle = Oracle(domain, domain.sample_program(random.Random(0)))
    with pytest.raises(ValueError):
        run_query_loop(oracle, RandomStrategy(domain, random.Random(0)), steps=0)


def test_karel_loop_end_to_end_with_random_strategy():
    domain = KarelDomain()
    rng = random.Random(11)
    truth = domain.sample_program(rng)
    oracle = Oracle(domain, truth)
    strat = RandomStrategy(domain, random.Random(12), crash_filter=True)
    history = run_query_loop(oracle, strat, steps=3)
    assert len(history) == 4
    assert replay_matches(domain, truth, history)
