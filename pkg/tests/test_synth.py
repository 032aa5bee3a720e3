"""Enumerative synthesis: soundness, stop reasons, and the equivalence proxy."""

import random

import pytest

from querysynth.domains import KarelDomain, ListDomain
from querysynth.karel import parse_karel, pretty
from querysynth.listproc import execute_list, parse_list_program
from querysynth.query import Oracle, QueryRecord, RandomStrategy, run_query_loop
from querysynth.synth import (
    BUDGET_EXHAUSTED,
    FIRST_CONSISTENT,
    POOL_EXHAUSTED,
    SynthesisBudget,
    functional_equivalence,
    is_consistent,
    sample_heldout_inputs,
    synthesize,
)


def karel_examples(domain: KarelDomain, prog, rng: random.Random, n: int):
    worlds = [domain.sample_query_input(rng) for _ in range(n)]
    return [(w, domain.respond(prog, w)) for w in worlds]


def test_first_mode_returns_self_consistent_candidate():
    domain = KarelDomain()
    rng = random.Random(11)
    truth = parse_karel("def run(): move()")
    examples = karel_examples(domain, truth, rng, 3)
    result = synthesize(domain, examples, SynthesisBudget(max_size=2), mode="first")
    assert result.stats.stop_reason == FIRST_CONSISTENT
    assert len(result.candidates) == 1
    got = result.candidates[0]
    for world, response in examples:
        assert domain.respond(got, world) == response


def test_contradictory_examples_exhaust_pool_without_candidates():
    domain = KarelDomain()
    rng = random.Random(5)
    world = domain.sample_query_input(rng)
    r1 = domain.respond(parse_karel("def run(): putMarker()"), world)
    r2 = domain.respond(parse_karel("def run(): turnLeft()"), world)
    assert r1 != r2
    result = synthesize(domain, [(world, r1), (world, r2)], SynthesisBudget(max_size=1))
    assert result.stats.stop_reason == POOL_EXHAUSTED
    assert result.candidates == ()
    assert result.stats.programs_enumerated == 5  # the five primitive actions


def test_list_map_plus_one_recovered_and_generalizes():
    domain = ListDomain(max_statements=1)
    rng = random.Random(23)
    truth = parse_list_program("v1 = INPUT LIST\nv2 = MAP (+1) v1")
    inputs = [domain.sample_query_input(rng) for _ in range(5)]
    examples = [(q, domain.respond(truth, q)) for q in inputs]
    result = synthesize(domain, examples, SynthesisBudget(max_size=1), mode="first")
    assert result.stats.stop_reason == FIRST_CONSISTENT
    got = result.candidates[0]
    fresh = [domain.sample_query_input(rng) for _ in range(100)]
    assert functional_equivalence(domain, got, truth, fresh)


def test_budget_exhaustion_with_empty_candidates_is_a_value():
    domain = KarelDomain()
    rng = random.Random(5)
    world = domain.sample_query_input(rng)
    r1 = domain.respond(parse_karel("def run(): putMarker()"), world)
    r2 = domain.respond(parse_karel("def run(): turnLeft()"), world)
    result = synthesize(domain, [(world, r1), (world, r2)], SynthesisBudget(max_size=2, max_programs=3))
    assert result.stats.stop_reason == BUDGET_EXHAUSTED
    assert result.candidates == ()
    assert result.stats.programs_enumerated == 3


def test_top_k_mode_collects_ranked_candidates():
    domain = ListDomain(max_statements=1)
    rng = random.Random(7)
    truth = parse_list_program("v1 = INPUT LIST\nv2 = SORT v1")
    # one example on an already-sorted list keeps several programs alive
    query = ((1, 2, 3),)
    examples = [(query, domain.respond(truth, query))]
    result = synthesize(domain, examples, SynthesisBudget(max_size=1), mode="top_k", k=4)
    assert len(result.candidates) == 4
    assert result.stats.stop_reason == BUDGET_EXHAUSTED
    for cand in result.candidates:
        assert execute_list(cand, query) == (1, 2, 3)
    # rank order is enumeration order: re-running with a bigger k keeps the prefix
    wider = synthesize(domain, examples, SynthesisBudget(max_size=1), mode="top_k", k=8)
    assert wider.candidates[:4] == result.candidates


def test_exact_mode_continues_past_first_consistent():
    domain = KarelDomain()
    rng = random.Random(31)
    truth = parse_karel("def run(): turnLeft(); turnLeft(); turnLeft()")
    target = pretty(truth)
    examples = karel_examples(domain, truth, rng, 3)
    result = synthesize(
        domain, examples, SynthesisBudget(max_size=3), mode="exact", target_text=target
    )
    assert result.stats.stop_reason == FIRST_CONSISTENT
    texts = [pretty(c) for c in result.candidates]
    assert texts[-1] == target
    # the single right turn is consistent and strictly earlier in the ranking
    assert "def run(): turnRight()" in texts


def test_start_records_carry_no_evidence():
    domain = ListDomain(max_statements=1)
    rng = random.Random(3)
    truth = parse_list_program("v1 = INPUT LIST\nv2 = REVERSE v1")
    oracle = Oracle(domain, truth)
    history = run_query_loop(oracle, RandomStrategy(domain, random.Random(4)), steps=3)
    assert history[0].is_start
    with_start = synthesize(domain, history, SynthesisBudget(max_size=1), mode="first")
    without = synthesize(domain, history[1:], SynthesisBudget(max_size=1), mode="first")
    assert pretty_text(domain, with_start) == pretty_text(domain, without)
    # the start signal alone constrains nothing: every program is consistent
    vacuous = synthesize(domain, history[:1], SynthesisBudget(max_size=1), mode="top_k", k=5)
    assert len(vacuous.candidates) == 5


def pretty_text(domain, result):
    return [domain.program_text(c) for c in result.candidates]


def test_soundness_every_candidate_reexecutes_consistently():
    domain = ListDomain(max_statements=2)
    rng = random.Random(99)
    for _ in range(10):
        truth = domain.sample_program(rng)
        inputs = [domain.sample_query_input(rng) for _ in range(4)]
        pairs = [(q, domain.respond(truth, q)) for q in inputs]
        result = synthesize(domain, pairs, SynthesisBudget(max_size=2), mode="top_k", k=6)
        assert result.candidates, "truth is in the enumerated space, so at least it must match"
        for cand in result.candidates:
            assert is_consistent(domain, cand, pairs)


def test_completeness_at_small_size():
    domain = ListDomain(max_statements=1)
    rng = random.Random(1234)
    for _ in range(8):
        truth = domain.sample_program(rng)
        inputs = [domain.sample_query_input(rng) for _ in range(5)]
        pairs = [(q, domain.respond(truth, q)) for q in inputs]
        result = synthesize(domain, pairs, SynthesisBudget(max_size=1), mode="first")
        assert result.stats.stop_reason == FIRST_CONSISTENT
        heldout = sample_heldout_inputs(domain, truth, 100, rng, exclude=inputs)
        got = result.candidates[0]
        # found program agrees with the truth everywhere we can check
        assert functional_equivalence(domain, got, truth, inputs + heldout)


def test_fe_identical_programs():
    domain = KarelDomain()
    rng = random.Random(2)
    prog = parse_karel("def run(): move(); putMarker()")
    worlds = [domain.sample_query_input(rng) for _ in range(20)]
    assert functional_equivalence(domain, prog, prog, worlds)


def test_fe_three_lefts_equal_one_right():
    domain = KarelDomain()
    rng = random.Random(17)
    lefts = parse_karel("def run(): turnLeft(); turnLeft(); turnLeft()")
    right = parse_karel("def run(): turnRight()")
    worlds = [domain.sample_query_input(rng) for _ in range(100)]
    assert functional_equivalence(domain, lefts, right, worlds)


def test_fe_map_double_vs_square_differ():
    domain = ListDomain(max_statements=1)
    double = parse_list_program("v1 = INPUT LIST\nv2 = MAP (*2) v1")
    square = parse_list_program("v1 = INPUT LIST\nv2 = MAP (**2) v1")
    agreeing = [((0, 2),)]  # 0 and 2 are fixed points of x*2 == x*x
    assert functional_equivalence(domain, double, square, agreeing)
    assert not functional_equivalence(domain, double, square, agreeing + [((3,),)])


def test_fe_monotone_never_flips_false_to_true():
    domain = ListDomain(max_statements=1)
    rng = random.Random(8)
    p1 = parse_list_program("v1 = INPUT LIST\nv2 = SORT v1")
    p2 = parse_list_program("v1 = INPUT LIST\nv2 = REVERSE v1")
    inputs = [domain.sample_query_input(rng) for _ in range(1)]
    grown = list(inputs)
    seen_false = False
    for _ in range(30):
        verdict = functional_equivalence(domain, p1, p2, grown)
        if seen_false:
            assert not verdict
        seen_false = seen_false or not verdict
        grown.append(domain.sample_query_input(rng))


def test_heldout_sampler_filters_crashes_and_dedupes():
    domain = ListDomain(max_statements=1)
    rng = random.Random(21)
    # head of an empty list is NULL, so empty inputs must be filtered out
    prog = parse_list_program("v1 = INPUT LIST\nv2 = HEAD v1")
    exclude = [domain.sample_query_input(rng) for _ in range(3)]
    drawn = sample_heldout_inputs(domain, prog, 50, rng, exclude=exclude)
    assert len(drawn) == 50
    keys = {domain.serialize_query(q) for q in drawn}
    assert len(keys) == 50
    assert keys.isdisjoint({domain.serialize_query(q) for q in exclude})
    for q in drawn:
        assert not domain.is_crash(prog, q)


def test_synthesize_validation():
    domain = ListDomain()
    budget = SynthesisBudget(max_size=1)
    with pytest.raises(ValueError):
        synthesize(domain, [], budget)
    with pytest.raises(ValueError):
        synthesize(domain, [(((1,),), (1,))], budget, mode="weird")
    with pytest.raises(ValueError):
        synthesize(domain, [(((1,),), (1,))], budget, mode="exact")
    with pytest.raises(ValueError):
        SynthesisBudget(max_size=0)
    with pytest.raises(ValueError):
        SynthesisBudget(max_size=1, max_programs=0)


def test_query_records_and_plain_pairs_are_interchangeable():
    domain = ListDomain(max_statements=1)
    truth = parse_list_program("v1 = INPUT LIST\nv2 = MAXIMUM v1")
    query = ((4, 9, 2),)
    response = domain.respond(truth, query)
    as_pair = synthesize(domain, [(query, response)], SynthesisBudget(max_size=1))
    as_record = synthesize(
        domain, [QueryRecord(query, response)], SynthesisBudget(max_size=1)
    )
    assert pretty_text(domain, as_pair) == pretty_text(domain, as_record)
