"""Behavioral-equality proxy: agreement of two programs on a finite input set."""

from __future__ import annotations

import random


def functional_equivalence(domain, p1, p2, inputs) -> bool:
    """True iff both programs produce equal responses on every input.

    Responses are the domain's query responses: grid end states in
    stay-still mode (facing included), list Values (NULL compares equal
    only to NULL).  A proxy, not a decision procedure; adding inputs can
    flip true to false, never the reverse.
    """
    inputs = list(inputs)
    if not inputs:
        raise ValueError("need at least one input")
    return all(domain.respond(p1, x) == domain.respond(p2, x) for x in inputs)


def sample_heldout_inputs(domain, prog, count, rng: random.Random, exclude=(), max_tries=None):
    """Inputs for the equivalence proxy: crash-filtered against prog and
    distinct, by serialized form, from each other and from `exclude`."""
    if count < 0:
        raise ValueError("count must be >= 0")
    seen = {domain.serialize_query(q) for q in exclude}
    out = []
    tries = 0
    cap = max_tries if max_tries is not None else 10_000 * max(count, 1)
    while len(out) < count:
        tries += 1
        if tries > cap:
            raise RuntimeError(
                f"drew {tries - 1} inputs but only {len(out)}/{count} were distinct non-crash"
            )
        query = domain.sample_query_input(rng)
        if domain.is_crash(prog, query):
            continue
        key = domain.serialize_query(query)
        if key in seen:
            continue
        seen.add(key)
        out.append(query)
    return out
