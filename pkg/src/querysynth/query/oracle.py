"""The hidden program behind a counter."""

from __future__ import annotations


class Oracle:
    """Deterministic respondent wrapping a domain program.

    Every call that reaches the hidden program bumps query_count, crash
    probes included, so probe overhead shows up in reported totals.
    """

    def __init__(self, domain, program):
        self.domain = domain
        self.program = program
        self.query_count = 0

    def respond(self, query):
        self.query_count += 1
        return self.domain.respond(self.program, query)

    def probe_crash(self, query) -> bool:
        self.query_count += 1
        return self.domain.is_crash(self.program, query)
