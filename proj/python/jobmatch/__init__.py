"""Many-to-one job matching with salary renegotiation."""

import json

from ._jobmatch import (
    DomainError,
    FormatError,
    InvariantViolation,
    MonotonicityError,
    ParseError,
    Valuation,
    ValidationError,
)
from . import _jobmatch

__all__ = [
    "DomainError",
    "FormatError",
    "InvariantViolation",
    "MonotonicityError",
    "ParseError",
    "Valuation",
    "ValidationError",
    "check",
    "generate",
    "iteration_bound",
    "solve",
]


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def solve(instance, floor_policy="occupancy", rejection="unmatched-workers", assert_invariants=True):
    """Return (outcome, trace) as a dict and a list of dicts."""
    outcome, trace = _jobmatch.solve(_text(instance), floor_policy, rejection, assert_invariants)
    return json.loads(outcome), [json.loads(line) for line in trace.splitlines()]


def check(instance, outcome, ps2_domain="unmatched"):
    """Return None when stable, otherwise the first violation."""
    found = _jobmatch.check(_text(instance), _text(outcome), ps2_domain)
    return None if found is None else json.loads(found)


def iteration_bound(instance):
    return _jobmatch.iteration_bound(_text(instance))


def generate(seed=1, workers=4, firms=2, max_quota=3, max_span=12, density_percent=100, fixed_salaries=False):
    return json.loads(
        _jobmatch.generate(seed, workers, firms, max_quota, max_span, density_percent, fixed_salaries)
    )
