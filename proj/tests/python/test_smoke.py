import json
import os

import pytest

import jobmatch

DATA = os.environ.get("JOBMATCH_TEST_DATA", os.path.join(os.path.dirname(__file__), "..", "data"))


def load(name):
    with open(os.path.join(DATA, name)) as fh:
        return json.load(fh)


def test_valuation_searches():
    g = jobmatch.Valuation("10 - z", 0, 5, increasing=False)
    assert g(3) == 7
    assert g.domain == (0, 5)
    assert g.greatest_arg_reaching(6.5) == 3
    assert g.greatest_arg_reaching(11) is None
    f = jobmatch.Valuation("z^2", 0, 4)
    assert f.least_arg_reaching(5) == 3


def test_valuation_errors():
    with pytest.raises(jobmatch.MonotonicityError):
        jobmatch.Valuation("z", 0, 3, increasing=False)
    with pytest.raises(jobmatch.ParseError):
        jobmatch.Valuation("z +", 0, 3)
    with pytest.raises(jobmatch.DomainError):
        jobmatch.Valuation("z", 0, 3)(7)


def test_competition_instance():
    inst = load("competition.json")
    outcome, trace = jobmatch.solve(inst)
    assert outcome["stable"] is True
    assert outcome["iterations"] == 7
    assert outcome["matches"] == [{"firm": "A", "workers": [{"worker": "w2", "salary": 0}]}]
    with open(os.path.join(DATA, "competition.trace.jsonl")) as fh:
        assert trace == [json.loads(line) for line in fh]
    assert jobmatch.check(inst, outcome) is None


def test_tampered_outcome_is_rejected():
    inst = load("competition.json")
    outcome, _ = jobmatch.solve(inst)
    outcome.pop("salaries")
    outcome["matches"][0]["workers"][0]["salary"] = 3
    found = jobmatch.check(inst, outcome)
    assert found["kind"] == "blocking_pair"
    assert found["pair"] == ["w1", "A"] and found["salary"] == 1
    outcome["matches"][0]["workers"][0]["salary"] = 5
    with pytest.raises(jobmatch.FormatError):
        jobmatch.check(inst, outcome)


def test_generated_corpus_is_stable():
    for seed in range(1, 51):
        inst = jobmatch.generate(seed=seed, workers=5, firms=3)
        outcome, trace = jobmatch.solve(inst)
        assert outcome["stable"] is True
        assert outcome["iterations"] <= jobmatch.iteration_bound(inst)
        assert jobmatch.check(inst, outcome) is None
        assert trace[-1]["kind"] == "terminate"


def test_invalid_input():
    with pytest.raises(ValueError):
        jobmatch.solve({"workers": ["w"], "firms": [{"id": "A", "quota": 0}], "pairs": []})
    with pytest.raises(jobmatch.InvariantViolation):
        jobmatch.solve(load("tie_rejection_invariant.json"), rejection="all-unmatched-pairs")
