"""Oracle and property tests for the BBOB problem implementations.

tests/fixtures/bbob_reference.json holds values frozen from an
established third-party implementation of the same suite (24 classes x
5 instances at d=10: optima plus 5 random evaluation points each).
"""

import json
from pathlib import Path

import numpy as np
import pytest

from probscape import bbob

FIXTURE = Path(__file__).parent / "fixtures" / "bbob_reference.json"


def load_reference():
    with open(FIXTURE) as fh:
        return json.load(fh)["problems"]


REFERENCE = load_reference()


def rel_err(got, want):
    return abs(got - want) / max(1.0, abs(want))


@pytest.mark.parametrize("case", REFERENCE, ids=lambda c: f"f{c['class_id']:02d}i{c['instance_id']}")
def test_reference_values(case):
    problem = bbob.make_problem(case["class_id"], case["instance_id"], case["dim"])
    assert np.allclose(problem.x_opt, case["x_opt"], atol=1e-9)
    assert rel_err(problem.f_opt, case["f_opt"]) < 1e-9
    for x, want in zip(case["points"], case["values"]):
        assert rel_err(problem.evaluate(np.array(x)), want) < 1e-6


@pytest.mark.parametrize("case", REFERENCE, ids=lambda c: f"f{c['class_id']:02d}i{c['instance_id']}")
def test_optimum_is_attained(case):
    problem = bbob.make_problem(case["class_id"], case["instance_id"], case["dim"])
    got = problem.evaluate(problem.x_opt)
    assert rel_err(got, problem.f_opt) < 1e-6


def test_global_minimality_random_sampling():
    # no random point beats the claimed optimum, for every suite problem
    rng = np.random.default_rng(7)
    for case in REFERENCE:
        problem = bbob.make_problem(case["class_id"], case["instance_id"],
                                    case["dim"])
        xs = rng.uniform(bbob.LOWER, bbob.UPPER, size=(10_000, case["dim"]))
        assert problem.evaluate_many(xs).min() > problem.f_opt - 1e-9


def test_determinism():
    a = bbob.make_problem(8, 3, 10)
    b = bbob.make_problem(8, 3, 10)
    x = np.linspace(-4, 4, 10)
    assert a.evaluate(x) == b.evaluate(x)
    assert np.array_equal(a.x_opt, b.x_opt)


def test_evaluate_many_matches_scalar():
    problem = bbob.make_problem(17, 2, 10)
    xs = np.random.default_rng(3).uniform(-5, 5, size=(20, 10))
    many = problem.evaluate_many(xs)
    singles = [problem.evaluate(x) for x in xs]
    assert np.allclose(many, singles, rtol=1e-12)


def test_invalid_class_and_dim():
    with pytest.raises(ValueError):
        bbob.make_problem(0, 1, 10)
    with pytest.raises(ValueError):
        bbob.make_problem(25, 1, 10)
    with pytest.raises(ValueError):
        bbob.make_problem(1, 1, 1)


def test_x_opt_within_bounds():
    for class_id in range(1, bbob.N_CLASSES + 1):
        problem = bbob.make_problem(class_id, 1, 10)
        assert np.all(problem.x_opt >= bbob.LOWER)
        assert np.all(problem.x_opt <= bbob.UPPER)


def test_fopt_range():
    # target values are clipped to +-1000 by construction
    for case in REFERENCE:
        assert -1000.0 <= case["f_opt"] <= 1000.0
