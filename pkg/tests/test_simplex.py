import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from partiality import simplex as sx
from partiality.errors import DimensionMismatch, DimensionTooLarge, InvalidState, OutOfRange, UndefinedAtPure

S = sx.ClassicalState.of


def test_state_validation():
    with pytest.raises(InvalidState):
        S([0.5, 0.6])
    with pytest.raises(InvalidState):
        S([1.0])
    with pytest.raises(InvalidState):
        S([F(1, 2), F(1, 3), F(1, 3)])
    assert S([F(1, 2), F(1, 2)]).exact
    assert not S([0.5, 0.5]).exact


def test_base2_examples():
    assert sx.bayesian_leq_base2(S([0.4, 0.6]), S([0.1, 0.9]))
    assert sx.bayesian_leq_base2(S([0.5, 0.5]), S([0.9, 0.1]))
    assert not sx.bayesian_leq_base2(S([0.3, 0.7]), S([0.6, 0.4]))
    with pytest.raises(DimensionMismatch):
        sx.bayesian_leq_base2(S([0.5, 0.5]), sx.uniform(3))


@pytest.mark.parametrize("decide", [sx.bayesian_leq_recursive, sx.bayesian_leq_symmetric])
def test_decider_examples(decide):
    assert decide(sx.uniform(3), S([0.5, 0.3, 0.2]))
    assert decide(S([0.6, 0.2, 0.2]), S([0.8, 0.1, 0.1]))
    assert not decide(S([0.5, 0.5, 0]), S([0.6, 0.3, 0.1]))


def test_dimension_errors():
    with pytest.raises(DimensionMismatch):
        sx.bayesian_leq(sx.uniform(3), sx.uniform(4))
    with pytest.raises(DimensionTooLarge):
        sx.bayesian_leq_recursive(sx.uniform(9), sx.uniform(9))


def test_explanation_reports_witness_or_failure():
    ok = sx.bayesian_explain(S([0.6, 0.2, 0.2]), S([0.8, 0.1, 0.1]))
    assert ok.leq and ok.permutation == (0, 1, 2)
    bad = sx.bayesian_explain(S([0.5, 0.5, 0]), S([0.6, 0.3, 0.1]))
    assert not bad.leq and bad.failing_index is not None


def test_projection_examples():
    assert sx.bayes_projection(2, S([0.2, 0.3, 0.5])).close_to(S([0.4, 0.6]))
    assert sx.bayes_projection(1, sx.uniform(4, exact=True)) == sx.uniform(3, exact=True)
    with pytest.raises(UndefinedAtPure):
        sx.bayes_projection(0, sx.pure(3, 0))


def test_projection_plus_examples():
    assert sx.bayes_projection_plus(0, sx.uniform(3, exact=True)) == S([0, F(1, 2), F(1, 2)])
    assert sx.bayes_projection_plus(2, S([0.2, 0.3, 0.5])).close_to(S([0.4, 0.6, 0.0]))
    with pytest.raises(UndefinedAtPure):
        sx.bayes_projection_plus(1, sx.pure(3, 1))


def test_mixing_examples():
    x, y = S([0.2, 0.3, 0.5]), S([0.1, 0.1, 0.8])
    assert sx.mixing_combine(x, y, 0) == x
    assert sx.mixing_combine(x, y, 1) == y
    assert sx.mixing_combine(sx.uniform(3, True), sx.pure(3, 0, True), F(1, 2)) == S([F(2, 3), F(1, 6), F(1, 6)])
    with pytest.raises(OutOfRange):
        sx.mixing_combine(x, y, 1.5)


def test_entropy_examples():
    assert sx.shannon_entropy(sx.pure(4, 2)) == 0
    assert math.isclose(sx.shannon_entropy(sx.uniform(5)), math.log(5), rel_tol=1e-12)
    assert abs(sx.shannon_entropy(S([0.25, 0.75])) - 0.5623) < 1e-4
    assert math.isclose(sx.shannon_entropy(sx.uniform(8), base=2), 3.0)


def test_sort_retraction_examples():
    assert sx.sort_retraction(S([0.2, 0.5, 0.3])).close_to(S([0.5, 0.3, 0.2]))
    m = sx.sort_retraction(S([0.5, 0.3, 0.2]))
    assert sx.sort_retraction(m) == m
    assert sx.sort_retraction(sx.pure(3, 1)).p == sx.pure(3, 0).p
    with pytest.raises(InvalidState):
        sx.MonotoneState((0.2, 0.8), False)


def test_line_path_examples():
    x = S([0.2, 0.3, 0.5])
    assert sx.line_path(x, 0) == sx.uniform(3)
    assert sx.line_path(x, 1) == x
    assert sx.line_path(sx.pure(2, 0, True), F(1, 2)) == S([F(3, 4), F(1, 4)])


def test_samplers():
    rng = np.random.default_rng(42)
    x = sx.sample_state(3, rng)
    assert abs(sum(x.p) - 1) <= 1e-12
    lo, y = sx.sample_comparable_pair(4, rng, t=0)
    assert lo == sx.uniform(4)
    for _ in range(200):
        a, b = sx.sample_comparable_pair(5, rng)
        assert sx.bayesian_leq_recursive(a, b) and sx.bayesian_leq_symmetric(a, b)


def test_degeneracy_example():
    # y has a tie between its two positive smaller coordinates; x must share it
    y = S([F(1, 2), F(1, 4), F(1, 4)])
    assert sx.bayesian_leq(S([F(2, 5), F(3, 10), F(3, 10)]), y)
    assert not sx.bayesian_leq(S([F(2, 5), F(7, 20), F(1, 4)]), y)


def test_exact_ties_do_not_need_search():
    # heavy ties in exact mode are decided by the two sorts alone
    x = sx.uniform_on(8, range(4))
    y = sx.uniform_on(8, range(2))
    assert sx.bayesian_leq(x, y) and not sx.bayesian_leq(y, x)


def simplex_points(n):
    return st.lists(st.integers(0, 12), min_size=n, max_size=n).filter(any).map(
        lambda v: S([F(a, sum(v)) for a in v]))


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 5).flatmap(lambda n: st.tuples(simplex_points(n), simplex_points(n))))
def test_deciders_agree_on_exact_tie_heavy_states(pair):
    x, y = pair
    assert sx.bayesian_leq_recursive(x, y) == sx.bayesian_leq_symmetric(x, y)


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 5).flatmap(simplex_points), st.fractions(0, 1))
def test_path_is_monotone(x, t):
    z = sx.line_path(x, t)
    assert sx.bayesian_leq(z, x)
    assert sx.bayesian_leq(sx.uniform(x.n, exact=True), z)
