import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from partiality import kernel as k
from partiality.errors import HorizonTooSmall, NoConvergence, NotInvariant, OutOfRange, PartialityError

I = k.Interval


def test_interval_order_examples():
    assert k.interval_leq(I(0, 2), I(0.5, 1))
    assert k.interval_leq(I(0, 1), I(0, 1))
    assert not k.interval_leq(I(0.5, 1), I(0, 2))


def test_interval_waybelow_examples():
    assert k.interval_waybelow(I(0, 2), I(0.5, 1))
    assert not k.interval_waybelow(I(0, 1), I(0, 1))
    assert not k.interval_waybelow(I(0, 1), I(0, 0.5))


def test_interval_rejects_reversed_endpoints():
    with pytest.raises(OutOfRange):
        I(1, 0)


def test_measure_values():
    assert k.measure_value(k.LENGTH, I(1, 3)) == 2
    assert k.measure_value(k.POWERSET, k.NatSet.finite()) == 1
    assert k.measure_value(k.POWERSET, k.NatSet.finite([0])) == 0.5


def test_powerset_measure_of_rule_set_is_certified():
    evens = k.NatSet.from_rule(lambda n: n % 2 == 0)
    # 1 - (1/2 + 1/8 + 1/32 + ...) = 1/3, tail below 2^-64
    assert abs(k.natset_measure(evens) - 1 / 3) < 1e-15
    with pytest.raises(HorizonTooSmall):
        k.natset_measure(evens, tol=2.0 ** -80)


def test_mu_ball_examples():
    x = I(1, 1)
    assert k.mu_ball_contains(k.LENGTH, x, I(0.5, 1.5), 2)
    assert not k.mu_ball_contains(k.LENGTH, x, I(0, 3), 2)
    assert k.mu_ball_contains(k.LENGTH, x, x, 1e-12)


def test_mu_ball_needs_a_kernel_point():
    with pytest.raises(PartialityError):
        k.mu_ball_contains(k.LENGTH, I(0, 1), I(0, 1), 1)


def test_string_waybelow_examples():
    eps = k.BitString()
    t = k.BitString.parse("0110")
    assert k.string_waybelow(eps, t)
    assert k.string_waybelow(k.BitString.parse("01"), t)
    zeros = k.BitString(tail=lambda i: 0)
    assert not k.string_waybelow(zeros, zeros)


def test_infinite_strings_past_the_horizon():
    a = k.BitString(tail=lambda i: 0, horizon=16)
    b = k.BitString(tail=lambda i: 0 if i < 100 else 1, horizon=16)
    with pytest.raises(HorizonTooSmall):
        k.bitstring_leq(a, b)
    assert k.bitstring_leq(k.BitString.parse("00"), b)
    assert k.bitstring_leq(a, a)


def test_natset_waybelow_examples():
    omega = k.OMEGA
    assert k.natset_waybelow(k.NatSet.finite(), omega)
    assert k.natset_waybelow(k.NatSet.finite([1, 2]), omega)
    assert not k.natset_waybelow(omega, omega)


def test_pmap_waybelow_examples():
    g = k.PartialNatMap({1: 1, 2: 4})
    assert k.pmap_waybelow(k.PartialNatMap(), g)
    assert k.pmap_waybelow(k.PartialNatMap({1: 1}), g)
    assert not k.pmap_waybelow(k.PartialNatMap({1: 2}), k.PartialNatMap({1: 3}))


def test_fixpoint_examples():
    x = k.fixpoint_iterate(lambda v: v / 2 + 1, I(0, 10), 60)
    assert x.contains(2) and x.width < 1e-9
    assert k.fixpoint_iterate(lambda v: v, I(-1, 3), 25) == I(-1, 3)
    c = k.fixpoint_iterate(math.cos, I(0, 1), 200)
    assert c.contains(0.7390851332151607) and c.width < 1e-9


def test_fixpoint_chain_shrinks():
    chain = list(k.fixpoint_chain(math.cos, I(0, 1), 50))
    assert len(chain) == 51
    assert all(k.interval_leq(a, b) for a, b in zip(chain, chain[1:]))


def test_fixpoint_rejects_non_invariant_seed():
    with pytest.raises(NotInvariant):
        k.fixpoint_iterate(lambda v: v + 1, I(0, 1), 5)


def test_derivative_examples():
    assert abs(k.informatic_derivative(lambda v: v * v, 2.0) - 4) < 1e-4
    assert k.informatic_derivative(lambda v: 7.0, 0.3) == 0
    assert abs(k.informatic_derivative(math.sin, 0.0) - 1) < 1e-4


def test_derivative_reports_no_convergence():
    with pytest.raises(NoConvergence):
        k.informatic_derivative(lambda v: math.copysign(abs(v) ** (1 / 3), v), 0.0)


@pytest.mark.parametrize("name,f,df,points", [
    ("x^2", lambda v: v * v, lambda v: 2 * v, (-1.5, -0.5, 0.3, 1.0, 2.0)),
    ("sin", math.sin, math.cos, (-1.0, -0.3, 0.0, 0.5, 1.2)),
    ("exp", math.exp, math.exp, (-2.0, -0.5, 0.0, 1.0, 2.0)),
    ("3x+1", lambda v: 3 * v + 1, lambda v: 3.0, (-2.0, -1.0, 0.0, 1.0, 2.5)),
])
def test_derivative_matches_absolute_slope(name, f, df, points):
    for p in points:
        assert abs(k.informatic_derivative(f, p) - abs(df(p))) <= 1e-4, (name, p)


finite = st.floats(-100, 100, allow_nan=False)


@given(finite, finite, finite, finite)
def test_waybelow_implies_order_and_basic_open(a, b, c, d):
    x, y = I(min(a, b), max(a, b)), I(min(c, d), max(c, d))
    if k.interval_waybelow(x, y):
        assert k.interval_leq(x, y)
    assert k.in_basic_open(y, x) == k.interval_waybelow(x, y)


@given(st.lists(st.integers(0, 20), max_size=6), st.lists(st.integers(0, 20), max_size=6))
def test_powerset_measure_reverses_order(xs, ys):
    x, y = k.NatSet.finite(xs), k.NatSet.finite(set(xs) | set(ys))
    assert k.natset_leq(x, y)
    assert k.POWERSET(x) >= k.POWERSET(y)
    assert k.POWERSET(x) > 0
