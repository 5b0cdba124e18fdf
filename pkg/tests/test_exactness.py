from fractions import Fraction as F

import numpy as np
import pytest

from partiality import exactness as ex
from partiality import simplex as sx
from partiality.errors import LimitMismatch, NotAChain, NotALowerBound, OutOfRange

S = sx.ClassicalState.of
HALF = S([F(1, 2), F(1, 2), 0])


def test_chain_sup_examples():
    x = S([0.5, 0.3, 0.2])
    assert ex.chain_sup(ex.constant_chain(x)) == x
    assert ex.chain_sup(ex.path_chain(x)) == x
    assert ex.chain_sup(ex.degeneracy_chain(0, (1, 2))) == sx.pure(3, 0, exact=True)


def test_chain_sup_rejects_bad_chains():
    x = S([0.5, 0.3, 0.2])
    backwards = ex.StateChain(lambda m: sx.line_path(x, 1 / m), x, 1, "backwards")
    with pytest.raises(NotAChain):
        ex.chain_sup(backwards)
    wrong = ex.StateChain(ex.path_chain(x).generator, sx.pure(3, 0), 1, "wrong limit")
    with pytest.raises(LimitMismatch):
        ex.chain_sup(wrong)
    short = ex.StateChain(lambda m: sx.line_path(x, 0.5 - 0.5 / m), x, 1, "stalls")
    with pytest.raises(LimitMismatch):
        ex.chain_sup(short)


def test_path_approximant_examples():
    x = S([0.6, 0.3, 0.1])
    assert ex.path_approximant(x, 0).state == sx.uniform(3)
    assert ex.path_approximant(HALF, F(1, 2)).state == S([F(5, 12), F(5, 12), F(1, 6)])
    with pytest.raises(OutOfRange):
        ex.path_approximant(x, 1)


def test_waybelow_evidence_examples():
    x = S([F(1, 2), F(1, 3), F(1, 6)])
    chains = ex.standard_chains(x)
    assert ex.check_exact_waybelow(sx.uniform(3, exact=True), x, chains).witnesses == [1] * 5
    a = ex.path_approximant(x, F(9, 10)).state
    assert ex.check_exact_waybelow(a, x, [ex.path_chain(x, r) for r in (1, 2, 3)]).passed
    assert not ex.check_exact_waybelow(x, x, [ex.path_chain(x, r) for r in (1, 2, 3)]).passed
    with pytest.raises(LimitMismatch):
        ex.check_exact_waybelow(a, x, [ex.path_chain(sx.pure(3, 0))])


def test_refuter_examples():
    ref = ex.classical_waybelow_refuter(S([0.4, 0.4, 0.2]))
    assert ref is not None
    assert ref.checked == [10 ** k for k in range(1, 7)]
    assert ref.supremum.close_to(sx.pure(3, 0))
    assert ex.classical_waybelow_refuter(sx.uniform(3, exact=True)) is None
    with pytest.raises(NotALowerBound):
        ex.classical_waybelow_refuter(S([0.4, 0.3, 0.3]))


def test_refuter_handles_permuted_target():
    x = S([F(1, 2), 0, F(1, 2)])
    a = S([F(2, 5), F(1, 5), F(2, 5)])
    ref = ex.classical_waybelow_refuter(a, x)
    assert ref is not None and sx.bayesian_leq(x, ref.supremum)


def test_coordinate_examples():
    irr = S([F(1, 2), F(1, 2), 0])
    coords = ex.coordinate_decomposition(irr)
    assert [c.state for c in coords] == [irr] and coords[0].irreducible
    bottom = ex.coordinate_decomposition(sx.uniform(3, exact=True))
    assert [c.state for c in bottom] == [sx.uniform(3, exact=True)]
    x = S([0.5, 0.3, 0.2])
    coords = ex.coordinate_decomposition(x)
    assert all(sx.bayesian_leq(c.state, x) for c in coords)
    assert ex.supremum_of_coordinates(coords).close_to(x, 1e-9)


def test_coordinates_exact_reconstruction():
    x = S([F(1, 2), F(3, 10), F(1, 5)])
    coords = ex.coordinate_decomposition(x)
    assert [c.t for c in coords] == [F(2, 11), F(1, 4)]
    assert ex.supremum_of_coordinates(coords) == x


def test_coordinates_on_random_faces():
    rng = np.random.default_rng(4)
    for _ in range(200):
        n = int(rng.integers(2, 7))
        x = sx.sample_exact_state(n, rng, denominator=9)
        coords = ex.coordinate_decomposition(x)
        assert ex.supremum_of_coordinates(coords) == x
        for c in coords:
            if c.irreducible:
                assert c.state == sx.uniform_on(n, c.support)
            else:
                assert 0 <= c.t < 1
