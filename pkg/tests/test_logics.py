import json
from fractions import Fraction as F

import numpy as np
import pytest

from partiality import logics as lg
from partiality import simplex as sx
from partiality import spectra as sp
from partiality.errors import DimensionTooLarge, NotOrthonormal

S = sx.ClassicalState.of


def test_irreducibles_n2():
    ir = lg.irreducibles_classical(2)
    assert set(ir) == {S([1, 0]), S([0, 1]), S([F(1, 2), F(1, 2)])}


def test_irreducibles_n3_count():
    assert len(lg.irreducibles_classical(3)) == 7


def test_dimension_cap():
    with pytest.raises(DimensionTooLarge):
        lg.irreducibles_classical(11)


def test_is_irreducible_examples():
    assert lg.is_irreducible_classical(sx.uniform(4, exact=True))
    assert lg.is_irreducible_classical(S([F(1, 2), F(1, 2), 0]))
    assert lg.is_irreducible_classical(S([0.5, 0.5, 0.0]))
    assert not lg.is_irreducible_classical(S([0.6, 0.4, 0.0]))
    assert not lg.is_irreducible_classical(S([F(1, 2), F(1, 4), F(1, 4)]))


def test_hasse_small_cases():
    h2 = lg.hasse_classical(2)
    assert len(h2.nodes) == 3 and len(h2.edges) == 2
    h3 = lg.hasse_classical(3)
    # covering edges of the nonempty subsets of {0,1,2}: 3 between levels 3-2, 6 between levels 2-1
    assert len(h3.nodes) == 7 and len(h3.edges) == 9


def test_hasse_edges_are_coverings():
    h = lg.hasse_classical(4)
    for a, b in h.edges:
        assert sx.bayesian_leq(h.nodes[a], h.nodes[b])
        assert not any(sx.bayesian_leq(h.nodes[a], z) and sx.bayesian_leq(z, h.nodes[b])
                       for k, z in enumerate(h.nodes) if k not in (a, b))


def test_dual_isomorphism_and_grading():
    for n in range(2, 6):
        h = lg.hasse_classical(n)
        assert lg.check_dual_isomorphism(n, h).ok
        bottom = h.nodes.index(sx.uniform(n, exact=True))
        assert lg.chain_lengths_to_maxima(h, bottom) == {n - 1}


def test_exports():
    h = lg.hasse_classical(3)
    dot = h.to_dot()
    assert dot.startswith("digraph") and '"{0,1}"' in dot and dot.count("->") == 9
    obj = json.loads(h.to_json())
    assert len(obj["nodes"]) == 7 and len(obj["edges"]) == 9
    assert obj["nodes"][0]["p"] == [[1, 3], [1, 3], [1, 3]]


def test_uniform_projection_examples():
    assert np.allclose(lg.uniform_projection_state(list(np.eye(3))).matrix, np.eye(3) / 3)
    v = np.array([1, 1j, 0]) / np.sqrt(2)
    assert lg.uniform_projection_state([v]).is_pure()
    w = np.array([0, 0, 1])
    q = sp.spectrum_descending(lg.uniform_projection_state([v, w]))
    assert q.close_to(S([0.5, 0.5, 0.0]), 1e-12)
    with pytest.raises(NotOrthonormal):
        lg.uniform_projection_state([np.array([1, 0, 0]), np.array([1, 1, 0])])


def test_quantum_logic_examples():
    rng = np.random.default_rng(9)
    u = sp.random_unitary(3, rng)
    v, w = u[:, 0], u[:, 1]
    uv, uw = lg.uniform_projection_state([v]), lg.uniform_projection_state([v, w])
    assert sp.spectral_leq(uw, uv) and not sp.spectral_leq(uv, uw)
    u2 = sp.random_unitary(3, rng)
    a, b = lg.uniform_projection_state([u[:, 0]]), lg.uniform_projection_state([u2[:, 0]])
    assert not sp.spectral_leq(a, b) and not sp.spectral_leq(b, a)
    whole = lg.uniform_projection_state(list(u.T))
    assert sp.spectral_leq(whole, a)


def test_quantum_consistency_report():
    rep = lg.quantum_logic_consistency(3, 200, np.random.default_rng(1))
    assert rep.ok and rep.checked == 400
