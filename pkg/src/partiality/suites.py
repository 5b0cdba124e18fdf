"""Seeded property suites.

Each property draws its own samples from a generator seeded by
``(seed, crc32(name))`` so results do not depend on which other properties
ran.  A property returns a :class:`PropertyResult` counting checks and
violations; the CLI ``check`` command and the acceptance tests both run
these.
"""

from __future__ import annotations

import math
import zlib
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable

import numpy as np

from . import exactness as ex
from . import kernel as k
from . import logics as lg
from . import simplex as sx
from . import spectra as sp

DEFAULT_SEED = 0xC0ECE


@dataclass
class PropertyResult:
    name: str
    checked: int = 0
    violations: int = 0
    examples: list = field(default_factory=list)
    tally: dict = field(default_factory=dict)

    def record(self, ok: bool, detail=None, tag: str | None = None) -> None:
        self.checked += 1
        if tag is not None:
            self.tally[tag] = self.tally.get(tag, 0) + 1
        if not ok:
            self.violations += 1
            if len(self.examples) < 5:
                self.examples.append(repr(detail))

    @property
    def passed(self) -> bool:
        return self.checked > 0 and self.violations == 0

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "checked": self.checked,
               "violations": self.violations, "examples": self.examples}
        if self.tally:
            out["tally"] = dict(sorted(self.tally.items()))
        return out


PROPERTIES: dict[str, Callable] = {}


def prop(name: str):
    def register(fn):
        PROPERTIES[name] = fn
        fn.property_name = name
        return fn
    return register


def rng_for(name: str, seed: int) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(name.encode())])


def run_property(name: str, seed: int = DEFAULT_SEED, samples: int = 1000, **kw) -> PropertyResult:
    res = PropertyResult(name)
    PROPERTIES[name](res, rng_for(name, seed), samples, **kw)
    return res


def run_all(seed: int = DEFAULT_SEED, samples: int = 200, only: str | None = None) -> list[PropertyResult]:
    names = [n for n in PROPERTIES if only is None or n.startswith(only)]
    return [run_property(n, seed, samples) for n in names]


# -- samplers ----------------------------------------------------------------


def face_state(n: int, rng) -> sx.ClassicalState:
    """Random state with at least one zero coordinate."""
    k = int(rng.integers(1, n))
    inner = sx.sample_state(k, rng).p if k >= 2 else (1.0,)
    idx = rng.permutation(n)[:k]
    vals = [0.0] * n
    for i, v in zip(idx, inner):
        vals[i] = v
    return sx.ClassicalState(tuple(vals), False)


def tempered_pair(n: int, rng):
    """``(x, y)`` with ``x`` below ``y`` built by flattening ratios, then mixing toward ⊥."""
    y = face_state(n, rng) if rng.uniform() < 0.3 else sx.sample_state(n, rng)
    alpha = float(rng.uniform())
    z = ex.power_chain(y)  # any element is below y
    m = max(1, int(1 / max(1e-9, 1 - alpha)) - 1)
    x = sx.line_path(z(m), float(rng.uniform()))
    return x, y


def exact_comparable(n: int, rng):
    y = sx.sample_exact_state(n, rng)
    t = Fraction(int(rng.integers(0, 7)), 6)
    return sx.line_path(y, t), y


def mixed_pairs(n: int, rng, samples: int):
    """Random, comparable, tempered and exact tie-heavy pairs."""
    for _ in range(samples):
        yield sx.sample_state(n, rng), sx.sample_state(n, rng)
        yield sx.sample_comparable_pair(n, rng)
        yield tempered_pair(n, rng)
        yield sx.sample_exact_state(n, rng), sx.sample_exact_state(n, rng)
        yield exact_comparable(n, rng)


# -- simplex -----------------------------------------------------------------


@prop("simplex.decider_equivalence")
def _decider_equivalence(res, rng, samples, ns=range(2, 7)):
    for n in ns:
        for _ in range(samples):
            for x, y in ((sx.sample_state(n, rng), sx.sample_state(n, rng)),
                         sx.sample_comparable_pair(n, rng)):
                a, b = sx.bayesian_leq_recursive(x, y), sx.bayesian_leq_symmetric(x, y)
                res.record(a == b, (x, y, a, b))
        for _ in range(max(1, samples // 10)):
            for x, y in ((sx.sample_exact_state(n, rng), sx.sample_exact_state(n, rng)),
                         exact_comparable(n, rng), tempered_pair(n, rng)):
                a, b = sx.bayesian_leq_recursive(x, y), sx.bayesian_leq_symmetric(x, y)
                res.record(a == b, (x, y, a, b))


@prop("simplex.comparable_pairs")
def _comparable_pairs(res, rng, samples, ns=range(2, 7)):
    for n in ns:
        for _ in range(samples):
            x, y = sx.sample_comparable_pair(n, rng)
            res.record(sx.bayesian_leq_recursive(x, y) and sx.bayesian_leq_symmetric(x, y), (x, y))


@prop("simplex.order_axioms")
def _simplex_axioms(res, rng, samples, ns=range(2, 7)):
    leq = sx.bayesian_leq
    for n in ns:
        for _ in range(samples):
            x = sx.sample_state(n, rng) if rng.uniform() < 0.7 else face_state(n, rng)
            res.record(leq(x, x), ("reflexive", x), "reflexive")
            # antisymmetry: random pairs, comparable pairs and small perturbations
            y = sx.sample_state(n, rng)
            d = rng.normal(size=n)
            d -= d.mean()
            scale = 10.0 ** rng.uniform(-7, -3)
            pert = np.clip(x.array() + scale * d, 0, None)
            pert /= pert.sum()
            pert[np.argmax(pert)] += 1 - pert.sum()
            for a, b in ((x, y), sx.sample_comparable_pair(n, rng),
                         (x, sx.ClassicalState(tuple(map(float, pert)), False))):
                if leq(a, b) and leq(b, a):
                    res.record(a.close_to(b, sx.TIE_EPS), ("antisymmetric", a, b), "antisymmetric")
                else:
                    res.record(True, tag="antisymmetric")
            # transitivity along two mixing steps
            x1, y1 = sx.sample_comparable_pair(n, rng)
            x2 = sx.mixing_combine(x1, y1, float(rng.uniform()))
            ok = leq(x1, x2) and leq(x2, y1) and leq(x1, y1)
            res.record(ok, ("transitive", x1, x2, y1), "transitive")
            a, b = tempered_pair(n, rng)
            c = sx.mixing_combine(a, b, float(rng.uniform()))
            if leq(a, c) and leq(c, b):
                res.record(leq(a, b), ("transitive", a, c, b), "transitive")


@prop("simplex.bottom_and_maxima")
def _bottom_and_maxima(res, rng, samples, ns=range(2, 7)):
    for n in ns:
        bot = sx.uniform(n)
        pures = [sx.pure(n, i) for i in range(n)]
        for _ in range(samples):
            x = sx.sample_state(n, rng) if rng.uniform() < 0.7 else face_state(n, rng)
            res.record(sx.bayesian_leq(bot, x), ("bottom", x))
            top = int(np.argmax(x.array()))
            res.record(sx.bayesian_leq(x, pures[top]), ("below pure", x))
            # only pure states are maximal
            res.record(x.is_pure() or x.close_to(pures[top]) or not sx.bayesian_leq(pures[top], x),
                       ("not maximal", x))
            e = pures[int(rng.integers(n))]
            res.record(not sx.bayesian_leq(e, x) or x.close_to(e), ("pure maximal", e, x))


def degeneracy_holds(x, y, eps: float = sx.TIE_EPS) -> bool:
    xs, ys = [float(v) for v in x.p], [float(v) for v in y.p]
    for i, j in combinations(range(len(xs)), 2):
        if ys[i] > eps and abs(ys[i] - ys[j]) <= (0 if (x.exact and y.exact) else eps):
            if abs(xs[i] - xs[j]) > eps:
                return False
    return True


def _irreducible_pairs(n: int, rng):
    s = [i for i in range(n) if rng.uniform() < 0.5] or [0]
    u = sx.uniform_on(n, s)
    return sx.line_path(u, Fraction(int(rng.integers(0, 5)), 4)), u


@prop("simplex.degeneracy")
def _degeneracy(res, rng, samples, ns=range(2, 7)):
    for n in ns:
        for x, y in mixed_pairs(n, rng, samples):
            for a, b in ((x, y), (y, x)):
                if sx.bayesian_leq(a, b):
                    res.record(degeneracy_holds(a, b), (a, b))
        for _ in range(samples):
            a, b = _irreducible_pairs(n, rng)
            if sx.bayesian_leq(a, b):
                res.record(degeneracy_holds(a, b), (a, b))


T_GRID = tuple(k / 10 for k in range(1, 10))


@prop("simplex.mixing_law")
def _mixing_law(res, rng, samples, ns=range(2, 7)):
    per_n = max(1, samples // len(ns))
    for n in ns:
        for k in range(per_n):
            x, y = (sx.sample_comparable_pair(n, rng), tempered_pair(n, rng),
                    exact_comparable(n, rng))[k % 3]
            if not sx.bayesian_leq(x, y):
                res.record(False, ("not comparable", x, y))
                continue
            for t in T_GRID:
                z = sx.mixing_combine(x, y, t)
                res.record(sx.bayesian_leq(x, z) and sx.bayesian_leq(z, y), (x, y, t))


def _entropy_checks(res, mu, a, b, close):
    ha, hb = mu(a), mu(b)
    res.record(ha >= hb - 1e-12, ("monotone", a, b, ha, hb))
    if not close:
        res.record(ha > hb, ("strict", a, b, ha, hb))


@prop("simplex.entropy_measurement")
def _shannon_measurement(res, rng, samples, ns=range(2, 7)):
    for n in ns:
        for _ in range(samples):
            x, y = (sx.sample_comparable_pair if rng.uniform() < 0.5 else tempered_pair)(n, rng)
            if sx.bayesian_leq(x, y):
                _entropy_checks(res, sx.shannon_entropy, x, y, x.close_to(y, 1e-6))
        res.record(abs(sx.shannon_entropy(sx.uniform(n)) - math.log(n)) < 1e-12, ("log n", n))
        res.record(sx.shannon_entropy(sx.pure(n, 0)) == 0, ("pure", n))


@prop("simplex.projection_monotone")
def _projection_monotone(res, rng, samples, ns=range(3, 7)):
    for n in ns:
        for _ in range(samples):
            x, y = (sx.sample_comparable_pair if rng.uniform() < 0.5 else tempered_pair)(n, rng)
            if not sx.bayesian_leq(x, y):
                continue
            for i in range(n):
                if x.is_pure() or y.is_pure() or float(x[i]) > 1 - 1e-9 or float(y[i]) > 1 - 1e-9:
                    continue
                px, py = sx.bayes_projection(i, x), sx.bayes_projection(i, y)
                res.record(sx.bayesian_leq(px, py), (i, x, y))


# -- spectra -----------------------------------------------------------------


def _frame_chain(n: int, rng):
    u = sp.random_unitary(n, rng)
    x, y = sx.sample_comparable_pair(n, rng)
    z = sx.mixing_combine(x, y, float(rng.uniform()))
    return [sp.frame_state(u, s) for s in (x, z, y)], u


@prop("spectra.order_axioms")
def _spectral_axioms(res, rng, samples, ns=range(2, 5)):
    leq = sp.spectral_leq
    for n in ns:
        for _ in range(samples):
            rho = sp.sample_density(n, rng)
            res.record(leq(rho, rho), ("reflexive", rho), "reflexive")
            (a, b, c), u = _frame_chain(n, rng)
            res.record(leq(a, b) and leq(b, c) and leq(a, c), ("transitive", a, b, c), "transitive")
            sigma = sp.sample_density(n, rng)
            w = sp.frame_state(u, sx.sample_state(n, rng))
            for p, q in ((rho, sigma), (a, c), (a, w), (rho, sp.conjugate(rho, np.eye(n)))):
                if leq(p, q) and leq(q, p):
                    res.record(p.close_to(q, 1e-8), ("antisymmetric", p, q), "antisymmetric")
                else:
                    res.record(True, tag="antisymmetric")


@prop("spectra.pure_maximal")
def _pure_maximal(res, rng, samples, ns=range(2, 5)):
    for n in ns:
        for _ in range(samples):
            u = sp.random_unitary(n, rng)
            rho = sp.frame_state(u, sx.pure(n, int(rng.integers(n))))
            for sigma in (sp.sample_density(n, rng), sp.frame_state(u, sx.sample_state(n, rng)), rho):
                if sp.spectral_leq(rho, sigma):
                    res.record(sigma.close_to(rho, 1e-8), ("pure not maximal", rho, sigma))
                else:
                    res.record(True)


@prop("spectra.bottom")
def _spectral_bottom(res, rng, samples, ns=range(2, 5)):
    for n in ns:
        bot = sp.DensityMatrix(np.eye(n) / n)
        for _ in range(samples):
            rho = sp.sample_density(n, rng)
            res.record(sp.spectral_leq(bot, rho), ("bottom", rho))


@prop("spectra.bloch_agreement")
def _bloch_agreement(res, rng, samples, random_pairs: int | None = None):
    random_pairs = samples if random_pairs is None else random_pairs
    for _ in range(random_pairs):
        a, b = sp.sample_density(2, rng), sp.sample_density(2, rng)
        res.record(sp.spectral_leq(a, b) == sp.bloch_leq(sp.bloch_from_density(a), sp.bloch_from_density(b)),
                   (a, b))
    for _ in range(samples):
        a, b = sp.sample_comparable_density_pair(2, rng)
        for p, q in ((a, b), (b, a)):
            res.record(sp.spectral_leq(p, q) == sp.bloch_leq(sp.bloch_from_density(p), sp.bloch_from_density(q)),
                       (p, q))


@prop("spectra.samplers_and_bloch")
def _samplers_and_bloch(res, rng, samples, ns=range(2, 5)):
    for n in ns:
        for _ in range(samples):
            rho = sp.sample_density(n, rng)
            try:
                sp.validate_density(rho.matrix)
                res.record(True)
            except Exception as e:  # noqa: BLE001 - any rejection is a violation here
                res.record(False, ("invalid sample", e))
            a, b = sp.sample_comparable_density_pair(n, rng)
            res.record(sp.commutator_norm(a, b) < 1e-9 and sp.spectral_leq(a, b), ("pair", a, b))
    for _ in range(samples):
        rho = sp.sample_density(2, rng)
        back = sp.density_from_bloch(sp.bloch_from_density(rho))
        res.record(back.close_to(rho, 1e-10), ("bloch round trip", rho))


@prop("spectra.entropy_measurement")
def _vn_measurement(res, rng, samples, ns=range(2, 5)):
    for n in ns:
        for _ in range(samples):
            a, b = sp.sample_comparable_density_pair(n, rng)
            if sp.spectral_leq(a, b):
                _entropy_checks(res, sp.von_neumann_entropy, a, b, a.close_to(b, 1e-6))
            else:
                res.record(False, ("comparable pair rejected", a, b))


@prop("spectra.unitary_invariance")
def _unitary_invariance(res, rng, samples, ns=range(2, 5)):
    for n in ns:
        for k in range(samples):
            a, b = (sp.sample_comparable_density_pair(n, rng) if k % 2 else
                    (sp.sample_density(n, rng), sp.sample_density(n, rng)))
            u = sp.random_unitary(n, rng)
            before = sp.spectral_leq(a, b)
            after = sp.spectral_leq(sp.conjugate(a, u), sp.conjugate(b, u))
            res.record(before == after, (a, b))
            qa, qu = sp.spectrum_descending(a), sp.spectrum_descending(sp.conjugate(a, u))
            res.record(qa.close_to(qu, 1e-9), ("q invariant", a))


@prop("spectra.spectrum_of_embedding")
def _spectrum_of_embedding(res, rng, samples, ns=range(2, 7)):
    for n in ns:
        for _ in range(samples):
            x = sx.sample_state(n, rng) if rng.uniform() < 0.7 else face_state(n, rng)
            res.record(sp.spectrum_descending(sp.diag_embedding(x)).close_to(sx.sort_retraction(x), 1e-12), x)


@prop("spectra.embedding")
def _embedding(res, rng, samples, ns=range(2, 5)):
    for n in ns:
        for _ in range(samples):
            x = sx.sample_state(n, rng)
            res.record(abs(sp.von_neumann_entropy(sp.diag_embedding(x)) - sx.shannon_entropy(x)) <= 1e-9,
                       ("entropy", x))
            for a, b in (sx.sample_comparable_pair(n, rng), tempered_pair(n, rng),
                         (sx.sample_state(n, rng), sx.sample_state(n, rng))):
                for p, q in ((a, b), (b, a)):
                    classical = sx.bayesian_leq_symmetric(p, q)
                    res.record(classical == sx.bayesian_leq_recursive(p, q), ("deciders", p, q))
                    res.record(classical == sp.spectral_leq(sp.diag_embedding(p), sp.diag_embedding(q)),
                               ("order", p, q))


@prop("spectra.classical_slice")
def _classical_slice(res, rng, samples, ns=range(2, 5)):
    for n in ns:
        for _ in range(samples):
            u = sp.random_unitary(n, rng)
            e = sp.Observable(u)
            a, b = (sx.sample_comparable_pair(n, rng) if rng.uniform() < 0.5 else
                    (sx.sample_state(n, rng), sx.sample_state(n, rng)))
            ra, rb = sp.frame_state(u, a), sp.frame_state(u, b)
            sa, sb = sp.classical_slice(e, ra), sp.classical_slice(e, rb)
            res.record(sa.close_to(a, 1e-9) and sb.close_to(b, 1e-9), ("slice", a))
            res.record(sp.spectral_leq(ra, rb) == sx.bayesian_leq(sa, sb), ("order", a, b))


# -- logics ------------------------------------------------------------------


@prop("logics.irreducible_count")
def _irreducible_count(res, rng, samples, ns=range(2, 9)):
    for n in ns:
        ir = lg.irreducibles_classical(n)
        res.record(len(ir) == 2 ** n - 1, (n, len(ir)))
        res.record(all(x == sx.uniform_on(n, x.support) for x in ir), ("uniform on support", n))
        # everything but ⊥ is reached by some p_i⁺ step from another irreducible
        members = set(ir)
        reached = {sx.bayes_projection_plus(i, y) for y in ir for i in range(n) if not y.is_pure()}
        res.record(members - reached == {sx.uniform(n, exact=True)}, ("searching process", n))


@prop("logics.dual_isomorphism")
def _dual_isomorphism(res, rng, samples, ns=range(2, 7)):
    for n in ns:
        h = lg.hasse_classical(n)
        rep = lg.check_dual_isomorphism(n, h)
        res.record(rep.ok, (n, rep))
        res.record(len(h.edges) == n * 2 ** (n - 1) - n, ("edge count", n, len(h.edges)))
        bottom = h.nodes.index(sx.uniform(n, exact=True))
        res.record(lg.chain_lengths_to_maxima(h, bottom) == {n - 1}, ("graded", n))


@prop("logics.irreducible_agreement")
def _irreducible_agreement(res, rng, samples, ns=range(2, 6)):
    for n in ns:
        members = set(lg.irreducibles_classical(n))
        for kk in range(1, n + 1):
            for s in combinations(range(n), kk):
                u = sx.uniform_on(n, s)
                res.record(lg.is_irreducible_classical(u, samples=20, rng=rng) == (u in members), u)
        for _ in range(samples):
            x = sx.sample_exact_state(n, rng, denominator=int(rng.integers(2, 9)))
            res.record(lg.is_irreducible_classical(x, samples=20, rng=rng) == (x in members), x)


@prop("logics.quantum_consistency")
def _quantum_consistency(res, rng, samples, ns=(2, 3, 4)):
    for n in ns:
        rep = lg.quantum_logic_consistency(n, samples, rng)
        res.checked += rep.checked
        res.violations += rep.failed
        res.examples.extend(rep.violations[:2])


# -- exactness ---------------------------------------------------------------

T_APPROX = (0.25, 0.5, 0.75, 0.9)


@prop("exactness.path_approximants")
def _path_approximants(res, rng, samples, ns=range(3, 6)):
    for k in range(samples):
        n = ns[k % len(ns)]
        x = sx.sample_state(n, rng)
        if k % 4 == 3:
            x = x.to_exact(max_denominator=50)
        chains = ex.standard_chains(x)
        for t in T_APPROX:
            a = ex.path_approximant(x, Fraction(t) if x.exact else t).state
            ev = ex.check_exact_waybelow(a, x, chains)
            res.record(ev.passed, (x, t, ev.witnesses))


def _half_half_lower_bound(rng, exact: bool):
    # lower bounds of (1/2, 1/2, 0) are (s, s, 1 - 2s) with 1/3 <= s <= 1/2
    if exact:
        s = Fraction(1, 3) + Fraction(int(rng.integers(1, 1001)), 6000)
    else:
        s = 1 / 3 + float(rng.uniform(1e-6, 1 / 6))
    return sx.ClassicalState.of([s, s, 1 - 2 * s], exact=exact)


@prop("exactness.degeneracy_refutation")
def _degeneracy_refutation(res, rng, samples):
    perms = list(__import__("itertools").permutations(range(3)))
    half = sx.ClassicalState.of([Fraction(1, 2), Fraction(1, 2), 0])
    for k in range(samples):
        a = _half_half_lower_bound(rng, exact=k % 2 == 0)
        sigma = perms[k % len(perms)]
        ref = ex.classical_waybelow_refuter(sx.permute(a, sigma), sx.permute(half, sigma))
        res.record(ref is not None and len(ref.checked) == len(ex.HALF_HALF_CHECKPOINTS), (a, sigma))
    res.record(ex.classical_waybelow_refuter(sx.uniform(3, exact=True)) is None, "bottom")


@prop("exactness.chain_sup_upper_bound")
def _chain_sup(res, rng, samples, ns=range(2, 6)):
    for k in range(samples):
        n = ns[k % len(ns)]
        x = sx.sample_state(n, rng)
        chains = ex.standard_chains(x) + [ex.constant_chain(x)]
        c = chains[k % len(chains)]
        sup = ex.chain_sup(c, depth=32)
        res.record(all(sx.bayesian_leq(s, sup) for s in c.prefix(32)), (x, c.name))
    c = ex.degeneracy_chain(0, (1, 2))
    res.record(ex.chain_sup(c) == sx.pure(3, 0, exact=True), "degeneracy chain")


@prop("exactness.evidence_antisymmetry")
def _evidence_antisymmetry(res, rng, samples, ns=range(2, 6)):
    for k in range(samples):
        n = ns[k % len(ns)]
        x = sx.sample_exact_state(n, rng, denominator=12)
        if x == sx.uniform(n, exact=True):
            continue
        chains = [ex.path_chain(x, r) for r in (1, 2, 3)]
        ev = ex.check_exact_waybelow(x, x, chains, depth=32)
        res.record(all(w is None for w in ev.witnesses), (x, ev.witnesses))


@prop("exactness.coordinates")
def _coordinates(res, rng, samples, ns=range(2, 7)):
    for k in range(samples):
        n = ns[k % len(ns)]
        x = (sx.sample_state(n, rng), face_state(n, rng),
             sx.sample_exact_state(n, rng, denominator=10))[k % 3]
        coords = ex.coordinate_decomposition(x)
        z = ex.supremum_of_coordinates(coords)
        res.record(z.close_to(x, 1e-9), ("reconstruct", x, z))
        res.record(all(sx.bayesian_leq(c.state, x) for c in coords), ("below", x))
        for c in coords:
            u = sx.uniform_on(n, c.support, exact=c.state.exact)
            ok = c.state == u if c.irreducible else (0 <= c.t < 1 and c.state.close_to(sx.line_path(u, c.t), 1e-12))
            res.record(ok, ("flag", x, c))


# -- kernel ------------------------------------------------------------------


def _random_interval(rng) -> k.Interval:
    a, b = sorted(rng.uniform(-3, 3, size=2))
    if rng.uniform() < 0.1:
        b = a
    return k.Interval(float(a), float(b))


def _random_bits(rng) -> k.BitString:
    return k.BitString(rng.integers(0, 2, size=int(rng.integers(0, 6))))


def _random_natset(rng) -> k.NatSet:
    return k.NatSet.finite(int(v) for v in rng.choice(8, size=int(rng.integers(0, 6)), replace=False))


def _random_pmap(rng) -> k.PartialNatMap:
    keys = rng.choice(6, size=int(rng.integers(0, 4)), replace=False)
    return k.PartialNatMap({int(q): int(rng.integers(0, 2)) for q in keys})


KERNEL_DOMAINS = {
    "interval": (_random_interval, k.interval_leq, k.interval_waybelow, k.LENGTH),
    "cantor": (_random_bits, k.bitstring_leq, k.string_waybelow, k.CANTOR),
    "powerset": (_random_natset, k.natset_leq, k.natset_waybelow, k.POWERSET),
    "partial-maps": (_random_pmap, k.pmap_leq, k.pmap_waybelow, k.PARTIAL_MAPS),
}


@prop("kernel.order_axioms")
def _kernel_axioms(res, rng, samples):
    for name, (draw, leq, way, mu) in KERNEL_DOMAINS.items():
        for _ in range(samples):
            a, b, c = draw(rng), draw(rng), draw(rng)
            res.record(leq(a, a), (name, "reflexive", a))
            res.record(not (leq(a, b) and leq(b, a)) or a == b, (name, "antisymmetric", a, b))
            res.record(not (leq(a, b) and leq(b, c)) or leq(a, c), (name, "transitive", a, b, c))
            res.record(not way(a, b) or leq(a, b), (name, "waybelow ⊆ ⊑", a, b))
            res.record(not (way(a, b) and leq(b, c)) or way(a, c), (name, "≪ then ⊑", a, b, c))
            res.record(not leq(a, b) or mu(a) >= mu(b), (name, "measure reverses order", a, b))


@prop("kernel.scott_basis")
def _scott_basis(res, rng, samples):
    for _ in range(samples):
        a, x = _random_interval(rng), _random_interval(rng)
        res.record(k.in_basic_open(x, a) == k.interval_waybelow(a, x), (a, x))
        # ↟a is an upper set
        y = k.Interval(x.lo + 0.25 * x.width, x.hi - 0.25 * x.width)
        res.record(not k.in_basic_open(x, a) or k.in_basic_open(y, a), (a, x, y))
    for _ in range(samples):
        p = float(rng.uniform(-3, 3))
        res.record(k.LENGTH(k.Interval.point(p)) == 0, p)
        s = _random_natset(rng)
        res.record(k.POWERSET(s) > 0, s)


_FIXPOINT_FUNCS = (
    (lambda x: x / 2 + 1, k.Interval(0.0, 10.0), 2.0),
    (math.cos, k.Interval(0.0, 1.0), 0.7390851332151607),
    (lambda x: math.sqrt(x + 2), k.Interval(0.0, 4.0), 2.0),
)


@prop("kernel.fixpoint")
def _fixpoint(res, rng, samples):
    for f, seed, fix in _FIXPOINT_FUNCS:
        chain = list(k.fixpoint_chain(f, seed, 200))
        res.record(all(k.interval_leq(a, b) for a, b in zip(chain, chain[1:])), ("chain", seed))
        res.record(all(c.contains(fix) for c in chain), ("encloses", seed))
        res.record(chain[-1].width < 1e-9, ("width", seed, chain[-1]))


DERIVATIVE_CASES = (
    ("x^2", lambda x: x * x, lambda x: 2 * x, (-1.5, -0.5, 0.3, 1.0, 2.0)),
    ("sin", math.sin, math.cos, (-1.0, -0.3, 0.0, 0.5, 1.2)),
    ("exp", math.exp, math.exp, (-2.0, -0.5, 0.0, 1.0, 2.0)),
    ("3x+1", lambda x: 3 * x + 1, lambda x: 3.0, (-2.0, -1.0, 0.0, 1.0, 2.5)),
)


@prop("kernel.derivative")
def _derivative(res, rng, samples):
    for name, f, df, points in DERIVATIVE_CASES:
        for p in points:
            d = k.informatic_derivative(f, p)
            res.record(abs(d - abs(df(p))) <= 1e-4, (name, p, d))
