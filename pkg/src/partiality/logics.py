"""Irreducible states and the logics they carve out.

Classically the irreducibles are found by a searching process: start at
``⊥`` and repeatedly rule out one outcome with ``p_i⁺``.  The states visited
are exactly the uniform distributions on nonempty subsets of outcomes, and
ordered dually they form the powerset logic.  All classical computations
here run in exact rational arithmetic because irreducibility is a statement
about exact ties.

The quantum side (normalised subspace projections) is only checked by
sampling: the spectral order on them should be reverse subspace inclusion.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Callable, Sequence

import numpy as np

from .errors import DimensionTooLarge, NotOrthonormal, OutOfRange, UndefinedAtPure
from .simplex import (
    ClassicalState,
    as_state,
    bayes_projection_plus,
    bayesian_leq,
    pure,
    uniform,
    uniform_on,
)
from .spectra import DensityMatrix, random_unitary, spectral_leq

MAX_LOGIC_DIM = 10


def _check_dim(n: int) -> None:
    if n < 2:
        raise OutOfRange("n must be at least 2")
    if n > MAX_LOGIC_DIM:
        raise DimensionTooLarge(f"irreducible enumeration is limited to n <= {MAX_LOGIC_DIM}")


def irreducibles_classical(n: int) -> list[ClassicalState]:
    """All states reachable from ``⊥`` by repeated ``p_i⁺``, breadth first.

    Returned in order of decreasing support size, ties broken by support.
    """
    _check_dim(n)
    start = uniform(n, exact=True)
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for i in range(n):
            try:
                y = bayes_projection_plus(i, x)
            except UndefinedAtPure:
                continue
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return sorted(seen, key=lambda s: (-len(s.support), sorted(s.support)))


def _exact(x) -> ClassicalState:
    x = as_state(x)
    return x if x.exact else x.to_exact(max_denominator=10 ** 6)


def is_irreducible_classical(x, samples: int = 1000, rng: np.random.Generator | None = None) -> bool:
    """Is ``x`` the infimum of the pure states above it?

    Float input is rationalised first (denominators up to ``10^6``).  The
    candidate infimum ``u`` (uniform on the outcomes whose pure states lie
    above ``x``) is certified as the greatest lower bound against every
    uniform-support lower bound and ``samples`` random lower bounds.
    """
    x = _exact(x)
    n = x.n
    above = [i for i in range(n) if bayesian_leq(x, pure(n, i, exact=True))]
    u = uniform_on(n, above)
    if u != x:
        return False
    tops = [pure(n, i, exact=True) for i in above]
    if not all(bayesian_leq(u, e) for e in tops):
        return False

    def lower_bound(z):
        return all(bayesian_leq(z, e) for e in tops)

    for k in range(1, n + 1):
        for s in combinations(range(n), k):
            w = uniform_on(n, s)
            if lower_bound(w) and not bayesian_leq(w, u):
                return False
    rng = rng if rng is not None else np.random.default_rng(0)
    rest = [i for i in range(n) if i not in above]
    for _ in range(samples):
        z = _sample_lower_bound(n, above, rest, rng)
        if lower_bound(z) and not bayesian_leq(z, u):
            return False
    return True


def _sample_lower_bound(n, top, rest, rng) -> ClassicalState:
    # lower bounds of {e_i : i in top} are exactly the states maximal on all of top
    den = 12
    top_w = int(rng.integers(1, den + 1))
    vals = [0] * n
    for i in top:
        vals[i] = top_w
    for i in rest:
        vals[i] = int(rng.integers(0, top_w + 1))
    total = sum(vals)
    return ClassicalState(tuple(Fraction(v, total) for v in vals), True)


@dataclass
class HasseDiagram:
    """Nodes of a finite poset with its covering edges ``(lower, upper)``."""

    nodes: list
    edges: list[tuple[int, int]]
    labels: list[str] = field(default_factory=list)

    def covers(self) -> dict[int, list[int]]:
        up: dict[int, list[int]] = {k: [] for k in range(len(self.nodes))}
        for a, b in self.edges:
            up[a].append(b)
        return up

    def to_dot(self, name: str = "hasse") -> str:
        lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
        for k, label in enumerate(self.labels or [str(k) for k in range(len(self.nodes))]):
            lines.append(f'  n{k} [label="{label}"];')
        for a, b in self.edges:
            lines.append(f"  n{a} -> n{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json_obj(self) -> dict[str, Any]:
        nodes = []
        for k, x in enumerate(self.nodes):
            entry: dict[str, Any] = {"id": k}
            if self.labels:
                entry["label"] = self.labels[k]
            if isinstance(x, ClassicalState):
                entry["p"] = state_to_json(x)
                entry["support"] = sorted(x.support)
            nodes.append(entry)
        return {"nodes": nodes, "edges": [list(e) for e in self.edges]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2)


def state_to_json(x: ClassicalState) -> list:
    if x.exact:
        return [[v.numerator, v.denominator] for v in x.p]
    return [float(v) for v in x.p]


def hasse_from_order(nodes: Sequence, leq: Callable[[Any, Any], bool],
                     labels: Sequence[str] = ()) -> HasseDiagram:
    """Covering relation of ``leq`` restricted to ``nodes``."""
    m = len(nodes)
    le = np.zeros((m, m), dtype=bool)
    for a in range(m):
        for b in range(m):
            le[a, b] = a == b or leq(nodes[a], nodes[b])
    strict = le & ~np.eye(m, dtype=bool)
    # a < c < b for some c
    between = (strict.astype(np.int64) @ strict.astype(np.int64)) > 0
    cover = strict & ~between
    edges = [(int(a), int(b)) for a, b in zip(*np.nonzero(cover))]
    return HasseDiagram(list(nodes), edges, list(labels))


def support_label(x: ClassicalState) -> str:
    return "{" + ",".join(str(i) for i in sorted(x.support)) + "}"


def hasse_classical(n: int) -> HasseDiagram:
    nodes = irreducibles_classical(n)
    return hasse_from_order(nodes, bayesian_leq, [support_label(x) for x in nodes])


@dataclass
class IsomorphismReport:
    bijection: bool
    order_reversed: bool
    edges_match: bool

    @property
    def ok(self) -> bool:
        return self.bijection and self.order_reversed and self.edges_match


def check_dual_isomorphism(n: int, h: HasseDiagram | None = None) -> IsomorphismReport:
    """Compare the diagram with the dual of ``P{0..n-1} \\ {∅}`` under ``x ↦ support(x)``."""
    h = h if h is not None else hasse_classical(n)
    supports = [x.support for x in h.nodes]
    expected = {frozenset(s) for k in range(1, n + 1) for s in combinations(range(n), k)}
    bijection = len(set(supports)) == len(supports) and set(supports) == expected
    bijection = bijection and all(x == uniform_on(n, x.support) for x in h.nodes)
    order_reversed = all(
        bayesian_leq(a, b) == (sb <= sa)
        for a, sa in zip(h.nodes, supports)
        for b, sb in zip(h.nodes, supports)
    )
    want = {(sa, sb) for sa in expected for sb in expected if sb < sa and len(sa) == len(sb) + 1}
    got = {(supports[a], supports[b]) for a, b in h.edges}
    return IsomorphismReport(bijection, order_reversed, got == want)


def chain_lengths_to_maxima(h: HasseDiagram, bottom: int) -> set[int]:
    """Lengths of all maximal chains starting at ``bottom``."""
    up = h.covers()
    lengths: set[int] = set()
    memo: dict[int, set[int]] = {}

    def walk(v: int) -> set[int]:
        if v in memo:
            return memo[v]
        if not up[v]:
            out = {0}
        else:
            out = {d + 1 for w in up[v] for d in walk(w)}
        memo[v] = out
        return out

    lengths |= walk(bottom)
    return lengths


# -- quantum side ------------------------------------------------------------


def uniform_projection_state(basis: Sequence) -> DensityMatrix:
    """``P / tr P`` where ``P`` projects onto the span of orthonormal ``basis``."""
    vs = np.array([np.asarray(v, dtype=complex) for v in basis])
    if vs.ndim != 2 or len(vs) == 0:
        raise NotOrthonormal("need a nonempty list of equal-length vectors")
    gram = vs.conj() @ vs.T
    err = float(np.abs(gram - np.eye(len(vs))).max())
    if err > 1e-10:
        raise NotOrthonormal(f"basis is not orthonormal: max |G - I| = {err:.3g}")
    p = vs.T @ vs.conj()
    return DensityMatrix(p / len(vs))


def _projector(cols: np.ndarray) -> np.ndarray:
    return cols @ cols.conj().T


def subspace_contains(w_cols: np.ndarray, v_cols: np.ndarray, tol: float = 1e-8) -> bool:
    """Is span(v_cols) ⊆ span(w_cols)?  Columns must be orthonormal."""
    pw, pv = _projector(w_cols), _projector(v_cols)
    return float(np.abs(pw @ pv - pv).max()) <= tol


@dataclass
class ConsistencyReport:
    n: int
    checked: int = 0
    passed: int = 0
    violations: list = field(default_factory=list)

    @property
    def failed(self) -> int:
        return self.checked - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0


def _draw_pair(n: int, kind: int, rng: np.random.Generator):
    u = random_unitary(n, rng)
    if kind == 0:  # nested, shared frame
        m = int(rng.integers(1, n + 1))
        k = int(rng.integers(1, m + 1))
        perm = rng.permutation(n)
        return u[:, perm[:k]], u[:, perm[:m]]
    if kind == 1:  # shared frame, neither contains the other
        perm = rng.permutation(n)
        a = int(rng.integers(1, n))
        b = int(rng.integers(1, n))
        v_idx = list(perm[:a])
        w_idx = list(perm[n - b:])
        if set(v_idx) <= set(w_idx) or set(w_idx) <= set(v_idx):
            v_idx, w_idx = [perm[0]], [perm[1]]
        return u[:, v_idx], u[:, w_idx]
    if kind == 2:  # independent random subspaces
        u2 = random_unitary(n, rng)
        a = int(rng.integers(1, n))
        b = int(rng.integers(1, n))
        return u[:, :a], u2[:, :b]
    # W is the whole space
    k = int(rng.integers(1, n + 1))
    return u[:, :k], random_unitary(n, rng)


def quantum_logic_consistency(n: int, samples: int, rng: np.random.Generator) -> ConsistencyReport:
    """Sample subspace pairs and compare the spectral order with inclusion.

    For every pair ``(V, W)`` both directions are checked:
    ``uniform_W ⊑ uniform_V`` must hold exactly when ``V ⊆ W``.
    """
    if n not in (2, 3, 4):
        raise OutOfRange("quantum logic consistency is sampled for n in {2, 3, 4}")
    report = ConsistencyReport(n)
    for k in range(samples):
        v_cols, w_cols = _draw_pair(n, k % 4, rng)
        uv = uniform_projection_state(list(v_cols.T))
        uw = uniform_projection_state(list(w_cols.T))
        for lo, hi, small, big in ((uw, uv, v_cols, w_cols), (uv, uw, w_cols, v_cols)):
            expected = subspace_contains(big, small)
            got = spectral_leq(lo, hi)
            report.checked += 1
            if got == expected:
                report.passed += 1
            elif len(report.violations) < 10:
                report.violations.append({"sample": k, "expected": expected, "got": got})
    return report
