"""Approximation in the Bayesian order.

The Bayesian order is not continuous but it is exact: every state is the
supremum of the states that approximate it via chains whose supremum *is*
the state.  Way-below in that sense is only semi-decidable, so the
functions here return evidence over explicit chain families and never
claim a proof for the positive case.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .errors import LimitMismatch, NotAChain, NotALowerBound, OutOfRange
from .simplex import (
    ClassicalState,
    as_state,
    bayesian_leq,
    line_path,
    pure,
    uniform,
    uniform_on,
)

LIMIT_TOL = 1e-9
DEFAULT_DEPTH = 64


@dataclass(frozen=True)
class StateChain:
    """An increasing sequence ``m ↦ state`` (``m >= start``) with its declared limit."""

    generator: Callable[[int], ClassicalState]
    limit: ClassicalState
    start: int = 1
    name: str = ""

    def __call__(self, m: int) -> ClassicalState:
        return self.generator(m)

    def prefix(self, depth: int) -> list[ClassicalState]:
        return [self.generator(m) for m in range(self.start, self.start + depth)]


def certify_chain(c: StateChain, depth: int = DEFAULT_DEPTH) -> list[ClassicalState]:
    """Evaluate ``depth`` elements and check each is below its successor."""
    items = c.prefix(depth)
    for k, (a, b) in enumerate(zip(items, items[1:])):
        if not bayesian_leq(a, b):
            raise NotAChain(f"{c.name or 'chain'}: element {c.start + k} is not below its successor")
    return items


def _distance(a: ClassicalState, b: ClassicalState) -> float:
    return max(abs(float(u) - float(v)) for u, v in zip(a.p, b.p))


def chain_sup(c: StateChain, depth: int = DEFAULT_DEPTH) -> ClassicalState:
    """Certified supremum of a chain.

    Checks that the first ``depth`` elements increase, that the declared
    limit bounds each of them, and that far-out elements (indices up to
    ``depth · 10^12``) approach the limit within ``1e-9``.  Returns the
    declared limit.
    """
    items = certify_chain(c, depth)
    for k, s in enumerate(items):
        if not bayesian_leq(s, c.limit):
            raise LimitMismatch(f"declared limit is not above element {c.start + k}")
    far = c.start + depth - 1
    gap = _distance(items[-1], c.limit)
    for _ in range(12):
        far *= 10
        gap = _distance(c(far), c.limit)
        if gap <= LIMIT_TOL:
            break
    if gap > LIMIT_TOL:
        raise LimitMismatch(f"chain stays {gap:.3g} away from its declared limit")
    return c.limit


# -- the standard chain library ----------------------------------------------


def constant_chain(x) -> StateChain:
    x = as_state(x)
    return StateChain(lambda m: x, x, 1, "constant")


def path_chain(x, rate: int = 1) -> StateChain:
    """``m ↦ π_{⊥x}(1 - 1/m^rate)``."""
    x = as_state(x)
    if x.exact:
        return StateChain(lambda m: line_path(x, 1 - Fraction(1, m ** rate)), x, 1, f"path^{rate}")
    return StateChain(lambda m: line_path(x, 1 - 1.0 / m ** rate), x, 1, f"path^{rate}")


def power_chain(x, rate: int = 1) -> StateChain:
    """``m ↦ x^α / Σ x^α`` with ``α = 1 - 1/(m+1)^rate``.

    Raising to a power below one flattens consecutive ratios, so each
    element lies below the next and below ``x``.  Float valued.
    """
    x = as_state(x)
    base = x.array()

    def gen(m: int) -> ClassicalState:
        alpha = 1.0 - 1.0 / (m + 1) ** rate
        z = np.where(base > 0, base ** alpha, 0.0)
        z = z / z.sum()
        z[np.argmax(z)] += 1.0 - z.sum()
        return ClassicalState(tuple(float(v) for v in z), False)

    return StateChain(gen, x, 1, f"power^{rate}")


def degeneracy_chain(top: int, ties: Sequence[int], n: int = 3, exact: bool = True) -> StateChain:
    """``(1 - 2/m)`` at ``top`` and ``1/m`` at both ``ties`` (from ``m = 3``); supremum ``e_top``."""
    if n != 3 or len({top, *ties}) != 3:
        raise OutOfRange("degeneracy chains live in Δ³ with three distinct indices")
    one = Fraction(1) if exact else 1.0

    def gen(m: int) -> ClassicalState:
        v = [0] * 3
        v[top] = one - 2 * one / m
        for j in ties:
            v[j] = one / m
        return ClassicalState(tuple(v), exact)

    return StateChain(gen, pure(3, top, exact), 3, "degeneracy")


def standard_chains(x) -> list[StateChain]:
    """Five chains with supremum ``x``: three path chains and two power chains."""
    return [path_chain(x, 1), path_chain(x, 2), path_chain(x, 3), power_chain(x, 1), power_chain(x, 2)]


# -- exact way-below evidence ------------------------------------------------


@dataclass
class WaybelowEvidence:
    """Per-chain index of the first element dominating ``a`` (``None``: not found)."""

    witnesses: list
    chains: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(w is not None for w in self.witnesses)


def check_exact_waybelow(a, x, chains: Sequence[StateChain], depth: int = DEFAULT_DEPTH) -> WaybelowEvidence:
    """Search each chain with supremum ``x`` for an element above ``a``.

    Passing every supplied chain is evidence for ``a ≪ x``, not a proof.
    """
    a, x = as_state(a), as_state(x)
    witnesses = []
    for c in chains:
        if not c.limit.close_to(x, LIMIT_TOL):
            raise LimitMismatch(f"{c.name or 'chain'} has limit {c.limit!r}, expected {x!r}")
        found, prev = None, None
        # the chain is certified incrementally, up to the element examined
        for m in range(c.start, c.start + depth):
            s = c(m)
            if prev is not None and not bayesian_leq(prev, s):
                raise NotAChain(f"{c.name or 'chain'}: element {m - 1} is not below its successor")
            if bayesian_leq(a, s):
                found = m
                break
            prev = s
        witnesses.append(found)
    return WaybelowEvidence(witnesses, [c.name for c in chains])


def path_approximant(x, t) -> "Coordinate":
    """``π_{⊥x}(t)`` for ``t < 1``, an exact approximation of ``x``."""
    if not 0 <= t < 1:
        raise OutOfRange(f"path approximants need t in [0, 1), got {t}")
    x = as_state(x)
    return Coordinate(line_path(x, t), x.support, t, irreducible=False)


@dataclass
class Refutation:
    """A chain whose supremum dominates ``x`` but which never rises above ``a``."""

    chain: StateChain
    supremum: ClassicalState
    checked: list[int]
    tied: tuple[int, int]
    reason: str


HALF_HALF_CHECKPOINTS = tuple(10 ** k for k in range(1, 7))


def classical_waybelow_refuter(a, x=None, checkpoints: Sequence[int] = HALF_HALF_CHECKPOINTS):
    """Show that a non-bottom lower bound ``a`` of ``(1/2, 1/2, 0)`` is not way below it.

    Returns ``None`` for ``a = ⊥``.  Otherwise builds the chain
    ``(1 - 2/m, 1/m, 1/m)`` (reindexed to match ``x``), whose supremum
    ``e_i`` lies above ``x``, and confirms with the decider that no element
    at the checkpoints dominates ``a``: each element has two equal positive
    coordinates where ``a`` has unequal ones, so degeneracy forbids it.
    """
    a = as_state(a)
    exact = a.exact
    if x is None:
        x = ClassicalState.of([Fraction(1, 2), Fraction(1, 2), 0])
    x = as_state(x)
    if a.n != 3 or x.n != 3:
        raise OutOfRange("the refuter works in Δ³")
    vals = [float(v) for v in x.p]
    halves = [i for i, v in enumerate(vals) if abs(v - 0.5) <= LIMIT_TOL]
    zeros = [i for i, v in enumerate(vals) if abs(v) <= LIMIT_TOL]
    if len(halves) != 2 or len(zeros) != 1:
        raise OutOfRange(f"x must be a permutation of (1/2, 1/2, 0), got {x!r}")
    if not bayesian_leq(a, x):
        raise NotALowerBound(f"{a!r} is not below {x!r}")
    if a.close_to(uniform(3), 0 if (a.exact and x.exact) else LIMIT_TOL):
        return None
    i, j = halves
    k = zeros[0]
    chain = degeneracy_chain(i, (j, k), 3, exact=exact)
    sup = chain_sup(chain)
    if not bayesian_leq(x, sup):
        raise LimitMismatch("refuting chain's supremum is not above x")
    checked = []
    for m in checkpoints:
        if bayesian_leq(a, chain(m)):
            raise NotALowerBound(f"chain element m={m} dominates {a!r}; refutation failed")
        checked.append(m)
    reason = (f"every chain element has equal positive coordinates {j} and {k}, "
              f"but a has a[{j}]={a[j]} != a[{k}]={a[k]}")
    return Refutation(chain, sup, checked, (j, k), reason)


# -- coordinates -------------------------------------------------------------


@dataclass(frozen=True)
class Coordinate:
    """A state on the line from ``⊥`` to the irreducible uniform on ``support``.

    ``t == 1`` (with ``irreducible``) means the irreducible itself.
    """

    state: ClassicalState
    support: frozenset
    t: object
    irreducible: bool


def _sector(x: ClassicalState) -> list[int]:
    return sorted(range(x.n), key=lambda i: -x.p[i])


def coordinate_decomposition(x) -> list[Coordinate]:
    """Finitely many coordinates below ``x`` whose supremum is ``x``.

    With ``x`` sorted as ``x_(1) ≥ ... ≥ x_(n)`` and ``U_k`` the top ``k``
    outcomes, the point of the line ``⊥ → uniform(U_k)`` whose ratio across
    the block boundary equals ``x_(k)/x_(k+1)`` lies below ``x``; together
    these pin every consecutive ratio of ``x`` and hence ``x`` itself.  A
    zero after position ``k`` contributes the irreducible ``uniform(U_k)``.
    """
    x = as_state(x)
    n = x.n
    exact = x.exact
    order = _sector(x)
    xs = [x.p[i] for i in order]
    out: list[Coordinate] = []
    for k in range(1, n):
        hi, lo = xs[k - 1], xs[k]
        top = frozenset(order[:k])
        if lo == 0:
            if hi > 0:
                out.append(Coordinate(uniform_on(n, top, exact), top, Fraction(1) if exact else 1.0, True))
            continue
        r = hi / lo
        if r == 1:
            continue
        t = k * (r - 1) / (n + k * (r - 1))
        out.append(Coordinate(line_path(uniform_on(n, top, exact), t), top, t, False))
    if not out:
        bottom = uniform(n, exact)
        out.append(Coordinate(bottom, frozenset(range(n)), Fraction(1) if exact else 1.0, True))
    return out


def supremum_of_coordinates(coords: Sequence[Coordinate]) -> ClassicalState:
    """Least upper bound of coordinates sharing a common sorting sector.

    Within a sector the order compares consecutive ratios, so the supremum
    takes, position by position, the largest ratio any member shows.
    """
    states = [c.state for c in coords]
    n = states[0].n
    exact = all(s.exact for s in states)
    order = sorted(range(n), key=lambda i: tuple(-s.p[i] for s in states))
    one = Fraction(1) if exact else 1.0
    z = [one]
    for k in range(n - 1):
        a, b = order[k], order[k + 1]
        best = one
        dead = False
        for s in states:
            if s.p[b] == 0:
                if s.p[a] > 0:
                    dead = True
                continue
            best = max(best, s.p[a] / s.p[b])
        z.append(0 * one if dead or z[-1] == 0 else z[-1] / best)
    total = sum(z)
    vals = [0 * one] * n
    for pos, i in enumerate(order):
        vals[i] = z[pos] / total
    if not exact:
        vals = [float(v) for v in vals]
        top = max(range(n), key=vals.__getitem__)
        vals[top] += 1.0 - sum(vals)
    return ClassicalState(tuple(vals), exact)
