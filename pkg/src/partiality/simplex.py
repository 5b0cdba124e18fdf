"""Classical states and the Bayesian order.

A classical state is a probability vector of length ``n >= 2``.  States
carry a numeric mode: float (sums checked to ``1e-12``, ties detected at
``1e-9``) or exact (entries are :class:`fractions.Fraction`, everything is
compared exactly).  Indices are 0-based throughout.

Two independent deciders are provided for the order:

* :func:`bayesian_leq_recursive` -- the inductive definition through
  Bayesian projections, bottoming out at the two-outcome rule.
* :func:`bayesian_leq_symmetric` -- the permutation characterisation with
  cross-product inequalities.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, DimensionTooLarge, InvalidState, OutOfRange, UndefinedAtPure
from .kernel import Measurement

SUM_EPS = 1e-12
TIE_EPS = 1e-9
MAX_RECURSIVE_DIM = 8
MAX_EXHAUSTIVE_DIM = 8


def _is_exact_value(v) -> bool:
    return isinstance(v, Rational) and not isinstance(v, bool)


@dataclass(frozen=True)
class ClassicalState:
    """A point of the probability simplex.

    Build with :meth:`of` rather than the raw constructor; ``of`` coerces the
    entries to the requested numeric mode.
    """

    p: tuple
    exact: bool = False

    def __post_init__(self):
        p = self.p
        if len(p) < 2:
            raise InvalidState(f"classical states need n >= 2 outcomes, got {len(p)}")
        if any(not (0 <= v <= 1) for v in p):
            raise InvalidState(f"entries must lie in [0, 1]: {p}")
        s = sum(p)
        if self.exact:
            if s != 1:
                raise InvalidState(f"entries must sum to 1 exactly, got {s}")
        elif abs(s - 1) > SUM_EPS:
            raise InvalidState(f"entries must sum to 1 within {SUM_EPS}, got {s!r}")

    @classmethod
    def of(cls, values: Iterable, exact: bool | None = None) -> "ClassicalState":
        values = list(values)
        if exact is None:
            exact = all(_is_exact_value(v) for v in values)
        if exact:
            return cls(tuple(Fraction(v) for v in values), True)
        return cls(tuple(float(v) for v in values), False)

    @property
    def n(self) -> int:
        return len(self.p)

    def __len__(self):
        return len(self.p)

    def __getitem__(self, i):
        return self.p[i]

    def __iter__(self):
        return iter(self.p)

    def to_float(self) -> "ClassicalState":
        return self if not self.exact else ClassicalState(tuple(float(v) for v in self.p), False)

    def to_exact(self, max_denominator: int | None = None) -> "ClassicalState":
        if self.exact:
            return self
        fr = [Fraction(v) if max_denominator is None else Fraction(v).limit_denominator(max_denominator)
              for v in self.p]
        # absorb rounding into the largest entry so the sum is exactly 1
        k = max(range(len(fr)), key=fr.__getitem__)
        fr[k] += 1 - sum(fr)
        return ClassicalState(tuple(fr), True)

    def array(self) -> np.ndarray:
        return np.array([float(v) for v in self.p])

    @property
    def support(self) -> frozenset:
        return frozenset(i for i, v in enumerate(self.p) if v > 0)

    def is_pure(self) -> bool:
        tol = 0 if self.exact else SUM_EPS
        return any(v >= 1 - tol for v in self.p)

    def close_to(self, other: "ClassicalState", tol: float = TIE_EPS) -> bool:
        if self.n != other.n:
            return False
        return max(abs(float(a) - float(b)) for a, b in zip(self.p, other.p)) <= tol

    def __repr__(self):
        if self.exact:
            body = ", ".join(str(v) for v in self.p)
        else:
            body = ", ".join(f"{v:.6g}" for v in self.p)
        return f"ClassicalState({body})"


class MonotoneState(ClassicalState):
    """A classical state with non-increasing entries."""

    def __post_init__(self):
        super().__post_init__()
        tol = 0 if self.exact else TIE_EPS
        if any(a < b - tol for a, b in zip(self.p, self.p[1:])):
            raise InvalidState(f"monotone states are non-increasing: {self.p}")


def as_state(x) -> ClassicalState:
    return x if isinstance(x, ClassicalState) else ClassicalState.of(x)


def uniform(n: int, exact: bool = False) -> ClassicalState:
    """The least element ``⊥ = (1/n, ..., 1/n)``."""
    if exact:
        return ClassicalState((Fraction(1, n),) * n, True)
    return ClassicalState((1.0 / n,) * n, False)


def pure(n: int, i: int, exact: bool = False) -> ClassicalState:
    """The pure state ``e_i`` (0-based)."""
    one, zero = (Fraction(1), Fraction(0)) if exact else (1.0, 0.0)
    return ClassicalState(tuple(one if k == i else zero for k in range(n)), exact)


def uniform_on(n: int, support: Iterable[int], exact: bool = True) -> ClassicalState:
    support = sorted(set(support))
    if not support:
        raise InvalidState("support must be nonempty")
    w = Fraction(1, len(support)) if exact else 1.0 / len(support)
    zero = Fraction(0) if exact else 0.0
    s = set(support)
    return ClassicalState(tuple(w if k in s else zero for k in range(n)), exact)


def _pair(x, y):
    x, y = as_state(x), as_state(y)
    if x.n != y.n:
        raise DimensionMismatch(f"states have dimensions {x.n} and {y.n}")
    if x.exact and y.exact:
        return x.p, y.p, 0
    return tuple(map(float, x.p)), tuple(map(float, y.p)), TIE_EPS


# -- the two-outcome rule and the recursive decider --------------------------


def _leq2(x1, y1, eps) -> bool:
    half = Fraction(1, 2) if eps == 0 else 0.5
    return (y1 <= x1 + eps and x1 <= half + eps) or (half <= x1 + eps and x1 <= y1 + eps)


def bayesian_leq_base2(x, y) -> bool:
    """The order on two-outcome states: ``(y1 ≤ x1 ≤ 1/2) or (1/2 ≤ x1 ≤ y1)``."""
    xs, ys, eps = _pair(x, y)
    if len(xs) != 2:
        raise DimensionMismatch(f"the base rule compares two-outcome states, got n={len(xs)}")
    return _leq2(xs[0], ys[0], eps)


def _recursive(x, y, eps) -> bool:
    memo: dict[tuple, bool] = {}

    def rec(R: tuple) -> bool:
        if R in memo:
            return memo[R]
        if len(R) == 2:
            a, b = R
            out = _leq2(x[a] / (x[a] + x[b]), y[a] / (y[a] + y[b]), eps)
        else:
            sx = sum(x[j] for j in R)
            sy = sum(y[j] for j in R)
            out = True
            for i in R:
                # restricted state equals e_i when every other coordinate vanishes
                if sx - x[i] <= eps * sx or sy - y[i] <= eps * sy:
                    continue
                if not rec(tuple(j for j in R if j != i)):
                    out = False
                    break
        memo[R] = out
        return out

    return rec(tuple(range(len(x))))


def bayesian_leq_recursive(x, y) -> bool:
    """Decide ``x ⊑ y`` by the projection recursion.

    For ``n > 2``: ``x ⊑ y`` iff ``p_i(x) ⊑ p_i(y)`` for every ``i`` at
    which neither state is ``e_i``.  Projections compose into restriction
    to a subset of outcomes followed by renormalisation, so the recursion
    is memoised on the surviving index set.
    """
    xs, ys, eps = _pair(x, y)
    if len(xs) > MAX_RECURSIVE_DIM:
        raise DimensionTooLarge(f"recursive decider is limited to n <= {MAX_RECURSIVE_DIM}")
    return _recursive(xs, ys, eps)


# -- the symmetric characterisation ------------------------------------------


@dataclass(frozen=True)
class Explanation:
    """Outcome of the symmetric decider with its evidence.

    On success ``permutation`` lists the original indices in the order that
    makes both states non-increasing.  On failure ``failing_index`` is the
    position ``k`` (in the best candidate ordering) whose monotonicity or
    cross-product inequality ``x_k y_{k+1} ≤ x_{k+1} y_k`` broke.
    """

    leq: bool
    permutation: tuple | None
    failing_index: int | None = None
    reason: str = ""


def _violation(x, y, perm, eps):
    for k in range(len(perm) - 1):
        a, b = perm[k], perm[k + 1]
        if x[a] < x[b] - eps or y[a] < y[b] - eps:
            return k, "monotone"
    for k in range(len(perm) - 1):
        a, b = perm[k], perm[k + 1]
        if x[a] * y[b] > x[b] * y[a] + eps:
            return k, "cross"
    return None


def _has_near_ties(v, eps) -> bool:
    s = sorted(v)
    return any(b - a <= eps for a, b in zip(s, s[1:]))


def _backtrack(x, y, eps):
    n = len(x)
    used = [False] * n
    perm: list[int] = []

    def extend():
        if len(perm) == n:
            return True
        for c in range(n):
            if used[c]:
                continue
            if perm:
                a = perm[-1]
                if x[a] < x[c] - eps or y[a] < y[c] - eps or x[a] * y[c] > x[c] * y[a] + eps:
                    continue
            used[c] = True
            perm.append(c)
            if extend():
                return True
            perm.pop()
            used[c] = False
        return False

    return tuple(perm) if extend() else None


def _symmetric(x, y, eps) -> Explanation:
    n = len(x)
    by_x = tuple(sorted(range(n), key=lambda i: (-x[i], -y[i])))
    by_y = tuple(sorted(range(n), key=lambda i: (-y[i], -x[i])))
    first = _violation(x, y, by_x, eps)
    if first is None:
        return Explanation(True, by_x)
    if _violation(x, y, by_y, eps) is None:
        return Explanation(True, by_y)
    # With exact ties the lexicographic sorts are complete: a valid ordering
    # lists the (x_i, y_i) pairs as a chain in the product order, which is
    # exactly what sorting reproduces.  Only float near-ties need a search.
    if eps > 0 and (_has_near_ties(x, eps) or _has_near_ties(y, eps)):
        if n > MAX_EXHAUSTIVE_DIM:
            raise DimensionTooLarge(
                f"tied coordinates need exhaustive permutation search, limited to n <= {MAX_EXHAUSTIVE_DIM}")
        perm = _backtrack(x, y, eps)
        if perm is not None:
            return Explanation(True, perm)
    k, why = first
    return Explanation(False, None, k, why)


def bayesian_explain(x, y) -> Explanation:
    xs, ys, eps = _pair(x, y)
    return _symmetric(xs, ys, eps)


def bayesian_leq_symmetric(x, y) -> bool:
    """Decide ``x ⊑ y``: some permutation sorts both states non-increasingly
    and satisfies ``x_k y_{k+1} ≤ x_{k+1} y_k`` for every consecutive pair."""
    return bayesian_explain(x, y).leq


bayesian_leq = bayesian_leq_symmetric


# -- projections, mixing, paths ----------------------------------------------


def bayes_projection(i: int, x) -> ClassicalState:
    """Rule out outcome ``i``: drop it and renormalise (``Δⁿ⁺¹ ⇀ Δⁿ``)."""
    x = as_state(x)
    if not 0 <= i < x.n:
        raise OutOfRange(f"index {i} out of range for n={x.n}")
    if x.n < 3:
        raise DimensionMismatch("projection needs a state with at least 3 outcomes")
    rest = [v for k, v in enumerate(x.p) if k != i]
    s = sum(rest)
    if s <= (0 if x.exact else SUM_EPS):
        raise UndefinedAtPure(f"p_{i} is undefined at the pure state e_{i}")
    return ClassicalState(tuple(v / s for v in rest), x.exact)


def bayes_projection_plus(i: int, x) -> ClassicalState:
    """:func:`bayes_projection` followed by reinserting a zero at ``i``."""
    x = as_state(x)
    if not 0 <= i < x.n:
        raise OutOfRange(f"index {i} out of range for n={x.n}")
    rest = [v for k, v in enumerate(x.p) if k != i]
    s = sum(rest)
    if s <= (0 if x.exact else SUM_EPS):
        raise UndefinedAtPure(f"p_{i}+ is undefined at the pure state e_{i}")
    out = [v / s for v in rest]
    out.insert(i, Fraction(0) if x.exact else 0.0)
    return ClassicalState(tuple(out), x.exact)


def _check_t(t):
    if not 0 <= t <= 1:
        raise OutOfRange(f"mixing parameter must lie in [0, 1], got {t}")


def mixing_combine(x, y, t) -> ClassicalState:
    """``(1 - t) x + t y``."""
    x, y = as_state(x), as_state(y)
    if x.n != y.n:
        raise DimensionMismatch(f"states have dimensions {x.n} and {y.n}")
    _check_t(t)
    if x.exact and y.exact and _is_exact_value(t):
        t = Fraction(t)
        return ClassicalState(tuple((1 - t) * a + t * b for a, b in zip(x.p, y.p)), True)
    t = float(t)
    vals = [(1 - t) * float(a) + t * float(b) for a, b in zip(x.p, y.p)]
    return ClassicalState(tuple(vals), False)


def line_path(x, t) -> ClassicalState:
    """The straight line ``(1 - t)⊥ + t x`` from the least element to ``x``."""
    x = as_state(x)
    return mixing_combine(uniform(x.n, x.exact), x, t)


# -- entropy and the sorting retraction --------------------------------------


def shannon_entropy(x, base: float | None = None) -> float:
    """``-Σ x_i log x_i`` with ``0 log 0 = 0`` (natural log unless ``base`` given)."""
    x = as_state(x)
    h = -sum(v * math.log(v) for v in map(float, x.p) if v > 0)
    h = max(h, 0.0)
    return h / math.log(base) if base is not None else h


SHANNON = Measurement("shannon", bayesian_leq, shannon_entropy)


def sort_retraction(x) -> MonotoneState:
    """Rearrange the probabilities into non-increasing order."""
    x = as_state(x)
    return MonotoneState(tuple(sorted(x.p, reverse=True)), x.exact)


# -- sampling ----------------------------------------------------------------


def sample_state(n: int, rng: np.random.Generator) -> ClassicalState:
    """Uniform draw on the simplex via normalised exponentials."""
    if n < 2:
        raise InvalidState("n must be at least 2")
    e = rng.exponential(size=n)
    p = e / e.sum()
    # push the rounding residue into the largest coordinate
    p[np.argmax(p)] += 1.0 - p.sum()
    return ClassicalState(tuple(float(v) for v in p), False)


def sample_comparable_pair(n: int, rng: np.random.Generator,
                           t: float | None = None) -> tuple[ClassicalState, ClassicalState]:
    """Return ``(x, y)`` with ``x`` on the segment from ``⊥`` to ``y``, so ``x ⊑ y``."""
    y = sample_state(n, rng)
    if t is None:
        t = float(rng.uniform())
    return line_path(y, t), y


def sample_exact_state(n: int, rng: np.random.Generator, denominator: int = 6) -> ClassicalState:
    """A rational state with small denominator; ties and zeros are common."""
    cuts = sorted(int(c) for c in rng.integers(0, denominator + 1, size=n - 1))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [denominator])]
    perm = rng.permutation(n)
    return ClassicalState(tuple(Fraction(parts[k], denominator) for k in perm), True)


def permute(x, perm: Sequence[int]) -> ClassicalState:
    """``(x·σ)_k = x_{σ(k)}``."""
    x = as_state(x)
    return ClassicalState(tuple(x.p[i] for i in perm), x.exact)


def all_permutations(n: int):
    return itertools.permutations(range(n))
