"""Classic continuous domains and the measurement formalism.

Four example domains live here, each with its order and way-below
relation:

* ``Interval`` -- compact real intervals under reverse inclusion (the
  interval domain).
* ``BitString`` -- finite and infinite binary strings under prefix order.
* ``NatSet`` -- subsets of the naturals under inclusion.
* ``PartialNatMap`` -- finite partial maps on the naturals under extension.

Infinite objects are represented by a rule plus an evaluation horizon.
Any question that needs information past the horizon raises
:class:`~partiality.errors.HorizonTooSmall` instead of guessing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, Iterator, Mapping, Sequence

from .errors import (
    HorizonTooSmall,
    NoConvergence,
    NotInvariant,
    NotMonotone,
    OutOfRange,
    PartialityError,
)

DEFAULT_HORIZON = 64


# -- interval domain ---------------------------------------------------------


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise OutOfRange(f"interval endpoints must be finite, got [{self.lo}, {self.hi}]")
        if self.lo > self.hi:
            raise OutOfRange(f"interval requires lo <= hi, got [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: float) -> "Interval":
        return cls(x, x)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def __repr__(self):
        return f"[{self.lo!r}, {self.hi!r}]"


def interval_leq(a: Interval, b: Interval) -> bool:
    """``a ⊑ b`` iff ``b ⊆ a``."""
    return a.lo <= b.lo and b.hi <= a.hi


def interval_waybelow(a: Interval, b: Interval) -> bool:
    """``a ≪ b`` iff ``b`` sits inside the interior of ``a``."""
    return a.lo < b.lo and b.hi < a.hi


def in_basic_open(x: Interval, a: Interval) -> bool:
    """Membership of ``x`` in the basic Scott open set ``{x : x ⊆ (a.lo, a.hi)}``."""
    return a.lo < x.lo and x.hi < a.hi


# -- Cantor domain -----------------------------------------------------------


class BitString:
    """A finite bit string, optionally continued forever by a tail rule.

    ``tail(i)`` gives the bit at absolute position ``i`` for every
    ``i >= len(bits)``.  Comparisons between two infinite strings are
    certified only up to ``horizon`` positions.
    """

    __slots__ = ("bits", "tail", "horizon")

    def __init__(self, bits: Iterable[int] = (), tail: Callable[[int], int] | None = None,
                 horizon: int = DEFAULT_HORIZON):
        bits = tuple(int(b) for b in bits)
        if any(b not in (0, 1) for b in bits):
            raise OutOfRange("bit strings contain only 0 and 1")
        if horizon < 0:
            raise OutOfRange("horizon must be nonnegative")
        self.bits = bits
        self.tail = tail
        self.horizon = horizon

    @classmethod
    def parse(cls, text: str) -> "BitString":
        return cls(int(c) for c in text)

    @property
    def finite(self) -> bool:
        return self.tail is None

    def __len__(self):
        if not self.finite:
            raise TypeError("infinite bit string has no finite length; use .length")
        return len(self.bits)

    @property
    def length(self) -> float:
        return len(self.bits) if self.finite else math.inf

    def bit(self, i: int) -> int:
        if i < len(self.bits):
            return self.bits[i]
        if self.tail is None:
            raise IndexError(i)
        b = self.tail(i)
        if b not in (0, 1):
            raise OutOfRange(f"tail rule produced {b!r} at position {i}")
        return b

    def prefix(self, k: int) -> "BitString":
        return BitString(self.bit(i) for i in range(k))

    def __eq__(self, other):
        if not isinstance(other, BitString):
            return NotImplemented
        return self.bits == other.bits and self.tail is other.tail

    def __hash__(self):
        return hash((self.bits, id(self.tail)))

    def __repr__(self):
        s = "".join(map(str, self.bits)) or "ε"
        return f"BitString({s}{'...' if not self.finite else ''})"


def bitstring_leq(s: BitString, t: BitString) -> bool:
    """Prefix order.  Two infinite strings agreeing up to the horizon are undecided."""
    if s.finite:
        if t.finite and len(s.bits) > len(t.bits):
            return False
        return all(s.bits[i] == t.bit(i) for i in range(len(s.bits)))
    if t.finite:
        return False
    depth = min(s.horizon, t.horizon)
    if any(s.bit(i) != t.bit(i) for i in range(depth)):
        return False
    if s == t:
        return True
    raise HorizonTooSmall(f"infinite strings agree on the first {depth} bits; cannot certify s ⊑ t")


def string_waybelow(s: BitString, t: BitString) -> bool:
    """``s ≪ t`` iff ``s`` is finite and a prefix of ``t``."""
    return s.finite and bitstring_leq(s, t)


# -- powerset of the naturals ------------------------------------------------


class NatSet:
    """A subset of the naturals: either an explicit finite set or a rule.

    Rule sets answer membership for every ``n < horizon``.
    """

    __slots__ = ("members", "rule", "horizon")

    def __init__(self, members: Iterable[int] | None = None,
                 rule: Callable[[int], bool] | None = None, horizon: int = DEFAULT_HORIZON):
        if (members is None) == (rule is None):
            raise PartialityError("NatSet needs exactly one of members or rule")
        if members is not None:
            members = frozenset(int(n) for n in members)
            if any(n < 0 for n in members):
                raise OutOfRange("naturals are nonnegative")
        self.members = members
        self.rule = rule
        self.horizon = horizon

    @classmethod
    def finite(cls, members: Iterable[int] = ()) -> "NatSet":
        return cls(members=members)

    @classmethod
    def from_rule(cls, rule: Callable[[int], bool], horizon: int = DEFAULT_HORIZON) -> "NatSet":
        return cls(rule=rule, horizon=horizon)

    @property
    def explicit(self) -> bool:
        return self.members is not None

    def __contains__(self, n: int) -> bool:
        if self.members is not None:
            return n in self.members
        if n >= self.horizon:
            raise HorizonTooSmall(f"membership of {n} is past the horizon {self.horizon}")
        return bool(self.rule(n))

    def enumerate(self) -> Iterator[int]:
        """Members in increasing order (rule sets: only those below the horizon)."""
        if self.members is not None:
            yield from sorted(self.members)
        else:
            yield from (n for n in range(self.horizon) if self.rule(n))

    def __eq__(self, other):
        if not isinstance(other, NatSet):
            return NotImplemented
        return self.members == other.members and self.rule is other.rule

    def __hash__(self):
        return hash((self.members, id(self.rule)))

    def __repr__(self):
        if self.members is not None:
            return f"NatSet({set(sorted(self.members)) or '{}'})"
        return f"NatSet(rule, horizon={self.horizon})"


OMEGA = NatSet.from_rule(lambda n: True)


def natset_leq(x: NatSet, y: NatSet) -> bool:
    """Inclusion.  Raises ``HorizonTooSmall`` when it cannot be certified."""
    if x.explicit:
        return all(n in y for n in x.members)
    if y.explicit:
        if any(n not in y.members for n in x.enumerate()):
            return False
    else:
        depth = min(x.horizon, y.horizon)
        if any(x.rule(n) and not y.rule(n) for n in range(depth)):
            return False
    if x == y:
        return True
    raise HorizonTooSmall("rule set agrees with the target up to the horizon; cannot certify inclusion")


def natset_waybelow(x: NatSet, y: NatSet) -> bool:
    """``x ≪ y`` iff ``x`` is finite and ``x ⊆ y``."""
    return x.explicit and natset_leq(x, y)


def natset_measure(x: NatSet, tol: float | None = None) -> float:
    """``1 - Σ_{n∈x} 2^-(n+1)``.

    Explicit sets are evaluated exactly.  For rule sets the tail past the
    horizon contributes at most ``2^-horizon``; if that exceeds ``tol`` the
    call fails.
    """
    if x.explicit:
        return float(1 - sum((Fraction(1, 2 ** (n + 1)) for n in x.members), Fraction(0)))
    if tol is not None and 2.0 ** -x.horizon > tol:
        raise HorizonTooSmall(
            f"tail bound 2^-{x.horizon} exceeds requested tolerance {tol}")
    return float(1 - sum((Fraction(1, 2 ** (n + 1)) for n in x.enumerate()), Fraction(0)))


# -- partial maps on the naturals --------------------------------------------


class PartialNatMap:
    """Finite partial map ℕ ⇀ ℕ."""

    __slots__ = ("_items",)

    def __init__(self, entries: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = dict(entries)
        if any(k < 0 or v < 0 for k, v in items.items()):
            raise OutOfRange("partial maps act on naturals")
        self._items = tuple(sorted(items.items()))

    @property
    def domain(self) -> frozenset:
        return frozenset(k for k, _ in self._items)

    def as_dict(self) -> dict[int, int]:
        return dict(self._items)

    def __eq__(self, other):
        if not isinstance(other, PartialNatMap):
            return NotImplemented
        return self._items == other._items

    def __hash__(self):
        return hash(self._items)

    def __repr__(self):
        return f"PartialNatMap({self.as_dict()})"


def pmap_leq(f: PartialNatMap, g: PartialNatMap) -> bool:
    gd = g.as_dict()
    return all(k in gd and gd[k] == v for k, v in f.as_dict().items())


def pmap_waybelow(f: PartialNatMap, g: PartialNatMap) -> bool:
    # every representable map has finite domain
    return pmap_leq(f, g)


# -- measurements ------------------------------------------------------------


@dataclass(frozen=True)
class Measurement:
    """A content map into ``[0, ∞)`` together with the order it measures.

    ``value`` must reverse the order: ``x ⊑ y`` implies
    ``value(x) >= value(y)``.
    """

    name: str
    leq: Callable[[Any, Any], bool]
    value: Callable[[Any], float]

    def __call__(self, x) -> float:
        return self.value(x)


def _cantor_value(s: BitString) -> float:
    return 0.0 if not s.finite else 2.0 ** -len(s.bits)


LENGTH = Measurement("length", interval_leq, lambda x: x.width)
CANTOR = Measurement("cantor", bitstring_leq, _cantor_value)
POWERSET = Measurement("powerset", natset_leq, natset_measure)
PARTIAL_MAPS = Measurement("partial-maps", pmap_leq,
                           lambda f: natset_measure(NatSet.finite(f.domain)))


def measure_value(m: Measurement, x) -> float:
    return m.value(x)


def mu_ball_contains(m: Measurement, x, y, eps: float) -> bool:
    """Is ``y`` in the ε-neighbourhood ``{y ⊑ x : |μx - μy| < ε}`` of ``x``?

    Only defined for ``x`` in the kernel (``μx = 0``).
    """
    if eps <= 0:
        raise OutOfRange("eps must be positive")
    mx = m.value(x)
    if mx != 0:
        raise PartialityError(f"{x!r} is not in the kernel of {m.name} (value {mx})")
    return m.leq(y, x) and abs(mx - m.value(y)) < eps


# -- interval images, fixed points, informatic derivative --------------------

_PROBES = (0.25, 0.5, 0.75)


def interval_image(f: Callable[[float], float], x: Interval, outward: bool = False) -> Interval:
    """Image of ``x`` under a map monotone or antitone on ``x``.

    Computed from the endpoints; a few interior probes reject maps whose
    orientation changes inside ``x``.  With ``outward`` the endpoints are
    nudged one ulp outwards so that rounding never loses enclosed points.
    """
    fa, fb = f(x.lo), f(x.hi)
    if x.width > 0:
        vals = [fa] + [f(x.lo + t * x.width) for t in _PROBES] + [fb]
        up = all(u <= v for u, v in zip(vals, vals[1:]))
        down = all(u >= v for u, v in zip(vals, vals[1:]))
        if not (up or down):
            raise NotMonotone(f"map is neither monotone nor antitone on {x!r}")
    lo, hi = min(fa, fb), max(fa, fb)
    if outward:
        lo, hi = math.nextafter(lo, -math.inf), math.nextafter(hi, math.inf)
    return Interval(lo, hi)


def fixpoint_chain(f: Callable[[float], float], seed: Interval, steps: int) -> Iterator[Interval]:
    """Yield ``seed, f̄(seed), f̄²(seed), ...`` (``steps + 1`` intervals).

    Each iterate is intersected with its predecessor, so the chain shrinks
    monotonically while still enclosing every fixed point of ``f`` in
    ``seed``.
    """
    if steps < 0:
        raise OutOfRange("steps must be nonnegative")
    first = interval_image(f, seed)
    if not interval_leq(seed, first):
        raise NotInvariant(f"f maps {seed!r} to {first!r}, which is not contained in the seed")
    x = seed
    yield x
    for _ in range(steps):
        img = interval_image(f, x, outward=True)
        lo, hi = max(img.lo, x.lo), min(img.hi, x.hi)
        if lo > hi:
            raise NotInvariant(f"iterate escaped {x!r}")
        x = Interval(lo, hi)
        yield x


def fixpoint_iterate(f: Callable[[float], float], seed: Interval, steps: int) -> Interval:
    for x in fixpoint_chain(f, seed, steps):
        pass
    return x


DEFAULT_WIDTHS = tuple(10.0 ** -k for k in range(2, 9))


def informatic_derivative(f: Callable[[float], float], p: float,
                          widths: Sequence[float] = DEFAULT_WIDTHS, tol: float = 1e-4) -> float:
    """Informatic derivative of ``f̄`` at the point interval ``[p]`` w.r.t. length.

    Probes ``x = [p - w/2, p + w/2]`` for each width and forms
    ``(μ f̄(x) - μ f̄([p])) / (μx - μ[p])``.  The estimate at the smallest
    width is returned once it agrees with its predecessor within ``tol``.
    """
    widths = list(widths)
    if len(widths) < 2:
        raise OutOfRange("need at least two probe widths")
    if any(w <= 0 for w in widths) or any(b >= a for a, b in zip(widths, widths[1:])):
        raise OutOfRange("probe widths must be positive and strictly decreasing")
    base = interval_image(f, Interval.point(p)).width
    estimates = []
    for w in widths:
        x = Interval(p - w / 2, p + w / 2)
        estimates.append((interval_image(f, x).width - base) / x.width)
    if abs(estimates[-1] - estimates[-2]) > tol:
        raise NoConvergence(
            f"estimates {estimates[-2]:.6g} and {estimates[-1]:.6g} differ by more than {tol}")
    return estimates[-1]
