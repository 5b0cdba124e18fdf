"""JSON state documents.

Four document kinds are understood::

    {"kind": "classical", "p": [0.25, 0.75]}
    {"kind": "classical", "p": [[1, 4], [3, 4]]}          # exact rationals
    {"kind": "density", "re": [[...], ...], "im": [[...], ...]}
    {"kind": "interval", "lo": 0.0, "hi": 1.0}
    {"kind": "observable", "frame_re": [[...]], "frame_im": [[...]]}

A classical document is exact when every entry is an integer or a
``[numerator, denominator]`` pair; a single float entry switches the whole
vector to float mode.  Matrices are row-major; an observable's frame holds
the eigenvectors as columns.

Parsing failures raise :class:`MalformedJson`, :class:`SchemaViolation` or
:class:`InvariantViolation`, each carrying a JSON-pointer location.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Union

import numpy as np

from .errors import (
    BadTrace,
    DimensionMismatch,
    InvariantViolation,
    MalformedJson,
    NotHermitian,
    NotOrthonormal,
    NotPositive,
    PartialityError,
    SchemaViolation,
)
from .kernel import Interval
from .simplex import SUM_EPS, ClassicalState
from .spectra import DensityMatrix, Observable

KINDS = {
    "classical": ("p",),
    "density": ("re", "im"),
    "interval": ("lo", "hi"),
    "observable": ("frame_re", "frame_im"),
}

Value = Union[ClassicalState, DensityMatrix, Interval, Observable]


@dataclass(frozen=True)
class StateDocument:
    kind: str
    value: Value


def _reject_constant(name: str):
    raise MalformedJson(f"non-standard JSON constant {name}")


def _is_number(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def _number(v, loc: str) -> float:
    if not _is_number(v):
        raise SchemaViolation(f"expected a number, got {type(v).__name__}", loc)
    return v


def _rational_entry(v, loc: str):
    """A classical entry: number, or ``[num, den]`` integer pair."""
    if isinstance(v, list):
        if len(v) != 2 or not all(isinstance(q, int) and not isinstance(q, bool) for q in v):
            raise SchemaViolation("rational entries are [numerator, denominator] integer pairs", loc)
        if v[1] == 0:
            raise SchemaViolation("denominator must be nonzero", loc + "/1")
        return Fraction(v[0], v[1])
    return _number(v, loc)


def _matrix(v, loc: str, n: int | None = None) -> np.ndarray:
    if not isinstance(v, list) or not v:
        raise SchemaViolation("expected a nonempty list of rows", loc)
    rows = len(v)
    for i, row in enumerate(v):
        if not isinstance(row, list):
            raise SchemaViolation("expected a list of rows", f"{loc}/{i}")
        if len(row) != rows:
            raise SchemaViolation(f"matrix must be square ({rows} columns expected)", f"{loc}/{i}")
        for j, q in enumerate(row):
            _number(q, f"{loc}/{i}/{j}")
    if n is not None and rows != n:
        raise SchemaViolation(f"expected a {n}x{n} matrix to match the real part", loc)
    return np.array(v, dtype=float)


def _classical(obj, loc: str = "") -> ClassicalState:
    p = obj["p"]
    if not isinstance(p, list):
        raise SchemaViolation("p must be a list", f"{loc}/p")
    vals = [_rational_entry(v, f"{loc}/p/{i}") for i, v in enumerate(p)]
    exact = all(isinstance(v, (int, Fraction)) for v in vals)
    if len(vals) < 2:
        raise InvariantViolation(f"dimension: classical states need n >= 2 outcomes, got {len(vals)}",
                                 f"{loc}/p")
    for i, v in enumerate(vals):
        if not math.isfinite(v) or not 0 <= v <= 1:
            raise InvariantViolation(f"range: entry {v} is outside [0, 1]", f"{loc}/p/{i}")
    total = sum(Fraction(v) for v in vals) if exact else math.fsum(float(v) for v in vals)
    if (total != 1) if exact else abs(total - 1) > SUM_EPS:
        raise InvariantViolation(f"sum: entries must sum to 1, got {total}", f"{loc}/p")
    return ClassicalState.of(vals, exact=exact)


_DENSITY_INVARIANTS = {
    NotHermitian: "hermitian",
    BadTrace: "unit-trace",
    NotPositive: "positive",
    DimensionMismatch: "dimension",
    NotOrthonormal: "unitary-frame",
}


def _invariant(err: PartialityError, loc: str) -> InvariantViolation:
    name = next((v for k, v in _DENSITY_INVARIANTS.items() if isinstance(err, k)), err.code)
    return InvariantViolation(f"{name}: {err}", loc)


def _density(obj, loc: str = "") -> DensityMatrix:
    re = _matrix(obj["re"], f"{loc}/re")
    im = _matrix(obj["im"], f"{loc}/im", n=re.shape[0])
    try:
        return DensityMatrix(re + 1j * im)
    except PartialityError as e:
        raise _invariant(e, loc or "/") from None


def _observable(obj, loc: str = "") -> Observable:
    re = _matrix(obj["frame_re"], f"{loc}/frame_re")
    im = _matrix(obj["frame_im"], f"{loc}/frame_im", n=re.shape[0])
    try:
        return Observable(re + 1j * im)
    except PartialityError as e:
        raise _invariant(e, loc or "/") from None


def _interval(obj, loc: str = "") -> Interval:
    lo, hi = _number(obj["lo"], f"{loc}/lo"), _number(obj["hi"], f"{loc}/hi")
    if lo > hi:
        raise InvariantViolation(f"ordered-endpoints: lo={lo} exceeds hi={hi}", loc or "/")
    return Interval(float(lo), float(hi))


_BUILDERS = {"classical": _classical, "density": _density, "interval": _interval, "observable": _observable}


def document_from_obj(obj: Any) -> StateDocument:
    if not isinstance(obj, dict):
        raise SchemaViolation("a state document is a JSON object", "/")
    kind = obj.get("kind")
    if kind not in KINDS:
        raise SchemaViolation(f"kind must be one of {sorted(KINDS)}, got {kind!r}", "/kind")
    fields = KINDS[kind]
    for f in fields:
        if f not in obj:
            raise SchemaViolation(f"missing field {f!r}", f"/{f}")
    extra = sorted(set(obj) - set(fields) - {"kind"})
    if extra:
        raise SchemaViolation(f"unexpected field {extra[0]!r}", f"/{extra[0]}")
    return StateDocument(kind, _BUILDERS[kind](obj))


def parse_state_document(text: bytes | str) -> StateDocument:
    """Parse UTF-8 JSON into a validated :class:`StateDocument`."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise MalformedJson(f"not UTF-8: {e.reason} at byte {e.start}") from None
    try:
        obj = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as e:
        raise MalformedJson(f"{e.msg} (line {e.lineno}, column {e.colno})") from None
    return document_from_obj(obj)


def _matrix_json(m: np.ndarray) -> list:
    return [[float(v) for v in row] for row in m]


def document_to_obj(doc: StateDocument | Value) -> dict:
    value = doc.value if isinstance(doc, StateDocument) else doc
    if isinstance(value, ClassicalState):
        if value.exact:
            return {"kind": "classical", "p": [[v.numerator, v.denominator] for v in value.p]}
        return {"kind": "classical", "p": [float(v) for v in value.p]}
    if isinstance(value, DensityMatrix):
        m = value.matrix
        return {"kind": "density", "re": _matrix_json(m.real), "im": _matrix_json(m.imag)}
    if isinstance(value, Interval):
        return {"kind": "interval", "lo": value.lo, "hi": value.hi}
    if isinstance(value, Observable):
        f = value.frame
        return {"kind": "observable", "frame_re": _matrix_json(f.real), "frame_im": _matrix_json(f.imag)}
    raise TypeError(f"cannot serialise {type(value).__name__}")


def serialize_document(doc: StateDocument | Value) -> str:
    return json.dumps(document_to_obj(doc), separators=(", ", ": "))
