"""Quantum states and the spectral order.

``ρ ⊑ σ`` holds when some observable with ``n`` distinct eigenvalues
commutes with both states and the induced outcome distributions compare in
the Bayesian order.  Such an observable exists only if ``ρ`` and ``σ``
commute, in which case its eigenframe is a joint eigenframe; the labelling
of its eigenvalues is absorbed by the permutation search of the Bayesian
decider.  Deciding the order therefore reduces to a commutator test, a
joint diagonalisation and one classical comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadTrace,
    DimensionMismatch,
    NotCommuting,
    NotHermitian,
    NotOrthonormal,
    NotPositive,
    NumericalDegeneracy,
    OutOfBall,
)
from .kernel import Measurement
from .linalg import jacobi_eigh, off_diagonal_mass
from .simplex import ClassicalState, MonotoneState, as_state, bayesian_leq_symmetric, sample_comparable_pair

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
POSITIVE_TOL = 1e-10
UNITARY_TOL = 1e-10
COMMUTATOR_TOL = 1e-8
CLUSTER_TOL = 1e-9
FRAME_RESIDUAL_TOL = 1e-7
BALL_TOL = 1e-10
COLLINEAR_TOL = 1e-9


class DensityMatrix:
    """A validated density matrix (Hermitian, positive, unit trace).

    The wrapped array is read-only.
    """

    __slots__ = ("_m", "_eig")

    def __init__(self, matrix, check: bool = True):
        m = np.array(matrix, dtype=complex)
        self._eig = _frozen(_validate(m)) if check else None
        m = (m + m.conj().T) / 2
        m.setflags(write=False)
        self._m = m

    @property
    def matrix(self) -> np.ndarray:
        return self._m

    @property
    def dim(self) -> int:
        return self._m.shape[0]

    def eigh(self):
        """Ascending eigenvalues and eigenvectors (computed once, then cached)."""
        if self._eig is None:
            self._eig = _frozen(jacobi_eigh(self._m))
        return self._eig

    def is_pure(self, tol: float = 1e-9) -> bool:
        w, _ = self.eigh()
        return bool(np.all((np.abs(w) <= tol) | (np.abs(w - 1) <= tol)))

    def close_to(self, other: "DensityMatrix", tol: float = 1e-8) -> bool:
        return self.dim == other.dim and float(np.abs(self._m - other._m).max()) <= tol

    def __array__(self, dtype=None, copy=None):
        return self._m.astype(dtype) if dtype is not None else self._m

    def __repr__(self):
        return f"DensityMatrix({np.array2string(self._m, precision=4)})"


def _frozen(pair):
    for a in pair:
        a.setflags(write=False)
    return pair


def _validate(m: np.ndarray):
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotHermitian(f"density matrices are square, got shape {m.shape}")
    if m.shape[0] < 2:
        raise DimensionMismatch("density matrices need n >= 2")
    if not np.all(np.isfinite(m)):
        raise NotHermitian("matrix has non-finite entries")
    herm = float(np.abs(m - m.conj().T).max())
    if herm > HERMITIAN_TOL:
        raise NotHermitian(f"not Hermitian: max |ρ - ρ†| = {herm:.3g}")
    tr = complex(np.trace(m)).real
    if abs(tr - 1) > TRACE_TOL:
        raise BadTrace(f"trace must be 1: |tr ρ - 1| = {abs(tr - 1):.3g}")
    w, v = jacobi_eigh((m + m.conj().T) / 2)
    if w[0] < -POSITIVE_TOL:
        raise NotPositive(f"not positive: smallest eigenvalue {w[0]:.3g}")
    return w, v


def validate_density(m) -> DensityMatrix:
    return m if isinstance(m, DensityMatrix) else DensityMatrix(m)


class Observable:
    """An observable with spectrum ``{1, ..., n}``, given by its eigenframe.

    Column ``k`` of ``frame`` is the eigenvector for label ``k + 1``.
    """

    __slots__ = ("_frame",)

    def __init__(self, frame):
        f = np.array(frame, dtype=complex)
        n = f.shape[0]
        if f.ndim != 2 or f.shape != (n, n):
            raise NotOrthonormal(f"frame must be square, got shape {f.shape}")
        err = float(np.abs(f.conj().T @ f - np.eye(n)).max())
        if err > UNITARY_TOL:
            raise NotOrthonormal(f"frame is not unitary: max |V†V - I| = {err:.3g}")
        f.setflags(write=False)
        self._frame = f

    @classmethod
    def standard(cls, n: int) -> "Observable":
        return cls(np.eye(n))

    @property
    def frame(self) -> np.ndarray:
        return self._frame

    @property
    def dim(self) -> int:
        return self._frame.shape[0]

    def matrix(self) -> np.ndarray:
        n = self.dim
        return self._frame @ np.diag(np.arange(1, n + 1, dtype=float)) @ self._frame.conj().T

    def projection(self, k: int) -> np.ndarray:
        v = self._frame[:, k:k + 1]
        return v @ v.conj().T


def _arr(a) -> np.ndarray:
    if isinstance(a, DensityMatrix):
        return a.matrix
    if isinstance(a, Observable):
        return a.matrix()
    return np.asarray(a, dtype=complex)


def _probabilities(values) -> ClassicalState:
    p = np.clip(np.asarray(values, dtype=float), 0.0, None)
    p = p / p.sum()
    p[np.argmax(p)] += 1.0 - p.sum()
    return ClassicalState(tuple(float(v) for v in p), False)


def spec_given_observable(rho: DensityMatrix, e: Observable) -> ClassicalState:
    """Outcome distribution ``(tr(p_1 ρ), ..., tr(p_n ρ))`` of measuring ``e``."""
    if rho.dim != e.dim:
        raise DimensionMismatch(f"state has dimension {rho.dim}, observable {e.dim}")
    f = e.frame
    probs = np.einsum("ik,ij,jk->k", f.conj(), rho.matrix, f).real
    return _probabilities(probs)


def commutator_norm(a, b) -> float:
    """Frobenius norm of ``ab - ba``."""
    a, b = _arr(a), _arr(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")
    return float(np.linalg.norm(a @ b - b @ a))


def _commute_tol(a: np.ndarray, b: np.ndarray) -> float:
    return COMMUTATOR_TOL * max(1.0, np.linalg.norm(a, 2) * np.linalg.norm(b, 2))


def commute(rho: DensityMatrix, sigma: DensityMatrix) -> bool:
    """Do the states commute, up to a tolerance scaled by their operator norms?"""
    return commutator_norm(rho, sigma) <= _commute_tol(_arr(rho), _arr(sigma))


def joint_eigenframe(rho: DensityMatrix, sigma: DensityMatrix) -> np.ndarray:
    """Unitary whose columns diagonalise both commuting states.

    ``ρ`` is diagonalised first; inside each cluster of (numerically) equal
    eigenvalues ``σ`` is diagonalised again.  If ``σ`` is not diagonal in
    the resulting frame, the clustering was ambiguous and we refuse.
    """
    w, v = rho.eigh()
    blocks, start = [], 0
    for k in range(1, len(w) + 1):
        if k == len(w) or w[k] - w[k - 1] > CLUSTER_TOL:
            blocks.append((start, k))
            start = k
    frame = v.copy()
    s = sigma.matrix
    for lo, hi in blocks:
        if hi - lo > 1:
            sub = v[:, lo:hi]
            _, u = jacobi_eigh(sub.conj().T @ s @ sub)
            frame[:, lo:hi] = sub @ u
    resid = off_diagonal_mass(frame.conj().T @ s @ frame)
    if resid > FRAME_RESIDUAL_TOL:
        raise NumericalDegeneracy(
            f"eigenvalue clusters of ρ are ambiguous at tolerance {CLUSTER_TOL}: "
            f"σ keeps off-diagonal mass {resid:.3g} in the joint frame")
    return frame


def aligned_spectra(rho: DensityMatrix, sigma: DensityMatrix) -> tuple[ClassicalState, ClassicalState]:
    """``(spec(ρ|e), spec(σ|e))`` for an observable ``e`` built on a joint eigenframe."""
    e = Observable(joint_eigenframe(rho, sigma))
    return spec_given_observable(rho, e), spec_given_observable(sigma, e)


def spectral_leq(rho: DensityMatrix, sigma: DensityMatrix) -> bool:
    if rho.dim != sigma.dim:
        raise DimensionMismatch(f"dimensions {rho.dim} and {sigma.dim} differ")
    if not commute(rho, sigma):
        return False
    x, y = aligned_spectra(rho, sigma)
    return bayesian_leq_symmetric(x, y)


def von_neumann_entropy(rho: DensityMatrix, base: float | None = None) -> float:
    """``-tr(ρ log ρ)``, computed from the eigenvalues."""
    w, _ = rho.eigh()
    h = -sum(float(v) * math.log(v) for v in w if v > 0)
    h = max(h, 0.0)
    return h / math.log(base) if base is not None else h


VON_NEUMANN = Measurement("von-neumann", spectral_leq, von_neumann_entropy)


def spectrum_descending(rho: DensityMatrix) -> MonotoneState:
    w, _ = rho.eigh()
    p = _probabilities(w)
    return MonotoneState(tuple(sorted(p.p, reverse=True)), False)


def diag_embedding(x) -> DensityMatrix:
    """Embed a classical state as the diagonal density matrix in the standard frame."""
    x = as_state(x)
    return DensityMatrix(np.diag(x.array()).astype(complex))


def classical_slice(e: Observable, rho: DensityMatrix) -> ClassicalState:
    """``spec(ρ|e)`` for ``ρ`` commuting with ``e``."""
    if rho.dim != e.dim:
        raise DimensionMismatch(f"state has dimension {rho.dim}, observable {e.dim}")
    em = e.matrix()
    c = commutator_norm(rho.matrix, em)
    if c > _commute_tol(rho.matrix, em):
        raise NotCommuting(f"[ρ, e] has norm {c:.3g}")
    return spec_given_observable(rho, e)


# -- the qubit ball ----------------------------------------------------------

_PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


@dataclass(frozen=True)
class BlochVector:
    """A point of the unit ball; ``diag(1, 0)`` sits at ``(0, 0, 1)``."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        if self.norm() > 1 + BALL_TOL:
            raise OutOfBall(f"|r| = {self.norm():.12g} exceeds 1")

    def norm(self) -> float:
        return math.sqrt(self.x ** 2 + self.y ** 2 + self.z ** 2)

    def array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


def bloch_from_density(rho: DensityMatrix) -> BlochVector:
    if rho.dim != 2:
        raise DimensionMismatch("Bloch coordinates exist only for n = 2")
    m = rho.matrix
    return BlochVector(float(2 * m[0, 1].real), float(-2 * m[0, 1].imag), float((m[0, 0] - m[1, 1]).real))


def density_from_bloch(r: BlochVector) -> DensityMatrix:
    if not isinstance(r, BlochVector):
        r = BlochVector(*map(float, r))
    m = np.eye(2, dtype=complex) + r.x * _PAULI[0] + r.y * _PAULI[1] + r.z * _PAULI[2]
    return DensityMatrix(m / 2)


def bloch_leq(a: BlochVector, b: BlochVector) -> bool:
    """``a`` lies on the segment from the origin to ``b``."""
    av, bv = a.array(), b.array()
    bb = float(bv @ bv)
    if bb == 0:
        return bool(np.abs(av).max() <= COLLINEAR_TOL)
    t = float(av @ bv) / bb
    if t < -COLLINEAR_TOL or t > 1 + COLLINEAR_TOL:
        return False
    return bool(np.abs(av - t * bv).max() <= COLLINEAR_TOL)


# -- sampling ----------------------------------------------------------------


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary from the QR factorisation of a Ginibre matrix."""
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(g)
    d = np.diag(r)
    return q * (d / np.abs(d))


def conjugate(rho: DensityMatrix, u: np.ndarray) -> DensityMatrix:
    return DensityMatrix(u @ rho.matrix @ u.conj().T)


def sample_density(n: int, rng: np.random.Generator) -> DensityMatrix:
    """``GG†/tr(GG†)`` for a complex Gaussian ``G``."""
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real)


def frame_state(u: np.ndarray, x) -> DensityMatrix:
    """``U diag(x) U†``."""
    x = as_state(x)
    return DensityMatrix(u @ np.diag(x.array()) @ u.conj().T)


def sample_comparable_density_pair(n: int, rng: np.random.Generator) -> tuple[DensityMatrix, DensityMatrix]:
    u = random_unitary(n, rng)
    x, y = sample_comparable_pair(n, rng)
    return frame_state(u, x), frame_state(u, y)
