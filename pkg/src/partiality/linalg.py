"""Cyclic Jacobi eigendecomposition for small Hermitian matrices.

The sweeps run on nested Python lists of complex scalars: for the matrix
sizes used here (n <= 16) that is several times faster than issuing numpy
calls per rotation.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import NoConvergence, NotHermitian

OFFDIAG_TOL = 1e-12
MAX_SWEEPS = 64


def off_diagonal_mass(a: np.ndarray) -> float:
    """Frobenius norm of the strictly off-diagonal part."""
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def _off(rows: list, n: int) -> float:
    return math.sqrt(sum(abs(rows[i][j]) ** 2 for i in range(n) for j in range(n) if i != j))


def _rotate_columns(rows: list, p: int, q: int, c: float, sph: complex, scph: complex) -> None:
    for row in rows:
        x, y = row[p], row[q]
        row[p] = c * x - scph * y
        row[q] = sph * x + c * y


def jacobi_eigh(a, tol: float = OFFDIAG_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and unitary eigenvectors of a Hermitian matrix.

    Sweeps over all ``(p, q)`` pairs annihilating each off-diagonal entry
    with a complex Givens rotation until the off-diagonal mass drops below
    ``tol`` times ``max(1, ‖a‖_F)``.
    """
    a = np.array(a, dtype=complex)
    n = a.shape[0]
    if a.ndim != 2 or a.shape != (n, n):
        raise NotHermitian(f"expected a square matrix, got shape {a.shape}")
    rows = ((a + a.conj().T) / 2).tolist()
    vecs = [[1 + 0j if i == j else 0j for j in range(n)] for i in range(n)]
    limit = tol * max(1.0, float(np.linalg.norm(a)))
    for _ in range(MAX_SWEEPS):
        if _off(rows, n) <= limit:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = rows[p][q]
                mag = abs(apq)
                if mag <= 1e-3 * limit:
                    continue  # already negligible; rotating would only add rounding
                phase = apq / mag
                tau = (rows[q][q].real - rows[p][p].real) / (2 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + math.sqrt(1 + tau * tau))
                c = 1 / math.sqrt(1 + t * t)
                s = t * c
                sph, scph = s * phase, s * phase.conjugate()
                # A ← J† A J with J[:, p] = (c, -s·conj(phase)), J[:, q] = (s·phase, c)
                _rotate_columns(rows, p, q, c, sph, scph)
                rp, rq = rows[p], rows[q]
                for k in range(n):
                    x, y = rp[k], rq[k]
                    rp[k] = c * x - sph * y
                    rq[k] = scph * x + c * y
                rp[q] = rq[p] = 0j
                _rotate_columns(vecs, p, q, c, sph, scph)
    else:
        if _off(rows, n) > limit:
            raise NoConvergence("Jacobi sweeps did not converge")
    w = np.array([rows[i][i].real for i in range(n)])
    order = np.argsort(w, kind="stable")
    return w[order], np.array(vecs, dtype=complex)[:, order]
