"""SVG pictures of ``↑x`` and ``↓x`` in the 2-simplex.

The triangle is drawn with ``e_0`` at the top, ``e_1`` bottom left and
``e_2`` bottom right.  Grid points ``(i, j, k)/g`` are classified by the
Bayesian order.  Classification is vectorised over the grid: for every
ordering of the three outcomes the permutation criterion (both vectors
non-increasing, consecutive cross products ordered) is evaluated at once.
With an exact ``x`` this runs in integer arithmetic and is therefore exact;
a float ``x`` uses the decider's tie tolerance.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import permutations

import numpy as np

from .errors import DimensionMismatch, OutOfRange, ResolutionTooLarge
from .simplex import TIE_EPS, ClassicalState, as_state

MAX_GRID = 2000
SIZE = 600.0
MARGIN = 30.0

COLORS = {"up": "#d95f02", "down": "#1b9e77", "both": "#7570b3"}


def grid_points(grid: int) -> np.ndarray:
    """Integer barycentric grid ``(i, j, k)`` with ``i + j + k = grid``, shape ``(m, 3)``."""
    i, j = np.meshgrid(np.arange(grid + 1), np.arange(grid + 1), indexing="ij")
    mask = i + j <= grid
    i, j = i[mask], j[mask]
    return np.stack([i, j, grid - i - j], axis=1).astype(np.int64)


def _scaled(x: ClassicalState):
    """Entries of ``x`` as a common-denominator integer vector (exact) or floats."""
    if x.exact:
        den = math.lcm(*(Fraction(v).denominator for v in x.p))
        return np.array([int(v * den) for v in x.p], dtype=object), 0
    return np.array([float(v) for v in x.p]), TIE_EPS


def _leq_mask(a, b, eps) -> np.ndarray:
    """Row-wise ``a ⊑ b`` for arrays of shape ``(m, 3)`` via the permutation criterion."""
    out = np.zeros(len(a), dtype=bool)
    for s in permutations(range(3)):
        a0, a1, a2 = (a[:, k] for k in s)
        b0, b1, b2 = (b[:, k] for k in s)
        ok = (a0 >= a1 - eps) & (a1 >= a2 - eps) & (b0 >= b1 - eps) & (b1 >= b2 - eps)
        ok &= (a0 * b1 <= a1 * b0 + eps) & (a1 * b2 <= a2 * b1 + eps)
        out |= ok.astype(bool)
    return out


def classify_grid(x, grid: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return ``(points, up, down)``: the grid and masks for ``x ⊑ y`` and ``y ⊑ x``."""
    x = as_state(x)
    if x.n != 3:
        raise DimensionMismatch(f"up/down pictures need a state in Δ³, got n={x.n}")
    if grid < 1:
        raise OutOfRange("grid must be at least 1")
    if grid > MAX_GRID:
        raise ResolutionTooLarge(f"grid {grid} exceeds the limit {MAX_GRID}")
    pts = grid_points(grid)
    xv, eps = _scaled(x)
    if x.exact:
        # compare x/D with y/g: scale both to the common unit 1/(D g)
        den = sum(xv)
        # cross products reach (den * grid)^2; fall back to Python ints past int64
        dtype = np.int64 if (den * grid) ** 2 < 2 ** 62 else object
        ys = pts.astype(dtype) * den
        xs = np.tile((xv * grid).astype(dtype), (len(pts), 1))
    else:
        ys = pts / grid
        xs = np.tile(xv, (len(pts), 1))
    up = _leq_mask(xs, ys, eps)
    down = _leq_mask(ys, xs, eps)
    return pts, up, down


def _xy(bary) -> tuple[float, float]:
    """Barycentric to canvas coordinates."""
    a, b, c = (float(v) for v in bary)
    h = SIZE * math.sqrt(3) / 2
    top = (MARGIN + SIZE / 2, MARGIN)
    left = (MARGIN, MARGIN + h)
    right = (MARGIN + SIZE, MARGIN + h)
    return (a * top[0] + b * left[0] + c * right[0], a * top[1] + b * left[1] + c * right[1])


def emit_updown_svg(x, grid: int = 60) -> bytes:
    """Render ``↑x`` and ``↓x`` on a ``grid``-resolution barycentric lattice."""
    x = as_state(x)
    pts, up, down = classify_grid(x, grid)
    h = SIZE * math.sqrt(3) / 2
    width, height = SIZE + 2 * MARGIN, h + 2 * MARGIN + 40
    r = max(0.4, 0.45 * SIZE / grid)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.0f} {height:.0f}">',
        f'<rect width="{width:.0f}" height="{height:.0f}" fill="#ffffff"/>',
    ]
    corners = [_xy(v) for v in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    poly = " ".join(f"{px:.3f},{py:.3f}" for px, py in corners)
    out.append(f'<polygon points="{poly}" fill="#f4f4f4" stroke="#333333" stroke-width="1"/>')
    for cls, mask in (("up", up & ~down), ("down", down & ~up), ("both", up & down)):
        idx = np.nonzero(mask)[0]
        if len(idx) == 0:
            continue
        out.append(f'<g class="{cls}" fill="{COLORS[cls]}">')
        for k in idx:
            px, py = _xy(pts[k] / grid)
            out.append(f'<circle cx="{px:.3f}" cy="{py:.3f}" r="{r:.3f}"/>')
        out.append("</g>")
    bx, by = _xy((1 / 3, 1 / 3, 1 / 3))
    out.append(f'<rect class="bottom" x="{bx - 5:.3f}" y="{by - 5:.3f}" width="10" height="10" '
               f'fill="none" stroke="#000000" stroke-width="1.5"/>')
    mx, my = _xy(x.p)
    out.append(f'<circle class="x" cx="{mx:.3f}" cy="{my:.3f}" r="5" fill="#000000"/>')
    for label, (px, py), dy in zip(("e0", "e1", "e2"), corners, (-8, 16, 16)):
        out.append(f'<text x="{px:.3f}" y="{py + dy:.3f}" font-size="12" text-anchor="middle">{label}</text>')
    ly = MARGIN + h + 32
    legend = [("up", "x ⊑ y"), ("down", "y ⊑ x"), ("both", "y = x")]
    for k, (cls, text) in enumerate(legend):
        lx = MARGIN + 10 + 150 * k
        out.append(f'<circle cx="{lx:.0f}" cy="{ly - 4:.0f}" r="5" fill="{COLORS[cls]}"/>')
        out.append(f'<text x="{lx + 10:.0f}" y="{ly:.0f}" font-size="12">{text}</text>')
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")
