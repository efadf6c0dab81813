"""Closed-form minimal energies and minimizers.

Planar side: the normalised minimal energy ``f``, its regime threshold
``r_star`` and explicit planar minimizers.  Spatial side: the optimal
cuboid-pair energy ``emin`` and the two-cuboid minimizer for volume ratios
in [1/2, 2].

``box_pair_energy`` evaluates the double-bubble energy of any pair of finite
unions of real axis-aligned boxes by coordinate compression; it is used as an
independent face audit of every constructor in this module.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Sequence

import numpy as np

SQRT2 = math.sqrt(2.0)
SQRT6 = math.sqrt(6.0)

Box = tuple[tuple[float, float], ...]  # one (lo, hi) interval per axis


def r_star() -> float:
    return (4.0 * (SQRT2 - 1.0) / (1.0 + 2.0 * SQRT2)) ** 2


R_STAR = r_star()
F_AT_R_STAR = 20.0 / 41.0 * (7.0 + 2.0 * SQRT2)
EMIN_CONSTANT = 3.0 * (2.0 / 3.0) ** (2.0 / 3.0) + 4.0 * 1.5 ** (1.0 / 3.0)


def _f_unit(x: np.ndarray) -> np.ndarray:
    # x in [0, 1]
    with np.errstate(invalid="ignore", divide="ignore"):
        nested = 4.0 + 2.0 * np.sqrt(x / (x + 1.0))
        side = (4.0 + 2.0 * np.sqrt(2.0 * x)) / np.sqrt(x + 1.0)
    return np.where(x <= R_STAR, nested, np.where(x <= 0.5, side, 2.0 * SQRT6))


def f(x):
    """Normalised planar minimal energy: E_2D(a, b) = sqrt(a + b) * f(b / a).

    Accepts a scalar or an array; f(x) = f(1/x) for x > 1.
    """
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr < 0):
        raise ValueError(f"f is defined on finite x >= 0, got {x!r}")
    with np.errstate(divide="ignore"):
        folded = np.where(arr > 1.0, 1.0 / np.where(arr > 1.0, arr, 1.0), arr)
    out = _f_unit(folded)
    return float(out) if out.ndim == 0 else out


class PlanarRegime(str, Enum):
    RECTANGLES = "Rectangles"
    SIDE_SQUARE = "SideSquare"
    NESTED_SQUARES = "NestedSquares"


def planar_regime(a: float, b: float) -> PlanarRegime:
    """Regime of the planar minimizer.

    At the ties x = 1/2 and x = r_star both neighbouring minimizers are optimal;
    the tie goes to the case listed first (Rectangles, then SideSquare).
    """
    if a <= 0 or b <= 0:
        raise ValueError("areas must be positive")
    x = min(a, b) / max(a, b)
    if x >= 0.5:
        return PlanarRegime.RECTANGLES
    if x >= R_STAR:
        return PlanarRegime.SIDE_SQUARE
    return PlanarRegime.NESTED_SQUARES


def planar_energy(a: float, b: float) -> float:
    """Minimal l1 energy of a planar double bubble with areas a and b."""
    if not (a >= 0 and b >= 0) or not math.isfinite(a + b) or a + b <= 0:
        raise ValueError(f"need a, b >= 0 with a + b > 0, got ({a!r}, {b!r})")
    lo, hi = min(a, b), max(a, b)
    return math.sqrt(a + b) * f(lo / hi)


def planar_energy_cases(a, b):
    """The three case formulas of the planar characterization, vectorised.

    Works directly with the smaller area ``s`` and larger ``l``:
    2 sqrt6 sqrt(s+l), 2 sqrt(2 s) + 4 sqrt(l), 4 sqrt(s+l) + 2 sqrt(s).
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    s, l = np.minimum(a, b), np.maximum(a, b)
    x = s / l
    out = np.where(
        x > 0.5,
        2.0 * SQRT6 * np.sqrt(s + l),
        np.where(x > R_STAR, 2.0 * np.sqrt(2.0 * s) + 4.0 * np.sqrt(l), 4.0 * np.sqrt(s + l) + 2.0 * np.sqrt(s)),
    )
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class PlanarMinimizer:
    regime: PlanarRegime
    a: float
    b: float
    A: tuple[Box, ...]
    B: tuple[Box, ...]
    energy: float
    lambda_interval: tuple[float, float] | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["regime"] = self.regime.value
        return d


def planar_minimizer(a: float, b: float) -> PlanarMinimizer:
    """Explicit minimizer; A carries area ``a`` and B area ``b``.

    For the side-square regime the free vertical offset of the strip is
    reported as ``lambda_interval`` and the emitted strip uses offset 0.
    """
    if not (a > 0 and b > 0):
        raise ValueError(f"areas must be positive, got ({a!r}, {b!r})")
    regime = planar_regime(a, b)
    small, large = min(a, b), max(a, b)
    lam = None
    if regime is PlanarRegime.RECTANGLES:
        c = math.sqrt(2.0 * (small + large) / 3.0)
        s_box: Box = ((-small / c, 0.0), (0.0, c))
        l_boxes: tuple[Box, ...] = (((0.0, large / c), (0.0, c)),)
    elif regime is PlanarRegime.SIDE_SQUARE:
        c = math.sqrt(2.0 * small)
        side = math.sqrt(large)
        s_box = ((-small / c, 0.0), (0.0, c))
        l_boxes = (((0.0, side), (0.0, side)),)
        lam = (0.0, side - c)
    else:
        q, s = math.sqrt(small), math.sqrt(small + large)
        s_box = ((0.0, q), (0.0, q))
        l_boxes = (((q, s), (0.0, s)), ((0.0, q), (q, s)))
    if a <= b:
        A, B = (s_box,), l_boxes
    else:
        A, B = l_boxes, (s_box,)
    return PlanarMinimizer(regime, a, b, A, B, planar_energy(a, b), lam)


def emin(V_A: float, V_B: float) -> tuple[float, float]:
    """Optimal shared-face area M* and minimal energy of the cuboid-pair family."""
    if not (V_A > 0 and V_B > 0):
        raise ValueError(f"volumes must be positive, got ({V_A!r}, {V_B!r})")
    V = V_A + V_B
    M = (2.0 * V / 3.0) ** (2.0 / 3.0)
    return M, float(cuboid_family_energy(M, V))


def emin_closed_form(V_A: float, V_B: float) -> float:
    return EMIN_CONSTANT * (V_A + V_B) ** (2.0 / 3.0)


def cuboid_family_energy(M, V):
    """3M + 4V / sqrt(M): two square-faced cuboids of total volume V."""
    return 3.0 * M + 4.0 * V / np.sqrt(M)


@dataclass(frozen=True)
class CuboidPair:
    A: Box
    B: Box
    M: float
    V_A: float
    V_B: float

    @property
    def side(self) -> float:
        return math.sqrt(self.M)

    def face_audit(self) -> "BoxEnergy":
        return box_pair_energy([self.A], [self.B])

    def to_dict(self) -> dict:
        audit = self.face_audit()
        return {
            "A": [list(iv) for iv in self.A],
            "B": [list(iv) for iv in self.B],
            "M": self.M,
            "V_A": self.V_A,
            "V_B": self.V_B,
            "energy": audit.energy,
        }


def theorem_minimizer(V_A: float, V_B: float) -> CuboidPair:
    """The two cuboids sharing a square face, for V_B / V_A in [1/2, 2]."""
    if not (V_A > 0 and V_B > 0):
        raise ValueError(f"volumes must be positive, got ({V_A!r}, {V_B!r})")
    ratio = V_B / V_A
    if not 0.5 <= ratio <= 2.0:
        raise ValueError(
            f"volume ratio V_B/V_A = {ratio:.6g} outside [1/2, 2]; the two-cuboid minimizer is only "
            "established for ratios in that range"
        )
    s = (2.0 * (V_A + V_B) / 3.0) ** (1.0 / 3.0)
    M = s * s
    A = ((-V_A / M, 0.0), (0.0, s), (0.0, s))
    B = ((0.0, V_B / M), (0.0, s), (0.0, s))
    return CuboidPair(A, B, M, V_A, V_B)


@dataclass(frozen=True)
class BoxEnergy:
    perimeter_a: float
    perimeter_b: float
    interface: float
    volume_a: float
    volume_b: float

    @property
    def energy(self) -> float:
        return self.perimeter_a + self.perimeter_b - self.interface


def box_pair_energy(A: Sequence[Box], B: Sequence[Box]) -> BoxEnergy:
    """l1 energy of two unions of axis-aligned boxes (2D or 3D) by coordinate compression.

    Boxes within one set may touch but must not overlap; A and B must be disjoint.
    """
    boxes = list(A) + list(B)
    dim = len(boxes[0])
    coords = [np.unique([v for bx in boxes for v in bx[k]]) for k in range(dim)]
    widths = [np.diff(c) for c in coords]
    centers = [0.5 * (c[:-1] + c[1:]) for c in coords]
    lab = np.zeros(tuple(len(w) + 2 for w in widths), dtype=np.int8)
    grids = np.meshgrid(*centers, indexing="ij")
    inner = tuple(slice(1, -1) for _ in range(dim))
    for value, group in ((1, A), (2, B)):
        for bx in group:
            inside = np.ones(grids[0].shape, dtype=bool)
            for k in range(dim):
                inside &= (grids[k] > bx[k][0]) & (grids[k] < bx[k][1])
            if (lab[inner][inside] != 0).any():
                raise ValueError("boxes overlap")
            lab[inner][inside] = value
    # cell measures with zero-width halo
    padded = [np.concatenate(([0.0], w, [0.0])) for w in widths]
    per = {1: 0.0, 2: 0.0}
    inter = 0.0
    for ax in range(dim):
        n = lab.shape[ax]
        lo = np.take(lab, np.arange(n - 1), axis=ax)
        hi = np.take(lab, np.arange(1, n), axis=ax)
        others = [padded[k] for k in range(dim) if k != ax]
        area = others[0] if dim == 2 else np.multiply.outer(others[0], others[1])
        area = np.expand_dims(area, ax)
        area = np.broadcast_to(area, lo.shape)
        for v in (1, 2):
            per[v] += float(area[((lo == v) & (hi != v)) | ((hi == v) & (lo != v))].sum())
        inter += float(area[((lo == 1) & (hi == 2)) | ((lo == 2) & (hi == 1))].sum())
    vol_grid = padded[0]
    for k in range(1, dim):
        vol_grid = np.multiply.outer(vol_grid, padded[k])
    return BoxEnergy(per[1], per[2], inter, float(vol_grid[lab == 1].sum()), float(vol_grid[lab == 2].sum()))
