"""Seeded random voxel configurations for property checks.

Every generator takes a ``numpy.random.Generator`` so that a batch is fully
determined by its seed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .geometry import Configuration, GridSet

RATIOS = (Fraction(1, 2), Fraction(2, 3), Fraction(1), Fraction(3, 2), Fraction(2))
BOX = 8
_STEPS = np.array([[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]])


@dataclass(frozen=True)
class Sample:
    cfg: Configuration
    mode: str
    seed: int
    index: int


def _grow(rng: np.random.Generator, occupied: np.ndarray, allowed: np.ndarray, start, n: int) -> list[tuple]:
    """Random face-connected animal of n cells inside ``allowed`` avoiding ``occupied``."""
    cells = [tuple(start)]
    taken = {tuple(start)}
    frontier: list[tuple] = []

    def push(c):
        for d in _STEPS:
            q = tuple(int(v) for v in np.add(c, d))
            if all(0 <= v < BOX for v in q) and allowed[q] and not occupied[q] and q not in taken:
                frontier.append(q)

    push(start)
    while len(cells) < n:
        frontier = [q for q in frontier if q not in taken]
        if not frontier:
            raise RuntimeError("growth got stuck")
        q = frontier[rng.integers(len(frontier))]
        taken.add(q)
        cells.append(q)
        push(q)
    return cells


def _volumes(rng: np.random.Generator, max_total: int) -> tuple[int, int]:
    r = RATIOS[rng.integers(len(RATIOS))]
    unit = r.numerator + r.denominator
    k = int(rng.integers(1, max_total // unit + 1))
    return r.denominator * k, r.numerator * k  # V_B / V_A = r


def split_pair(rng: np.random.Generator, max_total: int = 40) -> Configuration:
    """A and B grown in the two halves of the box cut by a random plane; the cut normal has p = 0."""
    v_a, v_b = _volumes(rng, max_total)
    axis = int(rng.integers(3))
    coord = np.indices((BOX,) * 3)[axis]
    left, right = coord < BOX // 2, coord >= BOX // 2
    empty = np.zeros((BOX,) * 3, dtype=bool)
    sa = [int(v) for v in rng.integers(0, BOX, 3)]
    sa[axis] = BOX // 2 - 1
    sb = [int(v) for v in rng.integers(0, BOX, 3)]
    sb[axis] = BOX // 2
    a = _grow(rng, empty, left, sa, v_a)
    b = _grow(rng, empty, right, sb, v_b)
    return Configuration.from_cells(a, b)


def free_pair(rng: np.random.Generator, max_total: int = 40) -> Configuration:
    """A grown anywhere, B grown from a cell adjacent to A."""
    v_a, v_b = _volumes(rng, max_total)
    full = np.ones((BOX,) * 3, dtype=bool)
    occ = np.zeros((BOX,) * 3, dtype=bool)
    while True:
        a = _grow(rng, occ, full, tuple(int(v) for v in rng.integers(2, BOX - 2, 3)), v_a)
        for c in a:
            occ[c] = True
        starts = sorted(
            {
                tuple(int(v) for v in np.add(c, d))
                for c in a
                for d in _STEPS
                if all(0 <= v < BOX for v in np.add(c, d)) and not occ[tuple(np.add(c, d))]
            }
        )
        try:
            b = _grow(rng, occ, full, starts[rng.integers(len(starts))], v_b)
            return Configuration.from_cells(a, b)
        except RuntimeError:
            occ[:] = False


def product_pair(rng: np.random.Generator, max_height: int = 4) -> Configuration:
    """Two boxes side by side extruded along a random axis: every slice along it is identical."""
    r = RATIOS[rng.integers(len(RATIOS))]
    # A = w_a x d x h, B = w_b x d x h with w_b / w_a = r
    w_a, w_b = r.denominator, r.numerator
    d = int(rng.integers(1, 3))
    h = int(rng.integers(1, max_height + 1))
    A = GridSet.box((0, 0, 0), (w_a, d, h))
    B = GridSet.box((w_a, 0, 0), (w_b, d, h))
    perm = tuple(int(v) for v in rng.permutation(3))
    return Configuration(A, B).transform(perm, (1, 1, 1))


def random_batch(n: int = 200, seed: int = 20240611) -> list[Sample]:
    """Mixed batch: mostly split and free growth, plus a few products."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(n):
        u = rng.random()
        if u < 0.45:
            mode, cfg = "split", split_pair(rng)
        elif u < 0.9:
            mode, cfg = "free", free_pair(rng)
        else:
            mode, cfg = "product", product_pair(rng)
        out.append(Sample(cfg, mode, seed, i))
    return out
