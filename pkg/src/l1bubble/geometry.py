"""Exact voxel geometry for the l1 double-bubble problem.

Sets are unions of unit cells of the integer lattice in two or three
dimensions.  Every boundary element is an axis-aligned unit facet whose
normal has l1 norm one, so l1 perimeters, interfaces and projections are
plain facet / column counts and everything here is integer arithmetic.

Axes are numbered 1..dim throughout the public API (axis 1 is x).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple

import numpy as np

EMPTY, LABEL_A, LABEL_B = 0, 1, 2

Cell = tuple[int, ...]


class GeometryError(ValueError):
    """Invalid geometric input (overlap, bad axis, empty configuration set)."""


@dataclass(frozen=True, eq=False)
class GridSet:
    """A finite set of unit cells stored as a dense mask over its bounding box.

    ``origin`` is the integer coordinate of ``mask[0, 0, ...]``.  Two GridSets
    compare equal when they contain the same cells, whatever their boxes.
    """

    origin: tuple[int, ...]
    mask: np.ndarray = field(repr=False)

    def __post_init__(self):
        mask = np.asarray(self.mask, dtype=bool)
        if mask.ndim != len(self.origin):
            raise GeometryError("origin and mask dimensions differ")
        if not 1 <= mask.ndim <= 3:
            raise GeometryError(f"unsupported dimension {mask.ndim}")
        origin = tuple(int(o) for o in self.origin)
        # keep the mask tight around the cells
        idx = np.argwhere(mask)
        if len(idx):
            lo, hi = idx.min(0), idx.max(0) + 1
            if tuple(lo) != (0,) * mask.ndim or tuple(hi) != mask.shape:
                mask = mask[tuple(slice(a, b) for a, b in zip(lo, hi))].copy()
                origin = tuple(o + int(a) for o, a in zip(origin, lo))
        elif mask.size:
            mask = np.zeros((0,) * mask.ndim, dtype=bool)
        mask.setflags(write=False)
        object.__setattr__(self, "mask", mask)
        object.__setattr__(self, "origin", origin)

    @classmethod
    def from_cells(cls, cells: Iterable[Cell], dim: int | None = None) -> "GridSet":
        cells = [tuple(int(c) for c in cell) for cell in cells]
        if not cells:
            if dim is None:
                raise GeometryError("dimension required for an empty set")
            return cls.empty(dim)
        dim = len(cells[0]) if dim is None else dim
        if any(len(c) != dim for c in cells):
            raise GeometryError("cells of mixed dimension")
        arr = np.array(cells, dtype=np.int64)
        lo = arr.min(axis=0)
        shape = arr.max(axis=0) - lo + 1
        mask = np.zeros(tuple(shape), dtype=bool)
        mask[tuple((arr - lo).T)] = True
        return cls(tuple(lo), mask)

    @classmethod
    def empty(cls, dim: int) -> "GridSet":
        return cls((0,) * dim, np.zeros((0,) * dim, dtype=bool))

    @classmethod
    def box(cls, lo: Cell, extents: Cell) -> "GridSet":
        """Solid cuboid with lower corner ``lo`` and integer side lengths."""
        return cls(tuple(lo), np.ones(tuple(extents), dtype=bool))

    @property
    def dimension(self) -> int:
        return self.mask.ndim

    @property
    def volume(self) -> int:
        return int(self.mask.sum())

    def is_empty(self) -> bool:
        return not self.mask.any()

    def cells(self) -> frozenset[Cell]:
        idx = np.argwhere(self.mask)
        off = np.array(self.origin, dtype=np.int64)
        return frozenset(tuple(int(v) for v in row) for row in idx + off)

    def bounds(self) -> tuple[Cell, Cell] | None:
        """Tight (inclusive lo, exclusive hi) corners, or None when empty."""
        idx = np.argwhere(self.mask)
        if len(idx) == 0:
            return None
        off = np.array(self.origin)
        return tuple(int(v) for v in idx.min(0) + off), tuple(int(v) for v in idx.max(0) + off + 1)

    def translate(self, shift: Cell) -> "GridSet":
        return GridSet(tuple(o + s for o, s in zip(self.origin, shift)), self.mask)

    def transform(self, perm: tuple[int, ...], signs: tuple[int, ...]) -> "GridSet":
        """Apply the axis isometry x'_i = signs[i] * x_{perm[i]} (0-based perm)."""
        return GridSet.from_cells(
            (tuple(s * c[p] for p, s in zip(perm, signs)) for c in self.cells()), self.dimension
        )

    def isdisjoint(self, other: "GridSet") -> bool:
        _check_same_dim(self, other)
        lab, _ = label_array(self, other, check=False, overlap_ok=True)
        return not (lab == 3).any()

    def __eq__(self, other):
        if not isinstance(other, GridSet):
            return NotImplemented
        return self.dimension == other.dimension and self.cells() == other.cells()

    def __hash__(self):
        return hash((self.dimension, self.cells()))

    def __len__(self):
        return self.volume

    def __iter__(self) -> Iterator[Cell]:
        return iter(sorted(self.cells()))


def _check_same_dim(*sets: GridSet) -> None:
    dims = {s.dimension for s in sets}
    if len(dims) != 1:
        raise GeometryError(f"sets of different dimensions: {sorted(dims)}")


def _check_axis(dim: int, axis: int) -> None:
    if not isinstance(axis, (int, np.integer)) or not 1 <= axis <= dim:
        raise GeometryError(f"axis must be in 1..{dim}, got {axis!r}")


def label_array(
    A: GridSet, B: GridSet | None = None, pad: int = 1, check: bool = True, overlap_ok: bool = False
) -> tuple[np.ndarray, tuple[int, ...]]:
    """Common label grid (0 empty, 1 A, 2 B) with a halo of ``pad`` empty cells.

    Returns the int8 array and the lattice coordinate of its [0, ..., 0] entry.
    Overlapping cells raise unless ``overlap_ok`` (they are then labelled 3).
    """
    sets = [A] if B is None else [A, B]
    if check:
        _check_same_dim(*sets)
    dim = A.dimension
    boxes = [s.bounds() for s in sets if not s.is_empty()]
    if not boxes:
        return np.zeros((2 * pad,) * dim, dtype=np.int8), (-pad,) * dim
    lo = tuple(min(b[0][i] for b in boxes) - pad for i in range(dim))
    hi = tuple(max(b[1][i] for b in boxes) + pad for i in range(dim))
    lab = np.zeros(tuple(h - l for l, h in zip(lo, hi)), dtype=np.int8)
    for value, s in zip((LABEL_A, LABEL_B), sets):
        if s.is_empty():
            continue
        sl = tuple(slice(o - l, o - l + n) for o, l, n in zip(s.origin, lo, s.mask.shape))
        lab[sl] += value * s.mask
    if (lab == 3).any() and not overlap_ok:
        raise GeometryError("A and B overlap")
    return lab, lo


def _pairs(lab: np.ndarray, ax: int) -> tuple[np.ndarray, np.ndarray]:
    n = lab.shape[ax]
    lo = np.take(lab, np.arange(n - 1), axis=ax)
    hi = np.take(lab, np.arange(1, n), axis=ax)
    return lo, hi


class FacetCounts(NamedTuple):
    """Facet tallies of a pair (A, B); ``by_axis`` lists (A-only, B-only, interface) per axis."""

    a_only: int
    b_only: int
    interface: int
    by_axis: tuple[tuple[int, int, int], ...]

    @property
    def perimeter_a(self) -> int:
        return self.a_only + self.interface

    @property
    def perimeter_b(self) -> int:
        return self.b_only + self.interface

    @property
    def energy(self) -> int:
        return self.a_only + self.b_only + self.interface

    def normal_to(self, axis: int) -> int:
        """Facets of dA u dB whose normal is along ``axis`` (1-based)."""
        return sum(self.by_axis[axis - 1])


def facet_counts(A: GridSet, B: GridSet | None = None) -> FacetCounts:
    if B is None:
        B = GridSet.empty(A.dimension)
    lab, _ = label_array(A, B)
    per_axis = []
    for ax in range(lab.ndim):
        lo, hi = _pairs(lab, ax)
        diff = lo != hi
        inter = int((diff & (lo != EMPTY) & (hi != EMPTY)).sum())
        a_only = int((diff & (((lo == LABEL_A) & (hi == EMPTY)) | ((hi == LABEL_A) & (lo == EMPTY)))).sum())
        b_only = int((diff & (((lo == LABEL_B) & (hi == EMPTY)) | ((hi == LABEL_B) & (lo == EMPTY)))).sum())
        per_axis.append((a_only, b_only, inter))
    return FacetCounts(
        sum(t[0] for t in per_axis), sum(t[1] for t in per_axis), sum(t[2] for t in per_axis), tuple(per_axis)
    )


class Facet(NamedTuple):
    """Unit facet between the cell ``cell - e_axis`` and ``cell`` (``level`` = cell[axis-1])."""

    owner: str  # "A", "B" or "interface"
    axis: int
    level: int
    cell: Cell


@dataclass(frozen=True)
class FaceSet:
    facets: tuple[Facet, ...]

    def count(self, owner: str | None = None, axis: int | None = None) -> int:
        return sum(
            1 for f in self.facets if (owner is None or f.owner == owner) and (axis is None or f.axis == axis)
        )


def faces(A: GridSet, B: GridSet | None = None) -> FaceSet:
    """Enumerate every boundary / interface facet of (A, B) in a canonical order."""
    if B is None:
        B = GridSet.empty(A.dimension)
    lab, lo_corner = label_array(A, B)
    names = {LABEL_A: "A", LABEL_B: "B"}
    out = []
    for ax in range(lab.ndim):
        lo, hi = _pairs(lab, ax)
        for idx in np.argwhere(lo != hi):
            u, v = int(lo[tuple(idx)]), int(hi[tuple(idx)])
            owner = "interface" if u and v else names[u or v]
            cell = tuple(int(i) + c for i, c in zip(idx, lo_corner))
            cell = tuple(c + 1 if k == ax else c for k, c in enumerate(cell))
            out.append(Facet(owner, ax + 1, cell[ax], cell))
    return FaceSet(tuple(out))


def l1_perimeter(S: GridSet) -> int:
    """Number of unit boundary facets of S, i.e. its exact l1 perimeter."""
    return facet_counts(S).a_only


def interface_area(A: GridSet, B: GridSet) -> int:
    return facet_counts(A, B).interface


class EnergyBreakdown(NamedTuple):
    perimeter_a: int
    perimeter_b: int
    interface: int
    energy: int


@dataclass(frozen=True)
class Configuration:
    """An ordered pair of disjoint nonempty cell sets with exact volume ratio."""

    A: GridSet
    B: GridSet

    def __post_init__(self):
        _check_same_dim(self.A, self.B)
        if self.A.dimension not in (2, 3):
            raise GeometryError("configurations live in 2D or 3D")
        if self.A.is_empty() or self.B.is_empty():
            raise GeometryError("both sets of a configuration must be nonempty")
        label_array(self.A, self.B)  # raises on overlap

    @classmethod
    def from_cells(cls, a_cells: Iterable[Cell], b_cells: Iterable[Cell]) -> "Configuration":
        a_cells, b_cells = list(a_cells), list(b_cells)
        dim = len(a_cells[0]) if a_cells else len(b_cells[0])
        return cls(GridSet.from_cells(a_cells, dim), GridSet.from_cells(b_cells, dim))

    @property
    def dimension(self) -> int:
        return self.A.dimension

    @property
    def V_A(self) -> int:
        return self.A.volume

    @property
    def V_B(self) -> int:
        return self.B.volume

    @property
    def r(self) -> Fraction:
        return Fraction(self.V_B, self.V_A)

    def swapped(self) -> "Configuration":
        return Configuration(self.B, self.A)

    def translate(self, shift: Cell) -> "Configuration":
        return Configuration(self.A.translate(shift), self.B.translate(shift))

    def transform(self, perm: tuple[int, ...], signs: tuple[int, ...]) -> "Configuration":
        return Configuration(self.A.transform(perm, signs), self.B.transform(perm, signs))


def double_bubble_energy(cfg: Configuration) -> EnergyBreakdown:
    """E(A, B) = per(A) + per(B) - interface, with the three addends."""
    fc = facet_counts(cfg.A, cfg.B)
    return EnergyBreakdown(fc.perimeter_a, fc.perimeter_b, fc.interface, fc.energy)


def projection_area(S: GridSet, axis: int) -> int:
    """Number of occupied lines parallel to ``axis`` (area of the projection)."""
    _check_axis(S.dimension, axis)
    if S.is_empty():
        return 0
    return int(S.mask.any(axis=axis - 1).sum())


def projection_overlap(A: GridSet, B: GridSet, axis: int) -> int:
    """Area of pi(A) n pi(B) along ``axis``."""
    _check_same_dim(A, B)
    _check_axis(A.dimension, axis)
    lab, _ = label_array(A, B, check=False, overlap_ok=True)
    has_a = ((lab == LABEL_A) | (lab == 3)).any(axis=axis - 1)
    has_b = ((lab == LABEL_B) | (lab == 3)).any(axis=axis - 1)
    return int((has_a & has_b).sum())


def slice_set(S: GridSet, axis: int, t: int) -> GridSet:
    """Cells of S with coordinate ``t`` along ``axis``, as a (dim-1)-dimensional set."""
    _check_axis(S.dimension, axis)
    ax = axis - 1
    rest_origin = tuple(o for k, o in enumerate(S.origin) if k != ax)
    if S.dimension == 1:
        raise GeometryError("cannot slice a one-dimensional set")
    k = t - S.origin[ax]
    if S.is_empty() or not 0 <= k < S.mask.shape[ax]:
        return GridSet.empty(S.dimension - 1)
    return GridSet(rest_origin, np.take(S.mask, k, axis=ax))


def levels(S: GridSet, axis: int) -> range:
    """Range of levels along ``axis`` covered by the bounding box of S."""
    _check_axis(S.dimension, axis)
    b = S.bounds()
    if b is None:
        return range(0)
    return range(b[0][axis - 1], b[1][axis - 1])


def column_crossings(A: GridSet, B: GridSet, axis: int) -> dict[Cell, int]:
    """For each occupied line parallel to ``axis``, the number of facets of dA u dB it meets.

    Keys are the line's coordinates on the remaining axes (in increasing axis order).
    """
    _check_same_dim(A, B)
    _check_axis(A.dimension, axis)
    lab, lo_corner = label_array(A, B)
    ax = axis - 1
    lo, hi = _pairs(lab, ax)
    changes = (lo != hi).sum(axis=ax)
    occupied = (lab != EMPTY).any(axis=ax)
    rest = [c for k, c in enumerate(lo_corner) if k != ax]
    return {
        tuple(int(i) + c for i, c in zip(idx, rest)): int(changes[tuple(idx)]) for idx in np.argwhere(occupied)
    }
