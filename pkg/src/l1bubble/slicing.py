"""Slicing lower bound for voxel configurations.

Fix a coordinate axis.  With m, m_A, m_B the projection areas of A u B, A, B
along it and p = (m_A + m_B)/m - 1 the projection overlap, and with the slice
areas a(t), b(t) of the two sets at level t, the energy obeys

    E >= (2 + p) m + 4 sqrt6 / (sqrt(4 + 2p) sqrt(m)) (U_A + U_B) + 2 sqrt6 / sqrt(m) U_0

whenever V_B / V_A lies in [1/2, 2] and p <= 1/3.  Level sets are discrete
here: every integral over t is a sum over unit levels, and slice classes,
volume balances and projection statistics are exact rationals.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

import numpy as np

from .closed_forms import SQRT6, planar_energy
from .geometry import (
    EMPTY,
    LABEL_A,
    LABEL_B,
    Configuration,
    column_crossings,
    double_bubble_energy,
    facet_counts,
    label_array,
    projection_area,
    projection_overlap,
    slice_set,
)

EQUALITY_TOL = 1e-9
P_MAX = Fraction(1, 3)
R_RANGE = (Fraction(1, 2), Fraction(2))

SliceClass = Literal["T0", "TA", "TB", "empty"]


class HypothesisError(ValueError):
    """The lower bound is requested outside its hypotheses."""

    def __init__(self, hypothesis: str, message: str):
        self.hypothesis = hypothesis
        super().__init__(message)


@dataclass(frozen=True)
class ProjectionStats:
    axis: int
    m: int
    m_A: int
    m_B: int

    @property
    def overlap(self) -> int:
        return self.m_A + self.m_B - self.m

    @property
    def p(self) -> Fraction:
        return Fraction(self.m_A + self.m_B, self.m) - 1

    def to_dict(self) -> dict:
        return {"axis": self.axis, "m": self.m, "m_A": self.m_A, "m_B": self.m_B, "p": str(self.p), "p_float": float(self.p)}


def projection_stats(cfg: Configuration, axis: int) -> ProjectionStats:
    m_A = projection_area(cfg.A, axis)
    m_B = projection_area(cfg.B, axis)
    m = m_A + m_B - projection_overlap(cfg.A, cfg.B, axis)
    return ProjectionStats(axis, m, m_A, m_B)


@dataclass(frozen=True)
class DirectionChoice:
    axis: int
    stats: ProjectionStats
    all_stats: tuple[ProjectionStats, ...]

    @property
    def admissible(self) -> bool:
        return self.stats.p <= P_MAX

    @property
    def ps(self) -> tuple[Fraction, ...]:
        return tuple(s.p for s in self.all_stats)


def best_direction(cfg: Configuration) -> DirectionChoice:
    """Axis with the smallest overlap p (ties to the smaller axis)."""
    stats = tuple(projection_stats(cfg, ax) for ax in range(1, cfg.dimension + 1))
    best = min(stats, key=lambda s: (s.p, s.axis))
    return DirectionChoice(best.axis, best, stats)


def seven_mbar_comparator(cfg: Configuration) -> Fraction:
    """7 * mean projection area: energy of a cube of face area m-bar split by a parallel square."""
    ms = [projection_stats(cfg, ax).m for ax in range(1, 4)]
    return Fraction(7 * sum(ms), 3)


def projection_energy_bound(cfg: Configuration) -> Fraction:
    """sum_i (2 + p_i) m_i: the column-crossing lower bound summed over the three axes."""
    total = Fraction(0)
    for ax in range(1, cfg.dimension + 1):
        s = projection_stats(cfg, ax)
        total += (2 + s.p) * s.m
    return total


@dataclass(frozen=True)
class Level:
    t: int
    a: int
    b: int
    cls: SliceClass
    ratio: Fraction | None  # alpha on TA, beta on TB


@dataclass(frozen=True)
class SliceProfile:
    axis: int
    r: Fraction
    levels: tuple[Level, ...]

    def _sum(self, cls: str) -> int:
        return sum(lv.a + lv.b for lv in self.levels if lv.cls == cls)

    @property
    def U_A(self) -> int:
        return self._sum("TA")

    @property
    def U_B(self) -> int:
        return self._sum("TB")

    @property
    def U_0(self) -> int:
        return self._sum("T0")

    @property
    def balance_A(self) -> Fraction:
        """sum over TA of a(t) (r - alpha(t))."""
        return sum((lv.a * (self.r - lv.ratio) for lv in self.levels if lv.cls == "TA"), Fraction(0))

    @property
    def balance_B(self) -> Fraction:
        """sum over TB of b(t) (1 - r beta(t))."""
        return sum((lv.b * (1 - self.r * lv.ratio) for lv in self.levels if lv.cls == "TB"), Fraction(0))

    @property
    def U_star(self) -> Fraction:
        return self.balance_A

    def count(self, cls: str) -> int:
        return sum(1 for lv in self.levels if lv.cls == cls)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "a", "b", "class", "alpha_or_beta"])
        for lv in self.levels:
            w.writerow([lv.t, lv.a, lv.b, lv.cls, "" if lv.ratio is None else str(lv.ratio)])
        return buf.getvalue()


def _level_areas(cfg: Configuration, axis: int) -> tuple[list[int], np.ndarray, np.ndarray]:
    lab, lo = label_array(cfg.A, cfg.B, pad=0)
    ax = axis - 1
    others = tuple(k for k in range(lab.ndim) if k != ax)
    a = (lab == LABEL_A).sum(axis=others)
    b = (lab == LABEL_B).sum(axis=others)
    ts = list(range(lo[ax], lo[ax] + lab.shape[ax]))
    return ts, a, b


def classify_level(r: Fraction, a: int, b: int) -> tuple[SliceClass, Fraction | None]:
    if a == 0 and b == 0:
        return "empty", None
    ra = r * a
    if ra == b:
        return "T0", None
    if ra > b:
        return "TA", Fraction(b, a)
    return "TB", Fraction(a, b)


def slice_profile(cfg: Configuration, axis: int) -> SliceProfile:
    r = cfg.r
    ts, a, b = _level_areas(cfg, axis)
    lv = []
    for t, ai, bi in zip(ts, a, b):
        cls, ratio = classify_level(r, int(ai), int(bi))
        lv.append(Level(t, int(ai), int(bi), cls, ratio))
    return SliceProfile(axis, r, tuple(lv))


@dataclass(frozen=True)
class BoundReport:
    """All quantities of the slicing lower bound for one configuration and axis.

    ``slack`` = energy - rhs splits as ``slicing_slack`` (energy minus the
    sliced bound (2 + p) m + sum_t E_2D(a, b)) plus ``chain_slack`` (sliced
    bound minus rhs).  The equality flags characterise ``chain_slack == 0``.
    """

    stats: ProjectionStats
    profile: SliceProfile
    p_tilde: float
    U_hat: float
    rhs: float
    energy: int
    sliced_bound: float
    equality_flags: dict = field(default_factory=dict)

    @property
    def slack(self) -> float:
        return self.energy - self.rhs

    @property
    def slicing_slack(self) -> float:
        return self.energy - self.sliced_bound

    @property
    def chain_slack(self) -> float:
        return self.sliced_bound - self.rhs

    @property
    def equality(self) -> bool:
        return all(self.equality_flags.values())

    def to_dict(self) -> dict:
        pr = self.profile
        return {
            "axis": self.stats.axis,
            "stats": self.stats.to_dict(),
            "r": str(pr.r),
            "U_A": pr.U_A,
            "U_B": pr.U_B,
            "U_0": pr.U_0,
            "U_star": str(pr.U_star),
            "p_tilde": self.p_tilde,
            "U_hat": self.U_hat,
            "rhs": self.rhs,
            "energy": self.energy,
            "sliced_bound": self.sliced_bound,
            "slack": self.slack,
            "slicing_slack": self.slicing_slack,
            "chain_slack": self.chain_slack,
            "equality_flags": dict(self.equality_flags),
            "levels": [
                {"t": lv.t, "a": lv.a, "b": lv.b, "class": lv.cls, "ratio": None if lv.ratio is None else str(lv.ratio)}
                for lv in pr.levels
            ],
        }


def bound_rhs(m: int, p: float, U_A: float, U_B: float, U_0: float) -> float:
    return (2 + p) * m + 4 * SQRT6 / (math.sqrt(4 + 2 * p) * math.sqrt(m)) * (U_A + U_B) + 2 * SQRT6 / math.sqrt(m) * U_0


def check_hypotheses(cfg: Configuration, stats: ProjectionStats) -> None:
    if cfg.dimension != 3:
        raise HypothesisError("dimension", "the slicing bound is stated for 3D configurations")
    if not R_RANGE[0] <= cfg.r <= R_RANGE[1]:
        raise HypothesisError("ratio", f"volume ratio r = {cfg.r} outside [1/2, 2]")
    if stats.p > P_MAX:
        raise HypothesisError("overlap", f"projection overlap p = {stats.p} > 1/3 along axis {stats.axis}")


def sliced_bound(stats: ProjectionStats, profile: SliceProfile) -> float:
    """(2 + p) m + sum over nonempty levels of the planar minimal energy."""
    total = sum(planar_energy(lv.a, lv.b) for lv in profile.levels if lv.cls != "empty")
    return float((2 + stats.p) * stats.m) + total


def lower_bound(cfg: Configuration, axis: int) -> BoundReport:
    stats = projection_stats(cfg, axis)
    check_hypotheses(cfg, stats)
    prof = slice_profile(cfg, axis)
    p = float(stats.p)
    m = stats.m
    U_hat = 4 * SQRT6 / (math.sqrt(4 + 2 * p) * math.sqrt(m)) * (prof.U_A + prof.U_B) + 2 * SQRT6 / math.sqrt(m) * prof.U_0
    rhs = (2 + p) * m + U_hat
    nonempty = [lv for lv in prof.levels if lv.cls != "empty"]
    flags = {
        "TA_TB_null": prof.count("TA") == 0 and prof.count("TB") == 0,
        "full_slices": all(lv.a + lv.b == m for lv in nonempty),
    }
    return BoundReport(
        stats=stats,
        profile=prof,
        p_tilde=SQRT6 * math.sqrt(1 + p / 2) - SQRT6,
        U_hat=U_hat,
        rhs=rhs,
        energy=double_bubble_energy(cfg).energy,
        sliced_bound=sliced_bound(stats, prof),
        equality_flags=flags,
    )


@dataclass(frozen=True)
class SlicingLemmaReport:
    axis: int
    energy: int
    in_slice_facets: int  # facets with normal orthogonal to the axis
    axis_normal_facets: int  # facets with normal along the axis
    slice_energies: tuple[tuple[int, int, int, int], ...]  # (t, a, b, discrete 2D energy)
    planar_minima: tuple[float, ...]
    union_area: int
    overlap_area: int

    @property
    def rhs(self) -> float:
        return sum(self.planar_minima) + 2 * self.union_area + self.overlap_area

    @property
    def margin(self) -> float:
        return self.energy - self.rhs

    @property
    def slice_margins(self) -> tuple[float, ...]:
        return tuple(e[3] - pm for e, pm in zip(self.slice_energies, self.planar_minima))

    @property
    def crossing_margin(self) -> int:
        return self.axis_normal_facets - (2 * self.union_area + self.overlap_area)

    @property
    def decomposition_ok(self) -> bool:
        return (
            self.in_slice_facets == sum(e[3] for e in self.slice_energies)
            and self.in_slice_facets + self.axis_normal_facets == self.energy
        )

    def holds(self, tol: float = EQUALITY_TOL) -> bool:
        return (
            self.decomposition_ok
            and self.margin >= -tol
            and all(sm >= -tol for sm in self.slice_margins)
            and self.crossing_margin >= 0
        )

    def to_dict(self) -> dict:
        return {
            "axis": self.axis,
            "energy": self.energy,
            "rhs": self.rhs,
            "margin": self.margin,
            "in_slice_facets": self.in_slice_facets,
            "axis_normal_facets": self.axis_normal_facets,
            "union_area": self.union_area,
            "overlap_area": self.overlap_area,
            "crossing_margin": self.crossing_margin,
            "decomposition_ok": self.decomposition_ok,
            "holds": self.holds(),
            "levels": [
                {"t": t, "a": a, "b": b, "slice_energy": e, "planar_min": pm, "slack": e - pm}
                for (t, a, b, e), pm in zip(self.slice_energies, self.planar_minima)
            ],
        }


def slicing_lemma_check(cfg: Configuration, axis: int) -> SlicingLemmaReport:
    """Evaluate both halves of the slicing inequality on the discrete configuration.

    Slice energies are computed independently from the 2D slices and then
    matched against the facet classification of the 3D boundary.
    """
    if cfg.dimension != 3:
        raise HypothesisError("dimension", "the slicing lemma is stated for 3D configurations")
    fc = facet_counts(cfg.A, cfg.B)
    normal = fc.normal_to(axis)
    rows = []
    minima = []
    ts, a, b = _level_areas(cfg, axis)
    for t, ai, bi in zip(ts, a, b):
        if ai == 0 and bi == 0:
            continue
        e2 = facet_counts(slice_set(cfg.A, axis, t), slice_set(cfg.B, axis, t)).energy
        rows.append((t, int(ai), int(bi), e2))
        minima.append(planar_energy(int(ai), int(bi)))
    m_A = projection_area(cfg.A, axis)
    m_B = projection_area(cfg.B, axis)
    over = projection_overlap(cfg.A, cfg.B, axis)
    crossings = column_crossings(cfg.A, cfg.B, axis)
    assert sum(crossings.values()) == normal
    return SlicingLemmaReport(
        axis=axis,
        energy=fc.energy,
        in_slice_facets=fc.energy - normal,
        axis_normal_facets=normal,
        slice_energies=tuple(rows),
        planar_minima=tuple(minima),
        union_area=m_A + m_B - over,
        overlap_area=over,
    )


def is_product(cfg: Configuration, axis: int) -> bool:
    """All nonempty slices carry the same labelled pattern and the projections are disjoint."""
    lab, _ = label_array(cfg.A, cfg.B, pad=0)
    ax = axis - 1
    pats = [np.take(lab, k, axis=ax) for k in range(lab.shape[ax])]
    pats = [pt for pt in pats if (pt != EMPTY).any()]
    same = all(np.array_equal(pats[0], pt) for pt in pats[1:])
    return same and projection_stats(cfg, axis).p == 0
