"""Numerical certification of the auxiliary one-variable inequalities.

The slicing bound reduces to sign and monotonicity properties of explicit
functions of one variable, indexed by the volume ratio r, the projection
overlap p and the normalised projection areas rho_A = m_A/m, rho_B = m_B/m.
Everything here uses m = 1; the functions are homogeneous of degree -1/2 in
m, so no generality is lost (``g_A``/``g_B`` accept ``m`` to make that
checkable).

Certification is by dense sampling followed by local refinement around the
worst sampled margin.  Each check produces a ``LemmaReport``.  Reports are
deterministic: grids are sorted, and the worst witness is the first minimiser
in lexicographic parameter order.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .closed_forms import F_AT_R_STAR, R_STAR, SQRT6, f

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)
EPS = np.finfo(float).eps
F_HALF_RSTAR = F_AT_R_STAR / 2.0  # 10 (7 + 2 sqrt2) / 41


class PoleError(ValueError):
    pass


# ---------------------------------------------------------------------------
# parameter context


@dataclass(frozen=True)
class LemmaContext:
    r: float
    p: float
    ratio_A: float = 1.0
    ratio_B: float = 1.0 / 3.0

    @classmethod
    def linked(cls, r: float, p: float, ratio_A: float) -> "LemmaContext":
        """Context with m_A + m_B = (1 + p) m."""
        return cls(r, p, ratio_A, 1.0 + p - ratio_A)

    def in_hypothesis(self, tol: float = 1e-12) -> bool:
        p = self.p
        return (
            -tol <= p <= 1.0 / 3.0 + tol
            and 0.5 - tol <= self.r <= 2.0 + tol
            and (2.0 + p) / 3.0 - tol <= self.ratio_A <= 1.0 + tol
            and 0.0 < self.ratio_B <= (1.0 + 2.0 * p) / 3.0 + tol
        )

    @property
    def K(self) -> float:
        return _K(self.p)


def _K(p):
    """sqrt6 / sqrt(1 + p/2); twice this equals 4 sqrt6 / sqrt(4 + 2p)."""
    return SQRT6 / np.sqrt(1.0 + np.asarray(p, dtype=float) / 2.0)


# ---------------------------------------------------------------------------
# vectorised cores (m = 1)


def _gA(r, p, rho, a):
    a = np.asarray(a, dtype=float)
    return (1.0 + a) / (r - a) * (f(a) / np.minimum(1.0, np.sqrt((1.0 + a) * rho)) - 2.0 * _K(p))


def _gB(r, p, rho, b):
    b = np.asarray(b, dtype=float)
    return (1.0 + b) / (1.0 - r * b) * (f(b) / np.minimum(1.0, np.sqrt((1.0 + b) * rho)) - 2.0 * _K(p))


def _h1(r, p, x):
    x = np.asarray(x, dtype=float)
    return (1.0 + x) / (r - x) * (_K(p) - f(x) / 2.0)


def _h2(r, p, x):
    x = np.asarray(x, dtype=float)
    return (1.0 + x) / (1.0 - r * x) * (_K(p) - f(x) / 2.0)


def _h3(r, p, rho, x):
    x = np.asarray(x, dtype=float)
    return (1.0 + x) / (r - x) * (_K(p) - f(x) / (2.0 * np.sqrt(rho) * np.sqrt(1.0 + x)))


def _h4(r, p, rho, x):
    x = np.asarray(x, dtype=float)
    return (1.0 + x) / (1.0 - r * x) * (_K(p) - f(x) / (2.0 * np.sqrt(rho) * np.sqrt(1.0 + x)))


def _out(v):
    v = np.asarray(v)
    return float(v) if v.ndim == 0 else v


def _check_pole(x, limit, name):
    if np.any(np.asarray(x) < 0) or np.any(np.asarray(x) >= limit):
        raise PoleError(f"{name}: argument must lie in [0, {limit:g})")


def g_A(ctx: LemmaContext, alpha, m: float = 1.0):
    """g_A^r(alpha) for projection area m (default 1) and m_A = ratio_A * m; defined on [0, r)."""
    _check_pole(alpha, ctx.r, "g_A")
    return _out(_gA(ctx.r, ctx.p, ctx.ratio_A, alpha) / math.sqrt(m))


def g_B(ctx: LemmaContext, beta, m: float = 1.0):
    """g_B^r(beta), defined on [0, 1/r)."""
    _check_pole(beta, 1.0 / ctx.r, "g_B")
    return _out(_gB(ctx.r, ctx.p, ctx.ratio_B, beta) / math.sqrt(m))


def h1(ctx: LemmaContext, x, r: float | None = None):
    r = ctx.r if r is None else r
    _check_pole(x, r, "h1")
    return _out(_h1(r, ctx.p, x))


def h2(ctx: LemmaContext, x, r: float | None = None):
    r = ctx.r if r is None else r
    _check_pole(x, 1.0 / r, "h2")
    return _out(_h2(r, ctx.p, x))


def h3(ctx: LemmaContext, x, r: float | None = None):
    r = ctx.r if r is None else r
    _check_pole(x, r, "h3")
    return _out(_h3(r, ctx.p, ctx.ratio_A, x))


def h4(ctx: LemmaContext, x, r: float | None = None):
    r = ctx.r if r is None else r
    _check_pole(x, 1.0 / r, "h4")
    return _out(_h4(r, ctx.p, ctx.ratio_B, x))


# analytic derivatives, piece by piece (piece 0: [0, r*], 1: [r*, 1/2], 2: [1/2, ...])


def _piece(x):
    return np.where(x <= R_STAR, 0, np.where(x <= 0.5, 1, 2))


def dh1(r, p, x):
    x = np.asarray(x, dtype=float)
    K = _K(p)
    C1 = K - 2.0
    q = np.sqrt(x * (x + 1.0))
    with np.errstate(divide="ignore", invalid="ignore"):
        d0 = (2.0 * C1 * (1.0 + r) * q - (1.0 + 2.0 * r) * x - r) / (2.0 * (x - r) ** 2 * q)
        d1 = ((2.0 + 2.0 * r) * K * q - 2.0 * np.sqrt(x) * (x + 2.0 + r) - SQRT2 * ((1.0 + 2.0 * r) * x + r)) / (
            2.0 * (x - r) ** 2 * q
        )
        d2 = (K - SQRT6) * (1.0 + r) / (r - x) ** 2
    pc = _piece(x)
    return _out(np.where(pc == 0, d0, np.where(pc == 1, d1, d2)))


def dh3(r, p, rho, x):
    x = np.asarray(x, dtype=float)
    K = _K(p)
    s = 1.0 / np.sqrt(rho)
    with np.errstate(divide="ignore", invalid="ignore"):
        d0 = K * (1.0 + r) - s * (r + x + 2.0) / np.sqrt(1.0 + x) - s * (r + x) / (2.0 * np.sqrt(x))
        d1 = K * (1.0 + r) - 2.0 * s - s * (r + x) / np.sqrt(2.0 * x)
        d2 = K * (1.0 + r) - s * SQRT6 * (r + x + 2.0) / (2.0 * np.sqrt(1.0 + x))
    pc = _piece(x)
    return _out(np.where(pc == 0, d0, np.where(pc == 1, d1, d2)) / (r - x) ** 2)


def dh4(p, rho, x):
    """Derivative of h_4^{1/2}."""
    x = np.asarray(x, dtype=float)
    K = _K(p)
    s = 1.0 / np.sqrt(rho)
    with np.errstate(divide="ignore", invalid="ignore"):
        d0 = 6.0 * K - s * (2.0 * x + 8.0) / np.sqrt(1.0 + x) - s * (x + 2.0) / np.sqrt(x)
        d1 = 6.0 * K - 4.0 * s - s * SQRT2 * (x + 2.0) / np.sqrt(x)
        d2 = 6.0 * K - s * SQRT6 * (x + 4.0) / np.sqrt(1.0 + x)
    pc = _piece(x)
    return _out(np.where(pc == 0, d0, np.where(pc == 1, d1, d2)) / (2.0 - x) ** 2)


def h1_numerator_piece0(r, p, x):
    """Numerator of (h_1^r)' on [0, r*]; must be negative there."""
    C1 = _K(p) - 2.0
    return 2.0 * C1 * (1.0 + r) * np.sqrt(x * (x + 1.0)) - (1.0 + 2.0 * r) * x - r


def h3_star(r, p, x, K=None):
    """h_3^r(0) - h_3^r(x - 1) with rho_A = 1/x, for x - 1 in [0, r*]."""
    K = _K(p) if K is None else K
    q = x / (1.0 + r - x)
    return K * (1.0 / r - q) - 2.0 * np.sqrt(x) / r + q * (2.0 + np.sqrt(x - 1.0) / np.sqrt(x))


def h3_2star(r, p, x, K=None):
    """Same difference for x - 1 in [r*, 1/2]."""
    K = _K(p) if K is None else K
    q = x / (1.0 + r - x)
    return K * (1.0 / r - q) - 2.0 * np.sqrt(x) / r + q * (2.0 / np.sqrt(x) + np.sqrt(2.0 * (x - 1.0)) / np.sqrt(x))


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class GridSpec:
    name: str = "dense"
    n_r: int = 32
    n_p: int = 64
    n_ratio: int = 32
    n_x: int = 10_000
    pole_margin: float = 1e-6
    refine_rounds: int = 3
    refine_factor: int = 10
    n_p_c2: int = 256

    @classmethod
    def named(cls, name: str) -> "GridSpec":
        if name == "dense":
            return cls()
        if name == "fast":
            return cls(name="fast", n_r=8, n_p=12, n_ratio=6, n_x=2000, refine_rounds=2, n_p_c2=64)
        raise ValueError(f"unknown grid {name!r} (expected 'dense' or 'fast')")


@dataclass
class LemmaReport:
    check_id: str
    description: str
    grid: dict
    verdict: str  # "pass", "fail" or "info"
    witness: dict
    value: float | None
    margin: float | None
    sample_count: int
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict != "fail"

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(_jsonable(self.to_dict()), sort_keys=True, indent=2)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        if math.isnan(v):
            return "nan"
        return float(f"{v:.12g}")
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def _verdict(margin: float, tol: float, strict: bool) -> str:
    if not math.isfinite(margin) and margin > 0:
        return "pass"
    ok = margin > 0 if strict else margin >= -tol
    return "pass" if ok else "fail"


# ---------------------------------------------------------------------------
# generic scan + refinement over unit boxes


@dataclass
class _Box:
    """Unit-coordinate grids for a margin function of k continuous parameters."""

    names: tuple[str, ...]
    grids: tuple[np.ndarray, ...]
    to_params: Callable[..., dict]
    margin: Callable[..., np.ndarray]  # unit coords (broadcastable) -> margin array
    value: Callable[..., np.ndarray] | None = None


def _unit(n: int, extra: Sequence[float] = ()) -> np.ndarray:
    return np.unique(np.concatenate([np.linspace(0.0, 1.0, n), np.asarray(extra, dtype=float)]))


def _scan(box: _Box, inner: int = 2) -> tuple[float, tuple[float, ...], int]:
    outer = box.grids[:-inner] if inner < len(box.grids) else ()
    inner_grids = box.grids[len(outer) :]
    mesh = np.meshgrid(*inner_grids, indexing="ij")
    best = (math.inf, None)
    count = 0
    for us in itertools.product(*outer):
        m = np.asarray(box.margin(*us, *mesh), dtype=float)
        m = np.where(np.isnan(m), -math.inf, m)
        count += m.size
        j = int(np.argmin(m))
        if m.flat[j] < best[0] or best[1] is None:
            best = (float(m.flat[j]), tuple(float(u) for u in us) + tuple(float(g.flat[j]) for g in mesh))
    return best[0], best[1], count


def _spacing(grid: np.ndarray, u: float) -> float:
    if len(grid) < 2:
        return 0.0
    i = int(np.searchsorted(grid, u))
    left = grid[i] - grid[i - 1] if 0 < i < len(grid) else 0.0
    right = grid[i + 1] - grid[i] if i + 1 < len(grid) else 0.0
    return max(left, right)


def _refine(box: _Box, worst: tuple[float, ...], margin: float, rounds: int, factor: int):
    steps = [_spacing(g, u) for g, u in zip(box.grids, worst)]
    count = 0
    for _ in range(rounds):
        axes = []
        for u, h in zip(worst, steps):
            if h == 0:
                axes.append(np.array([u]))
            else:
                axes.append(np.unique(np.clip(u + np.linspace(-h, h, 2 * factor + 1), 0.0, 1.0)))
        mesh = np.meshgrid(*axes, indexing="ij")
        m = np.asarray(box.margin(*mesh), dtype=float)
        m = np.where(np.isnan(m), -math.inf, m)
        count += m.size
        j = int(np.argmin(m))
        if m.flat[j] < margin:
            margin = float(m.flat[j])
            worst = tuple(float(g.flat[j]) for g in mesh)
        steps = [h / factor for h in steps]
    return margin, worst, count


def _run_box(check_id, description, box, spec: GridSpec, tol=1e-9, strict=False, inner=2, refine=True, notes=None):
    margin, worst, count = _scan(box, inner)
    if refine and spec.refine_rounds:
        margin, worst, extra = _refine(box, worst, margin, spec.refine_rounds, spec.refine_factor)
        count += extra
    params = box.to_params(*worst)
    value = float(box.value(*worst)) if box.value is not None else None
    grid = {n: len(g) for n, g in zip(box.names, box.grids)}
    grid["spec"] = spec.name
    grid["tolerance"] = tol
    return LemmaReport(
        check_id, description, grid, _verdict(margin, tol, strict), params, value, margin, count, dict(notes or {})
    )


# parameter maps ------------------------------------------------------------


def _r_of(u):
    return 0.5 + 1.5 * u


def _p_of(u):
    return u / 3.0


def _rhoA_of(p, u):
    lo = (2.0 + p) / 3.0
    return lo + u * (1.0 - lo)


RHO_B_FLOOR = 1e-3  # lower corner of m_B/m as a fraction of its upper bound


def _rhoB_of(p, u):
    hi = (1.0 + 2.0 * p) / 3.0
    return hi * (RHO_B_FLOOR + u * (1.0 - RHO_B_FLOOR))


def _rhoA_linked_of(p, u):
    """m_A/m over [(2+p)/3, 1], kept away from the degenerate corner m_B = 0."""
    hi = np.minimum(1.0, 1.0 + p - RHO_B_FLOOR * (1.0 + 2.0 * p) / 3.0)
    lo = (2.0 + p) / 3.0
    return lo + u * (hi - lo)


def _r_grid(spec):
    return _unit(spec.n_r, [(1.0 - 0.5) / 1.5])  # always includes r = 1/2, 1, 2


# ---------------------------------------------------------------------------
# g_A and g_B are minimised at 0


def _gA_box(spec):
    d = spec.pole_margin

    def params(ur, up, uq, v):
        r, p = _r_of(ur), _p_of(up)
        return {"r": r, "p": p, "ratio_A": _rhoA_of(p, uq), "alpha": v * (r - d)}

    def margin(ur, up, uq, v):
        r, p = _r_of(ur), _p_of(up)
        rho = _rhoA_of(p, uq)
        return _gA(r, p, rho, v * (r - d)) - _gA(r, p, rho, 0.0)

    def value(ur, up, uq, v):
        r, p = _r_of(ur), _p_of(up)
        return _gA(r, p, _rhoA_of(p, uq), v * (r - d))

    return _Box(
        ("r", "p", "ratio_A", "alpha"),
        (_r_grid(spec), _unit(spec.n_p), _unit(spec.n_ratio + 2), _unit(spec.n_x)),
        params,
        margin,
        value,
    )


def _gB_box(spec):
    d = spec.pole_margin

    def params(ur, up, uq, v):
        r, p = _r_of(ur), _p_of(up)
        return {"r": r, "p": p, "ratio_B": _rhoB_of(p, uq), "beta": v * (1.0 / r - d)}

    def margin(ur, up, uq, v):
        r, p = _r_of(ur), _p_of(up)
        rho = _rhoB_of(p, uq)
        return _gB(r, p, rho, v * (1.0 / r - d)) - _gB(r, p, rho, 0.0)

    def value(ur, up, uq, v):
        r, p = _r_of(ur), _p_of(up)
        return _gB(r, p, _rhoB_of(p, uq), v * (1.0 / r - d))

    return _Box(
        ("r", "p", "ratio_B", "beta"),
        (_r_grid(spec), _unit(spec.n_p), _unit(spec.n_ratio + 2), _unit(spec.n_x)),
        params,
        margin,
        value,
    )


class _GTables:
    """Per-r samples of f, the weight and sqrt(1 + x) on a unit grid mapped to [0, pole - margin)."""

    def __init__(self, v, pole, weight):
        self.x = v * pole
        self.f = np.asarray(f(self.x))
        self.w = weight(self.x)
        self.s = np.sqrt(1.0 + self.x)

    def values(self, p, rho):
        """g on the (rho, x) grid for a vector of ratios rho."""
        den = np.minimum(1.0, np.sqrt(rho)[:, None] * self.s[None, :])
        return self.w * (self.f / den - 2.0 * float(_K(p)))


def _g_scan(spec: GridSpec):
    """Minima over the sampled alpha / beta grids for every (r, p, ratio) context.

    Returns a dict of arrays indexed [r, p, ratio]: minimum of g_A - g_A(0),
    of g_B - g_B(0) (independent ratio_B grid), and of min g_A + min g_B with
    linked ratios, plus the argmin positions.
    """
    d = spec.pole_margin
    ur, up, uq, v = _r_grid(spec), _unit(spec.n_p), _unit(spec.n_ratio + 2), _unit(spec.n_x)
    shape = (len(ur), len(up), len(uq))
    out = {k: np.empty(shape) for k in ("A", "B", "direct")}
    arg = {k: np.empty(shape, dtype=int) for k in ("A", "B")}
    for i, r in enumerate(_r_of(ur)):
        ta = _GTables(v, r - d, lambda x, r=r: (1.0 + x) / (r - x))
        tb = _GTables(v, 1.0 / r - d, lambda x, r=r: (1.0 + x) / (1.0 - r * x))
        for j, p in enumerate(_p_of(up)):
            ga = ta.values(p, _rhoA_of(p, uq))
            gb = tb.values(p, _rhoB_of(p, uq))
            arg["A"][i, j] = np.argmin(ga, axis=1)
            arg["B"][i, j] = np.argmin(gb, axis=1)
            out["A"][i, j] = ga.min(axis=1) - ga[:, 0]
            out["B"][i, j] = gb.min(axis=1) - gb[:, 0]
            rho_a = _rhoA_linked_of(p, uq)
            ga_l = ga.min(axis=1) if np.array_equal(rho_a, _rhoA_of(p, uq)) else ta.values(p, rho_a).min(axis=1)
            out["direct"][i, j] = ga_l + tb.values(p, 1.0 + p - rho_a).min(axis=1)
    return (ur, up, uq, v), out, arg


def _worst_index(a):
    a = np.where(np.isnan(a), -np.inf, a)
    return np.unravel_index(int(np.argmin(a)), a.shape)


def certify_g_minima(spec: GridSpec | None = None, scan=None) -> list[LemmaReport]:
    spec = spec or GridSpec()
    grids, mins, arg = scan or _g_scan(spec)
    ur, up, uq, v = grids
    out = []
    for key, box_fn, check_id, desc in (
        ("A", _gA_box, "g_A_min_at_zero", "g_A(alpha) - g_A(0) >= 0 on [0, r) over the hypothesis box"),
        ("B", _gB_box, "g_B_min_at_zero", "g_B(beta) - g_B(0) >= 0 on [0, 1/r) over the hypothesis box"),
    ):
        box = box_fn(spec)
        idx = _worst_index(mins[key])
        margin = float(mins[key][idx])
        worst = (float(ur[idx[0]]), float(up[idx[1]]), float(uq[idx[2]]), float(v[arg[key][idx]]))
        count = mins[key].size * len(v)
        if spec.refine_rounds:
            margin, worst, extra = _refine(box, worst, margin, spec.refine_rounds, spec.refine_factor)
            count += extra
        grid = {n: len(g) for n, g in zip(box.names, box.grids)}
        grid.update(spec=spec.name, tolerance=1e-9)
        out.append(
            LemmaReport(
                check_id, desc, grid, _verdict(margin, 1e-9, False), box.to_params(*worst), float(box.value(*worst)), margin, count
            )
        )
    # values at 0
    ps = _p_of(up)
    P, U = np.meshgrid(ps, uq, indexing="ij")
    a0 = -_gA(1.0, P, _rhoA_of(P, U), 0.0)  # sign of g_A^r(0) does not depend on r
    j = int(np.argmin(a0))
    out.append(
        LemmaReport(
            "g_A_at_zero_nonpositive",
            "-g_A(0) >= 0 (sign independent of r)",
            {"p": len(ps), "ratio_A": len(uq), "spec": spec.name, "tolerance": 1e-12},
            _verdict(float(a0.flat[j]), 1e-12, False),
            {"p": float(P.flat[j]), "ratio_A": float(_rhoA_of(P, U).flat[j])},
            float(-a0.flat[j]),
            float(a0.flat[j]),
            a0.size,
        )
    )
    b0 = _gB(1.0, P, _rhoB_of(P, U), 0.0)  # g_B^r(0) does not depend on r
    j = int(np.argmin(b0))
    out.append(
        LemmaReport(
            "g_B_at_zero_positive",
            "g_B(0) > 0 (independent of r)",
            {"p": len(ps), "ratio_B": len(uq), "spec": spec.name},
            _verdict(float(b0.flat[j]), 0.0, True),
            {"p": float(P.flat[j]), "ratio_B": float(_rhoB_of(P, U).flat[j])},
            float(b0.flat[j]),
            float(b0.flat[j]),
            b0.size,
        )
    )
    return out


def certify_c2_gt_c1_direct(spec: GridSpec | None = None, scan=None) -> LemmaReport:
    """inf_beta g_B + inf_alpha g_A > 0 with m_B = (1 + p) m - m_A.

    This is the inequality the slicing bound consumes; it is checked directly,
    independently of where the two infima sit.
    """
    spec = spec or GridSpec()
    grids, mins, _ = scan or _g_scan(spec)
    ur, up, uq, v = grids
    idx = _worst_index(mins["direct"])
    margin = float(mins["direct"][idx])
    p = float(_p_of(up[idx[1]]))
    return LemmaReport(
        "c2_gt_c1_direct",
        "min g_B + min g_A > 0 with linked projection ratios",
        {"r": len(ur), "p": len(up), "ratio_A": len(uq), "x": len(v), "spec": spec.name},
        _verdict(margin, 0.0, True),
        {"r": float(_r_of(ur[idx[0]])), "p": p, "ratio_A": float(_rhoA_linked_of(p, uq[idx[2]]))},
        margin,
        margin,
        2 * mins["direct"].size * len(v),
    )


# ---------------------------------------------------------------------------
# monotonicity of h_1 and derivative sign patterns of h_3, h_4


def _h1_box(spec, r):
    d = spec.pole_margin
    n = spec.n_x
    hi = r - d
    dx = hi / (n - 1)

    def x_of(v):
        return v * (hi - dx)

    def margin(up, v):
        p = _p_of(up)
        x = x_of(v)
        h0, h1v = _h1(r, p, x), _h1(r, p, x + dx)
        # floating-point allowance for the product weight * bracket
        w = np.abs((1.0 + x + dx) / (r - x - dx))
        rnd = 8.0 * EPS * w * (SQRT6 + f(x + dx)) + 8.0 * EPS * (np.abs(h0) + np.abs(h1v))
        return h0 - h1v + rnd

    def params(up, v):
        return {"r": r, "p": _p_of(up), "x": x_of(v), "dx": dx}

    return _Box(("p", "x"), (_unit(spec.n_p), _unit(n)), params, margin)


def certify_h1_decreasing(spec: GridSpec | None = None) -> list[LemmaReport]:
    spec = spec or GridSpec()
    out = []
    for r in (0.5, 1.0, 2.0):
        out.append(
            _run_box(
                f"h1_decreasing_r={r:g}",
                "successive samples of h_1^r on [0, r) are non-increasing",
                _h1_box(spec, r),
                spec,
                notes={"rounding_allowance": "8 eps-scaled bound on the product evaluation is added to each difference"},
            )
        )
    xs = np.linspace(0.0, R_STAR, spec.n_x)
    ps = _p_of(_unit(spec.n_p))
    worst = (math.inf, None)
    for r in (0.5, 1.0, 2.0):
        X, P = np.meshgrid(xs, ps, indexing="ij")
        m = -h1_numerator_piece0(r, P, X)
        j = int(np.argmin(m))
        if m.flat[j] < worst[0]:
            worst = (float(m.flat[j]), {"r": r, "p": float(P.flat[j]), "x": float(X.flat[j])})
    out.append(
        LemmaReport(
            "h1_numerator_negative",
            "2 C1 (1+r) sqrt(x(x+1)) - (1+2r) x - r < 0 on [0, r*]",
            {"x": len(xs), "p": len(ps), "r": 3, "spec": spec.name},
            _verdict(worst[0], 0.0, True),
            worst[1],
            -worst[0],
            worst[0],
            3 * xs.size * ps.size,
        )
    )
    return out


def count_sign_changes(d: np.ndarray, band: np.ndarray | float = 0.0) -> tuple[np.ndarray, np.ndarray]:
    """Sign changes along the last axis ignoring |d| <= band.

    Returns (number of changes, whether the pattern is minus-then-plus only).
    """
    d = np.asarray(d, dtype=float)
    s = np.where(d > band, 1, np.where(d < -band, -1, 0))
    changes = np.zeros(s.shape[:-1], dtype=int)
    ok = np.ones(s.shape[:-1], dtype=bool)
    flat_s = s.reshape(-1, s.shape[-1])
    ch = changes.reshape(-1)
    okf = ok.reshape(-1)
    for i, row in enumerate(flat_s):
        nz = row[row != 0]
        if nz.size:
            diff = np.nonzero(nz[1:] != nz[:-1])[0]
            ch[i] = diff.size
            okf[i] = diff.size == 0 or (diff.size == 1 and nz[0] < 0)
    return changes, ok


FD_STEP = 1e-6
PIECE_INSET = 1e-4
CROSSCHECK_INSET = 1e-2


def _pieces_h3(r):
    return [(0.0, R_STAR), (R_STAR, min(0.5, r))]


def _pieces_h4():
    return [(0.0, R_STAR), (R_STAR, 0.5), (0.5, 2.0)]


def _fd(fun, x, h=FD_STEP):
    return (fun(x + h) - fun(x - h)) / (2.0 * h)


def _sign_report(check_id, description, contexts, pieces, fun, dfun, spec):
    """Count sign changes of the FD derivative on each piece for every context."""
    n = max(200, spec.n_x // 10)
    worst_changes, first_bad, count = 0, None, 0
    rich = (math.inf, None)
    cross = (math.inf, None)
    for ctx in contexts:
        for lo, hi in pieces:
            x = np.linspace(lo + PIECE_INSET, hi - PIECE_INSET, n)
            fx = lambda t: fun(ctx, t)  # noqa: E731
            d = _fd(fx, x)
            scale = np.maximum(1.0, np.abs(fx(x)))
            band = 1e-6 * scale
            ch, ok = count_sign_changes(d[None, :], band)
            count += x.size
            worst_changes = max(worst_changes, int(ch[0]))
            if not ok[0] and first_bad is None:
                first_bad = {**ctx, "piece": [lo, hi], "changes": int(ch[0])}
            # Richardson and analytic cross-checks on an inset sub-grid
            xc = x[(x >= lo + CROSSCHECK_INSET) & (x <= hi - CROSSCHECK_INSET)][:: max(1, n // 50)]
            if xc.size:
                d1 = _fd(fx, xc)
                d2 = _fd(fx, xc, FD_STEP / 2)
                dr = (4.0 * d2 - d1) / 3.0
                m_r = 1e-4 * np.abs(dr) + 1e-6 * np.maximum(1.0, np.abs(fx(xc))) - np.abs(d1 - dr)
                j = int(np.argmin(m_r))
                if m_r[j] < rich[0]:
                    rich = (float(m_r[j]), {**ctx, "x": float(xc[j])})
                da = dfun(ctx, xc)
                # floor: 1e-8 plus the rounding bound of the central difference
                floor = 1e-8 + 4.0 * EPS * np.maximum(1.0, np.abs(fx(xc))) / FD_STEP
                m_a = 1e-6 * np.abs(da) + floor - np.abs(d1 - da)
                j = int(np.argmin(m_a))
                if m_a[j] < cross[0]:
                    cross = (float(m_a[j]), {**ctx, "x": float(xc[j]), "analytic": float(da[j]), "fd": float(d1[j])})
    grid = {"contexts": len(contexts), "x_per_piece": n, "fd_step": FD_STEP, "inset": PIECE_INSET, "spec": spec.name}
    main = LemmaReport(
        check_id,
        description,
        grid,
        "pass" if first_bad is None else "fail",
        first_bad or {},
        float(worst_changes),
        0.0 if first_bad is None else -1.0,
        count,
        {"max_sign_changes": worst_changes},
    )
    rr = LemmaReport(
        check_id + "_richardson",
        "central difference agrees with its Richardson extrapolation to 1e-4 relative",
        dict(grid, crosscheck_inset=CROSSCHECK_INSET),
        _verdict(rich[0], 0.0, False),
        rich[1] or {},
        None,
        rich[0],
        count // 50,
    )
    cr = LemmaReport(
        check_id + "_analytic",
        "analytic derivative agrees with the central difference to 1e-6 relative",
        dict(grid, crosscheck_inset=CROSSCHECK_INSET),
        _verdict(cross[0], 0.0, False),
        cross[1] or {},
        None,
        cross[0],
        count // 50,
    )
    return [main, rr, cr]


def _ctx_grid(spec, ratio_fn, key, rs):
    ps = _p_of(_unit(max(4, spec.n_p // 4)))
    uq = _unit(max(4, spec.n_ratio // 4) + 2)
    return [{"r": float(r), "p": float(p), key: float(ratio_fn(p, u))} for r in rs for p in ps for u in uq]


def certify_h_monotonicity(spec: GridSpec | None = None) -> list[LemmaReport]:
    spec = spec or GridSpec()
    out = certify_h1_decreasing(spec)
    ctx3 = _ctx_grid(spec, _rhoA_of, "ratio_A", (0.5, 1.0))
    for r in (0.5, 1.0):
        sub = [c for c in ctx3 if c["r"] == r]
        out += _sign_report(
            f"h3_sign_pattern_r={r:g}",
            "derivative of h_3^r changes sign at most once, from minus to plus, on each piece",
            sub,
            _pieces_h3(r),
            lambda c, x: _h3(c["r"], c["p"], c["ratio_A"], x),
            lambda c, x: dh3(c["r"], c["p"], c["ratio_A"], x),
            spec,
        )
    ctx4 = _ctx_grid(spec, _rhoB_of, "ratio_B", (0.5,))
    out += _sign_report(
        "h4_sign_pattern",
        "derivative of h_4^{1/2} changes sign at most once, from minus to plus, on each piece",
        ctx4,
        _pieces_h4(),
        lambda c, x: _h4(0.5, c["p"], c["ratio_B"], x),
        lambda c, x: dh4(c["p"], c["ratio_B"], x),
        spec,
    )
    return out


# ---------------------------------------------------------------------------
# endpoint comparisons


def _scalar_report(check_id, description, value, margin, strict=False, tol=1e-9, witness=None):
    return LemmaReport(
        check_id,
        description,
        {"points": 1, "tolerance": tol},
        _verdict(margin, tol, strict),
        witness or {},
        value,
        margin,
        1,
    )


def _pr_box(spec, names, ratio_fn, margin_of, value_of=None):
    def params(up, uq):
        p = _p_of(up)
        return {"p": p, names: ratio_fn(p, uq)}

    def margin(up, uq):
        p = _p_of(up)
        return margin_of(p, ratio_fn(p, uq))

    value = None
    if value_of is not None:

        def value(up, uq):
            p = _p_of(up)
            return value_of(p, ratio_fn(p, uq))

    return _Box(("p", names), (_unit(spec.n_p), _unit(spec.n_ratio + 2)), params, margin, value)


def h4_endpoint_limit(p: float, rho_B: float) -> tuple[str, float]:
    """Behaviour of h_4^{1/2} at the far end of its branch [0, min(1/rho_B - 1, 2)).

    Returns (classification, value): "branch_end" with the value at
    1/rho_B - 1 when that point is below 2, otherwise the limit x -> 2,
    "-inf" or "finite" (only p = 0 and rho_B = 1/3, value -sqrt6).
    """
    x_end = 1.0 / rho_B - 1.0
    if x_end < 2.0:
        return "branch_end", float(_h4(0.5, p, rho_B, x_end))
    L = float(_K(p)) - math.sqrt(2.0 / rho_B)
    if L < -1e-15:
        return "-inf", -math.inf
    return "finite", -SQRT6


def certify_endpoint_comparisons(spec: GridSpec | None = None) -> list[LemmaReport]:
    spec = spec or GridSpec()
    out = []
    out.append(
        _scalar_report(
            "f_at_rstar",
            "f(r*) equals 20/41 (7 + 2 sqrt2)",
            f(R_STAR),
            1e-12 - abs(f(R_STAR) - 20.0 / 41.0 * (7.0 + 2.0 * SQRT2)),
            tol=0.0,
        )
    )
    rho_cap = 1.0 / (1.0 + R_STAR)

    for r in (0.5, 1.0):

        def marg(p, rho, r=r):
            diff = _h3(r, p, rho, 0.0) - _h3(r, p, rho, R_STAR)
            # only relevant when r* <= 1/rho_A - 1
            return np.where(rho <= rho_cap, diff, np.inf)

        out.append(
            _run_box(
                f"h3_zero_ge_rstar_r={r:g}",
                "h_3^r(0) >= h_3^r(r*) whenever r* <= m/m_A - 1",
                _pr_box(spec, "ratio_A", _rhoA_of, marg),
                spec,
                inner=2,
            )
        )
        lhs_coef = F_HALF_RSTAR * math.sqrt(1.0 + R_STAR) / (r - R_STAR) - 2.0 / r
        lhs = lhs_coef * math.sqrt(1.0 + R_STAR)
        rhs = SQRT6 * ((1.0 + R_STAR) / (r - R_STAR) - 1.0 / r)
        out.append(
            _scalar_report(
                f"h3_rstar_elementary_r={r:g}",
                "(F sqrt(1+r*)/(r-r*) - 2/r) sqrt(1+r*) >= sqrt6 ((1+r*)/(r-r*) - 1/r), with positive coefficient",
                lhs - rhs,
                min(lhs - rhs, lhs_coef),
                tol=0.0,
            )
        )

    # h_3^* and h_3^** on (1, 3/2]
    for name, fun in (("h3_star", h3_star), ("h3_2star", h3_2star)):
        for r in (0.5, 1.0):
            hi = 1.5 - (spec.pole_margin if r == 0.5 else 0.0)
            for pfree in (False, True):

                def params(up, v, r=r, hi=hi, pfree=pfree):
                    return {"r": r, "p": None if pfree else _p_of(up), "x": 1.0 + v * (hi - 1.0)}

                def margin(up, v, r=r, hi=hi, pfree=pfree, fun=fun):
                    x = 1.0 + v * (hi - 1.0)
                    K = SQRT6 if pfree else None
                    val = fun(r, _p_of(up), x, K)
                    return val + 64.0 * EPS * (1.0 + x / np.abs(1.0 + r - x))

                box = _Box(("p", "x"), (_unit(1 if pfree else spec.n_p), _unit(spec.n_x)), params, margin)
                label = f"{name}{'_pfree' if pfree else ''}_r={r:g}"
                out.append(
                    _run_box(
                        f"{label}_nonneg",
                        f"{name} >= 0 on (1, 3/2]" + (" with sqrt6 in place of the p-term" if pfree else ""),
                        box,
                        spec,
                    )
                )
    # identities linking h3*, h3** to h3 differences
    worst = 0.0
    for r in (0.5, 1.0):
        for p in _p_of(_unit(8)):
            xs = 1.0 + np.linspace(1e-4, R_STAR, 200)
            direct = _h3(r, p, 1.0 / xs, 0.0) - _h3(r, p, 1.0 / xs, xs - 1.0)
            worst = max(worst, float(np.max(np.abs(direct - h3_star(r, p, xs)))))
            xs = 1.0 + np.linspace(R_STAR, 0.5 - (1e-3 if r == 0.5 else 0.0), 200)
            direct = _h3(r, p, 1.0 / xs, 0.0) - _h3(r, p, 1.0 / xs, xs - 1.0)
            rel = np.abs(direct - h3_2star(r, p, xs)) / np.maximum(1.0, np.abs(direct))
            worst = max(worst, float(np.max(rel)))
    out.append(
        _scalar_report(
            "h3_star_identity",
            "h3*(x), h3**(x) equal h_3^r(0) - h_3^r(x - 1) with m_A/m = 1/x",
            worst,
            1e-12 - worst,
            tol=0.0,
        )
    )

    # values of h_4^{1/2} at the far end
    out.append(
        _run_box(
            "h4_zero_negative",
            "h_4^{1/2}(0) < 0",
            _pr_box(spec, "ratio_B", _rhoB_of, lambda p, rho: -_h4(0.5, p, rho, 0.0), lambda p, rho: _h4(0.5, p, rho, 0.0)),
            spec,
            strict=True,
        )
    )
    for label, x in (("rstar", R_STAR), ("half", 0.5 - 0.0)):
        out.append(
            _run_box(
                f"h4_zero_ge_{label}",
                f"h_4^{{1/2}}(0) >= h_4^{{1/2}}({label})",
                _pr_box(spec, "ratio_B", _rhoB_of, lambda p, rho, x=x: _h4(0.5, p, rho, 0.0) - _h4(0.5, p, rho, x)),
                spec,
            )
        )
    lhs_coef = F_HALF_RSTAR * math.sqrt(1.0 + R_STAR) / (1.0 - R_STAR / 2.0) - 2.0
    lhs = lhs_coef * math.sqrt(9.0 / 5.0)
    rhs = SQRT6 * ((1.0 + R_STAR) / (1.0 - R_STAR / 2.0) - 1.0)
    out.append(
        _scalar_report(
            "h4_rstar_elementary",
            "(F sqrt(1+r*)/(1-r*/2) - 2) sqrt(9/5) >= sqrt6 ((1+r*)/(1-r*/2) - 1)",
            lhs - rhs,
            min(lhs - rhs, lhs_coef),
            tol=0.0,
        )
    )
    out.append(_h4_far_end_report(spec))
    # the p = 0, m_B/m = 1/3 limit, evaluated numerically
    near = float(_h4(0.5, 0.0, 1.0 / 3.0, 2.0 - 1e-7))
    h40 = float(_h4(0.5, 0.0, 1.0 / 3.0, 0.0))
    out.append(
        _scalar_report(
            "h4_limit_p0",
            "p = 0, m_B/m = 1/3: h_4^{1/2} -> -sqrt6 as x -> 2 and h_4^{1/2}(0) = sqrt6 - 2 sqrt3 >= -sqrt6",
            near,
            min(1e-6 - abs(near + SQRT6), 1e-12 - abs(h40 - (SQRT6 - 2 * SQRT3)), h40 + SQRT6),
            tol=0.0,
            witness={"x": 2.0 - 1e-7, "h4_at_0": h40},
        )
    )
    return out


def _h4_far_end_report(spec) -> LemmaReport:
    ps = _p_of(_unit(spec.n_p))
    uq = _unit(spec.n_ratio + 2)
    worst = (math.inf, None)
    classes: dict[str, int] = {}
    for p in ps:
        for u in uq:
            rho = float(_rhoB_of(p, u))
            cls, val = h4_endpoint_limit(float(p), rho)
            classes[cls] = classes.get(cls, 0) + 1
            m = float(_h4(0.5, p, rho, 0.0)) - val
            if m < worst[0]:
                worst = (m, {"p": float(p), "ratio_B": rho, "class": cls, "far_value": val})
    return LemmaReport(
        "h4_zero_ge_far_end",
        "h_4^{1/2}(0) >= value or limit at the far end of its branch (x -> 2, or x = m/m_B - 1 when that is below 2)",
        {"p": len(ps), "ratio_B": len(uq), "spec": spec.name, "tolerance": 1e-9},
        _verdict(worst[0], 1e-9, False),
        worst[1],
        None,
        worst[0],
        len(ps) * len(uq),
        {"classification_counts": dict(sorted(classes.items()))},
    )


# ---------------------------------------------------------------------------
# constant positivity


C2_CONSTANT = 4.0 * (1.0 + 2.0 ** (2.0 / 3.0)) ** 1.5


def c2_minus_c1_bound(p):
    p = np.asarray(p, dtype=float)
    return _out(C2_CONSTANT / np.sqrt(1.0 + p) - 12.0 * SQRT6 / np.sqrt(4.0 + 2.0 * p))


def inner_objective(u, p):
    return 4.0 / np.sqrt(1.0 + p - u) + 8.0 / np.sqrt(u)


def inner_argmin(p):
    c = 2.0 ** (2.0 / 3.0)
    return c * (1.0 + p) / (1.0 + c)


def certify_c2_gt_c1(spec: GridSpec | None = None) -> list[LemmaReport]:
    spec = spec or GridSpec()
    ps = np.linspace(0.0, 1.0 / 3.0, spec.n_p_c2)
    vals = np.asarray(c2_minus_c1_bound(ps))
    j = int(np.argmin(vals))
    main = LemmaReport(
        "c2_gt_c1",
        "4 (1 + 2^{2/3})^{3/2} / sqrt(1+p) - 12 sqrt6 / sqrt(4+2p) > 0 on [0, 1/3]",
        {"p": len(ps)},
        _verdict(float(vals[j]), 0.0, True),
        {"p": float(ps[j])},
        float(vals[j]),
        float(vals[j]),
        len(ps),
    )
    worst_val, worst_arg, worst_foc = 0.0, 0.0, 0.0
    wit = {}
    for p in ps:
        res = minimize_scalar(inner_objective, bounds=(1e-9, 1.0 + p - 1e-9), args=(p,), method="bounded", options={"xatol": 1e-10})
        closed = C2_CONSTANT / math.sqrt(1.0 + p)
        ev = abs(res.fun - closed)
        ea = abs(res.x - inner_argmin(p))
        foc = abs(2.0 * (1.0 + p - res.x) ** -1.5 - 4.0 * res.x ** -1.5)
        if ev > worst_val:
            wit = {"p": float(p), "numeric_min": float(res.fun), "closed_form": closed}
        worst_val, worst_arg, worst_foc = max(worst_val, ev), max(worst_arg, ea), max(worst_foc, foc)
    inner = LemmaReport(
        "c2_inner_minimisation",
        "min over m_A/m of 4/sqrt(1+p-u) + 8/sqrt(u) equals 4 (1+2^{2/3})^{3/2} / sqrt(1+p); argmin satisfies the first-order condition",
        {"p": len(ps), "value_tol": 1e-6, "argmin_tol": 1e-4},
        "pass" if worst_val <= 1e-6 and worst_arg <= 1e-4 and worst_foc <= 1e-4 else "fail",
        wit,
        worst_val,
        min(1e-6 - worst_val, 1e-4 - worst_arg, 1e-4 - worst_foc),
        len(ps),
        {"max_value_error": worst_val, "max_argmin_error": worst_arg, "max_foc_residual": worst_foc},
    )
    return [main, inner]


# ---------------------------------------------------------------------------
# structural identities


IDENTITY_TOL = 1e-12


def _rel_err(a, b, scale=None):
    """|a - b| relative to max(1, |a|, |b|, scale); ``scale`` is the size of the uncancelled terms."""
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    ref = np.maximum(1.0, np.maximum(np.abs(a), np.abs(b)))
    if scale is not None:
        ref = np.maximum(ref, np.abs(scale))
    return np.abs(a - b) / ref


def _term_scale(w, K, x, rho=1.0):
    """|w| (K + f(x)/(2 sqrt(rho (1+x)))): magnitude of the product before cancellation."""
    return 2.0 * np.abs(w) * (K + f(x) / (2.0 * np.sqrt(rho * (1.0 + x))))


def certify_identities(spec: GridSpec | None = None) -> list[LemmaReport]:
    spec = spec or GridSpec()
    n = max(500, spec.n_x // 5)
    ps = _p_of(_unit(max(4, spec.n_p // 4)))
    uq = _unit(max(4, spec.n_ratio // 4) + 2)
    rs = (0.5, 1.0, 2.0) + tuple(_r_of(_unit(6)))
    d = spec.pole_margin
    worst = {k: (0.0, {}) for k in ("gA_h1h3", "gB_h2h4", "h2_h1", "reduce_gA", "reduce_gB", "homogeneity")}
    counts = dict.fromkeys(worst, 0)

    def note(key, err, wit):
        j = int(np.argmax(err))
        counts[key] += err.size
        if err.flat[j] > worst[key][0]:
            worst[key] = (float(err.flat[j]), {k: (float(v.flat[j]) if isinstance(v, np.ndarray) else v) for k, v in wit.items()})

    for p in ps:
        for u in uq:
            ra, rb = float(_rhoA_of(p, u)), float(_rhoB_of(p, u))
            for r in rs:
                a = np.linspace(0.0, r - d, n)
                lhs = -_gA(r, p, ra, a)
                rhs = 2.0 * np.minimum(_h1(r, p, a), _h3(r, p, ra, a))
                sc = _term_scale((1.0 + a) / (r - a), _K(p), a, min(ra, 1.0))
                note("gA_h1h3", _rel_err(lhs, rhs, sc), {"r": r, "p": p, "ratio_A": ra, "alpha": a})
                b = np.linspace(0.0, 1.0 / r - d, n)
                gb_r = _gB(r, p, rb, b)
                gb_h = (1.0 - b / 2.0) / (1.0 - r * b) * _gB(0.5, p, rb, b)
                sc = _term_scale((1.0 + b) / (1.0 - r * b), _K(p), b, rb)
                note("reduce_gB", _rel_err(gb_r, gb_h, sc), {"r": r, "p": p, "ratio_B": rb, "beta": b})
                if r >= 1.0:
                    a = np.linspace(0.0, 1.0 - d, n)
                    red = (1.0 / r) * (1.0 - a) / (1.0 - a / r) * _gA(1.0, p, ra, a)
                else:
                    a = np.linspace(0.0, 0.5 - d, n)
                    red = (1.0 / r) * (0.5 - a) / (1.0 - a / r) * _gA(0.5, p, ra, a)
                sc = _term_scale((1.0 + a) / np.abs(r - a), _K(p), a, ra) / min(r, 1.0)
                note("reduce_gA", _rel_err(_gA(r, p, ra, a), red, sc), {"r": r, "p": p, "ratio_A": ra, "alpha": a})
            b = np.linspace(0.0, 2.0 - d, n)
            lhs = _gB(0.5, p, rb, b)
            rhs = 2.0 * np.maximum(-_h2(0.5, p, b), -_h4(0.5, p, rb, b))
            sc = _term_scale((1.0 + b) / (1.0 - b / 2.0), _K(p), b, rb)
            note("gB_h2h4", _rel_err(lhs, rhs, sc), {"p": p, "ratio_B": rb, "beta": b})
            for m in (0.25, 4.0, 9.0):
                ctx = LemmaContext(1.0, float(p), ra, rb)
                a = np.linspace(0.0, 1.0 - d, 64)
                err = _rel_err(g_A(ctx, a, m) * math.sqrt(m), g_A(ctx, a))
                note("homogeneity", err, {"p": p, "m": m, "alpha": a})
        x = np.linspace(0.0, 2.0 - d, n)
        sc = _term_scale((1.0 + x) / (1.0 - x / 2.0), _K(p), x)
        note("h2_h1", _rel_err(_h2(0.5, p, x), 2.0 * _h1(2.0, p, x), sc), {"p": p, "x": x})
    desc = {
        "gA_h1h3": "-g_A = 2 min(h_1, h_3)",
        "gB_h2h4": "g_B^{1/2} = 2 max(-h_2^{1/2}, -h_4^{1/2})",
        "h2_h1": "h_2^{1/2} = 2 h_1^2",
        "reduce_gA": "g_A^r = (1/r) (1-a)/(1-a/r) g_A^1 (r >= 1) and (1/r) (1/2-a)/(1-a/r) g_A^{1/2} (r < 1)",
        "reduce_gB": "g_B^r = (1 - b/2)/(1 - r b) g_B^{1/2}",
        "homogeneity": "g scales as 1/sqrt(m)",
    }
    out = []
    for key, (err, wit) in worst.items():
        out.append(
            LemmaReport(
                f"identity_{key}",
                desc[key],
                {"x": n, "p": len(ps), "ratio": len(uq), "r": len(rs), "tolerance": IDENTITY_TOL, "spec": spec.name},
                "pass" if err <= IDENTITY_TOL else "fail",
                wit,
                err,
                IDENTITY_TOL - err,
                counts[key],
                {"error_measure": "|lhs - rhs| / max(1, |lhs|, |rhs|, size of the uncancelled terms)"},
            )
        )
    return out


# ---------------------------------------------------------------------------
# r-dependence of g_B^r(0) + g_A^r(0)


def r_dependence_report(spec: GridSpec | None = None) -> LemmaReport:
    """Sample g_B^r(0) + g_A^r(0) over r in [1/2, 2] and locate its minimum."""
    spec = spec or GridSpec()
    rs = np.linspace(0.5, 2.0, 151)
    ps = _p_of(_unit(spec.n_p))
    uq = _unit(spec.n_ratio + 2)
    total, at_half = 0, 0
    worst = (math.inf, {})
    for p in ps:
        for u in uq:
            ra = float(_rhoA_linked_of(p, u))
            rb = 1.0 + p - ra
            s = _gB(rs, p, rb, 0.0) + _gA(rs, p, ra, 0.0)
            j = int(np.argmin(s))
            total += 1
            gap = float(s[1:].min() - s[0])
            at_half += gap >= -1e-12
            if gap < worst[0]:
                worst = (gap, {"p": float(p), "ratio_A": ra, "argmin_r": float(rs[j])})
    return LemmaReport(
        "r_dependence_min_at_half",
        "where g_B^r(0) + g_A^r(0) is smallest over sampled r in [1/2, 2]",
        {"r": len(rs), "p": len(ps), "ratio_A": len(uq), "spec": spec.name},
        "info",
        worst[1],
        None,
        worst[0],
        total * len(rs),
        {"contexts": total, "min_at_r_half": at_half},
    )


# ---------------------------------------------------------------------------


def run_all(spec: GridSpec | str | None = None) -> list[LemmaReport]:
    if isinstance(spec, str):
        spec = GridSpec.named(spec)
    spec = spec or GridSpec()
    out: list[LemmaReport] = []
    scan = _g_scan(spec)
    out += certify_g_minima(spec, scan)
    out.append(certify_c2_gt_c1_direct(spec, scan))
    out += certify_h_monotonicity(spec)
    out += certify_endpoint_comparisons(spec)
    out += certify_c2_gt_c1(spec)
    out += certify_identities(spec)
    out.append(r_dependence_report(spec))
    return out


def summary_table(reports: Sequence[LemmaReport]) -> str:
    w = max(len(r.check_id) for r in reports)
    lines = [f"{'check':<{w}}  verdict  margin"]
    for r in reports:
        m = "" if r.margin is None else f"{r.margin:.6g}"
        lines.append(f"{r.check_id:<{w}}  {r.verdict:<7}  {m}")
    return "\n".join(lines)
