"""Exhaustive lattice oracles for the discrete double-bubble problem.

The discrete energy of a pair of disjoint cell sets is
``E = per(A) + per(B) - |interface| = (per(A) + per(B) + per(A u B)) / 2``.
The brute force runs iterative deepening on the integer target E.  For each
target, the first set is grown as a lattice animal (Redelmeier growth from a
root cell, lexicographically smaller cells forbidden, one representative per
isometry class), then the second set is grown from every free neighbour of the
first.  Subtrees are cut with a perimeter floor: a set meeting pi_i lines
parallel to axis i has perimeter >= 2 * sum(pi_i), the line counts only grow
with the set, and a set of n cells needs prod(pi_i) >= n^(d-1).

Only pairs whose second set touches the first are generated.  That loses no
optimum: sliding B next to A creates interface without changing either
perimeter.  For the same reason, with connectivity switched off only connected
unions are enumerated, and every split of each union is scored.
"""
from __future__ import annotations

import csv
import itertools
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from .closed_forms import emin, planar_energy
from .geometry import Configuration, double_bubble_energy
from .gridio import write_grid

GUARDRAILS = {2: 14, 3: 8}
GUARDRAILS_DISCONNECTED = {2: 8, 3: 6}
GUARDRAIL_ENV = "L1BUBBLE_MAX_CELLS"


class GuardrailError(ValueError):
    """Requested search is beyond the default size limits."""


@dataclass(frozen=True)
class SearchSpec:
    dimension: int
    V_A: int
    V_B: int
    box: tuple[int, ...] | None = None  # extents the union must fit in, up to axis permutation
    connected: bool = True
    symmetry: bool = True
    max_cells: int | None = None  # explicit guardrail override

    def __post_init__(self):
        if self.dimension not in (2, 3):
            raise ValueError(f"dimension must be 2 or 3, got {self.dimension}")
        if int(self.V_A) != self.V_A or int(self.V_B) != self.V_B or self.V_A < 1 or self.V_B < 1:
            raise ValueError(f"volumes must be positive integers, got ({self.V_A}, {self.V_B})")
        if self.box is not None:
            if len(self.box) != self.dimension or min(self.box) < 1:
                raise ValueError(f"bad box {self.box}")
            if math.prod(self.box) < self.total:
                raise ValueError(f"box {self.box} cannot hold {self.total} cells")

    @property
    def total(self) -> int:
        return self.V_A + self.V_B

    def limit(self) -> int:
        if self.max_cells is not None:
            return self.max_cells
        env = os.environ.get(GUARDRAIL_ENV)
        if env:
            return int(env)
        table = GUARDRAILS if self.connected else GUARDRAILS_DISCONNECTED
        return table[self.dimension]

    def check_guardrail(self) -> None:
        if self.total > self.limit():
            raise GuardrailError(
                f"V_A + V_B = {self.total} exceeds the {self.dimension}D limit {self.limit()}; "
                f"pass max_cells or set {GUARDRAIL_ENV} to override"
            )

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "V_A": self.V_A,
            "V_B": self.V_B,
            "box": list(self.box) if self.box else None,
            "connected": self.connected,
            "symmetry": self.symmetry,
        }


@dataclass
class SearchResult:
    spec: SearchSpec
    energy: int
    witnesses: list[Configuration]
    nodes: int
    pruning: dict = field(default_factory=dict)

    @property
    def optima(self) -> int:
        return len(self.witnesses)

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.to_dict(),
            "energy": self.energy,
            "optima": self.optima,
            "witnesses": [
                {"A": sorted(list(c) for c in w.A.cells()), "B": sorted(list(c) for c in w.B.cells())}
                for w in self.witnesses
            ],
            "nodes": self.nodes,
            "pruning": dict(self.pruning),
        }


# ---------------------------------------------------------------------------
# symmetry


@lru_cache(maxsize=None)
def isometries(dim: int) -> np.ndarray:
    """The 2^d d! signed permutation matrices, identity first."""
    mats = []
    for perm in itertools.permutations(range(dim)):
        for signs in itertools.product((1, -1), repeat=dim):
            m = np.zeros((dim, dim), dtype=np.int64)
            for i, (p, s) in enumerate(zip(perm, signs)):
                m[i, p] = s
            mats.append(m)
    mats.sort(key=lambda m: (not np.array_equal(m, np.eye(dim, dtype=np.int64)),))
    return np.array(mats)


def _keys(pts: np.ndarray, base: int) -> np.ndarray:
    """Integer keys for nonnegative points, ordered lexicographically on (x, y, z)."""
    out = np.zeros(pts.shape[:-1], dtype=np.int64)
    for k in range(pts.shape[-1]):
        out = out * base + pts[..., k]
    return out


def _forms(cells: np.ndarray, split: int | None = None):
    """Translation-normalised sorted key tuples of ``cells`` under every isometry."""
    mats = isometries(cells.shape[1])
    pts = np.einsum("kij,nj->kni", mats, cells)
    pts = pts - pts.min(axis=1, keepdims=True)
    keys = _keys(pts, len(cells) + 1)
    if split is None:
        return [tuple(sorted(row)) for row in keys.tolist()]
    return [(tuple(sorted(row[:split])), tuple(sorted(row[split:]))) for row in keys.tolist()]


def canonical_set(cells) -> tuple:
    forms = _forms(np.asarray(list(cells), dtype=np.int64))
    return min(forms)


def is_canonical_set(cells) -> bool:
    forms = _forms(np.asarray(list(cells), dtype=np.int64))
    return forms[0] == min(forms)


def canonical_pair(a_cells, b_cells) -> tuple:
    """Canonical form of an ordered pair up to translation and axis isometries."""
    a, b = list(a_cells), list(b_cells)
    return min(_forms(np.asarray(a + b, dtype=np.int64), split=len(a)))


def _decode_key(key: int, dim: int, base: int) -> tuple[int, ...]:
    out = []
    for _ in range(dim):
        key, v = divmod(key, base)
        out.append(v)
    return tuple(reversed(out))


def pair_from_form(form, dim: int) -> Configuration:
    base = len(form[0]) + len(form[1]) + 1
    return Configuration.from_cells(
        [_decode_key(k, dim, base) for k in form[0]], [_decode_key(k, dim, base) for k in form[1]]
    )


def canonical_configuration(cfg: Configuration) -> tuple:
    return canonical_pair(sorted(cfg.A.cells()), sorted(cfg.B.cells()))


# ---------------------------------------------------------------------------
# perimeter floors


@lru_cache(maxsize=None)
def projection_floor(lines: tuple[int, ...], n: int) -> int:
    """min sum(pi) over integers pi_i >= lines_i, pi_i <= n, with prod(pi) >= n^(d-1)."""
    d = len(lines)
    need = n ** (d - 1)
    if d == 2:
        c1, c2 = lines
        best = math.inf
        for p1 in range(max(c1, 1), max(c1, n) + 1):
            p2 = max(c2, -(-need // p1))
            best = min(best, p1 + p2)
            if p1 + c2 >= best:
                break
        return int(best)
    c1, c2, c3 = lines
    best = math.inf
    for p1 in range(max(c1, 1), max(c1, n) + 1):
        if p1 + c2 + c3 >= best:
            break
        for p2 in range(max(c2, 1), max(c2, n) + 1):
            if p1 + p2 + c3 >= best:
                break
            p3 = max(c3, -(-need // (p1 * p2)))
            best = min(best, p1 + p2 + p3)
    return int(best)


def min_perimeter(n: int, dim: int) -> int:
    """Perimeter floor of an n-cell set: 2 ceil(2 sqrt n) in 2D, exact for boxes in 3D."""
    return 2 * projection_floor((0,) * dim, n)


# ---------------------------------------------------------------------------
# the lattice


class _Lattice:
    """Cells of a padded cube encoded as integers; index order is lexicographic
    with the last coordinate most significant."""

    def __init__(self, dim: int, reach: int):
        self.dim = dim
        self.L = L = 2 * reach + 3
        self.size = L**dim
        self.strides = [L**i for i in range(dim)]
        self.centre = (reach + 1) * sum(self.strides)
        self.steps = [s for st in self.strides for s in (st, -st)]
        idx = np.arange(self.size)
        coords = np.stack([(idx // st) % L for st in self.strides], axis=1)
        self.coords = (coords - (reach + 1)).tolist()
        # line id of each cell along each axis: drop that coordinate
        self.lines = [(idx - coords[:, i] * self.strides[i]).tolist() for i in range(dim)]

    def cells(self, idxs) -> list[tuple[int, ...]]:
        return [tuple(self.coords[i]) for i in idxs]


class _Grower:
    """Incremental state of one growing set: membership, perimeter and line counts."""

    def __init__(self, lat: _Lattice, owner: bytearray, tag: int):
        self.lat = lat
        self.owner = owner
        self.tag = tag
        self.cells: list[int] = []
        self.perimeter = 0
        self.counts = [[0] * lat.size for _ in range(lat.dim)]
        self.proj = [0] * lat.dim

    def add(self, c: int) -> int:
        """Add cell c, returning the number of its neighbours owned by other tags."""
        lat, own, tag = self.lat, self.owner, self.tag
        same = other = 0
        for s in lat.steps:
            o = own[c + s]
            if o == tag:
                same += 1
            elif o:
                other += 1
        own[c] = tag
        self.cells.append(c)
        self.perimeter += 2 * lat.dim - 2 * same
        for i in range(lat.dim):
            line = lat.lines[i][c]
            cnt = self.counts[i]
            if cnt[line] == 0:
                self.proj[i] += 1
            cnt[line] += 1
        return other

    def remove(self, c: int) -> int:
        lat, own, tag = self.lat, self.owner, self.tag
        own[c] = 0
        self.cells.pop()
        same = other = 0
        for s in lat.steps:
            o = own[c + s]
            if o == tag:
                same += 1
            elif o:
                other += 1
        self.perimeter -= 2 * lat.dim - 2 * same
        for i in range(lat.dim):
            line = lat.lines[i][c]
            cnt = self.counts[i]
            cnt[line] -= 1
            if cnt[line] == 0:
                self.proj[i] -= 1
        return other


class _Union:
    """Line counts of A u B, seeded with a finished first set."""

    def __init__(self, lat: _Lattice, first: list[int]):
        self.lat = lat
        self.counts = [[0] * lat.size for _ in range(lat.dim)]
        self.proj = [0] * lat.dim
        for c in first:
            self.add(c)

    def add(self, c):
        for i in range(self.lat.dim):
            line = self.lat.lines[i][c]
            if self.counts[i][line] == 0:
                self.proj[i] += 1
            self.counts[i][line] += 1

    def remove(self, c):
        for i in range(self.lat.dim):
            line = self.lat.lines[i][c]
            self.counts[i][line] -= 1
            if self.counts[i][line] == 0:
                self.proj[i] -= 1


def _redelmeier(lat: _Lattice, seen: bytearray, root: int, n: int, add, remove, visit, stats: dict) -> None:
    """Enumerate every connected set of n unseen cells containing ``root`` exactly once.

    ``add(c)`` returns False to cut the subtree below the current set;
    ``visit()`` is called on every complete set.  ``seen`` is restored on exit.
    """
    steps = lat.steps

    def rec(untried: list[int], k: int) -> None:
        while untried:
            c = untried.pop()
            stats["nodes"] += 1
            if add(c):
                if k + 1 == n:
                    visit()
                else:
                    new = [c + s for s in steps if not seen[c + s]]
                    for q in new:
                        seen[q] = 1
                    rec(untried + new, k + 1)
                    for q in new:
                        seen[q] = 0
            else:
                stats["bound"] += 1
            remove(c)

    was = seen[root]
    seen[root] = 1
    rec([root], 0)
    seen[root] = was


def _fits(cells: list[tuple[int, ...]], box) -> bool:
    if box is None:
        return True
    arr = np.asarray(cells)
    ext = sorted((arr.max(0) - arr.min(0) + 1).tolist())
    return all(e <= b for e, b in zip(ext, sorted(box)))


# ---------------------------------------------------------------------------
# connected search


def _first_sets(spec: SearchSpec, nx: int, ny: int, budget: int, stats: dict) -> list[tuple[list[int], int]]:
    """Every first set (as lattice indices) that can still reach energy <= budget."""
    dim = spec.dimension
    lat = _Lattice(dim, nx + ny)
    owner = bytearray(lat.size)
    g = _Grower(lat, owner, 1)
    floor_y = min_perimeter(ny, dim)
    n = nx + ny
    out: list[tuple[list[int], int]] = []

    def add(c):
        g.add(c)
        lb = 2 * projection_floor(tuple(g.proj), nx) + floor_y + 2 * projection_floor(tuple(g.proj), n)
        return lb <= 2 * budget

    def remove(c):
        g.remove(c)

    def visit():
        lb = g.perimeter + floor_y + 2 * projection_floor(tuple(g.proj), n)
        if lb > 2 * budget:
            stats["bound"] += 1
            return
        cells = lat.cells(g.cells)
        if spec.symmetry and not is_canonical_set(cells):
            stats["symmetry"] += 1
            return
        out.append((sorted(cells), g.perimeter))

    seen = bytearray(lat.size)
    seen[: lat.centre] = b"\x01" * lat.centre
    _redelmeier(lat, seen, lat.centre, nx, add, remove, visit, stats)
    return out


def _second_sets(args) -> tuple[list[tuple[int, tuple]], dict]:
    """All second sets touching a fixed first set with energy <= budget."""
    spec, nx, ny, budget, first, p_first = args
    dim = spec.dimension
    lat = _Lattice(dim, nx + ny)
    owner = bytearray(lat.size)
    stats = {"nodes": 0, "bound": 0, "box": 0}
    xs = []
    for cell in first:
        c = lat.centre + sum(v * s for v, s in zip(cell, lat.strides))
        owner[c] = 1
        xs.append(c)
    union = _Union(lat, xs)
    g = _Grower(lat, owner, 2)
    n = nx + ny
    state = {"I": 0}
    found: list[tuple[int, tuple]] = []

    def add(c):
        state["I"] += g.add(c)
        union.add(c)
        lb = p_first + 2 * projection_floor(tuple(g.proj), ny) + 2 * projection_floor(tuple(union.proj), n)
        return lb <= 2 * budget

    def remove(c):
        state["I"] -= g.remove(c)
        union.remove(c)

    def visit():
        e = p_first + g.perimeter - state["I"]
        if e > budget:
            return
        b_cells = lat.cells(g.cells)
        if not _fits(first + b_cells, spec.box):
            stats["box"] += 1
            return
        found.append((e, canonical_pair(first, b_cells)))

    nbrs = sorted({c + s for c in xs for s in lat.steps if not owner[c + s]})
    seen = bytearray(owner)
    for s in nbrs:
        _redelmeier(lat, seen, s, ny, add, remove, visit, stats)
        seen[s] = 1  # later roots must not reuse it
    return found, stats


def _map(fn, tasks, threads: int | None):
    threads = threads or 1
    if threads <= 1 or len(tasks) < 2:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, tasks, chunksize=max(1, len(tasks) // (4 * threads))))


def _lower_energy(spec: SearchSpec) -> int:
    d = spec.dimension
    total = min_perimeter(spec.V_A, d) + min_perimeter(spec.V_B, d) + min_perimeter(spec.total, d)
    return -(-total // 2)


def _connected_search(spec: SearchSpec, threads: int | None) -> SearchResult:
    # grow the larger set first: its perimeter floor is the tighter filter
    swap = spec.V_B > spec.V_A
    nx, ny = (spec.V_B, spec.V_A) if swap else (spec.V_A, spec.V_B)
    stats = {"nodes": 0, "bound": 0, "symmetry": 0, "box": 0, "levels": 0}
    budget = _lower_energy(spec)
    while True:
        stats["levels"] += 1
        firsts = _first_sets(spec, nx, ny, budget, stats)
        results = _map(_second_sets, [(spec, nx, ny, budget, cells, p) for cells, p in firsts], threads)
        forms = set()
        best = math.inf
        for found, st in results:
            for key in ("nodes", "bound", "box"):
                stats[key] += st[key]
            for e, form in found:
                if e < best:
                    best, forms = e, {form}
                elif e == best:
                    forms.add(form)
        if forms:
            break
        budget += 1
    witnesses = []
    for form in sorted(forms):
        cfg = pair_from_form(form, spec.dimension)
        witnesses.append(cfg.swapped() if swap else cfg)
    witnesses = _canonical_order(witnesses)
    return SearchResult(spec, int(best), witnesses, stats.pop("nodes"), stats)


def _canonical_order(cfgs: list[Configuration]) -> list[Configuration]:
    forms = sorted({canonical_configuration(c) for c in cfgs})
    return [pair_from_form(f, cfgs[0].dimension) for f in forms]


# ---------------------------------------------------------------------------
# disconnected search


def _split_union(args):
    spec, cells = args
    n, a = len(cells), spec.V_A
    if not _fits(cells, spec.box):
        return math.inf, set()
    # neighbour pairs inside the union
    index = {c: i for i, c in enumerate(cells)}
    adj = [
        (i, index[q])
        for i, c in enumerate(cells)
        for k in range(spec.dimension)
        if (q := tuple(v + (j == k) for j, v in enumerate(c))) in index
    ]
    p_union = 2 * spec.dimension * n - 2 * len(adj)
    best, forms = math.inf, set()
    for chosen in itertools.combinations(range(n), a):
        in_a = np.zeros(n, dtype=bool)
        in_a[list(chosen)] = True
        same_a = sum(1 for i, j in adj if in_a[i] and in_a[j])
        same_b = sum(1 for i, j in adj if not in_a[i] and not in_a[j])
        p_a = 2 * spec.dimension * a - 2 * same_a
        p_b = 2 * spec.dimension * (n - a) - 2 * same_b
        e = (p_a + p_b + p_union) // 2
        if e > best:
            continue
        a_cells = [cells[i] for i in chosen]
        b_cells = [cells[i] for i in range(n) if not in_a[i]]
        form = canonical_pair(a_cells, b_cells)
        if e < best:
            best, forms = e, {form}
        else:
            forms.add(form)
    return best, forms


def _connected_unions(spec: SearchSpec, stats: dict) -> list[list[tuple[int, ...]]]:
    n = spec.total
    lat = _Lattice(spec.dimension, n)
    owner = bytearray(lat.size)
    g = _Grower(lat, owner, 1)
    out = []

    def visit():
        cells = lat.cells(g.cells)
        if spec.symmetry and not is_canonical_set(cells):
            stats["symmetry"] += 1
            return
        out.append(sorted(cells))

    seen = bytearray(lat.size)
    seen[: lat.centre] = b"\x01" * lat.centre
    _redelmeier(lat, seen, lat.centre, n, lambda c: g.add(c) >= 0, g.remove, visit, stats)
    return out


def _disconnected_search(spec: SearchSpec, threads: int | None) -> SearchResult:
    stats = {"nodes": 0, "bound": 0, "symmetry": 0, "unions": 0}
    unions = _connected_unions(spec, stats)
    stats["unions"] = len(unions)
    best, forms = math.inf, set()
    for e, fs in _map(_split_union, [(spec, u) for u in unions], threads):
        if e < best:
            best, forms = e, set(fs)
        elif e == best:
            forms |= fs
    witnesses = [pair_from_form(f, spec.dimension) for f in sorted(forms)]
    return SearchResult(spec, int(best), witnesses, stats.pop("nodes"), stats)


# ---------------------------------------------------------------------------
# public entry points


def search(spec: SearchSpec, threads: int | None = None) -> SearchResult:
    """Exact discrete minimum with one witness per isometry class of optima."""
    spec.check_guardrail()
    if spec.connected:
        return _connected_search(spec, threads)
    return _disconnected_search(spec, threads)


def brute_force_2d(spec: SearchSpec | tuple[int, int], threads: int | None = None, **kw) -> SearchResult:
    if not isinstance(spec, SearchSpec):
        spec = SearchSpec(2, *spec, **kw)
    if spec.dimension != 2:
        raise ValueError("brute_force_2d needs a 2D spec")
    return search(spec, threads)


def brute_force_3d(spec: SearchSpec | tuple[int, int], threads: int | None = None, **kw) -> SearchResult:
    if not isinstance(spec, SearchSpec):
        spec = SearchSpec(3, *spec, **kw)
    if spec.dimension != 3:
        raise ValueError("brute_force_3d needs a 3D spec")
    return search(spec, threads)


def verify_witness(result: SearchResult) -> bool:
    """Every witness has the requested volumes and re-evaluates to the reported energy."""
    return all(
        w.V_A == result.spec.V_A
        and w.V_B == result.spec.V_B
        and double_bubble_energy(w).energy == result.energy
        for w in result.witnesses
    )


# ---------------------------------------------------------------------------
# continuous cuboid family


def cuboid_pair_energy(s1, s2, V_A, V_B):
    """Two stacked cuboids sharing an s1 x s2 face: three faces of area s1 s2
    plus the side walls of both heights."""
    area = np.asarray(s1) * np.asarray(s2)
    return 3.0 * area + 2.0 * (V_A + V_B) / area * (np.asarray(s1) + np.asarray(s2))


@dataclass(frozen=True)
class CuboidSearchResult:
    s1: float
    s2: float
    h_A: float
    h_B: float
    energy: float
    step: float

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def cuboid_family_search(V_A: float, V_B: float, density: int = 512) -> CuboidSearchResult:
    """Grid search over shared-face sides (s1, s2) in (0, 2 (V_A + V_B)^(1/3)]."""
    if not (V_A > 0 and V_B > 0):
        raise ValueError(f"volumes must be positive, got ({V_A}, {V_B})")
    if density < 64:
        raise ValueError("density must be at least 64")
    top = 2.0 * (V_A + V_B) ** (1.0 / 3.0)
    step = top / density
    s = step * np.arange(1, density + 1)
    e = cuboid_pair_energy(s[:, None], s[None, :], V_A, V_B)
    i, j = np.unravel_index(int(np.argmin(e)), e.shape)
    s1, s2 = float(s[i]), float(s[j])
    return CuboidSearchResult(s1, s2, V_A / (s1 * s2), V_B / (s1 * s2), float(e[i, j]), step)


# ---------------------------------------------------------------------------
# dominance sweep


SWEEP_COLUMNS = ("a", "b", "discrete_min", "continuous_value", "equal", "witness_path")


@dataclass(frozen=True)
class SweepRow:
    a: int
    b: int
    discrete_min: int
    continuous_value: float | None
    witness: Configuration
    witness_path: str = ""

    @property
    def equal(self) -> bool | None:
        if self.continuous_value is None:
            return None
        return abs(self.discrete_min - self.continuous_value) <= 1e-9

    @property
    def dominates(self) -> bool | None:
        if self.continuous_value is None:
            return None
        return self.discrete_min >= self.continuous_value - 1e-9

    def csv_row(self) -> list:
        cont = "" if self.continuous_value is None else f"{self.continuous_value:.12g}"
        eq = "" if self.equal is None else str(self.equal).lower()
        return [self.a, self.b, self.discrete_min, cont, eq, self.witness_path]


def continuous_value(dim: int, a: int, b: int) -> float | None:
    """Planar minimum in 2D; the cuboid-pair minimum in 3D where it is the established optimum."""
    if dim == 2:
        return planar_energy(a, b)
    if 0.5 <= b / a <= 2.0:
        return emin(a, b)[1]
    return None


def discrete_dominance_sweep(
    dim: int,
    max_total: int,
    witness_dir: str | os.PathLike | None = None,
    threads: int | None = None,
    max_cells: int | None = None,
) -> list[SweepRow]:
    """Discrete minimum against the continuous value for every a, b >= 1 with a + b <= max_total.

    The pair (b, a) reuses the search for (a, b) with the labels swapped.
    """
    rows = []
    cache: dict[tuple[int, int], SearchResult] = {}
    for total in range(2, max_total + 1):
        for a in range(1, total):
            b = total - a
            key = (min(a, b), max(a, b))
            if key not in cache:
                cache[key] = search(SearchSpec(dim, *key, max_cells=max_cells), threads)
            res = cache[key]
            w = res.witnesses[0] if key == (a, b) else res.witnesses[0].swapped()
            path = ""
            if witness_dir is not None:
                p = Path(witness_dir) / f"witness_{dim}d_{a}_{b}.grid"
                p.parent.mkdir(parents=True, exist_ok=True)
                write_grid(w, p, comment=f"a={a} b={b} E={res.energy}")
                path = str(p)
            rows.append(SweepRow(a, b, res.energy, continuous_value(dim, a, b), w, path))
    return rows


def write_sweep_csv(rows: list[SweepRow], dest) -> None:
    with open(dest, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SWEEP_COLUMNS)
        for row in rows:
            w.writerow(row.csv_row())
