"""Small independent reference implementations used across the tests."""
from __future__ import annotations

import itertools


def unit_steps(dim):
    for k in range(dim):
        for s in (1, -1):
            yield tuple(s if j == k else 0 for j in range(dim))


def naive_energy(a_cells, b_cells):
    """Count facets cell by cell: per(A) + per(B) - interface."""
    a, b = set(map(tuple, a_cells)), set(map(tuple, b_cells))
    dim = len(next(iter(a | b)))
    per_a = per_b = inter = 0
    for c in a:
        for d in unit_steps(dim):
            q = tuple(x + y for x, y in zip(c, d))
            if q not in a:
                per_a += 1
            if q in b:
                inter += 1
    for c in b:
        for d in unit_steps(dim):
            q = tuple(x + y for x, y in zip(c, d))
            if q not in b:
                per_b += 1
    return per_a, per_b, inter, per_a + per_b - inter


def naive_projection(cells, axis):
    """Number of distinct lines along ``axis`` (1-based) meeting the cells."""
    return len({tuple(v for k, v in enumerate(c) if k != axis - 1) for c in cells})


def naive_min_energy(a, b, shape):
    """Minimum energy over all placements of a + b cells in a box (no connectivity needed)."""
    cells = list(itertools.product(*[range(s) for s in shape]))
    best = None
    for union in itertools.combinations(cells, a + b):
        for A in itertools.combinations(union, a):
            B = [c for c in union if c not in A]
            e = naive_energy(A, B)[3]
            if best is None or e < best:
                best = e
    return best
