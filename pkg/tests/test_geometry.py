from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from l1bubble.geometry import (
    Configuration,
    GeometryError,
    GridSet,
    column_crossings,
    double_bubble_energy,
    facet_counts,
    faces,
    l1_perimeter,
    levels,
    projection_area,
    projection_overlap,
    slice_set,
)
from oracles import naive_energy, naive_projection


def pair(a, b):
    return Configuration.from_cells(a, b)


def test_unit_square_and_cube():
    assert l1_perimeter(GridSet.from_cells([(0, 0)])) == 4
    assert l1_perimeter(GridSet.from_cells([(0, 0, 0)])) == 6


def test_two_unit_cubes():
    e = double_bubble_energy(pair([(0, 0, 0)], [(1, 0, 0)]))
    assert (e.perimeter_a, e.perimeter_b, e.interface, e.energy) == (6, 6, 1, 11)


def test_two_bars():
    cfg = pair([(0, 0, 0), (0, 0, 1)], [(1, 0, 0), (1, 0, 1)])
    assert double_bubble_energy(cfg).energy == 18


def test_energy_half_sum_form():
    cfg = pair([(0, 0), (1, 0)], [(0, 1), (1, 1), (2, 1), (2, 0)])
    e = double_bubble_energy(cfg)
    union = l1_perimeter(GridSet.from_cells(list(cfg.A.cells()) + list(cfg.B.cells())))
    assert 2 * e.energy == e.perimeter_a + e.perimeter_b + union


def test_overlap_rejected():
    with pytest.raises(GeometryError):
        pair([(0, 0)], [(0, 0), (1, 0)])


def test_empty_set_rejected():
    with pytest.raises(GeometryError):
        Configuration(GridSet.from_cells([(0, 0)]), GridSet.empty(2))


def test_bad_axis():
    with pytest.raises(GeometryError):
        projection_area(GridSet.from_cells([(0, 0)]), 3)


def test_gridset_mask_is_tight():
    mask = np.zeros((4, 4), dtype=bool)
    mask[1:3, 2] = True
    s = GridSet((10, 0), mask)
    assert s.origin == (11, 2)
    assert s.mask.shape == (2, 1)
    assert s == GridSet.from_cells([(11, 2), (12, 2)])


def test_projection_and_overlap():
    A = GridSet.from_cells([(0, 0, 0), (0, 0, 1), (1, 0, 0)])
    B = GridSet.from_cells([(0, 1, 0), (1, 1, 1)])
    assert projection_area(A, 3) == 2
    assert projection_area(A, 1) == 2
    assert projection_overlap(A, B, 2) == 1  # only the line (x, z) = (0, 0)
    assert projection_overlap(A, B, 3) == 0


def test_slices_and_levels():
    A = GridSet.from_cells([(0, 0, 0), (0, 0, 1), (1, 0, 1)])
    assert list(levels(A, 3)) == [0, 1]
    assert slice_set(A, 3, 1) == GridSet.from_cells([(0, 0), (1, 0)])
    assert slice_set(A, 3, 5).is_empty()


def test_column_crossings_sum_to_axis_facets():
    cfg = pair([(0, 0, 0), (0, 0, 1)], [(0, 0, 2), (1, 0, 0)])
    fc = facet_counts(cfg.A, cfg.B)
    for ax in (1, 2, 3):
        assert sum(column_crossings(cfg.A, cfg.B, ax).values()) == fc.normal_to(ax)


def test_faces_agree_with_counts():
    cfg = pair([(0, 0), (1, 0)], [(0, 1)])
    fs = faces(cfg.A, cfg.B)
    fc = facet_counts(cfg.A, cfg.B)
    assert fs.count("interface") == fc.interface
    assert fs.count("A") == fc.a_only
    assert fs.count(axis=1) + fs.count(axis=2) == fc.energy


cells2 = st.sets(st.tuples(st.integers(0, 4), st.integers(0, 4)), min_size=2, max_size=12)
cells3 = st.sets(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)), min_size=2, max_size=12)


def _split(cells, k):
    cells = sorted(cells)
    k = 1 + k % (len(cells) - 1)
    return cells[:k], cells[k:]


@settings(max_examples=150, deadline=None)
@given(cells=st.one_of(cells2, cells3), k=st.integers(0, 100))
def test_energy_matches_naive_count(cells, k):
    a, b = _split(cells, k)
    e = double_bubble_energy(pair(a, b))
    assert tuple(e) == naive_energy(a, b)


@settings(max_examples=100, deadline=None)
@given(cells=cells3, k=st.integers(0, 100))
def test_projection_matches_naive(cells, k):
    a, _ = _split(cells, k)
    S = GridSet.from_cells(a)
    for ax in (1, 2, 3):
        assert projection_area(S, ax) == naive_projection(a, ax)


@settings(max_examples=60, deadline=None)
@given(cells=st.one_of(cells2, cells3), k=st.integers(0, 100), shift=st.integers(-5, 5))
def test_energy_invariant_under_isometries(cells, k, shift):
    a, b = _split(cells, k)
    cfg = pair(a, b)
    dim = cfg.dimension
    e = double_bubble_energy(cfg).energy
    for perm in itertools.permutations(range(dim)):
        for signs in itertools.product((1, -1), repeat=dim):
            moved = cfg.transform(perm, signs).translate((shift,) * dim)
            assert double_bubble_energy(moved).energy == e
