from __future__ import annotations

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from l1bubble.closed_forms import emin, planar_energy
from l1bubble.geometry import Configuration, GridSet, double_bubble_energy
from l1bubble.search import (
    GUARDRAIL_ENV,
    GuardrailError,
    SearchSpec,
    brute_force_2d,
    brute_force_3d,
    canonical_configuration,
    cuboid_family_search,
    cuboid_pair_energy,
    discrete_dominance_sweep,
    isometries,
    min_perimeter,
    projection_floor,
    search,
    verify_witness,
    write_sweep_csv,
)
from oracles import naive_min_energy


def test_isometry_counts():
    assert len(isometries(2)) == 8
    assert len(isometries(3)) == 48
    assert np.array_equal(isometries(3)[0], np.eye(3))


@pytest.mark.parametrize("n", range(1, 30))
def test_min_perimeter_2d_closed_form(n):
    assert min_perimeter(n, 2) == 2 * math.ceil(2 * math.sqrt(n))


@pytest.mark.parametrize("n,p", [(1, 6), (2, 10), (3, 14), (4, 16), (5, 20), (6, 22), (8, 24), (12, 32)])
def test_min_perimeter_3d_is_a_floor(n, p):
    # p: smallest surface of an n-cell polycube; the floor is exact for boxes
    assert min_perimeter(n, 3) <= p
    if n in (1, 2, 4, 8, 12):
        assert min_perimeter(n, 3) == p


def test_projection_floor_respects_counts():
    assert projection_floor((1, 1), 6) == 5  # 1 x 6 strip or 2 x 3
    assert projection_floor((1, 6), 6) == 7
    assert projection_floor((3, 3, 3), 8) == 12  # 4 x 4 x 4 lines at least
    assert projection_floor((1, 1, 1), 8) == 12


def test_2d_examples():
    r = brute_force_2d((2, 4))
    assert r.energy == 12 and r.optima == 1
    w = r.witnesses[0]
    assert sorted(GridSet.bounds(w.A)[1][k] - GridSet.bounds(w.A)[0][k] for k in range(2)) == [1, 2]
    assert brute_force_2d((1, 8)).energy == 14
    assert brute_force_2d((1, 1)).energy == 7


def test_1_8_witness_is_corner_of_square():
    w = brute_force_2d((1, 8)).witnesses
    assert len(w) == 1
    union = GridSet.from_cells(list(w[0].A.cells()) + list(w[0].B.cells()))
    assert union.mask.shape == (3, 3) and union.mask.all()


def test_3d_examples():
    assert brute_force_3d((1, 1)).energy == 11
    r = brute_force_3d((2, 2))
    assert r.energy == 18
    r = brute_force_3d((4, 4))
    assert r.energy == 28
    w = r.witnesses[0]
    assert w.A.mask.all() and w.B.mask.all()  # both are boxes


@pytest.mark.parametrize("a,b", [(1, 2), (2, 2), (1, 4), (2, 3), (1, 3)])
def test_against_naive_box_enumeration(a, b):
    expect = naive_min_energy(a, b, (3, 3))
    assert search(SearchSpec(2, a, b, box=(3, 3))).energy == expect
    assert search(SearchSpec(2, a, b, box=(3, 3), connected=False)).energy == expect


def test_against_naive_3d():
    assert search(SearchSpec(3, 1, 2, box=(2, 2, 2))).energy == naive_min_energy(1, 2, (2, 2, 2))


@pytest.mark.parametrize("dim,a,b", [(2, 3, 5), (2, 4, 4), (3, 2, 4), (3, 3, 3)])
def test_connectivity_off_agrees(dim, a, b):
    on = search(SearchSpec(dim, a, b))
    off = search(SearchSpec(dim, a, b, connected=False))
    assert on.energy == off.energy


def test_symmetry_off_same_classes():
    on = search(SearchSpec(2, 3, 4))
    off = search(SearchSpec(2, 3, 4, symmetry=False))
    assert on.energy == off.energy
    assert [canonical_configuration(w) for w in on.witnesses] == [canonical_configuration(w) for w in off.witnesses]


def test_witnesses_valid_and_sorted():
    r = search(SearchSpec(2, 4, 8))
    assert verify_witness(r)
    forms = [canonical_configuration(w) for w in r.witnesses]
    assert forms == sorted(set(forms))
    for w in r.witnesses:
        assert double_bubble_energy(w).energy == r.energy


def test_worker_count_does_not_change_result():
    a = search(SearchSpec(2, 5, 6), threads=1)
    b = search(SearchSpec(2, 5, 6), threads=2)
    assert a.to_dict() == b.to_dict()


@settings(max_examples=30, deadline=None)
@given(k=st.integers(0, 47), shift=st.integers(-4, 4))
def test_canonicalisation_sound(k, shift):
    w = brute_force_3d((2, 3)).witnesses[0]
    m = isometries(3)[k]
    perm = tuple(int(np.argmax(np.abs(row))) for row in m)
    signs = tuple(int(row[p]) for row, p in zip(m, perm))
    moved = w.transform(perm, signs).translate((shift, 0, -shift))
    assert canonical_configuration(moved) == canonical_configuration(w)


def test_guardrail(monkeypatch):
    monkeypatch.delenv(GUARDRAIL_ENV, raising=False)
    with pytest.raises(GuardrailError):
        search(SearchSpec(2, 7, 8))
    with pytest.raises(GuardrailError):
        search(SearchSpec(3, 1, 8))
    with pytest.raises(GuardrailError):
        search(SearchSpec(2, 4, 5, connected=False))
    monkeypatch.setenv(GUARDRAIL_ENV, "15")
    assert search(SearchSpec(2, 7, 8)).energy >= planar_energy(7, 8)


def test_spec_validation():
    with pytest.raises(ValueError):
        SearchSpec(2, 0, 3)
    with pytest.raises(ValueError):
        SearchSpec(4, 1, 1)
    with pytest.raises(ValueError):
        SearchSpec(2, 3, 3, box=(2, 2))


def test_cuboid_family_six_six():
    res = cuboid_family_search(6, 6, 512)
    assert res.s1 == pytest.approx(2, abs=2 * res.step)
    assert res.s2 == pytest.approx(2, abs=2 * res.step)
    assert res.energy == pytest.approx(36, abs=1e-3)
    assert res.energy >= 36 - 1e-9


def test_cuboid_family_one_two():
    res = cuboid_family_search(1, 2, 1024)
    assert abs(res.energy - emin(1, 2)[1]) < 1e-3


def test_non_square_face_is_worse():
    assert cuboid_pair_energy(1, 4, 6, 6) == pytest.approx(42)
    assert cuboid_pair_energy(1, 4, 6, 6) > 36


def test_cuboid_family_never_below_emin():
    rng = np.random.default_rng(11)
    for _ in range(10):
        va = rng.uniform(0.5, 10)
        vb = va * rng.uniform(0.5, 2)
        assert cuboid_family_search(va, vb, 128).energy >= emin(va, vb)[1] - 1e-9


def test_cuboid_family_bad_input():
    with pytest.raises(ValueError):
        cuboid_family_search(0, 1)
    with pytest.raises(ValueError):
        cuboid_family_search(1, 1, 16)


def test_sweep_rows_and_csv(tmp_path):
    rows = discrete_dominance_sweep(2, 6, tmp_path / "w")
    by = {(r.a, r.b): r for r in rows}
    assert by[(2, 4)].discrete_min == 12 and by[(2, 4)].equal
    assert by[(1, 1)].discrete_min == 7 and not by[(1, 1)].equal
    assert all(r.dominates for r in rows)
    out = tmp_path / "t.csv"
    write_sweep_csv(rows, out)
    lines = out.read_text().splitlines()
    assert lines[0] == "a,b,discrete_min,continuous_value,equal,witness_path"
    assert len(lines) == 1 + len(rows)
    assert (tmp_path / "w" / "witness_2d_2_4.grid").exists()


def test_sweep_3d_blank_outside_ratio():
    rows = discrete_dominance_sweep(3, 5)
    by = {(r.a, r.b): r for r in rows}
    assert by[(1, 3)].continuous_value is None
    assert by[(1, 3)].csv_row()[3] == ""
    assert by[(2, 2)].discrete_min == 18
    assert by[(2, 3)].witness.V_A == 2 and by[(3, 2)].witness.V_A == 3
