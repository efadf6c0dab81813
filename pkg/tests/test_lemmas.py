from __future__ import annotations

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from l1bubble.closed_forms import R_STAR, f
from l1bubble.lemmas import (
    C2_CONSTANT,
    GridSpec,
    LemmaContext,
    PoleError,
    c2_minus_c1_bound,
    count_sign_changes,
    g_A,
    g_B,
    h1,
    h2,
    h3,
    h3_2star,
    h3_star,
    h4,
    h4_endpoint_limit,
    inner_argmin,
    inner_objective,
    run_all,
    summary_table,
)

SQRT6 = math.sqrt(6)


def K(p):
    return SQRT6 / math.sqrt(1 + p / 2)


@pytest.fixture(scope="module")
def fast_reports():
    return {r.check_id: r for r in run_all("fast")}


def test_g_values_at_zero_by_hand():
    ctx = LemmaContext(r=1.0, p=0.0, ratio_A=0.9, ratio_B=0.2)
    # f(0) = 4, min(1, sqrt(rho)) = sqrt(rho)
    assert g_A(ctx, 0.0) == pytest.approx(4 / math.sqrt(0.9) - 2 * SQRT6, abs=1e-14)
    assert g_B(ctx, 0.0) == pytest.approx(4 / math.sqrt(0.2) - 2 * SQRT6, abs=1e-14)
    assert g_A(ctx, 0.0, m=4.0) == pytest.approx(g_A(ctx, 0.0) / 2, abs=1e-14)


def test_h_values_by_hand():
    ctx = LemmaContext(r=1.0, p=0.1, ratio_A=0.8, ratio_B=0.3)
    x = 0.3
    w = (1 + x) / (1 - x)
    assert h1(ctx, x) == pytest.approx(w * (K(0.1) - f(x) / 2), rel=1e-14)
    assert h3(ctx, x) == pytest.approx(w * (K(0.1) - f(x) / (2 * math.sqrt(0.8 * 1.3))), rel=1e-14)
    wb = (1 + x) / (1 - x)
    assert h2(ctx, x) == pytest.approx(wb * (K(0.1) - f(x) / 2), rel=1e-14)
    assert h4(ctx, x) == pytest.approx(wb * (K(0.1) - f(x) / (2 * math.sqrt(0.3 * 1.3))), rel=1e-14)


def test_pole_errors():
    ctx = LemmaContext(r=0.5, p=0.0)
    with pytest.raises(PoleError):
        g_A(ctx, 0.5)
    with pytest.raises(PoleError):
        g_B(ctx, 2.0)
    with pytest.raises(PoleError):
        h1(ctx, -0.1)


@settings(max_examples=200, deadline=None)
@given(
    r=st.floats(0.5, 2.0),
    p=st.floats(0.0, 1 / 3),
    u=st.floats(0.0, 1.0),
    t=st.floats(0.0, 0.999),
)
def test_gA_identity_with_h1_h3(r, p, u, t):
    ra = (2 + p) / 3 + u * (1 - (2 + p) / 3)
    ctx = LemmaContext(r, p, ratio_A=ra)
    a = t * r
    lhs = -g_A(ctx, a)
    rhs = 2 * min(h1(ctx, a), h3(ctx, a))
    scale = max(1.0, abs(lhs), (1 + a) / (r - a) * (K(p) + f(a)))
    assert abs(lhs - rhs) <= 1e-12 * scale


@settings(max_examples=200, deadline=None)
@given(p=st.floats(0.0, 1 / 3), x=st.floats(0.0, 1.999))
def test_h2_half_is_twice_h1_two(p, x):
    ctx = LemmaContext(0.5, p)
    lhs = h2(ctx, x, r=0.5)
    rhs = 2 * h1(ctx, x, r=2.0)
    assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)


def test_f_r_star_constant():
    assert f(R_STAR) == pytest.approx(20 / 41 * (7 + 2 * math.sqrt(2)), abs=1e-12)


def test_c2_constant_against_direct_minimisation():
    # independent: brute-force minimise the inner objective on a fine grid
    for p in np.linspace(0, 1 / 3, 7):
        u = np.linspace(1e-4, 1 + p - 1e-4, 400_001)
        direct = inner_objective(u, p).min()
        assert direct == pytest.approx(C2_CONSTANT / math.sqrt(1 + p), rel=1e-9)
        assert inner_objective(inner_argmin(p), p) == pytest.approx(direct, rel=1e-9)
    assert c2_minus_c1_bound(0.0) > 0 and c2_minus_c1_bound(1 / 3) > 0


def test_h3_star_vanishes_at_one():
    # x = 1 means ratio_A = 1 and x - 1 = 0: both differences are h3(0) - h3(0)
    for r in (0.5, 1.0):
        assert h3_star(r, 0.1, 1.0) == pytest.approx(0, abs=1e-12)


def test_h3_2star_pole_limit_at_half():
    x = 1.5 - 1e-9
    assert abs(h3_2star(0.5, 0.0, x)) < 1e-3


def test_count_sign_changes():
    d = np.array([[-1.0, -0.5, 0.2, 1.0], [1.0, -1.0, 1.0, -1.0]])
    n, first = count_sign_changes(d)
    assert list(n) == [1, 3]


def test_h4_endpoint_classification():
    kind, v = h4_endpoint_limit(0.0, 0.4)
    assert kind == "branch_end" and v == pytest.approx(h4(LemmaContext(0.5, 0.0, ratio_B=0.4), 1.5), rel=1e-12)
    assert h4_endpoint_limit(0.2, 0.2)[0] == "-inf"
    assert h4_endpoint_limit(0.0, 1 / 3)[0] == "finite"


def test_g_B_minimum_not_at_zero_witness():
    # on part of the box the minimum of g_B sits at the far end of the branch
    ctx = LemmaContext(0.5, 0.00529, ratio_B=0.33686)
    assert g_B(ctx, 1.9686) < g_B(ctx, 0.0) - 0.5


def test_linked_combination_positive_at_witness():
    ctx = LemmaContext.linked(0.5, 0.00529, 1 + 0.00529 - 0.33686)
    bs = np.linspace(0, 2 - 1e-6, 20001)
    al = np.linspace(0, 0.5 - 1e-6, 20001)
    assert np.min(g_B(ctx, bs)) + np.min(g_A(ctx, al)) > 0


def test_fast_suite_verdicts(fast_reports):
    failed = {k for k, r in fast_reports.items() if not r.passed}
    assert failed == {"g_B_min_at_zero", "h4_zero_ge_far_end"}
    for key in ("g_A_min_at_zero", "c2_gt_c1", "c2_gt_c1_direct", "f_at_rstar", "h1_decreasing_r=2"):
        assert fast_reports[key].verdict == "pass"


def test_report_serialisation(fast_reports):
    rep = fast_reports["c2_gt_c1"]
    d = json.loads(rep.to_json())
    assert d["check_id"] == "c2_gt_c1"
    assert set(d) >= {"grid", "witness", "margin", "sample_count", "verdict"}
    assert "c2_gt_c1" in summary_table(list(fast_reports.values()))


def test_fast_suite_is_deterministic(fast_reports):
    again = {r.check_id: r for r in run_all(GridSpec.named("fast"))}
    assert {k: r.to_json() for k, r in again.items()} == {k: r.to_json() for k, r in fast_reports.items()}


def test_unknown_grid():
    with pytest.raises(ValueError):
        GridSpec.named("coarse")
