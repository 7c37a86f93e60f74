import math

import pytest

import lpflow


def test_moments_match_exact_rationals():
    ms = lpflow.moment_set(lpflow.BallParams(1.0, 4))
    assert ms.v == pytest.approx(1.0 / 15.0, rel=1e-12)
    assert ms.m4 == pytest.approx(1.0 / 70.0, rel=1e-12)
    assert ms.delta == pytest.approx(1.0 / 1050.0, rel=1e-10)


def test_threshold_table():
    assert [lpflow.threshold_n(p) for p in (1.0, 1.2, 4.0 / 3.0, 1.5, 1.75)] == [4, 5, 7, 10, 21]


def test_sampling_and_profile_are_reproducible():
    params = lpflow.BallParams(1.5, 3)
    x = lpflow.sample_uniform_ball(params, lpflow.RngStream(3, 0))
    y = lpflow.sample_uniform_ball(params, lpflow.RngStream(3, 0))
    assert x == y
    assert sum(abs(c) ** 1.5 for c in x) <= 1.0 + 1e-12

    a = lpflow.profile_a_tilde(params, 0.5, lpflow.Direction.e1(3), 50000, lpflow.RngStream(1, 0))
    q = lpflow.coordinate_profile_phi(params, 0.5)
    assert a.value == pytest.approx(q.value, abs=6 * a.err)


def test_chain_and_classification():
    rep = lpflow.chain_check(lpflow.BallParams(1.0, 4), 0.0, 0, lpflow.RngStream(0, 0))
    assert rep.strictly_decreasing
    assert rep.values[0] == pytest.approx(lpflow.cross_polytope_a0(4, 1), abs=1e-8)

    fc = lpflow.classify(lpflow.BallParams(1.0, 3))
    assert fc.verdict == lpflow.FlowVerdict.Nonmonotone
    assert fc.dphi_neg < 0.0 < fc.dphi_pos


def test_majorization_and_convex_order():
    assert lpflow.majorizes([0.7, 0.2, 0.1], [0.5, 0.3, 0.2])
    assert not lpflow.majorizes([0.5, 0.3, 0.2], [0.7, 0.2, 0.1])

    params = lpflow.BallParams(1.25, 3)
    v = lpflow.moment_set(params).v
    rep = lpflow.convex_order_test(
        params,
        lpflow.Direction.e1(3),
        lpflow.Direction.diagonal(3),
        [0.5 * v, v, 2.0 * v],
        200000,
        lpflow.RngStream(19, 0),
    )
    assert rep.verdict == lpflow.OrderVerdict.ConsistentWithOrder


def test_domain_errors_raise():
    with pytest.raises(ValueError):
        lpflow.BallParams(2.5, 3)
    with pytest.raises(ValueError):
        lpflow.coordinate_profile_phi(lpflow.BallParams(1.5, 3), 0.0)
