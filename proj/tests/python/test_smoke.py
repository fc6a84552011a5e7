"""Smoke tests of the python bindings against pinned values."""

import math

import pytest

import qplocal


GOLDEN = 0.6180339887498949
SQRT2M1 = 0.41421356237309515


def make_model(coupling, energy, x=0.0, y=0.25):
    v = qplocal.AnalyticTorusFunction.builtin("cos")
    w = qplocal.weight_zero_analysis(qplocal.AnalyticTorusFunction.builtin("sin2"))
    return qplocal.ModelParameters(coupling, energy, v, w, GOLDEN, SQRT2M1, x, y)


def test_torus_function_evaluation():
    cos = qplocal.AnalyticTorusFunction.builtin("cos")
    assert cos.evaluate(0.0) == pytest.approx(1.0, abs=1e-14)
    sin2 = qplocal.AnalyticTorusFunction.builtin("sin2")
    assert sin2.evaluate(0.125) == pytest.approx(0.5, abs=1e-12)

    table = qplocal.AnalyticTorusFunction({0: 0.25 + 0j, 1: 0.1 + 0.05j}, "accept")
    assert table.band == 1


def test_orbit_and_diophantine():
    omega = qplocal.calibration_frequencies()
    p = qplocal.Phase(0.0, 0.0)
    q = qplocal.orbit(p, omega, 4)
    assert q.x == pytest.approx((4 * GOLDEN) % 1.0, abs=1e-12)

    l1, l2, margin, certified = qplocal.diophantine_margin(omega, 50)
    assert margin > 0
    assert certified


def test_weight_analysis_and_sublevel():
    w = qplocal.weight_zero_analysis(qplocal.AnalyticTorusFunction.builtin("sin2"))
    assert w.max_order == 2
    assert len(w.zeros) == 2
    assert w.lower_constant == pytest.approx(16.0, rel=0.05)

    v = qplocal.AnalyticTorusFunction.builtin("cos")
    value, std_error, samples = qplocal.sublevel_measure(
        v, qplocal.AnalyticTorusFunction.builtin("sin2"), 0.0, 1e-2, 2048
    )
    assert value == pytest.approx((2 / math.pi) * math.asin(1e-2), rel=5e-3)


def test_greens_scalar_inverse():
    p = make_model(5.0, 1.0)
    g = qplocal.greens(p, qplocal.LatticeInterval(0, 0))
    assert g.entry(0, 0) == pytest.approx(0.25, abs=1e-12)

    verdict = qplocal.verify_ldt_bounds(g, 0.9, 0.5, 0.0)
    assert verdict.good()


def test_eigensolve_free_laplacian():
    v = qplocal.AnalyticTorusFunction.builtin("cos")
    w = qplocal.weight_zero_analysis(
        qplocal.AnalyticTorusFunction({0: 1.0 + 0j, 1: 0.05 + 0j}, "accept")
    )
    # Near-constant positive weight; coupling zero leaves pure hopping scaled
    # by the weights, still a well-conditioned Jacobi matrix.
    p = qplocal.ModelParameters(0.0, 0.0, v, w, GOLDEN, SQRT2M1, 0.1, 0.2)
    report = qplocal.eigensolve_jacobi(p, qplocal.LatticeInterval.radius(10), 1e-6)
    assert len(report.eigenvalues) == 21
    assert report.max_residual < 1e-8
    assert report.orthonormality_error < 1e-8


def test_localization_pipeline():
    p = make_model(1e4, 0.0, 0.37, 0.71)
    report = qplocal.eigensolve_jacobi(p, qplocal.LatticeInterval.radius(60), 1e-8)
    assert min(report.ipr) > 0.2

    est = qplocal.lyapunov(p, report.eigenvalues[60], 50000)
    assert est.gamma > 1 / 18

    d = qplocal.distance_to_spectrum(
        report.eigenvalues[60], p, qplocal.LatticeInterval.radius(60), 1e-8
    )
    assert d.eigenvalue_route == pytest.approx(0.0, abs=1e-6)


def test_badset_and_orbit_hits():
    p = make_model(1e4, 5e3)
    report = qplocal.bad_set_estimate(p, 10, resolution=64)
    assert report.samples == 64 * 64
    assert report.bad_fraction <= 0.01

    omega = qplocal.calibration_frequencies()
    hits = qplocal.orbit_hit_count(
        qplocal.Phase(0.1, 0.2), omega, 400, lambda x, y: y < 0.05, 0.32
    )
    assert 0 < hits.hits < 400
