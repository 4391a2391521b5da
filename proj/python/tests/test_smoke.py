import math

import numpy as np
import pytest

import geostable as gs


def test_mittag_leffler_identities():
    assert gs.mittag_leffler(1.0, -2.0) == pytest.approx(math.exp(-2.0), rel=1e-13)
    assert gs.mittag_leffler(0.5, -1.0) == pytest.approx(math.e * math.erfc(1.0), rel=1e-12)


def test_psi_and_domain_errors():
    assert gs.psi(2.0, 0.0, 3.0) == pytest.approx(9.0)
    with pytest.raises(ValueError):
        gs.psi(1.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        gs.ParamCurves(gs.Curve.constant(0.5), gs.Curve.constant(0.9), gs.Curve.constant(1.0))


def test_stable_sampler_cf():
    x = gs.stable_sample(1.5, 0.3, 1.0, 200_000, seed=3)
    assert isinstance(x, np.ndarray) and x.shape == (200_000,)
    xis = [0.5, 1.0, 2.0]
    emp = gs.empirical_cf(x, xis)
    for xi, e in zip(xis, emp):
        assert abs(e - np.exp(-gs.psi(1.5, 0.3, xi))) < 1e-2


def test_samplers_are_reproducible():
    a = gs.gs_homog_sample(0.8, 0.0, 1.0, 1.0, 1000, seed=9)
    b = gs.gs_homog_sample(0.8, 0.0, 1.0, 1.0, 1000, seed=9, threads=2)
    np.testing.assert_array_equal(a, b)


def test_gs2_terminal_matches_exponent():
    pc = gs.ParamCurves(gs.Curve.constant(0.7), gs.Curve.constant(0.0),
                        gs.Curve.piecewise_linear([(0.0, 1.0), (1.0, 2.0)]))
    x = gs.gs2_terminal(pc, 1.0, 100, 200_000, seed=5)
    for xi in (0.5, 1.0):
        target = np.exp(gs.accumulated_exponent("gs2", pc, 0.0, 1.0, xi))
        assert abs(gs.empirical_cf(x, [xi])[0] - target) < 1e-2


def test_vg_variance():
    b = gs.Curve.piecewise_linear([(0.0, 0.5), (1.0, 0.75)])
    x = gs.vg_inhom_terminal(b, 1.0, 100, 200_000, mode="gamma_difference", seed=2)
    assert x.var() == pytest.approx(1.25, rel=0.03)


def test_levy_densities():
    pc = gs.ParamCurves(gs.Curve.constant(0.5), gs.Curve.constant(-0.5), gs.Curve.constant(1.0))
    x = 2.0
    y = math.sqrt(x)
    assert gs.levy_gs1_sub(pc, x) == pytest.approx(0.5 / x * math.exp(y * y) * math.erfc(y), rel=1e-10)
    value, method = gs.levy_gs2_series(1.5, 0.3, gs.Curve.constant(1.0), 0.8)
    assert method.startswith("series")
    assert value == pytest.approx(gs.levy_gs2_oracle(1.5, 0.3, gs.Curve.constant(1.0), 0.8), rel=1e-7)
    assert gs.laplace_exponent_check(0.5, 1.0, 2.0) == pytest.approx(-math.log1p(math.sqrt(2.0)), rel=1e-8)


def test_propagated_density_is_a_density():
    pc = gs.ParamCurves(gs.Curve.constant(1.5), gs.Curve.constant(0.0), gs.Curve.constant(1.0))
    x, p = gs.propagate_density("gs2", pc, 0.0, 1.0, n=8192, extent=80.0)
    dx = x[1] - x[0]
    assert p.sum() * dx == pytest.approx(1.0, abs=1e-9)
    assert p.min() > -1e-6


def test_tail_slope_of_pareto():
    rng = np.random.default_rng(0)
    x = rng.pareto(0.7, 1_000_000) + 1.0
    slope, err = gs.tail_slope(x)
    assert slope == pytest.approx(-0.7, abs=0.04)


def test_fast_acceptance_criteria():
    for cid in (1, 2, 11):
        r = gs.run_criterion(cid)
        assert r["pass"], r
        assert r["checks"]
