import math

import numpy as np
import pytest

from helpers import random_sl2_list
from sl2lab import (
    IntegrandError,
    QuadratureSpec,
    diag_hyperbolic,
    grid_values,
    n_value,
    periodic_average,
    rotation,
    spectral_radius,
    write_grid_csv,
)
from sl2lab.formulas import rotated_chain

# F(2) = 2*pi*log(3/2), confirmed against scipy.integrate.quad
F2 = 2.5476124098392004


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(initial_grid=10),
        dict(initial_grid=48),
        dict(max_grid=2 ** 25),
        dict(max_grid=100),
        dict(initial_grid=1024, max_grid=512),
        dict(tol=0.0),
        dict(tol=1e-15),
    ],
)
def test_spec_validation(kwargs):
    with pytest.raises(ValueError):
        QuadratureSpec(**kwargs)


def test_cosine_averages_to_zero():
    est = periodic_average(np.cos, QuadratureSpec(16, 2 ** 10, 1e-13))
    assert abs(est.value) <= 1e-14
    assert est.converged


def test_expansion_integrand_matches_n_value():
    h2 = diag_hyperbolic(2.0)

    def f(th):
        x, y = 2.0 * np.cos(th), 0.5 * np.sin(th)
        return 0.5 * np.log(x * x + y * y)

    est = periodic_average(f, QuadratureSpec(64, 2 ** 12, 1e-12))
    assert est.converged
    assert est.value == pytest.approx(math.log(1.25), abs=1e-12)
    assert est.value == pytest.approx(n_value(h2), abs=1e-12)


def test_half_period_f_integral():
    def f(th):
        return np.log(4.0 * np.cos(th) ** 2 + np.sin(th) ** 2)

    est = periodic_average(f, QuadratureSpec(64, 2 ** 14, 1e-12))
    assert math.pi * est.value == pytest.approx(F2, abs=1e-9)
    assert math.pi * est.value == pytest.approx(2.0 * math.pi * math.log(1.5), abs=1e-9)


def test_trig_polynomials_exact():
    m = 32

    def f(th):
        return 1.3 + np.cos(5 * th) - 2.0 * np.sin(11 * th) + 0.25 * np.cos(30 * th)

    vals = grid_values(f, m)
    assert abs(float(np.mean(vals)) - 1.3) <= 1e-13


def test_monotone_refinement_smoke():
    rng = np.random.default_rng(3)
    mats = random_sl2_list(rng, 2, c_max=6.0)
    for integrand in (
        lambda th: n_value(rotated_chain(mats, th)),
        lambda th: np.log(spectral_radius(rotated_chain(mats, th))),
    ):
        estimates = []
        for m in (64, 128, 256, 512, 1024, 2048):
            estimates.append(float(np.mean(grid_values(integrand, m))))
        diffs = [abs(b - a) for a, b in zip(estimates, estimates[1:])]
        for d_prev, d_next in zip(diffs, diffs[1:]):
            assert d_next <= 2.0 * d_prev + 1e-14


def test_grid_values_examples():
    assert np.array_equal(grid_values(lambda th: 1.0, 8), np.ones(8))
    vals = grid_values(np.sin, 4)
    assert np.abs(vals - [0.0, 1.0, 0.0, -1.0]).max() <= 1e-15
    with pytest.raises(ValueError):
        grid_values(np.sin, 0)


def test_grid_values_consistent_with_average():
    def f(th):
        return np.exp(np.sin(th))

    spec = QuadratureSpec(64, 64, 1e-9)
    est = periodic_average(f, spec)
    assert est.value == pytest.approx(float(np.mean(grid_values(f, 64))), abs=0.0)
    assert not est.converged  # no refinement possible at initial == max
    assert est.est_error == math.inf


def test_scalar_function_fallback():
    est = periodic_average(math.cos, QuadratureSpec(16, 64, 1e-13))
    assert abs(est.value) <= 1e-14


def test_integrand_error_carries_theta():
    def f(th):
        with np.errstate(divide="ignore"):
            return np.log(np.abs(th))  # -inf at theta = 0

    with pytest.raises(IntegrandError) as err:
        periodic_average(f, QuadratureSpec(16, 32, 1e-9))
    assert err.value.theta == 0.0


def test_nonconvergence_reported():
    # a kinked integrand cannot reach 1e-13 on a 64-point budget
    def f(th):
        return np.abs(np.sin(th))

    est = periodic_average(f, QuadratureSpec(16, 64, 1e-13))
    assert not est.converged
    assert est.grid_used == 64
    assert est.est_error > 1e-13


def test_write_grid_csv(tmp_path):
    path = tmp_path / "grid.csv"
    write_grid_csv(path, np.sin, 8)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "theta,value"
    assert len(lines) == 9
    theta, value = lines[2].split(",")
    assert float(theta) == pytest.approx(2.0 * math.pi / 8)
    assert float(value) == pytest.approx(math.sin(2.0 * math.pi / 8))
