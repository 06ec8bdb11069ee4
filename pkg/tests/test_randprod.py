import math

import numpy as np
import pytest
from scipy import integrate, stats

from sl2lab import (
    ConstantStretch,
    LawSpec,
    LogUniformStretch,
    dedieu_shub_check,
    n_value,
    rotation,
    sample_matrix,
    spectral_radius,
)

LOG54 = math.log(1.25)


def test_law_validation():
    with pytest.raises(ValueError):
        ConstantStretch(0.5)
    with pytest.raises(ValueError):
        LogUniformStretch(2.0, 1.0)
    with pytest.raises(ValueError):
        LogUniformStretch(0.2, 3.0)


def test_sample_matrix_is_counter_deterministic():
    law = LawSpec(LogUniformStretch(1.0, 4.0), seed=42)
    a = sample_matrix(law, 17)
    b = sample_matrix(law, 17)
    assert np.array_equal(a, b)
    batch = sample_matrix(law, np.arange(20))
    assert np.array_equal(batch[17], a)
    assert not np.array_equal(sample_matrix(law, 18), a)
    assert not np.array_equal(sample_matrix(LawSpec(law.c_distribution, seed=43), 17), a)


def test_sample_matrix_unit_determinant():
    law = LawSpec(LogUniformStretch(1.0, 4.0), seed=7)
    mats = sample_matrix(law, np.arange(2000))
    dets = mats[:, 0, 0] * mats[:, 1, 1] - mats[:, 0, 1] * mats[:, 1, 0]
    assert np.abs(dets - 1.0).max() <= 1e-12


def test_constant_law_has_constant_n_value():
    law = LawSpec(ConstantStretch(2.0), seed=1)
    mats = sample_matrix(law, np.arange(500))
    assert np.abs(n_value(mats) - LOG54).max() <= 1e-12
    rotations = sample_matrix(LawSpec(ConstantStretch(1.0), seed=1), np.arange(100))
    assert np.abs(n_value(rotations)).max() <= 1e-12


def test_mean_log_rho_matches_n_for_constant_law():
    # the single-factor average identity in Monte Carlo form
    law = LawSpec(ConstantStretch(2.0), seed=5)
    vals = np.log(spectral_radius(sample_matrix(law, np.arange(10 ** 5))))
    se = np.std(vals, ddof=1) / math.sqrt(len(vals))
    assert abs(float(np.mean(vals)) - LOG54) <= 3.0 * se


def test_rotation_invariance_ks():
    law = LawSpec(LogUniformStretch(1.0, 4.0), seed=11)
    mats = sample_matrix(law, np.arange(10 ** 4))
    twisted = rotation(0.9) @ mats
    for stat in (
        lambda m: np.abs(m[:, 0, 0] + m[:, 1, 1]),
        lambda m: np.sqrt(np.sum(m * m, axis=(1, 2))),
    ):
        ks = stats.ks_2samp(stat(mats), stat(twisted), method="asymp")
        assert ks.pvalue >= 0.01


def test_dedieu_shub_rejects_small_runs():
    law = LawSpec(ConstantStretch(2.0), seed=0)
    with pytest.raises(ValueError):
        dedieu_shub_check(law, samples=100, n_steps=1000)
    with pytest.raises(ValueError):
        dedieu_shub_check(law, samples=2000, n_steps=10)


def test_dedieu_shub_rotations_give_zero():
    rep = dedieu_shub_check(LawSpec(ConstantStretch(1.0), seed=3), 2000, 1000)
    assert abs(rep.lambda_est) <= 1e-9
    assert rep.int_log_rho_est == 0.0
    assert abs(rep.int_N_est) <= 1e-12
    assert abs(rep.furstenberg_est) <= 1e-12


def test_dedieu_shub_constant_two_quick():
    rep = dedieu_shub_check(LawSpec(ConstantStretch(2.0), seed=7), 20000, 2000)
    for est in (rep.lambda_est, rep.int_log_rho_est, rep.int_N_est, rep.furstenberg_est):
        assert est == pytest.approx(LOG54, abs=0.02)
    assert rep.consistent
    assert set(rep.std_errors) == {"lambda", "log_rho", "n_value", "furstenberg"}


def test_dedieu_shub_log_uniform_against_quadrature_oracle():
    law = LawSpec(LogUniformStretch(1.0, 4.0), seed=13)
    rep = dedieu_shub_check(law, 50000, 5000)
    # independent oracle: E[N(H_c)] under the log-uniform stretch law
    oracle, err = integrate.quad(
        lambda c: math.log(0.5 * (c + 1.0 / c)) / (c * math.log(4.0)), 1.0, 4.0
    )
    assert err < 1e-9
    assert abs(rep.int_N_est - oracle) <= 3.0 * rep.std_errors["n_value"]
    assert rep.max_mutual_sigma() <= 3.0


def test_dedieu_shub_reproducible():
    law = LawSpec(LogUniformStretch(1.0, 3.0), seed=19)
    a = dedieu_shub_check(law, 3000, 1000)
    b = dedieu_shub_check(law, 3000, 1000)
    assert a == b
