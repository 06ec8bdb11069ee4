import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import random_sl2_list
from sl2lab import (
    ScaledProduct,
    check_sl2,
    diag_hyperbolic,
    n_value,
    operator_norm,
    polar_decompose,
    polar_matrix,
    product_chain,
    rotation,
    spectral_radius,
)

H2 = diag_hyperbolic(2.0)
A_FIB = np.array([[2.0, 1.0], [1.0, 1.0]])
# oracle for A_FIB: the eigenvalues of A^T A solve x^2 - 7x + 1 = 0, so
# ||A|| = sqrt((7 + sqrt(45))/2) = (3 + sqrt(5))/2; see test below.
A_FIB_NORM = 2.618033988749895


def test_rotation_identity():
    assert np.allclose(rotation(0.0), np.eye(2), atol=0.0)


def test_rotation_quarter_turn():
    r = rotation(math.pi / 2)
    assert np.allclose(r, [[0.0, -1.0], [1.0, 0.0]], atol=1e-15)
    assert abs(np.linalg.det(r) - 1.0) < 1e-15


def test_rotation_group_law():
    lhs = rotation(0.3) @ rotation(1.1)
    assert np.abs(lhs - rotation(1.4)).max() <= 1e-12


def test_rotation_rejects_nonfinite():
    with pytest.raises(ValueError):
        rotation(math.nan)
    with pytest.raises(ValueError):
        rotation(math.inf)


def test_diag_hyperbolic():
    assert np.array_equal(diag_hyperbolic(1.0), np.eye(2))
    assert np.array_equal(H2, [[2.0, 0.0], [0.0, 0.5]])
    assert abs(np.linalg.det(diag_hyperbolic(3.7)) - 1.0) <= 1e-15


@pytest.mark.parametrize("bad", [0.5, -1.0, math.nan, math.inf])
def test_diag_hyperbolic_rejects(bad):
    with pytest.raises(ValueError):
        diag_hyperbolic(bad)


def test_check_sl2():
    check_sl2(H2)
    with pytest.raises(ValueError):
        check_sl2([[2.0, 0.0], [0.0, 0.6]])
    with pytest.raises(ValueError):
        check_sl2([[1.0, 2.0, 3.0]])


def test_operator_norm_diagonal_and_rotation():
    assert operator_norm(H2) == pytest.approx(2.0, abs=1e-14)
    assert operator_norm(rotation(0.77)) == pytest.approx(1.0, abs=1e-12)


def test_operator_norm_frozen_value():
    # independent oracle: closed-form quadratic on A^T A ...
    m = A_FIB.T @ A_FIB
    tr, det = np.trace(m), np.linalg.det(m)
    lam_max = 0.5 * (tr + math.sqrt(tr * tr - 4.0 * det))
    assert math.sqrt(lam_max) == pytest.approx(A_FIB_NORM, abs=1e-12)
    # ... cross-checked against a sweep over 1e4 unit vectors
    th = np.linspace(0.0, 2.0 * np.pi, 10 ** 4, endpoint=False)
    sweep = np.linalg.norm(A_FIB @ np.stack([np.cos(th), np.sin(th)]), axis=0).max()
    assert sweep == pytest.approx(A_FIB_NORM, abs=1e-6)
    assert operator_norm(A_FIB) == pytest.approx(A_FIB_NORM, abs=1e-12)


def test_n_value_cases():
    assert n_value(np.eye(2)) == 0.0
    assert n_value(H2) == pytest.approx(math.log(1.25), abs=1e-15)
    # Frobenius identity oracle: ||A|| + 1/||A|| = sqrt(7 + 2) = 3
    assert n_value(A_FIB) == pytest.approx(math.log(1.5), abs=1e-14)


def test_n_value_bounds_and_rotation_invariance():
    rng = np.random.default_rng(5)
    for a in random_sl2_list(rng, 200, c_max=1000.0):
        nv, ln = n_value(a), math.log(operator_norm(a))
        assert 0.0 <= nv <= ln + 1e-12
        assert ln - math.log(2.0) < nv
        twisted = rotation(rng.uniform(0, 2 * np.pi)) @ a @ rotation(rng.uniform(0, 2 * np.pi))
        assert n_value(twisted) == pytest.approx(nv, abs=1e-12)


def test_spectral_radius_cases():
    assert spectral_radius([[1.0, 1.0], [0.0, 1.0]]) == 1.0  # parabolic
    assert spectral_radius(-H2) == pytest.approx(2.0, abs=1e-14)
    # symmetric positive definite, so rho = ||A||; oracle = numpy eigvals
    oracle = np.abs(np.linalg.eigvals(A_FIB)).max()
    assert oracle == pytest.approx(A_FIB_NORM, abs=1e-12)
    assert spectral_radius(A_FIB) == pytest.approx(A_FIB_NORM, abs=1e-12)


def test_spectral_radius_properties():
    rng = np.random.default_rng(17)
    mats = random_sl2_list(rng, 300, c_max=50.0)
    for a, b in zip(mats[::2], mats[1::2]):
        ra = spectral_radius(a)
        assert ra <= operator_norm(a) * (1.0 + 1e-12)
        assert ra + 1.0 / ra == pytest.approx(max(abs(np.trace(a)), 2.0), abs=1e-10)
        assert spectral_radius(a @ b) == pytest.approx(
            spectral_radius(b @ a), rel=1e-10, abs=1e-10
        )
        oracle = np.abs(np.linalg.eigvals(a)).max()
        assert ra == pytest.approx(oracle, rel=1e-10, abs=1e-10)


def test_power_rate_approaches_log_rho():
    # N(A^k)/k -> log rho(A) like C/k for hyperbolic A
    a = np.array([[2.0, 1.0], [1.0, 1.0]])
    target = math.log(spectral_radius(a))
    for k in (10, 20, 40, 60):
        acc = ScaledProduct()
        acc.push_many([a] * k)
        s = math.exp(acc.log_operator_norm())
        nk = math.log(0.5 * (s + 1.0 / s))
        assert abs(nk / k - target) <= 1.0 / k


@given(st.floats(-10.0, 10.0), st.floats(-10.0, 10.0))
def test_rotation_group_law_hypothesis(a, b):
    assert np.abs(rotation(a) @ rotation(b) - rotation(a + b)).max() <= 1e-12


@settings(max_examples=50)
@given(
    st.floats(0.0, 2.0 * math.pi),
    st.floats(1.0, 100.0),
    st.floats(0.0, 2.0 * math.pi),
)
def test_n_value_nonnegative_hypothesis(beta, c, alpha):
    a = polar_matrix(beta, c, alpha)
    nv = n_value(a)
    assert nv >= 0.0
    if c == 1.0:
        assert nv <= 1e-12


def test_polar_decompose_diagonal():
    assert polar_decompose(diag_hyperbolic(3.0)) == (0.0, 3.0, 0.0)


def test_polar_decompose_rotation():
    beta, c, alpha = polar_decompose(rotation(1.2))
    assert (beta, c, alpha) == (pytest.approx(1.2), 1.0, 0.0)


def test_polar_decompose_frozen_case():
    form = polar_decompose(A_FIB)
    assert form.c == pytest.approx(A_FIB_NORM, abs=1e-12)
    assert np.abs(polar_matrix(*form) - A_FIB).max() <= 1e-9


def test_polar_decompose_roundtrip_sweep():
    rng = np.random.default_rng(23)
    for a in random_sl2_list(rng, 10 ** 4, c_max=1000.0):
        form = polar_decompose(a)
        assert form.c >= 1.0
        rec = polar_matrix(*form)
        assert np.abs(rec - a).max() <= 1e-9
        # deterministic output
        assert polar_decompose(a) == form


def test_product_chain_basics():
    assert np.abs(
        product_chain([rotation(0.4), rotation(0.8)]) - rotation(1.2)
    ).max() <= 1e-12
    assert np.array_equal(product_chain([H2, H2]), diag_hyperbolic(4.0))
    with pytest.raises(ValueError):
        product_chain([])


def test_product_chain_det_drift_near_isometric():
    # exact det of the running product is 1 by construction; the chain must
    # hold that within 1e-9 over 1e4 well-conditioned random factors
    rng = np.random.default_rng(71)
    beta = rng.uniform(0, 2 * np.pi, 10 ** 4)
    alpha = rng.uniform(0, 2 * np.pi, 10 ** 4)
    c = np.exp(rng.uniform(0.0, math.log(1.002), 10 ** 4))
    factors = polar_matrix(beta, c, alpha)
    assert operator_norm(factors).max() <= 4.0
    p = product_chain(factors)
    assert abs(np.linalg.det(p) - 1.0) <= 1e-9


def test_product_chain_long_rotation_chain():
    rng = np.random.default_rng(72)
    factors = rotation(rng.uniform(0, 2 * np.pi, 2 * 10 ** 5))
    p = product_chain(factors)
    assert abs(np.linalg.det(p) - 1.0) <= 1e-9
    assert operator_norm(p) == pytest.approx(1.0, abs=1e-9)


def test_scaled_product_matches_plain_chain():
    rng = np.random.default_rng(9)
    factors = np.stack(random_sl2_list(rng, 40, c_max=3.0))
    acc = ScaledProduct()
    acc.push_many(factors)
    plain = product_chain(factors)
    assert acc.log_operator_norm() == pytest.approx(
        math.log(operator_norm(plain)), abs=1e-10
    )
    assert acc.log_spectral_radius() == pytest.approx(
        math.log(spectral_radius(plain)), abs=1e-10
    )
    assert np.abs(acc.to_matrix() - plain).max() <= 1e-9 * operator_norm(plain)


def test_scaled_product_overflow_regime():
    acc = ScaledProduct()
    acc.push_many([H2] * 4000)  # plain entries would be 2^4000
    assert acc.log_operator_norm() == pytest.approx(4000 * math.log(2.0), rel=1e-12)
    assert acc.log_spectral_radius() == pytest.approx(4000 * math.log(2.0), rel=1e-12)
    assert acc.renorm_count == 4000 // 64


def test_scaled_product_batch():
    thetas = np.array([0.1, 0.7, 2.9])
    acc = ScaledProduct(batch_shape=thetas.shape)
    for _ in range(130):
        acc.push(H2 @ rotation(thetas))
    single = []
    for t in thetas:
        one = ScaledProduct()
        one.push_many([H2 @ rotation(t)] * 130)
        single.append(one.log_operator_norm())
    assert np.allclose(acc.log_operator_norm(), single, atol=1e-10)


def test_scaled_product_elliptic_trace():
    acc = ScaledProduct()
    acc.push(rotation(2.0))
    assert acc.log_spectral_radius() == 0.0
    assert acc.log_operator_norm() == pytest.approx(0.0, abs=1e-12)
