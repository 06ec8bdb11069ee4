"""Complex 2x2 machinery behind the rotation-averaging identities.

The one-parameter families S_z and T_z interpolate rotations into the
complex plane (S on the unit circle IS the rotation R_theta, and T_z =
z * S_z is entire in z). Products C_z = A_n T_z ... A_1 T_z then carry the
rotated real products to the disk, where their eigenvalue moduli separate
and log rho(C_z) becomes harmonic; everything here gives that structure a
numeric handle.
"""

from __future__ import annotations

import cmath
import math
from typing import NamedTuple, Sequence, Tuple

import numpy as np

from . import streams
from .mat2 import TWO_PI, as_mat2, operator_norm, polar_matrix


def s_matrix(z):
    """S_z = [[(z+1/z)/2, -(z-1/z)/2i], [(z-1/z)/2i, (z+1/z)/2]], z != 0.

    Multiplicative in z (S_z S_w = S_zw) and equal to rotation(theta) for
    z = exp(i theta). Accepts scalar or array z.
    """
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise ValueError("s_matrix requires nonzero z")
    u = 0.5 * (z + 1.0 / z)
    v = (z - 1.0 / z) / 2j
    return _rotation_like(u, v)


def t_matrix(z):
    """T_z = [[(z^2+1)/2, -(z^2-1)/2i], [(z^2-1)/2i, (z^2+1)/2]] = z * S_z."""
    z = np.asarray(z, dtype=complex)
    zz = z * z
    u = 0.5 * (zz + 1.0)
    v = (zz - 1.0) / 2j
    return _rotation_like(u, v)


def _rotation_like(u, v):
    out = np.empty(np.shape(u) + (2, 2), dtype=complex)
    out[..., 0, 0] = u
    out[..., 0, 1] = -v
    out[..., 1, 0] = v
    out[..., 1, 1] = u
    return out


def c_matrix(mats: Sequence, z):
    """Ordered product A_n T_z ... A_1 T_z; det = z^(2n).

    mats is a non-empty sequence of unit-determinant 2x2 matrices; z may be
    scalar or an array (yielding a stacked result).
    """
    ms = [as_mat2(m) for m in mats]
    if not ms:
        raise ValueError("c_matrix requires at least one matrix")
    t = t_matrix(z)
    p = np.broadcast_to(np.eye(2, dtype=complex), t.shape).copy()
    for a in ms:
        p = a @ (t @ p)
    return p


class EigenPair(NamedTuple):
    """Eigenvalues ordered by modulus, |lambda1| >= |lambda2|."""

    lambda1: complex
    lambda2: complex


def eigen2(c) -> EigenPair:
    """Roots of x^2 - (tr C) x + det C, modulus-descending; modulus ties are
    broken by argument in [0, 2pi)."""
    c = np.asarray(c, dtype=complex)
    if c.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {c.shape}")
    tr = complex(c[0, 0] + c[1, 1])
    det = complex(c[0, 0] * c[1, 1] - c[0, 1] * c[1, 0])
    sq = cmath.sqrt(tr * tr - 4.0 * det)
    roots = sorted(
        (0.5 * (tr + sq), 0.5 * (tr - sq)),
        key=lambda lam: (-abs(lam), cmath.phase(lam) % TWO_PI),
    )
    return EigenPair(roots[0], roots[1])


def eigen_moduli(c) -> Tuple[np.ndarray, np.ndarray]:
    """(|lambda1|, |lambda2|) for a stacked (..., 2, 2) complex array."""
    c = np.asarray(c, dtype=complex)
    tr = c[..., 0, 0] + c[..., 1, 1]
    det = c[..., 0, 0] * c[..., 1, 1] - c[..., 0, 1] * c[..., 1, 0]
    sq = np.sqrt(tr * tr - 4.0 * det)
    m1 = np.abs(0.5 * (tr + sq))
    m2 = np.abs(0.5 * (tr - sq))
    return np.maximum(m1, m2), np.minimum(m1, m2)


def equal_modulus(c) -> bool:
    """True iff both eigenvalues share one modulus: (tr C)^2 / (4 det C)
    lies in the real interval [0, 1]."""
    c = np.asarray(c, dtype=complex)
    tr = c[..., 0, 0] + c[..., 1, 1]
    det = c[..., 0, 0] * c[..., 1, 1] - c[..., 0, 1] * c[..., 1, 0]
    if abs(det) <= 1e-14:
        raise ValueError("equal_modulus requires a nonsingular matrix")
    u = tr * tr / (4.0 * det)
    tol = 1e-10 * (1.0 + abs(u))
    return bool(abs(u.imag) <= tol and -tol <= u.real <= 1.0 + tol)


def centro_check(mats: Sequence) -> Tuple[float, float]:
    """Residuals of the z = 0 eigenvalue structure of C_z.

    C_0 is singular with its nonzero eigenvalue equal to the product of
    (c_j + 1/c_j)/2 over the factors' norms c_j. Returns
    (|small eigenvalue|, |large eigenvalue| - product); both should vanish.
    """
    pair = eigen2(c_matrix(mats, 0.0))
    expected = 1.0
    for m in mats:
        c = operator_norm(as_mat2(m))
        expected *= 0.5 * (c + 1.0 / c)
    return abs(pair.lambda2), abs(pair.lambda1) - expected


class SeparationSample(NamedTuple):
    min_rel_separation: float
    samples: int
    worst_z: complex


def sampled_separation(
    samples: int,
    seed: int = 0,
    n_max: int = 4,
    c_max: float = 10.0,
    radius: float = 0.9,
) -> SeparationSample:
    """Sample the strict eigenvalue-modulus separation of C_z on |z| <= radius.

    Draws random factor chains (length 1..n_max, norms in [1, c_max]) and z
    uniform on the disk of the given radius, and reports the worst relative
    modulus gap (|l1| - |l2|) / |l1| seen. Keeping radius < 1 stays clear of
    the unit circle, where the moduli legitimately coincide.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    worst = math.inf
    worst_z = 0j
    log_cmax = math.log(c_max)
    for i in range(samples):
        n = 1 + int(streams.bits(seed, i, 0) % np.uint64(n_max))
        beta = TWO_PI * streams.uniform01(seed, i, 1, np.arange(n))
        alpha = TWO_PI * streams.uniform01(seed, i, 2, np.arange(n))
        c = np.exp(log_cmax * streams.uniform01(seed, i, 3, np.arange(n)))
        mats = polar_matrix(beta, c, alpha)
        r = radius * math.sqrt(streams.uniform01(seed, i, 4))
        z = r * cmath.exp(2j * math.pi * streams.uniform01(seed, i, 5))
        m1, m2 = eigen_moduli(c_matrix(mats, z))
        rel = (m1 - m2) / m1
        if rel < worst:
            worst, worst_z = float(rel), z
    return SeparationSample(worst, samples, worst_z)
