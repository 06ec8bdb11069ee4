"""Stable 2x2 real linear algebra on the unit-determinant group.

Matrices are plain (2, 2) float64 ndarrays; everything that can broadcast
accepts stacked (..., 2, 2) batches. The determinant-one structure makes
closed forms exact: the singular values of A are (c, 1/c), hence

    ||A|| + ||A||^-1 = sqrt(||A||_F^2 + 2),
    rho(A) + rho(A)^-1 = max(|tr A|, 2),

and both the operator norm and the spectral radius reduce to branch-free
scalar formulas with no SVD or eigensolver.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

TWO_PI = 2.0 * math.pi
LOG2 = math.log(2.0)

#: Acceptable |det - 1| for a matrix claiming unit determinant.
DET_TOLERANCE = 1e-9

#: Running products are renormalized every this many factors.
RENORM_INTERVAL = 64

# Above this Frobenius norm the computed determinant of a product is
# cancellation noise (error ~ ||P||_F^2 * eps), so rescaling by 1/sqrt(det)
# would corrupt the product instead of correcting rounding drift.
_DET_TRUST_FROBENIUS = 1e3


def as_mat2(m) -> np.ndarray:
    """Coerce to a finite (2, 2) float64 array."""
    a = np.asarray(m, dtype=float)
    if a.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def check_sl2(m, eps: float = DET_TOLERANCE) -> np.ndarray:
    """Validate |det - 1| <= eps and return the matrix."""
    a = as_mat2(m)
    d = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
    if abs(d - 1.0) > eps:
        raise ValueError(f"determinant {d!r} is not 1 within {eps}")
    return a


def rotation(theta):
    """Rotation by theta (radians): [[cos, -sin], [sin, cos]].

    theta may be a scalar or an array; an array of shape s yields a stack
    of shape s + (2, 2).
    """
    t = np.asarray(theta, dtype=float)
    if not np.all(np.isfinite(t)):
        raise ValueError("rotation angle must be finite")
    c, s = np.cos(t), np.sin(t)
    out = np.empty(t.shape + (2, 2))
    out[..., 0, 0] = c
    out[..., 0, 1] = -s
    out[..., 1, 0] = s
    out[..., 1, 1] = c
    return out


def diag_hyperbolic(c: float) -> np.ndarray:
    """diag(c, 1/c) for c >= 1."""
    if not (np.isfinite(c) and c >= 1.0):
        raise ValueError(f"hyperbolic parameter must be finite and >= 1, got {c!r}")
    return np.array([[c, 0.0], [0.0, 1.0 / c]])


def polar_matrix(beta, c, alpha) -> np.ndarray:
    """Compose R_beta @ diag(c, 1/c) @ R_alpha; arguments broadcast."""
    beta, c, alpha = np.broadcast_arrays(
        np.asarray(beta, float), np.asarray(c, float), np.asarray(alpha, float)
    )
    if np.any(c < 1.0):
        raise ValueError("hyperbolic parameter must be >= 1")
    h = np.zeros(c.shape + (2, 2))
    h[..., 0, 0] = c
    h[..., 1, 1] = 1.0 / c
    return rotation(beta) @ h @ rotation(alpha)


def frobenius_sq(a) -> np.ndarray:
    return np.sum(np.square(np.asarray(a, float)), axis=(-2, -1))


def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x


def operator_norm(a):
    """Largest singular value; exact closed form for unit-determinant input."""
    q = np.sqrt(frobenius_sq(a) + 2.0)
    return _scalar(0.5 * (q + np.sqrt(np.maximum(q * q - 4.0, 0.0))))


def n_value(a):
    """log((||A|| + ||A||^-1) / 2) = 0.5 * log((||A||_F^2 + 2) / 4).

    The log1p form avoids cancellation when ||A|| is near 1; the value is
    always >= 0, and 0 exactly on rotations.
    """
    excess = np.maximum(frobenius_sq(a) - 2.0, 0.0)
    return _scalar(0.5 * np.log1p(0.25 * excess))


def trace(a):
    a = np.asarray(a)
    return _scalar(a[..., 0, 0] + a[..., 1, 1])


def spectral_radius(a):
    """Largest eigenvalue modulus via the trace: 1 if |tr| <= 2, else the
    larger root of x + 1/x = |tr|."""
    t = np.abs(np.asarray(trace(a)))
    big = 0.5 * (t + np.sqrt(np.maximum(t * t - 4.0, 0.0)))
    return _scalar(np.where(t <= 2.0, 1.0, big))


class PolarForm(NamedTuple):
    """Angles and stretch of A = R_beta @ diag(c, 1/c) @ R_alpha."""

    beta: float
    c: float
    alpha: float


def polar_decompose(a) -> PolarForm:
    """Split a unit-determinant matrix as R_beta H_c R_alpha with c = ||A||.

    Deterministic tie-breaking: rotations (c = 1 within 1e-12) come back as
    (theta, 1, 0); otherwise alpha is fixed by the eigenvector of A^T A for
    the eigenvalue c^2, signed so its first nonzero coordinate is positive,
    and beta absorbs a global sign flip if the recomposition lands on -A.
    """
    a = check_sl2(a)
    c = operator_norm(a)
    if c - 1.0 <= 1e-12:
        return PolarForm(math.atan2(a[1, 0], a[0, 0]) % TWO_PI, 1.0, 0.0)
    m = a.T @ a
    lam = c * c
    # Two candidate rows of the eigen-system; keep the better conditioned.
    v1 = np.array([m[0, 1], lam - m[0, 0]])
    v2 = np.array([lam - m[1, 1], m[0, 1]])
    v = v1 if v1 @ v1 >= v2 @ v2 else v2
    if (v[0] < 0.0) or (v[0] == 0.0 and v[1] < 0.0):
        v = -v
    v /= math.hypot(v[0], v[1])
    alpha = math.atan2(-v[1], v[0]) % TWO_PI
    b = a @ rotation(-alpha) @ np.array([[1.0 / c, 0.0], [0.0, c]])
    beta = math.atan2(b[1, 0], b[0, 0]) % TWO_PI
    rec = polar_matrix(beta, c, alpha)
    if np.abs(rec + a).sum() < np.abs(rec - a).sum():
        beta = (beta + math.pi) % TWO_PI
    return PolarForm(float(beta), float(c), float(alpha))


def _renormalize_det(p: np.ndarray) -> np.ndarray:
    # Skip when the determinant reading is untrustworthy; see module note.
    # (max-entry test, so the guard itself cannot overflow)
    if np.abs(p).max() > _DET_TRUST_FROBENIUS:
        return p
    d = p[0, 0] * p[1, 1] - p[0, 1] * p[1, 0]
    if d > 0.0:
        p = p / math.sqrt(d)
    return p


def product_chain(ms) -> np.ndarray:
    """Ordered product ms[k-1] @ ... @ ms[0] (later factors on the left).

    Accepts a sequence of 2x2 matrices or an (n, 2, 2) stack. Every
    RENORM_INTERVAL factors the running product is rescaled by 1/sqrt(det)
    to cancel rounding drift, while the product stays well conditioned
    enough for its determinant to be measurable.
    """
    stack = np.asarray(ms, dtype=float)
    if stack.ndim != 3 or stack.shape[1:] != (2, 2) or stack.shape[0] == 0:
        raise ValueError("expected a non-empty sequence of 2x2 matrices")
    if not np.all(np.isfinite(stack)):
        raise ValueError("matrix entries must be finite")
    p = stack[0].copy()
    for k in range(1, stack.shape[0]):
        p = stack[k] @ p
        if (k + 1) % RENORM_INTERVAL == 0:
            p = _renormalize_det(p)
    return p


class ScaledProduct:
    """Left-multiplying product accumulator in (matrix, log-scale) form.

    Represents P = exp(log_scale) * mat with mat renormalized to unit
    Frobenius norm every `renorm_every` factors, so products whose entries
    overflow float64 (any orbit with a positive exponent) stay usable
    through their norms and traces. `batch_shape` adds leading axes for
    running many products in lockstep, e.g. one per grid angle or seed.
    """

    def __init__(self, batch_shape=(), renorm_every: int = RENORM_INTERVAL):
        self.mat = np.broadcast_to(np.eye(2), tuple(batch_shape) + (2, 2)).copy()
        self.log_scale = np.zeros(batch_shape)
        self.count = 0
        self.renorm_count = 0
        self._every = int(renorm_every)

    def push(self, factor) -> None:
        """Multiply a factor (broadcastable to the batch) on the left."""
        self.mat = np.matmul(factor, self.mat)
        self.count += 1
        if self.count % self._every == 0:
            f = np.sqrt(frobenius_sq(self.mat))
            self.mat = self.mat / f[..., None, None]
            self.log_scale = self.log_scale + np.log(f)
            self.renorm_count += 1

    def push_many(self, factors) -> None:
        for f in factors:
            self.push(f)

    def log_frobenius(self):
        return _scalar(self.log_scale + 0.5 * np.log(frobenius_sq(self.mat)))

    def log_operator_norm(self):
        """log ||P|| from log ||P||_F via the unit-determinant identity."""
        lf = np.asarray(self.log_frobenius())
        u = np.minimum(np.exp(-2.0 * lf), 0.5)  # = 1/||P||_F^2, <= 1/2
        return _scalar(
            lf + np.log(0.5 * (np.sqrt(1.0 + 2.0 * u) + np.sqrt(1.0 - 2.0 * u)))
        )

    def log_spectral_radius(self):
        """log rho(P); 0 whenever |tr P| <= 2."""
        t = np.abs(np.asarray(trace(self.mat)))
        with np.errstate(divide="ignore"):
            lt = self.log_scale + np.log(t)  # log |tr P|; -inf for zero trace
        w = np.minimum(np.exp(np.minimum(-2.0 * lt, 0.0)), 0.25)
        big = lt + np.log(0.5 * (1.0 + np.sqrt(1.0 - 4.0 * w)))
        return _scalar(np.where(lt <= LOG2, 0.0, big))

    def to_matrix(self) -> np.ndarray:
        """Materialize exp(log_scale) * mat; overflows for huge products."""
        return np.exp(self.log_scale)[..., None, None] * self.mat
