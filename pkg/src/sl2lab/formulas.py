"""The rotation-averaging identities as executable checks.

For A_1 ... A_n with unit determinant and B_theta = A_n R_theta ... A_1 R_theta:

  theorem 1:   avg_theta N(B_theta)        = sum_j N(A_j)
  theorem 2:   avg_theta log rho(B_theta)  = sum_j N(A_j)
  expansion:   avg_theta log ||A (cos theta, sin theta)|| = N(A)
  F integral:  int_0^pi log(b^2 cos^2 + sin^2) dtheta = 2 pi log((b+1)/2)
  measure:     nu{theta : (1/n) log ||B_theta|| > -a + (1/n) sum log ||A_j||}
                 >= 1 - log(2)/a

plus the double-average (Fubini) form of theorem 1. Each check returns the
two sides and quadrature metadata instead of asserting, so callers pick
their own tolerance.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .mat2 import check_sl2, n_value, operator_norm, rotation, spectral_radius
from .quadrature import IntegralEstimate, QuadratureSpec, periodic_average

LOG2 = math.log(2.0)


@dataclass(frozen=True)
class FormulaReport:
    lhs: float
    rhs: float
    abs_error: float
    quadrature: Optional[IntegralEstimate]


def _report(lhs: float, rhs: float, est: Optional[IntegralEstimate]) -> FormulaReport:
    return FormulaReport(float(lhs), float(rhs), abs(float(lhs) - float(rhs)), est)


@dataclass(frozen=True)
class MeasureBoundReport:
    a: float
    nu_estimate: float
    lower_bound: float
    grid: int

    @property
    def satisfied(self) -> bool:
        """nu_estimate >= lower_bound - 2/grid (discretization slack)."""
        return self.nu_estimate >= self.lower_bound - 2.0 / self.grid


def _validated(mats: Sequence) -> list:
    ms = [check_sl2(m) for m in mats]
    if not ms:
        raise ValueError("need at least one matrix")
    return ms


def rotated_chain(mats: Sequence, thetas) -> np.ndarray:
    """B_theta = A_n R_theta ... A_1 R_theta for an array of angles."""
    r = rotation(thetas)
    p = mats[0] @ r
    for a in mats[1:]:
        p = a @ (r @ p)
    return p


def theorem1_check(
    mats: Sequence, spec: QuadratureSpec = QuadratureSpec()
) -> FormulaReport:
    """Average of N(B_theta) against sum of N(A_j). Smooth integrand."""
    ms = _validated(mats)
    est = periodic_average(lambda th: n_value(rotated_chain(ms, th)), spec)
    rhs = sum(n_value(a) for a in ms)
    return _report(est.value, rhs, est)


def theorem2_check(
    mats: Sequence, spec: QuadratureSpec = QuadratureSpec()
) -> FormulaReport:
    """Average of log rho(B_theta) against sum of N(A_j).

    The integrand is continuous but kinked where B_theta crosses the
    parabolic locus |tr| = 2 (log rho is 0 on elliptic arcs), so expect
    slower refinement than the norm version.
    """
    ms = _validated(mats)
    est = periodic_average(
        lambda th: np.log(spectral_radius(rotated_chain(ms, th))), spec
    )
    rhs = sum(n_value(a) for a in ms)
    return _report(est.value, rhs, est)


def avg_expansion_check(
    mat, spec: QuadratureSpec = QuadratureSpec()
) -> FormulaReport:
    """Average log-expansion of unit vectors against N(A)."""
    a = check_sl2(mat)

    def f(th):
        c, s = np.cos(th), np.sin(th)
        x = a[0, 0] * c + a[0, 1] * s
        y = a[1, 0] * c + a[1, 1] * s
        return 0.5 * np.log(x * x + y * y)

    est = periodic_average(f, spec)
    return _report(est.value, n_value(a), est)


def f_integral_check(b: float, spec: QuadratureSpec = QuadratureSpec()) -> FormulaReport:
    """Numeric F(b) = int_0^pi log(b^2 cos^2 + sin^2) against 2 pi log((b+1)/2)."""
    if not (np.isfinite(b) and b >= 1.0):
        raise ValueError("b must be finite and >= 1")
    bb = float(b) * float(b)

    def f(th):
        c, s = np.cos(th), np.sin(th)
        return np.log(bb * c * c + s * s)

    # The integrand has period pi, so the half-period integral is pi times
    # the full-circle average.
    est = periodic_average(f, spec)
    return _report(math.pi * est.value, 2.0 * math.pi * math.log(0.5 * (b + 1.0)), est)


def measure_bound_check(mats: Sequence, a: float, grid: int) -> MeasureBoundReport:
    """Grid estimate of the measure of the good-expansion set.

    Counts grid angles where (1/n) log ||B_theta|| strictly exceeds
    -a + (1/n) sum_j log ||A_j||; points exactly on the boundary count as
    outside (conservative).
    """
    if not (np.isfinite(a) and a > 0.0):
        raise ValueError("a must be finite and positive")
    if grid < 1:
        raise ValueError("grid must be >= 1")
    ms = _validated(mats)
    n = len(ms)
    thetas = 2.0 * np.pi * np.arange(grid) / grid
    log_norms = np.log(operator_norm(rotated_chain(ms, thetas)))
    threshold = -a + sum(math.log(operator_norm(m)) for m in ms) / n
    nu = float(np.count_nonzero(log_norms / n > threshold)) / grid
    return MeasureBoundReport(float(a), nu, 1.0 - LOG2 / a, int(grid))


def fubini_check(
    mats: Sequence,
    spec: QuadratureSpec = QuadratureSpec(max_grid=2 ** 10, tol=1e-6),
    inner_spec: Optional[QuadratureSpec] = None,
) -> FormulaReport:
    """Double average of log rho(B_theta R_theta') against sum of N(A_j).

    `spec` drives the outer average over theta; inner averages over theta'
    use `inner_spec` (default: same as outer). The inner integrand carries
    the parabolic-crossing kinks with a sign-coherent trapezoid bias, so a
    finer inner grid pays off more than a finer outer one. Cost is roughly
    the product of the two grids.
    """
    ms = _validated(mats)
    inner = inner_spec if inner_spec is not None else spec
    if spec.max_grid > 2 ** 12 or inner.max_grid > 2 ** 12:
        warnings.warn(
            f"fubini_check cost grows as outer x inner grid; up to "
            f"{spec.max_grid} x {inner.max_grid} evaluations requested",
            stacklevel=2,
        )

    def inner_value(theta: float) -> float:
        b = rotated_chain(ms, np.asarray(theta))

        def g(tps):
            return np.log(spectral_radius(b @ rotation(tps)))

        return periodic_average(g, inner).value

    def outer(thetas):
        return np.array([inner_value(t) for t in np.atleast_1d(thetas)])

    est = periodic_average(outer, spec)
    rhs = sum(n_value(a) for a in ms)
    return _report(est.value, rhs, est)
