"""I.i.d. random products of unit-determinant matrices under
rotation-invariant laws.

Matrices are drawn as R_phi diag(c, 1/c) R_psi with both angles uniform on
the circle, which makes the law rotation-invariant by construction. For
such laws four quantities coincide in the limit: the Lyapunov exponent of
the product, the mean of log rho, the mean of N, and the mean directional
log-expansion (Furstenberg form). `dedieu_shub_check` estimates all four
with standard errors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Union

import numpy as np

from . import streams
from .mat2 import ScaledProduct, TWO_PI, n_value, polar_matrix, spectral_radius


@dataclass(frozen=True)
class ConstantStretch:
    c: float

    def __post_init__(self):
        if not (np.isfinite(self.c) and self.c >= 1.0):
            raise ValueError("stretch must be finite and >= 1")


@dataclass(frozen=True)
class LogUniformStretch:
    c_min: float
    c_max: float

    def __post_init__(self):
        ok = np.isfinite(self.c_min) and np.isfinite(self.c_max)
        if not (ok and 1.0 <= self.c_min <= self.c_max):
            raise ValueError("need 1 <= c_min <= c_max, both finite")


@dataclass(frozen=True)
class LawSpec:
    c_distribution: Union[ConstantStretch, LogUniformStretch]
    seed: int = 0


def _stretch(law: LawSpec, index) -> np.ndarray:
    dist = law.c_distribution
    if isinstance(dist, ConstantStretch):
        return np.broadcast_to(float(dist.c), np.shape(index))
    u = streams.uniform01(law.seed, index, 2)
    lo, hi = math.log(dist.c_min), math.log(dist.c_max)
    return np.exp(lo + np.asarray(u) * (hi - lo))


def sample_matrix(law: LawSpec, index):
    """Draw R_phi diag(c, 1/c) R_psi for the given sample index.

    A pure function of (law.seed, index); index may be an int or an int
    array, producing a stacked batch.
    """
    phi = TWO_PI * np.asarray(streams.uniform01(law.seed, index, 0))
    psi = TWO_PI * np.asarray(streams.uniform01(law.seed, index, 1))
    return polar_matrix(phi, _stretch(law, index), psi)


def _batch_se(values: np.ndarray, batches: int = 100) -> float:
    """Standard error by batch means; falls back to the plain i.i.d.
    estimate when there are too few values to batch."""
    values = np.asarray(values, dtype=float)
    per = len(values) // batches
    if per < 1:
        if len(values) < 2:
            return 0.0
        return float(np.std(values, ddof=1) / math.sqrt(len(values)))
    means = values[: per * batches].reshape(batches, per).mean(axis=1)
    return float(np.std(means, ddof=1) / math.sqrt(batches))


@dataclass(frozen=True)
class DedieuShubReport:
    lambda_est: float
    int_log_rho_est: float
    int_N_est: float
    furstenberg_est: float
    n_steps: int
    samples: int
    std_errors: Dict[str, float]

    def _pairs(self):
        return (
            ("lambda", self.lambda_est),
            ("log_rho", self.int_log_rho_est),
            ("n_value", self.int_N_est),
            ("furstenberg", self.furstenberg_est),
        )

    def max_mutual_sigma(self) -> float:
        """Largest pairwise distance in combined-standard-error units."""
        worst = 0.0
        items = self._pairs()
        for i, (ka, va) in enumerate(items):
            for kb, vb in items[i + 1:]:
                denom = math.hypot(self.std_errors[ka], self.std_errors[kb])
                worst = max(worst, abs(va - vb) / max(denom, 1e-15))
        return worst

    @property
    def consistent(self) -> bool:
        return self.max_mutual_sigma() <= 3.0


def dedieu_shub_check(law: LawSpec, samples: int, n_steps: int) -> DedieuShubReport:
    """Estimate the four coinciding quantities for a rotation-invariant law.

    lambda uses `samples // n_steps` (at least one) independent product
    runs; the other three are plain Monte Carlo means over `samples` draws.
    Sample indices and run-factor indices live in disjoint counter ranges,
    so the whole report is a pure function of (law, samples, n_steps).
    """
    if samples < 1000 or n_steps < 1000:
        raise ValueError("need samples >= 1000 and n_steps >= 1000")

    idx = np.arange(samples)
    mats = sample_matrix(law, idx)
    log_rho_vals = np.log(spectral_radius(mats))
    n_vals = n_value(mats)

    theta = TWO_PI * streams.uniform01(law.seed, idx, 3)
    c, s = np.cos(theta), np.sin(theta)
    x = mats[:, 0, 0] * c + mats[:, 0, 1] * s
    y = mats[:, 1, 0] * c + mats[:, 1, 1] * s
    furst_vals = 0.5 * np.log(x * x + y * y)

    runs = max(1, samples // n_steps)
    run_offsets = samples + n_steps * np.arange(runs)
    acc = ScaledProduct(batch_shape=(runs,))
    # Segment the runs so lambda gets ~100 batch means like the others.
    segments = max(1, -(-100 // runs))
    checkpoints = {k * n_steps // segments for k in range(1, segments + 1)}
    rates = []
    prev_step, prev_log = 0, np.zeros(runs)
    for j in range(n_steps):
        acc.push(sample_matrix(law, run_offsets + j))
        step = j + 1
        if step in checkpoints:
            log_norm = np.atleast_1d(np.asarray(acc.log_operator_norm()))
            rates.append((log_norm - prev_log) / (step - prev_step))
            prev_step, prev_log = step, log_norm
    rates = np.concatenate(rates)
    lambda_est = float(prev_log.mean()) / n_steps

    se = {
        "lambda": _batch_se(rates, batches=len(rates)),
        "log_rho": _batch_se(log_rho_vals),
        "n_value": _batch_se(n_vals),
        "furstenberg": _batch_se(furst_vals),
    }
    return DedieuShubReport(
        lambda_est=lambda_est,
        int_log_rho_est=float(np.mean(log_rho_vals)),
        int_N_est=float(np.mean(n_vals)),
        furstenberg_est=float(np.mean(furst_vals)),
        n_steps=int(n_steps),
        samples=int(samples),
        std_errors=se,
    )
