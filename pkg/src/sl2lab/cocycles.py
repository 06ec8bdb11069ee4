"""Linear cocycles over concrete base dynamics.

A cocycle is a matrix-valued map A over a base transformation T, with
orbit products A^n(x) = A(T^(n-1) x) ... A(x). Built-in bases are the
circle rotation (angle a golden-ratio fraction of a turn by default) and
the two-sided Bernoulli(1/2, 1/2) shift realized as a seeded counter-based
symbol stream. Built-in maps:

  * herman(c):      A(e^it) = diag(c, 1/c) R_t over the circle rotation,
                    with exponent log((c + 1/c) / 2);
  * bernoulli_hir:  the three-valued window map (H, I, or quarter-turn R)
                    whose minimal-block products collapse to +/-H, giving
                    exponent log(2)/2 while rho(A^n(x)) returns to 1
                    infinitely often;
  * constant / table: a fixed matrix, or one matrix per Bernoulli symbol.

Norm-renormalized products keep the long-orbit estimators out of overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from . import streams
from .formulas import FormulaReport, _report
from .mat2 import (
    ScaledProduct,
    TWO_PI,
    check_sl2,
    n_value,
    product_chain,
    rotation,
)
from .quadrature import QuadratureSpec, periodic_average

GOLDEN_FRACTION = (math.sqrt(5.0) - 1.0) / 2.0

HALF_LOG2 = 0.5 * math.log(2.0)

# Exact-entry generators of the Bernoulli window cocycle. The quarter turn
# is written out (not via rotation(pi/2)) so every product has entries that
# are exact signed powers of two and trace tests stay exact.
HIR_H = np.array([[2.0, 0.0], [0.0, 0.5]])
HIR_R = np.array([[0.0, -1.0], [1.0, 0.0]])
_HIR_FACTORS = np.stack([HIR_H, np.eye(2), HIR_R])


class ConfigurationError(ValueError):
    """Base and map of a cocycle spec do not fit together."""


@dataclass(frozen=True)
class CircleRotation:
    """Rotation of the circle by `alpha` of a full turn, alpha in (0, 1)."""

    alpha: float = GOLDEN_FRACTION

    def __post_init__(self):
        if not (0.0 < self.alpha < 1.0):
            raise ConfigurationError("alpha must be a turn fraction in (0, 1)")


@dataclass(frozen=True)
class BernoulliShift:
    """Two-sided (1/2, 1/2) shift; symbols come from a seeded counter stream."""

    seed: int = 0


@dataclass(frozen=True)
class HermanMap:
    c: float

    def __post_init__(self):
        if not (np.isfinite(self.c) and self.c >= 1.0):
            raise ConfigurationError("herman parameter c must be finite and >= 1")


@dataclass(frozen=True)
class BernoulliHIRMap:
    pass


@dataclass(frozen=True, eq=False)
class ConstantMap:
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", check_sl2(self.matrix))


@dataclass(frozen=True, eq=False)
class TableMap:
    """One matrix per Bernoulli symbol: matrix0 at 0, matrix1 at 1."""

    matrix0: np.ndarray
    matrix1: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix0", check_sl2(self.matrix0))
        object.__setattr__(self, "matrix1", check_sl2(self.matrix1))


BaseSpec = Union[CircleRotation, BernoulliShift]
MapSpec = Union[HermanMap, BernoulliHIRMap, ConstantMap, TableMap]


@dataclass(frozen=True, eq=False)
class CocycleSpec:
    base: BaseSpec
    map: MapSpec

    def __post_init__(self):
        if isinstance(self.map, HermanMap) and not isinstance(self.base, CircleRotation):
            raise ConfigurationError("herman map requires a circle-rotation base")
        if isinstance(self.map, (BernoulliHIRMap, TableMap)) and not isinstance(
            self.base, BernoulliShift
        ):
            raise ConfigurationError("Bernoulli maps require a Bernoulli-shift base")


def herman_cocycle(c: float, alpha: float = GOLDEN_FRACTION) -> CocycleSpec:
    return CocycleSpec(CircleRotation(alpha), HermanMap(c))


def bernoulli_hir(seed: int = 0) -> CocycleSpec:
    return CocycleSpec(BernoulliShift(seed), BernoulliHIRMap())


def constant_cocycle(matrix, base: Optional[BaseSpec] = None) -> CocycleSpec:
    return CocycleSpec(base if base is not None else CircleRotation(), ConstantMap(matrix))


def table_cocycle(matrix0, matrix1, seed: int = 0) -> CocycleSpec:
    return CocycleSpec(BernoulliShift(seed), TableMap(matrix0, matrix1))


def bernoulli_cocycle_value(window: Sequence[int]) -> np.ndarray:
    """Matrix for a symbol window (x_-1, x_0, x_+1).

    H = diag(2, 1/2) when x_0 = 1; identity for (0,0,0) and (1,0,1); the
    quarter turn for (1,0,0) and (0,0,1).
    """
    prev, cur, nxt = (int(s) for s in window)
    for s in (prev, cur, nxt):
        if s not in (0, 1):
            raise ValueError("symbols must be 0 or 1")
    if cur == 1:
        return HIR_H.copy()
    if prev == nxt:
        return np.eye(2)
    return HIR_R.copy()


def default_x0(spec: CocycleSpec):
    """Canonical base point: angle 0 on the circle, shift offset 0."""
    return 0.0 if isinstance(spec.base, CircleRotation) else 0


def shift_point(spec: CocycleSpec, x0, m: int):
    """T^m applied to the base point."""
    if isinstance(spec.base, CircleRotation):
        return (float(x0) + TWO_PI * spec.base.alpha * m) % TWO_PI
    return int(x0) + m


def _symbols(base: BernoulliShift, x0: int, n: int) -> np.ndarray:
    """Symbols x_(x0-1) .. x_(x0+n) of the seeded stream, as int8."""
    if x0 < 0:
        raise ConfigurationError("Bernoulli base point (shift offset) must be >= 0")
    idx = np.arange(x0 - 1, x0 + n + 1)
    return (streams.bits(base.seed, idx + 1) >> np.uint64(63)).astype(np.int8)


def cocycle_factors(spec: CocycleSpec, x0, n: int) -> np.ndarray:
    """Stack [A(x), A(Tx), ..., A(T^(n-1) x)] of shape (n, 2, 2)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    mp = spec.map
    if isinstance(mp, ConstantMap):
        return np.broadcast_to(mp.matrix, (n, 2, 2))
    if isinstance(mp, HermanMap):
        t = float(x0) + TWO_PI * spec.base.alpha * np.arange(n)
        out = rotation(np.mod(t, TWO_PI))
        out[:, 0, :] *= mp.c
        out[:, 1, :] /= mp.c
        return out
    sym = _symbols(spec.base, int(x0), n)
    if isinstance(mp, TableMap):
        return np.stack([mp.matrix0, mp.matrix1])[sym[1:-1]]
    prev, cur, nxt = sym[:-2], sym[1:-1], sym[2:]
    ids = np.where(cur == 1, 0, np.where(prev == nxt, 1, 2))
    return _HIR_FACTORS[ids]


def cocycle_product(spec: CocycleSpec, x0, n: int) -> np.ndarray:
    """A^n(x) as a plain matrix; use the estimators below for long orbits
    whose entries would overflow."""
    return product_chain(cocycle_factors(spec, x0, n))


@dataclass(frozen=True)
class LyapunovReport:
    n: int
    exponent: float
    x0: str
    renorm_count: int


def lyapunov_estimate(spec: CocycleSpec, x0, n: int) -> LyapunovReport:
    """(1/n) log ||A^n(x)|| through the norm-renormalized product."""
    factors = cocycle_factors(spec, x0, n)
    acc = ScaledProduct()
    acc.push_many(factors)
    return LyapunovReport(
        n=int(n),
        exponent=float(acc.log_operator_norm()) / n,
        x0=_describe_x0(spec, x0),
        renorm_count=acc.renorm_count,
    )


def _describe_x0(spec: CocycleSpec, x0) -> str:
    if isinstance(spec.base, CircleRotation):
        return f"angle={float(x0)!r}"
    return f"shift_offset={int(x0)}"


def rotated_exponents(spec: CocycleSpec, x0, n: int, thetas) -> np.ndarray:
    """Finite-horizon exponents of the rotated cocycle x -> A(x) R_theta,
    one per angle, all sharing the base orbit."""
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    factors = cocycle_factors(spec, x0, n)
    r = rotation(thetas)
    acc = ScaledProduct(batch_shape=thetas.shape)
    for j in range(n):
        acc.push(factors[j] @ r)
    return np.asarray(acc.log_operator_norm()) / n


def herman_equality_check(
    spec: CocycleSpec,
    n: int,
    spec_q: QuadratureSpec = QuadratureSpec(initial_grid=64, max_grid=256, tol=1e-3),
    x0=None,
) -> FormulaReport:
    """Rotation-averaged exponent against the Birkhoff average of N(A(x)).

    Both sides are finite-horizon, so the discrepancy carries an O(1/n)
    orbit-average bias plus quadrature error; equality is exact only in
    the limit.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if x0 is None:
        x0 = default_x0(spec)
    factors = cocycle_factors(spec, x0, n)
    rhs = float(np.mean(n_value(factors)))
    est = periodic_average(lambda th: rotated_exponents(spec, x0, n, th), spec_q)
    return _report(est.value, rhs, est)


@dataclass(eq=False)
class SpectralGrowthReport:
    """Per-step spectral-radius growth (1/n) log rho(A^n(x)) next to the
    norm growth (1/n) log ||A^n(x)||."""

    n_max: int
    inv_n_log_rho: np.ndarray
    inv_n_log_norm: np.ndarray
    rho_is_one: np.ndarray
    running_max: float
    rho_one_count: int

    @property
    def series(self):
        return list(zip(range(1, self.n_max + 1), self.inv_n_log_rho.tolist()))


#: rho counts as 1 when rho <= 1 + this tolerance.
RHO_ONE_TOLERANCE = 1e-9
_LOG_RHO_ONE = math.log1p(RHO_ONE_TOLERANCE)


def spectral_growth(spec: CocycleSpec, x0, n_max: int) -> SpectralGrowthReport:
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    factors = cocycle_factors(spec, x0, n_max)
    acc = ScaledProduct()
    log_rho = np.empty(n_max)
    log_norm = np.empty(n_max)
    for j in range(n_max):
        acc.push(factors[j])
        log_rho[j] = acc.log_spectral_radius()
        log_norm[j] = acc.log_operator_norm()
    ns = np.arange(1, n_max + 1)
    inv_rho = log_rho / ns
    rho_is_one = log_rho <= _LOG_RHO_ONE
    return SpectralGrowthReport(
        n_max=int(n_max),
        inv_n_log_rho=inv_rho,
        inv_n_log_norm=log_norm / ns,
        rho_is_one=rho_is_one,
        running_max=float(np.max(inv_rho)),
        rho_one_count=int(np.count_nonzero(rho_is_one)),
    )


def star_identity_probe(n: int) -> Tuple[float, float]:
    """Exact (1/n) E[log rho(A^n)] for the Bernoulli window cocycle, by
    enumerating all 2^(n+2) symbol windows with equal weight.

    Returns (exact value, log(2)/2); the exact value sits strictly below
    the exponent at every finite horizon, which is why the integrated
    spectral-radius growth rate does not recover the exponent.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > 22:
        raise ValueError("n > 22 needs more than 2^24 windows; refusing")
    total = 1 << (n + 2)
    chunk = min(total, 1 << 20)
    acc = 0.0
    one = np.uint64(1)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.uint64)
        # x_i is bit (i + 1) of the window index, i = -1 .. n.
        p11 = np.ones(len(idx))
        p12 = np.zeros(len(idx))
        p21 = np.zeros(len(idx))
        p22 = np.ones(len(idx))
        for j in range(n):
            prev = (idx >> np.uint64(j)) & one
            cur = (idx >> np.uint64(j + 1)) & one
            nxt = (idx >> np.uint64(j + 2)) & one
            mh = cur == one
            mr = ~mh & (prev != nxt)
            p11[mh] *= 2.0
            p12[mh] *= 2.0
            p21[mh] *= 0.5
            p22[mh] *= 0.5
            t1 = p11[mr].copy()
            t2 = p12[mr].copy()
            p11[mr] = -p21[mr]
            p12[mr] = -p22[mr]
            p21[mr] = t1
            p22[mr] = t2
        t = np.abs(p11 + p22)
        big = 0.5 * (t + np.sqrt(np.maximum(t * t - 4.0, 0.0)))
        acc += float(np.sum(np.where(t <= 2.0, 0.0, np.log(np.maximum(big, 1.0)))))
    return acc / (n * total), HALF_LOG2
