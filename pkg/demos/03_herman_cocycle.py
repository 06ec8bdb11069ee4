"""The stretch-and-rotate cocycle over an irrational circle rotation.

A(e^it) = diag(c, 1/c) R_t over the golden-ratio rotation. Twisting this
cocycle by a constant rotation only shifts the base point, so the
rotation-averaged exponent equals the plain exponent, and the equality
between the averaged exponent and the orbit average of N pins it down:
lambda = log((c + 1/c)/2), no matter how irrational-rotation products
conspire.
"""

import math

from sl2lab import (
    QuadratureSpec,
    herman_cocycle,
    herman_equality_check,
    lyapunov_estimate,
)

print("== exponent vs the closed form, sweeping the stretch ==")
print("  c        (1/n) log||A^n||   log((c+1/c)/2)   diff")
for c in (1.0, 1.5, 2.0, 4.0, 10.0):
    rep = lyapunov_estimate(herman_cocycle(c), 0.0, 10 ** 5)
    closed = math.log(0.5 * (c + 1.0 / c))
    print(f"  {c:5.2f}   {rep.exponent:16.10f}   {closed:14.10f}   {rep.exponent - closed:+.2e}")

print("\n== the averaged-exponent equality at finite horizon ==")
for n in (1000, 10000, 100000):
    rep = herman_equality_check(herman_cocycle(2.0), n, QuadratureSpec(64, 256, 1e-4))
    print(f"  n = {n:6d}: avg_t exponent(A R_t) = {rep.lhs:.8f}"
          f"   orbit avg N = {rep.rhs:.8f}   |diff| = {rep.abs_error:.2e}")

print("\nBoth columns converge to log(5/4) =", f"{math.log(1.25):.8f}")
