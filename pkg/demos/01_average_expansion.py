"""Walk through the rotation-averaging identities.

For unit-determinant A with norm c, the number N(A) = log((c + 1/c)/2) is
the average log-expansion of unit vectors under A. Averaging over a common
rotation parameter turns products into sums: the circle average of
N(A_n R_t ... A_1 R_t) is exactly sum_j N(A_j), and the same holds with
log(spectral radius) in place of N.
"""

import numpy as np

from sl2lab import (
    QuadratureSpec,
    avg_expansion_check,
    diag_hyperbolic,
    f_integral_check,
    measure_bound_check,
    n_value,
    operator_norm,
    polar_matrix,
    theorem1_check,
    theorem2_check,
)

H2, H3 = diag_hyperbolic(2.0), diag_hyperbolic(3.0)

print("== N(A) as an average expansion rate ==")
for a, name in ((H2, "H_2"), (H3, "H_3"), (np.array([[2.0, 1.0], [1.0, 1.0]]), "[[2,1],[1,1]]")):
    rep = avg_expansion_check(a)
    print(f"  {name:<14} ||A|| = {operator_norm(a):8.5f}   N(A) = {n_value(a):.10f}"
          f"   circle average = {rep.lhs:.10f}   |diff| = {rep.abs_error:.1e}")

print("\n== the product identities ==")
rng = np.random.default_rng(1)
chains = {
    "[H_2]": [H2],
    "[H_2, H_3]": [H2, H3],
    "3 random factors": list(
        polar_matrix(rng.uniform(0, 2 * np.pi, 3), rng.uniform(1, 6, 3),
                     rng.uniform(0, 2 * np.pi, 3))
    ),
}
for name, mats in chains.items():
    r1 = theorem1_check(mats)
    r2 = theorem2_check(mats, QuadratureSpec(64, 2 ** 18, 2e-7))
    print(f"  {name:<18} sum N(A_j) = {r1.rhs:.10f}")
    print(f"    avg N(product)       = {r1.lhs:.10f}  (grid {r1.quadrature.grid_used},"
          f" err {r1.abs_error:.1e})")
    print(f"    avg log rho(product) = {r2.lhs:.10f}  (grid {r2.quadrature.grid_used},"
          f" err {r2.abs_error:.1e})")

print("\n== the closed-form integral behind the proof ==")
for b in (1.0, 2.0, 10.0):
    rep = f_integral_check(b)
    print(f"  F({b:5.1f}) = {rep.lhs:.10f}   2 pi log((b+1)/2) = {rep.rhs:.10f}"
          f"   |diff| = {rep.abs_error:.1e}")

print("\n== most rotation parameters see near-full expansion ==")
mats = [diag_hyperbolic(4.0), diag_hyperbolic(2.5)]
for a in (1.0, 2.0, 4.0):
    rep = measure_bound_check(mats, a, 2 ** 14)
    print(f"  slack a = {a:3.1f}: measured nu(E) = {rep.nu_estimate:.4f}"
          f"   guaranteed >= {rep.lower_bound:.4f}")
