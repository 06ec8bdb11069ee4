"""The complex-disk structure behind the spectral-radius average.

Replacing each rotation R_t by the matrix family T_z (T on the unit circle
IS the rotation, up to the phase z^n) carries the rotated product into the
unit disk. Inside the disk the two eigenvalue moduli of
C_z = A_n T_z ... A_1 T_z stay strictly separated, log rho(C_z) is harmonic,
and its value at the center z = 0 is the product of the factors'
(c + 1/c)/2 -- which is how the circle average of log rho collapses to
sum_j N(A_j).
"""

import cmath

import numpy as np

from sl2lab import (
    QuadratureSpec,
    c_matrix,
    centro_check,
    diag_hyperbolic,
    eigen2,
    eigen_moduli,
    equal_modulus,
    periodic_average,
    rotation,
    s_matrix,
    sampled_separation,
    t_matrix,
)

H2, H3 = diag_hyperbolic(2.0), diag_hyperbolic(3.0)

print("== the S and T families ==")
theta = 0.8
print("  max |S_(e^it) - R_t|      =", np.abs(s_matrix(cmath.exp(1j * theta)) - rotation(theta)).max())
print("  max |S_2 S_3 - S_6|       =", np.abs(s_matrix(2) @ s_matrix(3) - s_matrix(6)).max())
print("  max |T_z - z S_z| (z=2+i) =", np.abs(t_matrix(2 + 1j) - (2 + 1j) * s_matrix(2 + 1j)).max())
print("  R_t T_0 - e^(-it) T_0     =", np.abs(rotation(theta) @ t_matrix(0) - cmath.exp(-1j * theta) * t_matrix(0)).max())

print("\n== eigenvalues at the center ==")
for mats, name in (([H2], "[H_2]"), ([H2, H3], "[H_2, H_3]"),
                   ([rotation(0.7) @ H2 @ rotation(1.1)], "[R H_2 R]")):
    pair = eigen2(c_matrix(mats, 0.0))
    small, resid = centro_check(mats)
    print(f"  {name:<12} |small| = {small:.2e}   |large| = {abs(pair.lambda1):.10f}"
          f"   residual vs prod((c+1/c)/2) = {resid:+.2e}")

print("\n== moduli separate strictly inside the disk ==")
for r in (0.0, 0.5, 0.9, 1.0):
    z = r * cmath.exp(0.6j)
    cz = c_matrix([H2, H3], z)
    m1, m2 = eigen_moduli(cz)
    tag = "equal" if abs(np.linalg.det(cz)) > 1e-14 and equal_modulus(cz) else "split"
    print(f"  |z| = {r:3.1f}: moduli ({m1:10.6f}, {m2:10.6f})  -> {tag}")

rep = sampled_separation(2000, seed=1)
print(f"  sampled over {rep.samples} random chains and |z| <= 0.9:"
      f" min relative gap = {rep.min_rel_separation:.3f}")

print("\n== harmonicity: boundary average equals center value ==")
mats = [H2, H3]


def boundary_log_rho(thetas):
    big, _ = eigen_moduli(c_matrix(mats, np.exp(1j * np.asarray(thetas))))
    return np.log(big)


est = periodic_average(boundary_log_rho, QuadratureSpec(64, 2 ** 16, 1e-7))
center = np.log(eigen_moduli(c_matrix(mats, 0.0))[0])
print(f"  (1/2pi) avg log rho(C_(e^it)) = {est.value:.10f}  (grid {est.grid_used})")
print(f"  log rho(C_0)                  = {center:.10f}")
print(f"  N(H_2) + N(H_3)               = {np.log(1.25) + np.log(5 / 3):.10f}")
