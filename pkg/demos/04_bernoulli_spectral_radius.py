"""Norm growth without spectral-radius growth.

The Bernoulli window cocycle (H = diag(2, 1/2) on symbol 1; identity or a
quarter turn on symbol 0, depending on the neighbours) has exponent
log(2)/2: its minimal-block products collapse to +/-H. But whenever the
reduced word is H^k R or R H^k the trace vanishes and rho(A^n(x)) = 1, which
keeps happening forever -- so (1/n) log rho does not converge, and even its
expectation stays strictly below the exponent at every finite horizon.
"""

import math

import numpy as np

from sl2lab import bernoulli_hir, lyapunov_estimate, spectral_growth, star_identity_probe

HALF_LOG2 = 0.5 * math.log(2.0)

print("== the exponent is log(2)/2 ==")
exps = [lyapunov_estimate(bernoulli_hir(seed), 0, 10 ** 5).exponent for seed in range(5)]
print(f"  five seeds at n = 1e5: {np.round(exps, 5)}")
print(f"  mean = {np.mean(exps):.6f}   log(2)/2 = {HALF_LOG2:.6f}")

print("\n== rho(A^n) keeps returning to 1 ==")
rep = spectral_growth(bernoulli_hir(7), 0, 10 ** 4)
for upto in (100, 1000, 10000):
    count = int(np.count_nonzero(rep.rho_is_one[:upto]))
    print(f"  n <= {upto:6d}: rho = 1 at {count} horizons")
print(f"  norm rate at n = 1e4:  {rep.inv_n_log_norm[-1]:.5f}")
print(f"  rho rate at n = 1e4:   {rep.inv_n_log_rho[-1]:.5f}   (jumps between ~0 and the norm rate)")

print("\n== the integrated rate sits strictly below the exponent ==")
print("  n    exact (1/n) E[log rho(A^n)]   gap below log(2)/2")
for n in (1, 2, 4, 8, 12, 16, 20):
    exact, ref = star_identity_probe(n)
    note = "  (single factors: equality)" if n == 1 else ""
    print(f"  {n:2d}   {exact:.10f}               {ref - exact:+.10f}{note}")
