"""Sums over zeta zeros from the bundled table of the first 10^5 ordinates.

Run: python demos/zero_sums.py
"""
import numpy as np

from goldbach_explicit import prime_engine as pe
from goldbach_explicit import zero_lab as zl

zeros = zl.load_zeros()
print(f"{len(zeros)} ordinates up to {zeros.gamma_max:.6f}")

for T in (100, 1000, 1e4, 5e4):
    w = zl.zero_count_window(T)
    print(f"N({T:g}) = {zl.zero_count(T, zeros)}, main term {zl.main_term(T):.2f}, window [{w.low:.1f}, {w.high:.1f}]")

# sum over zeros of 1 / (a + (t - gamma)^2), head from the table plus a tail bound
for t, a in ((4.0, 6.0), (100.0, 0.25), (1e4, 6.0)):
    c = zl.zero_sum_kernel_check(t, a, zeros)
    print(f"kernel a={a:g}, t={t:g}: {c.value:.6f} + {c.error_estimate:.1e} <= {c.bound:.4f}")

s = zl.zero_log_sums(1e4, zeros)
print(f"sum log gamma (gamma <= 1e4) = {s.sum_log:.4f}, density integral {s.density_integral:.4f}")

rng = np.random.default_rng(0)
c = zl.window_factor_check(10.0 ** rng.uniform(-13, 0, 1000), rng.uniform(-1e6, 1e6, 1000))
print(f"window factor ratio max = {c.value:.12f}")

sieve = pe.build_sieve(10 ** 6)
for y in (100.5, 1000.5):
    r = zl.explicit_formula_psi(y, zeros, sieve)
    print(f"psi({y}) = {r.exact:.6f}, explicit formula {r.approx:.6f}, residual {r.residual:.2e}")
