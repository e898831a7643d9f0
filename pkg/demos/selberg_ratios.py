"""Selberg integrals of psi and theta over short windows, against their normalized size.

Run: python demos/selberg_ratios.py
"""
from goldbach_explicit import prime_engine as pe

sieve = pe.build_sieve(10 ** 7)
x = 1e6
for d in (1e-3, 1e-2, 0.1):
    exact = pe.selberg_integral(x, d, "psi", sieve)
    oracle = pe.selberg_riemann_sum(x, d, "psi", sieve, 1_000_000)
    print(f"delta = {d:g}: exact {exact:.6e}, midpoint sum {oracle:.6e}")

for c in pe.selberg_ratio_report([1e5, 1e6], [1e-3, 1e-2], sieve):
    tag = "INFO" if c.passed is None else ("PASS" if c.passed else "FAIL")
    print(f"[{tag}] {c.name}: {c.value:.4f} vs {c.bound:.4f}")
