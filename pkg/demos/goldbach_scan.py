"""Check that every interval (x, x + C log^2 x] holds a Goldbach number, up to N.

Small N runs in seconds; N = 1e8 needs a sieve to 5e8 for the partner
search (cached after the first run).

Run: python demos/goldbach_scan.py [N]
"""
import sys

from goldbach_explicit import prime_engine as pe

N = int(float(sys.argv[1])) if len(sys.argv) > 1 else 10 ** 6
sieve = pe.cached_sieve(max(5 * N, 10 ** 6))

# partners are odd primes, so 4 = 2 + 2 does not count
for n in (4, 6, 98, 999_998):
    if n <= sieve.limit:
        print(f"minimal partner of {n}: {pe.minimal_partner(n, sieve)}")

for C in (123.0, 10.0, 1.0):
    g = pe.verify_goldbach_theorem(N, C, sieve)
    print(f"C = {C:g}: {g.checked_evens} evens, {len(g.violations)} violations, "
          f"largest gap needs C = {g.sup_required_C:.4f} at x = {g.sup_required_C_x:g}")
