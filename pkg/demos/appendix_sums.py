"""Head-plus-tail bounds for the three convergent prime sums.

The heads run over the first 26355867 primes, so this needs the 5e8 sieve
(about 300 MB on disk, built once into the cache directory).

Run: python demos/appendix_sums.py
"""
from goldbach_explicit import prime_engine as pe

N0 = 26_355_867
sieve = pe.cached_sieve(500_000_000)
print(f"prime number {N0} is {sieve.nth_prime(N0)}")

labels = {
    "A1_1": "sum log p / (sqrt(p) (p - 1))",
    "A1_2": "sum Lambda(n)^2 / n^2",
    "A1_3": "sum log^2 p / (p^2 - p)",
}
for which, label in labels.items():
    bv = pe.appendix_sum(which, N0, sieve)
    print(f"{label:32s} head {bv.partial:.8f}  tail <= {bv.tail_bound:.3e}  upper {bv.verified_upper:.8f}")

# the empirical check on sum_{n <= x} Lambda(n)^2 / n against its logarithmic bound
for x in (1e4, 1e6, 1e8):
    [c] = pe.lambda_sq_check(x, sieve)
    print(f"x = {x:g}: {c.value:.6f} <= {c.bound:.6f}  ({c.note})")
