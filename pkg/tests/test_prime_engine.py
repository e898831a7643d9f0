import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from goldbach_explicit import prime_engine as pe


def trial_division_primes(n):
    out = []
    for k in range(2, n + 1):
        if all(k % p for p in out if p * p <= k):
            out.append(k)
    return out


def plain_sieve(n):
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p::p] = False
    return flags


def test_small_limits_and_flags():
    s = pe.build_sieve(100)
    assert s.pi(100) == 25
    assert s.is_prime(2) and s.is_prime(3) and not s.is_prime(4) and not s.is_prime(1)
    assert list(s.primes_upto(100)) == trial_division_primes(100)


def test_pi_million_against_trial_division(sieve_small):
    # trial division up to 1e6 would be slow in pure Python; count via the
    # plain (non-segmented) sieve, and trial division on a sub-range
    assert sieve_small.pi(10 ** 6) == 78498
    assert int(plain_sieve(10 ** 6).sum()) == 78498
    assert list(sieve_small.primes_in(999_000, 10 ** 6)) == [
        p for p in range(999_000, 10 ** 6 + 1) if all(p % q for q in trial_division_primes(1000))]


def test_pi_1e8_against_second_sieve(sieve_big):
    flags = plain_sieve(10 ** 8)
    assert sieve_big.pi(10 ** 8) == int(flags.sum()) == 5761455


def test_block_boundaries(sieve_small):
    flags = plain_sieve(10 ** 7)
    span = 2 * pe.BLOCK
    for x in (span - 1, span, span + 1, 2 * span + 3, 10 ** 7):
        assert sieve_small.pi(x) == int(flags[:x + 1].sum())
    assert np.array_equal(sieve_small.primes_in(span - 100, span + 100),
                          np.flatnonzero(flags[span - 100:span + 101]) + span - 100)


def test_nth_prime(sieve_small):
    assert sieve_small.nth_prime(1) == 2
    assert sieve_small.nth_prime(664579) == 9999991
    assert sieve_small.nth_prime(78498) == 999983


def test_psi_theta_examples(sieve_small):
    assert pe.psi(1, sieve_small) == 0 and pe.theta(1, sieve_small) == 0
    expected = 3 * math.log(2) + 2 * math.log(3) + math.log(5) + math.log(7)
    assert abs(pe.psi(10, sieve_small) - expected) < 1e-12
    # prime-power enumeration gives 7.832014
    assert abs(expected - 7.832014180505469) < 1e-12
    x = 10 ** 6
    assert abs(pe.psi(x, sieve_small) - x) <= math.sqrt(x) * math.log(x) ** 2 / (8 * math.pi)


def test_out_of_range(sieve_small):
    with pytest.raises(pe.OutOfRangeError):
        pe.psi(2e7, sieve_small)
    with pytest.raises(ValueError):
        pe.build_sieve(1)
    with pytest.raises(pe.CapacityError):
        pe.build_sieve(10 ** 9, memory_budget=10 ** 6)


def int_root(n, k):
    r = 0
    step = 1 << (n.bit_length() // k + 1)
    while step:
        if (r + step) ** k <= n:
            r += step
        step >>= 1
    return r


@settings(max_examples=100, deadline=None)
@given(st.floats(1.0, 1e7))
def test_psi_theta_identity(sieve_small, x):
    n = math.floor(x)
    roots = [int_root(n, k) for k in range(1, max(2, n.bit_length()) + 1)]
    rhs = math.fsum(pe.theta(r, sieve_small) for r in roots if r >= 2)
    lhs = pe.psi(x, sieve_small)
    assert abs(lhs - rhs) <= 1e-9 * max(1.0, lhs)
    assert lhs >= pe.theta(x, sieve_small) >= 0


def test_psi_brute_force(sieve_small):
    flags = plain_sieve(10 ** 4)
    lam = np.zeros(10 ** 4 + 1)
    for p in np.flatnonzero(flags):
        q = int(p)
        while q <= 10 ** 4:
            lam[q] = math.log(p)
            q *= int(p)
    cum = np.cumsum(lam)
    for x in (2, 3, 4, 97, 1024, 9999, 10 ** 4):
        assert abs(pe.psi(x, sieve_small) - cum[x]) < 1e-9


def test_psi_monotone(sieve_small):
    xs = np.sort(np.random.default_rng(3).uniform(1, 1e6, 200))
    vals = [pe.psi(x, sieve_small) for x in xs]
    assert all(b >= a for a, b in zip(vals, vals[1:]))


def test_goldbach_examples(sieve_small):
    assert pe.is_goldbach(6, sieve_small)
    assert not pe.is_goldbach(4, sieve_small)
    assert pe.is_goldbach(10, sieve_small)
    assert pe.minimal_partner(10, sieve_small) == 3


def test_goldbach_brute_force_agreement(sieve_small):
    primes = set(trial_division_primes(10 ** 4))
    odd = sorted(p for p in primes if p > 2)
    for n in range(2, 10 ** 4 + 1, 2):
        brute = any((n - p) in primes and n - p > 2 for p in odd if p <= n // 2)
        assert pe.is_goldbach(n, sieve_small) == brute


def test_goldbach_vectorized_matches_scalar(sieve_small):
    evens, partner = pe._goldbach_flags(sieve_small, 20_000)
    for n, p in zip(evens[::97], partner[::97]):
        assert p == pe.minimal_partner(int(n), sieve_small)


def test_verify_goldbach_theorem_small(sieve_small):
    r = pe.verify_goldbach_theorem(100, 123, sieve_small)
    assert r.passed and not r.violations
    assert r.max_distance == 4 and r.max_distance_x == 2
    r = pe.verify_goldbach_theorem(10 ** 4, 123, sieve_small)
    assert r.passed and not r.non_goldbach_evens
    # a constant below the sup at x = 2 must be reported as violated there
    bad = pe.verify_goldbach_theorem(100, 5.0, sieve_small)
    assert not bad.passed and bad.violations[0] == 2.0
    assert abs(r.sup_required_C - 4 / math.log(2) ** 2) < 1e-12


def test_appendix_sum_monotonicity(sieve_small):
    prev = None
    for n0 in (1000, 10_000, 100_000, 600_000):
        bv = pe.appendix_sum("A1_1", n0, sieve_small)
        assert bv.tail_bound >= 0
        if prev is not None:
            assert bv.partial >= prev.partial
            assert bv.tail_bound <= prev.tail_bound
            assert bv.verified_upper <= prev.verified_upper
        prev = bv


def test_appendix_tail_dominates_true_remainder(sieve_small):
    # remainder beyond n0 = 1000, measured up to 1e7, must sit under the bound
    for which in ("A1_1", "A1_2", "A1_3"):
        small = pe.appendix_sum(which, 1000, sieve_small)
        big = pe.appendix_sum(which, 600_000, sieve_small)
        assert big.partial - small.partial <= small.tail_bound


def test_appendix_sum_errors(sieve_small):
    with pytest.raises(pe.CutoffTooSmallError):
        pe.appendix_sum("A1_1", 1000, sieve_small, budget=1e-6)
    with pytest.raises(pe.CutoffTooSmallError):
        pe.appendix_sum("A1_1", 5, sieve_small)
    with pytest.raises(pe.OutOfRangeError):
        pe.appendix_sum("A1_1", 10 ** 6, sieve_small)
    with pytest.raises(ValueError):
        pe.BoundedValue(1.0, -1e-3)


def test_lambda_sq_over_n_examples(sieve_small):
    l2, l3 = math.log(2) ** 2, math.log(3) ** 2
    hand = l2 * (1 / 2 + 1 / 4 + 1 / 8) + l3 * (1 / 3 + 1 / 9) + math.log(5) ** 2 / 5 + math.log(7) ** 2 / 7
    assert abs(pe.lambda_sq_over_n(10, sieve_small) - hand) < 1e-12
    assert abs(hand - 2.0158142703636877) < 1e-12
    assert pe.lambda_sq_over_n(1, sieve_small) == 0
    [c] = pe.lambda_sq_check(1e7, sieve_small)
    assert c.passed and "empirical" in c.note


def test_prime_sum_F(sieve_small):
    v0, tail = pe.prime_sum_F(0.0, 10 ** 6, sieve_small)
    assert abs(v0.imag) == 0
    assert abs(v0.real + tail - 1.7214) < 2e-3
    assert abs(v0) + tail <= 1.7215
    for t in (1.0, 10.0, 100.0):
        v, _ = pe.prime_sum_F(t, 10 ** 6, sieve_small)
        vm, _ = pe.prime_sum_F(-t, 10 ** 6, sieve_small)
        assert abs(v) <= 1.7215
        assert abs(vm - v.conjugate()) < 1e-14
    with pytest.raises(ValueError):
        pe.prime_sum_F(0.0, 10 ** 4, sieve_small)


def test_window():
    w = pe.Window(1e-3)
    assert w.ell == math.sqrt(1.001) + 1
    assert 2 < w.ell <= math.sqrt(2) + 1
    with pytest.raises(ValueError):
        pe.Window(0.0)
    with pytest.raises(ValueError):
        pe.Window(1.5)


def test_selberg_trivial_cases(sieve_small):
    assert pe.selberg_integral(1, 0.1, "psi", sieve_small) == 0
    v = pe.selberg_integral(1.5, 0.1, "psi", sieve_small)
    assert abs(v - 0.01 * (1.5 ** 3 - 1) / 3) < 1e-15
    assert abs(v - 0.0079166666) < 1e-9


def test_selberg_exact_small_case(sieve_small):
    # theta increment on [1, 3] with delta = 1: windows (y, 2y]; hand piecewise integral
    d = 1.0
    f = lambda y: sum(math.log(p) for p in (2, 3, 5) if y < p <= 2 * y)
    knots = [1.0, 1.5, 2.0, 2.5, 3.0]
    total = 0.0
    for a, b in zip(knots, knots[1:]):
        c = f(0.5 * (a + b))
        total += (b - a) * ((c - d * a) ** 2 + (c - d * a) * (c - d * b) + (c - d * b) ** 2) / 3
    assert abs(pe.selberg_integral(3.0, d, "theta", sieve_small) - total) < 1e-12


@pytest.mark.parametrize("seed", range(10))
def test_selberg_matches_riemann_oracle(sieve_small, seed):
    rng = np.random.default_rng(seed)
    x = float(rng.uniform(1e3, 1e5))
    delta = float(10 ** rng.uniform(-3, -0.5))
    which = ("psi", "theta")[seed % 2]
    exact = pe.selberg_integral(x, delta, which, sieve_small)
    oracle = pe.selberg_riemann_sum(x, delta, which, sieve_small, 2_000_000)
    assert abs(exact - oracle) <= 1e-3 * exact


def test_selberg_monotone_in_x(sieve_small):
    xs = [10.0, 100.0, 1e3, 1e4, 5e4]
    vals = [pe.selberg_integral(x, 0.01, "psi", sieve_small) for x in xs]
    assert all(b >= a for a, b in zip(vals, vals[1:]))


def test_selberg_chunking_invariant(sieve_small):
    # crossing several y-chunks must agree with the oracle as well
    x = 3 * 2 * pe.BLOCK + 12345.5
    exact = pe.selberg_integral(x, 1e-3, "psi", sieve_small)
    oracle = pe.selberg_riemann_sum(x, 1e-3, "psi", sieve_small, 10 ** 7)
    assert abs(exact - oracle) <= 1e-3 * exact


def test_selberg_breakpoint_budget(sieve_small):
    with pytest.raises(pe.BreakpointOverflowError):
        pe.selberg_integral(1e6, 0.01, "psi", sieve_small, max_breakpoints=1000)
    with pytest.raises(pe.OutOfRangeError):
        pe.selberg_integral(1e7, 0.5, "psi", sieve_small)


def test_selberg_ratio_report(sieve_small):
    checks = pe.selberg_ratio_report([1e6], [1e-2], sieve_small)
    assert len(checks) == 2
    assert all(c.passed is not False for c in checks)
    assert "extrapolated regime" in checks[0].note
    with pytest.raises(ValueError):
        pe.selberg_ratio_report([1e5], [1.0], sieve_small)


def test_sieve_cache_roundtrip(tmp_path):
    s = pe.build_sieve(3 * 10 ** 6)
    path = tmp_path / "s.bin"
    s.save(path)
    t = pe.load_sieve(path)
    assert t.limit == s.limit and np.array_equal(t.bits, s.bits)
    assert t.theta(2.5e6) == s.theta(2.5e6)
    raw = bytearray(path.read_bytes())
    raw[-1] ^= 0xFF
    path.write_bytes(bytes(raw))
    with pytest.raises(ValueError):
        pe.load_sieve(path)
    s2 = pe.cached_sieve(10 ** 5, tmp_path)
    s3 = pe.cached_sieve(10 ** 5, tmp_path)
    assert np.array_equal(s2.bits, s3.bits)
