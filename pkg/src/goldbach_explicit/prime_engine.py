"""Sieve-backed prime data and the prime sums used by the constant chain.

The sieve is odd-only and segmented; flags are kept bit-packed so that the
limit needed for the large prime sums (p_26355867 = 499999993) fits in
~31 MB.  Per-block cumulative tables make pi(x) and theta(x) point queries
O(block).
"""
from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Literal

import numpy as np
from scipy import integrate

from . import registry
from .report import Check, finding, upper_check

__all__ = [
    "PrimeSieve", "BoundedValue", "Window", "build_sieve", "load_sieve", "cached_sieve",
    "psi", "theta", "is_goldbach", "minimal_partner", "verify_goldbach_theorem",
    "GoldbachReport", "appendix_sum", "appendix_tail_integral", "lambda_sq_over_n",
    "lambda_sq_check", "prime_sum_F", "selberg_integral", "selberg_riemann_sum",
    "selberg_ratio_report", "CapacityError", "OutOfRangeError", "CutoffTooSmallError",
    "BreakpointOverflowError",
]

BLOCK = 1 << 20            # odd numbers per segment
DEFAULT_MEMORY_BUDGET = 1 << 30
_MAGIC = b"GBXSIEVE"
_VERSION = 1
_HEADER = struct.Struct("<8sIQQQ")  # magic, version, limit, block, pi(limit)


class CapacityError(MemoryError):
    pass


class OutOfRangeError(ValueError):
    pass


class CutoffTooSmallError(ValueError):
    pass


class BreakpointOverflowError(RuntimeError):
    pass


def _small_sieve(n: int) -> np.ndarray:
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p::p] = False
    return np.flatnonzero(flags)


def _iroot(n: int, k: int) -> int:
    """Largest r with r**k <= n."""
    if n < 1:
        return 0
    if k == 1:
        return n
    r = int(round(n ** (1.0 / k)))
    while r ** k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


@dataclass
class PrimeSieve:
    """Primality flags for odd n <= limit, packed 8 per byte (bit i <-> n = 2i+1).

    ``theta_cum[b]`` is theta at the end of block b-1 (log 2 included) and
    ``count_cum[b]`` the matching prime count.
    """

    limit: int
    bits: np.ndarray
    theta_cum: np.ndarray
    count_cum: np.ndarray
    block: int = BLOCK

    @property
    def n_odd(self) -> int:
        return (self.limit + 1) // 2

    @property
    def n_blocks(self) -> int:
        return len(self.count_cum) - 1

    def block_flags(self, b: int) -> np.ndarray:
        lo = b * self.block
        hi = min(lo + self.block, self.n_odd)
        return np.unpackbits(self.bits[lo // 8:(hi + 7) // 8], bitorder="little")[:hi - lo].astype(bool)

    def odd_flags(self, upto: int | None = None) -> np.ndarray:
        """Unpacked flags for odd n <= upto (default: limit); index i <-> 2i+1."""
        n = self.n_odd if upto is None else min(self.n_odd, (upto + 1) // 2)
        return np.unpackbits(self.bits[:(n + 7) // 8], bitorder="little")[:n].astype(bool)

    def is_prime(self, n: int) -> bool:
        n = int(n)
        if n > self.limit or n < 0:
            raise OutOfRangeError(f"{n} outside sieve range [0, {self.limit}]")
        if n == 2:
            return True
        if n < 2 or n % 2 == 0:
            return False
        i = n // 2
        return bool((self.bits[i >> 3] >> (i & 7)) & 1)

    def _check(self, x: float) -> int:
        n = math.floor(x)
        if n > self.limit:
            raise OutOfRangeError(f"x = {x} exceeds sieve limit {self.limit}")
        return n

    def primes_in(self, lo: int, hi: int) -> np.ndarray:
        """All primes p with lo <= p <= hi (int64)."""
        lo = max(int(lo), 2)
        hi = min(int(hi), self.limit)
        if hi < lo:
            return np.empty(0, dtype=np.int64)
        parts = []
        if lo <= 2 <= hi:
            parts.append(np.array([2], dtype=np.int64))
        i0, i1 = max(lo // 2, 1), (hi - 1) // 2   # odd indices covering [lo, hi]
        if i1 >= i0:
            byte0, byte1 = i0 // 8, i1 // 8 + 1
            flags = np.unpackbits(self.bits[byte0:byte1], bitorder="little").astype(bool)
            idx = np.flatnonzero(flags[i0 - byte0 * 8:i1 - byte0 * 8 + 1]) + i0
            odd = 2 * idx.astype(np.int64) + 1
            parts.append(odd[odd >= lo])
        return np.concatenate(parts) if parts else np.empty(0, dtype=np.int64)

    def primes_upto(self, n: int) -> np.ndarray:
        return self.primes_in(2, n)

    def iter_blocks(self, hi: int | None = None) -> Iterator[np.ndarray]:
        """Primes block by block, ascending, up to ``hi``."""
        hi = self.limit if hi is None else min(hi, self.limit)
        start = 2
        span = 2 * self.block
        while start <= hi:
            stop = min(hi, (start // span + 1) * span - 1)
            yield self.primes_in(start, stop)
            start = stop + 1

    def pi(self, x: float) -> int:
        n = self._check(x)
        if n < 2:
            return 0
        i = (n - 1) // 2
        b = i // self.block
        flags = self.block_flags(b)[:i - b * self.block + 1]
        return int(self.count_cum[b]) + int(flags.sum())

    def nth_prime(self, k: int) -> int:
        if k < 1 or k > self.count_cum[-1]:
            raise OutOfRangeError(f"prime index {k} outside sieve")
        if k == 1:
            return 2
        b = int(np.searchsorted(self.count_cum, k, side="left")) - 1
        idx = np.flatnonzero(self.block_flags(b))
        j = k - int(self.count_cum[b]) - 1
        return int(2 * (b * self.block + idx[j]) + 1)

    def theta(self, x: float) -> float:
        n = self._check(x)
        if n < 2:
            return 0.0
        i = (n - 1) // 2
        b = i // self.block
        ps = self.primes_in(max(3, 2 * b * self.block + 1), n)
        return math.fsum([float(self.theta_cum[b]), math.fsum(np.log(ps.astype(float)))])

    def psi(self, x: float) -> float:
        n = self._check(x)
        parts = []
        k = 1
        while (1 << k) <= n:
            parts.append(self.theta(_iroot(n, k)))
            k += 1
        return math.fsum(parts)

    # -- cache file -------------------------------------------------------
    def save(self, path) -> None:
        with open(path, "wb") as fh:
            fh.write(_HEADER.pack(_MAGIC, _VERSION, self.limit, self.block, int(self.count_cum[-1])))
            fh.write(self.bits.tobytes())


def build_sieve(limit: int, *, block: int = BLOCK,
                memory_budget: int = DEFAULT_MEMORY_BUDGET) -> PrimeSieve:
    """Segmented odd-only sieve of Eratosthenes up to ``limit``."""
    if not 2 <= limit <= 10 ** 10:
        raise ValueError("limit must lie in [2, 1e10]")
    n_odd = (limit + 1) // 2
    if n_odd // 8 + 4 * block > memory_budget:
        raise CapacityError(f"sieve to {limit} needs ~{n_odd // 8} bytes, over budget")
    base = _small_sieve(math.isqrt(limit) + 1)[1:]  # odd base primes
    n_blocks = (n_odd + block - 1) // block
    bits = np.zeros((n_odd + 7) // 8, dtype=np.uint8)
    theta_parts = [math.log(2.0)]
    counts = [1]
    for b in range(n_blocks):
        i_lo = b * block
        i_hi = min(i_lo + block, n_odd)
        lo, hi = 2 * i_lo + 1, 2 * (i_hi - 1) + 1   # odd n in [lo, hi]
        mask = np.ones(i_hi - i_lo, dtype=bool)
        if i_lo == 0:
            mask[0] = False  # n = 1
        for p in base:
            p = int(p)
            pp = p * p
            if pp > hi:
                break
            start = max(pp, ((lo + p - 1) // p) * p)
            if start % 2 == 0:
                start += p
            mask[(start - lo) // 2::p] = False
        packed = np.packbits(mask, bitorder="little")
        bits[i_lo // 8:i_lo // 8 + len(packed)] |= packed
        idx = np.flatnonzero(mask)
        theta_parts.append(math.fsum(np.log((2 * (idx + i_lo) + 1).astype(float))))
        counts.append(len(idx))
    theta_cum = np.array([math.fsum(theta_parts[:k + 1]) for k in range(n_blocks + 1)])
    count_cum = np.cumsum(np.array(counts, dtype=np.int64))
    # theta_cum[b] / count_cum[b] must describe everything before block b
    return PrimeSieve(limit, bits, theta_cum, count_cum, block)


def load_sieve(path) -> PrimeSieve:
    """Read a cache file written by :meth:`PrimeSieve.save`; recount to verify."""
    with open(path, "rb") as fh:
        head = fh.read(_HEADER.size)
        magic, version, limit, block, stored_pi = _HEADER.unpack(head)
        if magic != _MAGIC or version != _VERSION:
            raise ValueError(f"{path}: not a version-{_VERSION} sieve cache")
        bits = np.frombuffer(fh.read(), dtype=np.uint8).copy()
    n_odd = (limit + 1) // 2
    if len(bits) != (n_odd + 7) // 8:
        raise ValueError(f"{path}: truncated bit-set")
    n_blocks = (n_odd + block - 1) // block
    theta_parts = [math.log(2.0)]
    counts = [1]
    for b in range(n_blocks):
        i_lo, i_hi = b * block, min((b + 1) * block, n_odd)
        flags = np.unpackbits(bits[i_lo // 8:(i_hi + 7) // 8], bitorder="little")[:i_hi - i_lo]
        idx = np.flatnonzero(flags)
        theta_parts.append(math.fsum(np.log((2 * (idx + i_lo) + 1).astype(float))))
        counts.append(len(idx))
    if sum(counts) != stored_pi:
        raise ValueError(f"{path}: integrity check failed (pi mismatch)")
    theta_cum = np.array([math.fsum(theta_parts[:k + 1]) for k in range(n_blocks + 1)])
    return PrimeSieve(int(limit), bits, theta_cum, np.cumsum(np.array(counts, dtype=np.int64)), int(block))


def cached_sieve(limit: int, cache_dir=None) -> PrimeSieve:
    """Load the sieve for ``limit`` from ``cache_dir`` or build and store it."""
    if cache_dir is None:
        return build_sieve(limit)
    path = Path(cache_dir) / f"sieve-v{_VERSION}-{limit}-{BLOCK}.bin"
    if path.exists():
        try:
            return load_sieve(path)
        except ValueError:
            path.unlink()
    s = build_sieve(limit)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    s.save(tmp)
    tmp.replace(path)
    return s


def psi(x: float, s: PrimeSieve) -> float:
    return s.psi(x)


def theta(x: float, s: PrimeSieve) -> float:
    return s.theta(x)


# ---------------------------------------------------------------------------
# Goldbach numbers


def minimal_partner(n: int, s: PrimeSieve) -> int | None:
    """Smallest odd prime p with n - p an odd prime, or None."""
    n = int(n)
    if n > s.limit:
        raise OutOfRangeError(f"{n} exceeds sieve limit {s.limit}")
    if n < 6 or n % 2:
        return None
    for p in s.primes_in(3, n // 2):
        if s.is_prime(n - int(p)):
            return int(p)
    return None


def is_goldbach(n: int, s: PrimeSieve) -> bool:
    """True iff n is the sum of two odd primes."""
    return minimal_partner(n, s) is not None


@dataclass
class GoldbachReport:
    N: int
    C: float
    checked_evens: int
    non_goldbach_evens: list[int]
    violations: list[float]
    max_distance: float
    max_distance_x: float
    sup_required_C: float
    sup_required_C_x: float
    max_min_partner: int
    max_min_partner_n: int
    unverified_top: float | None

    @property
    def passed(self) -> bool:
        return not self.violations


def _goldbach_flags(s: PrimeSieve, top: int, chunk: int = 1 << 22):
    """Minimal partner for every even n in [6, top]; 0 where none exists."""
    odd = s.odd_flags(top)
    small = s.primes_in(3, max(3, min(top // 2, 10 ** 6)))
    evens = np.arange(6, top + 1, 2, dtype=np.int64)
    partner = np.zeros(len(evens), dtype=np.int64)
    for c0 in range(0, len(evens), chunk):
        n = evens[c0:c0 + chunk]
        pos = np.arange(c0, c0 + len(n))
        for p in small:
            p = int(p)
            live = n - p >= p
            if not live.all():
                n, pos = n[live], pos[live]
            if len(n) == 0:
                break
            hit = odd[(n - p) // 2]
            partner[pos[hit]] = p
            n, pos = n[~hit], pos[~hit]
            if len(n) == 0:
                break
        for k, nn in zip(pos, n):  # beyond the small-prime table: scalar search
            partner[k] = minimal_partner(int(nn), s) or 0
    return evens, partner


def verify_goldbach_theorem(N: int, C: float, s: PrimeSieve) -> GoldbachReport:
    """Check that (x, x + C log^2 x] holds a Goldbach number for every real x in [2, N].

    The next Goldbach number after x is piecewise constant, so over each gap
    [g_k, g_{k+1}) the worst point is x = g_k; checking those points (and
    x = 2) covers every real x, a superset of any integer/midpoint grid.
    """
    if N > s.limit:
        raise OutOfRangeError("N exceeds sieve limit")
    top = min(s.limit, int(N) + 1000)
    top -= top % 2
    evens, partner = _goldbach_flags(s, top)
    good = evens[partner > 0]
    bad = evens[partner == 0]
    k = int(np.argmax(partner))
    # points x = 2 and x = each Goldbach number <= N
    xs = np.concatenate(([2.0], good[good <= N].astype(float)))
    nxt_idx = np.searchsorted(good, xs, side="right")
    unverified = None
    has_next = nxt_idx < len(good)
    if not has_next.all():
        unverified = float(xs[~has_next][0])
    xs, nxt = xs[has_next], good[nxt_idx[has_next]].astype(float)
    dist = nxt - xs
    need = dist / np.log(xs) ** 2
    viol = xs[dist > C * np.log(xs) ** 2]
    i = int(np.argmax(dist))
    j = int(np.argmax(need))
    return GoldbachReport(
        N=N, C=C, checked_evens=len(evens), non_goldbach_evens=[int(b) for b in bad[:100]],
        violations=[float(v) for v in viol[:100]], max_distance=float(dist[i]),
        max_distance_x=float(xs[i]), sup_required_C=float(need[j]), sup_required_C_x=float(xs[j]),
        max_min_partner=int(partner[k]), max_min_partner_n=int(evens[k]),
        unverified_top=unverified,
    )


# ---------------------------------------------------------------------------
# Prime sums with rigorous tails


@dataclass(frozen=True)
class BoundedValue:
    """A computed head plus a rigorous bound on everything omitted."""

    partial: float
    tail_bound: float

    def __post_init__(self):
        if not self.tail_bound >= 0:
            raise ValueError("tail_bound must be nonnegative")

    @property
    def verified_upper(self) -> float:
        return self.partial + self.tail_bound


Which = Literal["A1_1", "A1_2", "A1_3"]


def _term(which: str, p: np.ndarray) -> np.ndarray:
    lp = np.log(p)
    if which == "A1_1":
        return lp / (np.sqrt(p) * (p - 1.0))
    if which == "A1_2":
        return lp * lp / (p * p - 1.0)
    if which == "A1_3":
        return lp * lp / (p * p - p)
    raise ValueError(f"unknown sum {which!r}")


def _majorant(which: str, x: float) -> float:
    """Term evaluated at the lower bound n log n for the n-th prime."""
    y = x * math.log(x)
    ly = math.log(y)
    if which == "A1_1":
        return ly / (math.sqrt(y) * (y - 1.0))
    if which == "A1_2":
        return ly * ly / (y * y - 1.0)
    return ly * ly / (y * y - y)


_FAR = 1e16


def _far_tail(which: str, X: float) -> float:
    """Closed-form bound on int_X^inf of the majorant (X >= 1e16)."""
    lX = math.log(X)
    grow = 1.0 + math.log(lX) / lX      # log(x log x) <= log x * grow for x >= X
    y = X * lX
    if which == "A1_1":
        c = 1.0 / (1.0 - 1.0 / y)
        # int_X^inf log x x^-3/2 dx = 2 X^-1/2 (log X + 2)
        return c * grow / lX ** 1.5 * 2.0 / math.sqrt(X) * (lX + 2.0)
    c = 1.0 / (1.0 - 1.0 / y)
    # int_X^inf log^2 x / x^2 dx = (log^2 X + 2 log X + 2)/X
    return c * grow ** 2 / lX ** 2 * (lX * lX + 2 * lX + 2) / X


def appendix_tail_integral(which: str, n0: int) -> float:
    """Outward-rounded bound on int_{n0}^inf of the term at n log n."""
    if n0 < 10:
        raise CutoffTooSmallError("majorant argument needs n0 >= 10")
    a, b = math.log(n0), math.log(_FAR)
    f = lambda u: _majorant(which, math.exp(u)) * math.exp(u)
    val, err = integrate.quad(f, a, b, epsabs=0.0, epsrel=1e-12, limit=200)
    near = (val + 10 * err) * (1 + 1e-12)
    return near + _far_tail(which, _FAR)


def _head(which: str, s: PrimeSieve, n0: int) -> float:
    if s.count_cum[-1] < n0:
        raise OutOfRangeError(f"sieve holds {int(s.count_cum[-1])} primes, need {n0}")
    pmax = s.nth_prime(n0)
    parts = []
    for ps in s.iter_blocks(pmax):
        if len(ps):
            parts.append(math.fsum(_term(which, ps.astype(float))))
    return math.fsum(parts)


def appendix_sum(which: Which, cutoff_index: int, s: PrimeSieve, *,
                 budget: float | None = None) -> BoundedValue:
    """Sum over all primes: exact head over the first ``cutoff_index`` primes
    plus an integral tail from p_n > n log n.

    ``A1_1``: log p/(sqrt(p)(p-1)); ``A1_2``: log^2 p/(p^2-1) (= sum of
    Lambda(n)^2/n^2); ``A1_3``: log^2 p/(p^2-p).
    """
    tail = appendix_tail_integral(which, cutoff_index)
    if budget is not None and tail > budget:
        raise CutoffTooSmallError(f"tail bound {tail:.3e} exceeds budget {budget:.3e}")
    return BoundedValue(_head(which, s, cutoff_index), tail)


def lambda_sq_over_n(x: float, s: PrimeSieve) -> float:
    """Sum_{n <= x} Lambda(n)^2 / n."""
    n = s._check(x)
    if n < 2:
        return 0.0
    parts = []
    for ps in s.iter_blocks(n):
        if len(ps):
            pf = ps.astype(float)
            parts.append(math.fsum(np.log(pf) ** 2 / pf))
    for p in s.primes_upto(math.isqrt(n)):
        p = int(p)
        lp2 = math.log(p) ** 2
        q = p * p
        while q <= n:
            parts.append(lp2 / q)
            q *= p
    return math.fsum(parts)


def lambda_sq_check(x: float, s: PrimeSieve) -> list[Check]:
    """Compare Sum Lambda^2(n)/n with log^2(x)/2 + 4.5222.

    The inequality is only claimed for x >= 1e13, so below that the
    comparison is an empirical finding (pass is still recorded).
    """
    val = lambda_sq_over_n(x, s)
    c = registry.value("lambda_sq_over_n_const")
    rhs = math.log(x) ** 2 / 2 + c
    note = "" if x >= registry.value("lambda_sq_tmin") else "empirical: x below 1e13"
    return [upper_check("lambda_sq_over_n", val, rhs, anchor=registry.anchor("lambda_sq_over_n_const"),
                        note=note)]


def prime_sum_F(t, cutoff: int, s: PrimeSieve):
    """Sum_p log p / (p^(1/2+it) (p^(1+2it) - 1)) over p <= cutoff, with tail bound.

    Every term is dominated by log p/(sqrt(p)(p-1)), so the tail is at most
    min(integral majorant from p_n > n log n, 1.7215 - head at t=0); the
    second form leans on the verified bound for the full sum.
    """
    if cutoff > s.limit:
        raise OutOfRangeError("cutoff exceeds sieve limit")
    if cutoff < 10 ** 5:
        raise ValueError("cutoff must be at least 1e5")
    ps = s.primes_upto(cutoff).astype(float)
    lp = np.log(ps)
    sq = np.sqrt(ps)
    tt = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty(tt.shape, dtype=complex)
    for i, tv in enumerate(tt):
        e = np.exp(-1j * tv * lp)           # p^-it
        terms = lp * e / (sq * (ps / (e * e) - 1.0))
        out[i] = complex(math.fsum(terms.real), math.fsum(terms.imag))
    head0 = math.fsum(lp / (sq * (ps - 1.0)))
    tail_int = appendix_tail_integral("A1_1", len(ps))
    tail = min(tail_int, registry.value("prime_sum_sqrt") - head0)
    if np.ndim(t) == 0:
        return complex(out[0]), tail
    return out, tail


# ---------------------------------------------------------------------------
# Selberg integrals by exact event sweep


@dataclass(frozen=True)
class Window:
    delta: float

    def __post_init__(self):
        if not 0 < self.delta <= 1:
            raise ValueError("delta must lie in (0, 1]")

    @property
    def ell(self) -> float:
        return math.sqrt(1 + self.delta) + 1


def _prime_powers(s: PrimeSieve, top: int):
    """(q, log p) for prime powers p^k <= top with k >= 2."""
    qs, ws = [], []
    for p in s.primes_upto(math.isqrt(top)):
        p = int(p)
        lp = math.log(p)
        q = p * p
        while q <= top:
            qs.append(q)
            ws.append(lp)
            q *= p
    order = np.argsort(qs, kind="stable")
    return np.array(qs, dtype=np.int64)[order], np.array(ws)[order]


def _piece_integrals(c: np.ndarray, a: np.ndarray, b: np.ndarray, delta: float) -> np.ndarray:
    """int_a^b (c - delta y)^2 dy, written to avoid cancellation."""
    ua = c - delta * a
    ub = c - delta * b
    return (b - a) * (ua * ua + ua * ub + ub * ub) / 3.0


def selberg_integral(x: float, w: Window | float, which: Literal["psi", "theta"], s: PrimeSieve,
                     *, max_breakpoints: int = 50_000_000) -> float:
    """J(x, delta) = int_1^x (f((1+delta)y) - f(y) - delta y)^2 dy, f = psi or theta, exactly.

    Between consecutive breakpoints {q} U {q/(1+delta)} (q prime, or prime
    power for psi) the increment f((1+delta)y) - f(y) is a constant c, so the
    integral is a sum of closed-form quadratics.  Events are streamed in
    y-chunks with the running c carried across chunk boundaries.
    """
    w = w if isinstance(w, Window) else Window(float(w))
    d = w.delta
    if x <= 1:
        return 0.0
    top = math.floor((1 + d) * x)
    if top > s.limit:
        raise OutOfRangeError(f"(1+delta)x = {(1 + d) * x} exceeds sieve limit {s.limit}")
    if which not in ("psi", "theta"):
        raise ValueError("which must be 'psi' or 'theta'")
    if which == "psi":
        pq, pw = _prime_powers(s, top)
    else:
        pq, pw = np.empty(0, dtype=np.int64), np.empty(0)
    span = float(2 * s.block)
    parts = []
    c = 0.0
    count = 0
    lo = 1.0
    while lo < x:
        hi = min(lo + span, float(x))
        last = hi >= x
        # minus events at y = q in [lo, hi)
        qm = s.primes_in(math.ceil(lo), math.ceil(hi) - 1 if not last else math.floor(hi))
        qm = qm[(qm >= lo) & ((qm < hi) | last & (qm <= hi))]
        # plus events at y = q/(1+d) in [lo, hi)
        qp = s.primes_in(math.floor(lo * (1 + d)) - 1, math.ceil(hi * (1 + d)) + 1)
        yp = qp / (1 + d)
        keep = (yp >= lo) & ((yp < hi) | last & (yp <= hi))
        qp, yp = qp[keep], yp[keep]
        ev_y = [qm.astype(float), yp]
        ev_w = [-np.log(qm.astype(float)), np.log(qp.astype(float))]
        if len(pq):
            sel = (pq >= lo) & ((pq < hi) | last & (pq <= hi))
            ev_y.append(pq[sel].astype(float))
            ev_w.append(-pw[sel])
            yq = pq / (1 + d)
            sel = (yq >= lo) & ((yq < hi) | last & (yq <= hi))
            ev_y.append(yq[sel])
            ev_w.append(pw[sel])
        ey = np.concatenate(ev_y)
        ew = np.concatenate(ev_w)
        count += len(ey)
        if count > max_breakpoints:
            raise BreakpointOverflowError(f"more than {max_breakpoints} breakpoints")
        order = np.argsort(ey, kind="stable")
        ey, ew = ey[order], ew[order]
        knots = np.concatenate(([lo], ey, [hi]))
        levels = c + np.concatenate(([0.0], np.cumsum(ew)))
        parts.append(math.fsum(_piece_integrals(levels, knots[:-1], knots[1:], d)))
        c = float(levels[-1])
        lo = hi
    return math.fsum(parts)


def selberg_riemann_sum(x: float, delta: float, which: str, s: PrimeSieve, nodes: int) -> float:
    """Midpoint-rule oracle for J(x, delta), evaluating f directly at each node."""
    top = math.floor((1 + delta) * x)
    ps = s.primes_upto(top)
    q = ps.astype(np.int64)
    wq = np.log(ps.astype(float))
    if which == "psi":
        pq, pw = _prime_powers(s, top)
        q = np.concatenate((q, pq))
        wq = np.concatenate((wq, pw))
        order = np.argsort(q, kind="stable")
        q, wq = q[order], wq[order]
    cum = np.concatenate(([0.0], np.cumsum(wq)))
    qf = q.astype(float)
    h = (x - 1.0) / nodes
    total = 0.0
    step = 1 << 20
    for i0 in range(0, nodes, step):
        y = 1.0 + (np.arange(i0, min(nodes, i0 + step)) + 0.5) * h
        f_hi = cum[np.searchsorted(qf, (1 + delta) * y, side="right")]
        f_lo = cum[np.searchsorted(qf, y, side="right")]
        v = f_hi - f_lo - delta * y
        total += float(np.sum(v * v))
    return total * h


def selberg_ratio_report(x_list, delta_list, s: PrimeSieve) -> list[Check]:
    """J_psi, J_theta against delta log^2(2.0001/delta) x^2 on a desk-scale grid.

    The published constants need x >= 1e13 and delta <= 1e-13; here a ratio
    below the constant is recorded as a pass and an exceedance only as a
    finding.  delta in (1e-13, 0.5] is accepted as the extrapolated regime.
    """
    out = []
    ell_up = registry.value("ell_upper")
    for x in x_list:
        for d in delta_list:
            if not 0 < d <= 0.5:
                raise ValueError(f"delta = {d} outside (0, 0.5]")
            regime = "hypothesis regime" if d <= registry.value("delta_max") else "extrapolated regime"
            norm = d * math.log(ell_up / d) ** 2 * x * x
            for which, key in (("psi", "jpsi_const"), ("theta", "jtheta_const")):
                j = selberg_integral(x, d, which, s)
                r = j / norm
                bound = registry.value(key)
                name = f"J_{which}(x={x:g}, delta={d:g}) ratio"
                note = f"{regime}; J = {j:.10g}; desk scale, x < 1e13"
                if r < bound:
                    out.append(Check(name, r, bound, 0.0, True, registry.anchor(key), note))
                else:
                    out.append(finding(name, r, bound, anchor=registry.anchor(key), note=note))
    return out
