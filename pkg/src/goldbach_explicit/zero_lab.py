"""Zero-ordinate tables and the sums over zeros built from them.

Only positive ordinates are stored; every sum over zeros mirrors them.
Truncation beyond the last ordinate is covered by the zero-counting
window, never by assuming anything about unlisted zeros.
"""
from __future__ import annotations

import hashlib
import math
import os
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

import numpy as np
from scipy import integrate

from . import registry
from .prime_engine import BoundedValue, PrimeSieve
from .report import Check, finding, upper_check

__all__ = [
    "ZeroTable", "ZeroCountBound", "ZeroTableError", "OutOfTableError", "TailDominatesError",
    "load_zeros", "default_zeros_path", "zero_count", "main_term", "zero_count_window",
    "rigorous_deviation", "zero_sum_kernel", "kernel_rhs", "zero_sum_kernel_check",
    "zero_log_sums", "ZeroLogSums", "window_factor", "window_factor_check",
    "explicit_formula_psi", "ExplicitFormula",
]

TWO_PI = 2.0 * math.pi


class ZeroTableError(ValueError):
    pass


class OutOfTableError(ValueError):
    pass


class TailDominatesError(ArithmeticError):
    pass


@dataclass(frozen=True)
class ZeroTable:
    ordinates: np.ndarray
    precision: int
    source: str = ""

    @property
    def gamma_max(self) -> float:
        return float(self.ordinates[-1])

    def __len__(self) -> int:
        return len(self.ordinates)

    def head(self, n: int) -> "ZeroTable":
        """Table of the first n ordinates."""
        return ZeroTable(self.ordinates[:n], self.precision, self.source)


def default_zeros_path() -> Path:
    env = os.environ.get("GOLDBACH_EXPLICIT_ZEROS")
    if env:
        return Path(env)
    return Path(__file__).resolve().parents[2] / "data" / "zeros_100k.txt"


def _parse(text: str, source: str) -> ZeroTable:
    vals = []
    precision = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        for tok in line.split():
            try:
                v = float(tok)
            except ValueError:
                raise ZeroTableError(f"{source}:{lineno}: cannot parse {tok!r}") from None
            if not math.isfinite(v) or v <= 0:
                raise ZeroTableError(f"{source}:{lineno}: ordinate {tok} is not positive")
            if vals and v <= vals[-1]:
                raise ZeroTableError(f"{source}:{lineno}: {tok} breaks strict monotonicity")
            digits = len(tok.split(".", 1)[1]) if "." in tok else 0
            precision = digits if precision is None else min(precision, digits)
            vals.append(v)
    if not vals:
        raise ZeroTableError(f"{source}: no ordinates")
    if not 14.1347 < vals[0] < 14.1348:
        raise ZeroTableError(f"{source}: first ordinate {vals[0]} is not 14.1347...")
    return ZeroTable(np.array(vals), int(precision), source)


def load_zeros(path=None, cache_dir=None) -> ZeroTable:
    """Read one ascending positive ordinate per line.

    With ``cache_dir`` the parsed table is stored as .npy keyed by the
    SHA-256 of the file contents.
    """
    path = Path(path) if path is not None else default_zeros_path()
    if not path.exists():
        raise FileNotFoundError(f"zeros file {path} not found")
    blob = path.read_bytes()
    if cache_dir is not None:
        key = hashlib.sha256(blob).hexdigest()[:24]
        cached = Path(cache_dir) / f"zeros-{key}.npz"
        if cached.exists():
            with np.load(cached) as z:
                return ZeroTable(z["ordinates"], int(z["precision"]), str(path))
    table = _parse(blob.decode("utf-8"), str(path))
    if cache_dir is not None:
        cached.parent.mkdir(parents=True, exist_ok=True)
        np.savez(cached, ordinates=table.ordinates, precision=table.precision)
    return table


# ---------------------------------------------------------------------------
# counting


def main_term(T):
    T = np.asarray(T, dtype=float)
    return T / TWO_PI * np.log(T / (TWO_PI * math.e)) + 7.0 / 8.0


def rigorous_deviation(T):
    """Unconditional |N(T) - main_term(T)| bound valid for all T >= e.

    max of 0.28 log T and the explicit 0.112 log T + 0.278 log log T + 2.51;
    the former alone is only claimed at large height.
    """
    lt = np.log(np.asarray(T, dtype=float))
    return np.maximum(registry.value("zero_count_deviation") * lt,
                      0.112 * lt + 0.278 * np.log(lt) + 2.51)


@dataclass(frozen=True)
class ZeroCountBound:
    T: float
    main_term: float
    deviation: float

    @property
    def low(self) -> float:
        return self.main_term - self.deviation - 1

    @property
    def high(self) -> float:
        return self.main_term + self.deviation + 1

    def contains(self, n: int) -> bool:
        return self.low <= n <= self.high


def zero_count(T: float, table: ZeroTable) -> int:
    if T <= 0:
        raise ValueError("T must be positive")
    if T > table.gamma_max:
        raise OutOfTableError(f"T = {T} beyond last ordinate {table.gamma_max}")
    return int(np.searchsorted(table.ordinates, T, side="right"))


def zero_count_window(T: float, table: ZeroTable | None = None) -> ZeroCountBound:
    if T <= 0:
        raise ValueError("T must be positive")
    return ZeroCountBound(float(T), float(main_term(T)),
                          registry.value("zero_count_deviation") * math.log(T))


# ---------------------------------------------------------------------------
# kernel sums over zeros


_EXPLICIT_INTERVALS = 1_000_000


def _kernel_tail(t: float, a: float, G: float) -> float:
    """Bound on sum over |gamma| > G of 1/(a + (t - gamma)^2), for |t| < G.

    Unit intervals (u, u+1], u = G + k, hold at most
    main(u+1) - main(u) + 2 D(u+1) zeros; each is weighted by the kernel at
    the interval point nearest t.  Past U = G + 1e6 the count is at most
    K log(u+1) with K = 1/2pi + 2*deviation-per-log, the kernel at most
    4/u^2 (since u >= 2|t|), and the sum is bounded by an integral.
    """
    t = abs(t)
    u = G + np.arange(_EXPLICIT_INTERVALS, dtype=float)
    counts = main_term(u + 1) - main_term(u) + 2 * rigorous_deviation(u + 1)
    near = 1.0 / (a + (u - t) ** 2)
    far = 1.0 / (a + (u + t) ** 2)
    head = math.fsum(counts * (near + far))
    U = G + _EXPLICIT_INTERVALS
    if U < 2 * t + 2:
        raise ValueError("t too close to the end of the table")
    lu = math.log(U)
    k = 1 / TWO_PI + 2 * (0.112 + 0.278 * math.log(lu) / lu + 2.51 / lu + registry.value("zero_count_deviation"))
    A = U - 1
    rest = 2 * 4 * k * (math.log(2 * A) + 1) / A
    return (head + rest) * (1 + 1e-12)


def zero_sum_kernel(t: float, a: float, table: ZeroTable) -> BoundedValue:
    """Sum over all zeros (both signs) of 1/(a + (t - gamma)^2).

    ``partial`` is the exact sum over the table; ``tail_bound`` covers
    every zero above the last ordinate.
    """
    if a <= 0:
        raise ValueError("a must be positive")
    if abs(t) > table.gamma_max / 2:
        raise ValueError("|t| must not exceed gamma_max/2")
    g = table.ordinates
    tt = abs(float(t))
    terms = 1.0 / (a + (tt - g) ** 2) + 1.0 / (a + (tt + g) ** 2)
    return BoundedValue(math.fsum(terms), _kernel_tail(tt, a, table.gamma_max))


def kernel_rhs(t: float, a: float) -> float | None:
    """Right-hand side of the kernel inequality, or None outside its hypothesis."""
    at = abs(t)
    if a == 6.0:
        if at < registry.value("kernel6_tmin"):
            return None
        return math.log(at) / registry.value("kernel6_denominator")
    if a == 0.25:
        if at < registry.value("kernel_quarter_tmin"):
            return None
        return registry.value("kernel_quarter_factor") * math.log(at)
    return None


def zero_sum_kernel_check(t: float, a: float, table: ZeroTable) -> Check:
    bv = zero_sum_kernel(t, a, table)
    rhs = kernel_rhs(t, a)
    name = f"zero_sum_kernel(t={t:g}, a={a:g})"
    key = "kernel6_denominator" if a == 6.0 else "kernel_quarter_factor"
    if rhs is None:
        return finding(name, bv.verified_upper, note=f"outside hypothesis; head={bv.partial:.10g}")
    if bv.tail_bound > 0.1 * rhs:
        raise TailDominatesError(f"{name}: tail {bv.tail_bound:.3g} exceeds 10% of bound {rhs:.3g}")
    return upper_check(name, bv.partial, rhs, error=bv.tail_bound, anchor=registry.anchor(key),
                       note=f"head={bv.partial:.10g} tail<={bv.tail_bound:.3g}")


# ---------------------------------------------------------------------------
# log sums


@dataclass(frozen=True)
class ZeroLogSums:
    T: float
    sum_log: float
    sum_log_over_sq: BoundedValue
    density_integral: float
    budget: float

    @property
    def consistent(self) -> bool:
        return abs(self.sum_log - self.density_integral) <= self.budget


def _density_integral(T: float) -> float:
    """(1/2pi) int_{2pi e}^T log t log(t/2pi) dt in closed form."""
    c = math.log(TWO_PI)

    def prim(t):
        l = math.log(t)
        # int log t (log t - c) dt = t(l^2 - 2l + 2) - c t (l - 1)
        return t * (l * l - 2 * l + 2) - c * t * (l - 1)

    T1 = TWO_PI * math.e
    return (prim(T) - prim(T1)) / TWO_PI


def zero_log_sums(T: float, table: ZeroTable) -> ZeroLogSums:
    """Sum_{gamma <= T} log gamma, and Sum_{gamma > T} log gamma / gamma^2.

    The first sum is compared with the density integral; with
    R(t) = N(t) - main(t) bounded by 0.28 log t + 1 the two differ by at
    most the returned ``budget`` (integration by parts on (2 pi e, T]).
    """
    if T > table.gamma_max:
        raise OutOfTableError(f"T = {T} beyond last ordinate {table.gamma_max}")
    g = table.ordinates
    n = int(np.searchsorted(g, T, side="right"))
    sum_log = math.fsum(np.log(g[:n]))
    G = table.gamma_max
    head = math.fsum(np.log(g[n:]) / g[n:] ** 2)
    # int_G^inf f dN with f = log t/t^2: by parts, -f(G)N(G) + int |f'| N,
    # with N(t) <= main(t) + D(t) for t > G.
    f = lambda t: math.log(t) / t ** 2
    df = lambda t: (2 * math.log(t) - 1) / t ** 3
    integrand = lambda v: df(math.exp(v)) * (float(main_term(math.exp(v))) + float(rigorous_deviation(math.exp(v)))) * math.exp(v)
    val, err = integrate.quad(integrand, math.log(G), math.log(G) + 60, epsabs=0, epsrel=1e-11, limit=400)
    # beyond e^60 G the integrand is < t^-1.9 territory; bound crudely
    far_t = G * math.exp(60)
    far = 4 * math.log(far_t) ** 2 / far_t
    tail = max(0.0, (val + 10 * err + far) * (1 + 1e-12) - f(G) * len(g))
    A = registry.value("zero_count_deviation")
    T1 = TWO_PI * math.e
    if T < T1:
        budget = math.log(g[0]) if n else 0.0
        dens = 0.0
    else:
        lT, l1 = math.log(T), math.log(T1)
        budget = (math.log(g[0]) + (A * lT + 1) * lT + (A * l1 + 1) * l1
                  + A * (lT * lT - l1 * l1) / 2 + math.log(T / T1))
        dens = _density_integral(T)
    return ZeroLogSums(float(T), sum_log, BoundedValue(head, tail), dens, budget)


# ---------------------------------------------------------------------------
# window factor and explicit formula


def window_factor(delta, t):
    """|((1+delta)^(1/2+it) - 1)/(1/2+it)|, vectorized and cancellation-free."""
    delta = np.asarray(delta, dtype=float)
    t = np.asarray(t, dtype=float)
    if np.any((delta <= 0) | (delta > 1)):
        raise ValueError("delta must lie in (0, 1]")
    L = np.log1p(delta)
    x, y = 0.5 * L, t * L
    em = np.expm1(x)
    # e^(x+iy) - 1 = (expm1(x) cos y - 2 sin^2(y/2)) + i e^x sin y
    re = em * np.cos(y) - 2.0 * np.sin(y / 2) ** 2
    im = np.exp(x) * np.sin(y)
    out = np.hypot(re, im) / np.hypot(0.5, t)
    return float(out) if out.ndim == 0 else out


def window_factor_check(delta, t) -> Check:
    """Largest ratio of window_factor to min(delta, ell/|t|) over the inputs."""
    delta = np.asarray(delta, dtype=float)
    t = np.asarray(t, dtype=float)
    ell = np.sqrt(1 + delta) + 1
    with np.errstate(divide="ignore"):
        bound = np.minimum(delta, np.where(t == 0, np.inf, ell / np.abs(t)))
    ratio = np.atleast_1d(window_factor(delta, t) / bound)
    i = int(np.argmax(ratio))
    return upper_check("window_factor / min(delta, ell/|t|)", float(ratio[i]), 1.0,
                       anchor="|((1+delta)^rho - 1)/rho| <= min(delta, ell/|t|)",
                       note=f"{ratio.size} points; worst at index {i}")


class ExplicitFormula(NamedTuple):
    approx: float
    exact: float
    residual: float


def explicit_formula_psi(y: float, table: ZeroTable, sieve: PrimeSieve,
                         n_zeros: int | None = None) -> ExplicitFormula:
    """Truncated explicit formula for psi(y) against the sieve value."""
    if y < 2:
        raise ValueError("y must be at least 2")
    if float(y).is_integer():
        y = y + 1e-6
    g = table.ordinates if n_zeros is None else table.ordinates[:n_zeros]
    rho = 0.5 + 1j * g
    ly = math.log(y)
    terms = np.exp(rho * ly) / rho
    zsum = 2.0 * math.fsum(terms.real)
    approx = y - zsum - registry.value("log_2pi") - 0.5 * math.log1p(-1.0 / (y * y))
    exact = sieve.psi(y)
    return ExplicitFormula(approx, exact, approx - exact)
