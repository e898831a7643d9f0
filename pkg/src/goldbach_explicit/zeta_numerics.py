"""Evaluation of zeta, zeta' and zeta'/zeta for Re s >= 1/2, away from and near s = 1.

Away from the pole everything goes through one vectorised Euler-Maclaurin
kernel (:func:`zeta_batch`).  Close to s = 1 the Laurent series in the
Stieltjes constants takes over, which is also how the regularised quantity
zeta'/zeta(1+it) + 1/(it) is kept free of cancellation for tiny t.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import bernoulli

from . import registry

__all__ = [
    "EvalConfig", "StieltjesTable", "STIELTJES", "PoleProximityError", "ConvergenceError",
    "DivisionInstabilityError", "RadiusError", "zeta_batch", "zeta_em", "zeta_prime_em",
    "log_deriv", "log_deriv_line", "log_deriv_line_array", "regularized_logderiv",
    "regularized_logderiv_array", "laurent_zeta", "laurent_remainder_bound",
    "regularized_series", "regular_parts", "check_logderiv_bound", "LogDerivBoundReport",
]

POLE_RADIUS = 1e-8
SWITCH_T = 1e-3
_EPS = np.finfo(float).eps


class PoleProximityError(ValueError):
    """Raised when s is within 1e-8 of the pole; use :func:`laurent_zeta` there."""


class ConvergenceError(ArithmeticError):
    pass


class DivisionInstabilityError(ArithmeticError):
    pass


class RadiusError(ValueError):
    pass


@dataclass(frozen=True)
class EvalConfig:
    """Accuracy contract for the Euler-Maclaurin evaluator.

    ``cutoff_factor`` sets the direct-sum length N = max(30, ceil(f * |Im s|)).
    With ``monitor`` on, every evaluation is repeated with 2N terms and the
    two results must agree to ``target_tolerance``.
    """

    target_tolerance: float = 1e-9
    max_terms: int = 2_000_000
    cutoff_factor: float = 1.3
    monitor: bool = False

    def __post_init__(self):
        if not self.target_tolerance > 0:
            raise ValueError("target_tolerance must be positive")
        if self.max_terms < 20:
            raise ValueError("max_terms must be at least 20")


DEFAULT = EvalConfig()

# ---------------------------------------------------------------------------
# Euler-Maclaurin kernel

_M = 10  # Bernoulli corrections through B_20
_B = bernoulli(2 * _M + 2)
_EM_COEF = np.array([_B[2 * k] / math.factorial(2 * k) for k in range(1, _M + 2)])
_CHUNK = 1 << 22


def _direct_sums(sig: np.ndarray, tt: np.ndarray, n_terms: int):
    """Sum_{n<N} n^-s and -Sum log(n) n^-s for every (sigma, t) pair."""
    n = np.arange(1, n_terms, dtype=float)
    ln = np.log(n)
    B = len(sig)
    z = np.empty(B, dtype=complex)
    dz = np.empty(B, dtype=complex)
    same_sigma = B > 0 and np.all(sig == sig[0])
    rows = max(1, _CHUNK // max(1, len(n)))
    for i in range(0, B, rows):
        ph = np.outer(tt[i:i + rows], ln)
        c, s = np.cos(ph), np.sin(ph)
        if same_sigma:
            w = np.exp(-sig[0] * ln)
            wl = w * ln
            z[i:i + rows] = c @ w - 1j * (s @ w)
            dz[i:i + rows] = -(c @ wl) + 1j * (s @ wl)
        else:
            w = np.exp(-np.outer(sig[i:i + rows], ln))
            c *= w
            s *= w
            z[i:i + rows] = c.sum(axis=1) - 1j * s.sum(axis=1)
            dz[i:i + rows] = -(c @ ln) + 1j * (s @ ln)
    return z, dz


def _rising(s: np.ndarray, length: int) -> np.ndarray:
    out = np.ones_like(s)
    for j in range(length):
        out = out * (s + j)
    return out


def _remainder_bound(s: np.ndarray, n_terms: int) -> np.ndarray:
    """|R_m| <= |s+2m+1|/(sigma+2m+1) |T_{m+1}| for the Euler-Maclaurin tail."""
    sig = s.real
    k = _M + 1
    term = np.abs(_EM_COEF[k - 1] * _rising(s, 2 * k - 1)) * n_terms ** (-sig - 2 * k + 1)
    return term * np.abs(s + 2 * _M + 1) / (sig + 2 * _M + 1)


def _em_tail(s: np.ndarray, n_terms: int):
    """Euler-Maclaurin boundary and Bernoulli terms, with their s-derivatives."""
    L = math.log(n_terms)
    Npow = np.exp(-s * L)  # N^-s
    z = n_terms * Npow / (s - 1) + 0.5 * Npow
    dz = -L * n_terms * Npow / (s - 1) - n_terms * Npow / (s - 1) ** 2 - 0.5 * L * Npow
    poch = s.copy()  # s(s+1)...(s+2k-2)
    dlog = 1.0 / s   # derivative of log of the rising factorial
    for k in range(1, _M + 1):
        if k > 1:
            a, b = s + 2 * k - 3, s + 2 * k - 2
            poch = poch * a * b
            dlog = dlog + 1.0 / a + 1.0 / b
        base = _EM_COEF[k - 1] * poch * Npow * float(n_terms) ** (-(2 * k - 1))
        z = z + base
        dz = dz + base * (dlog - L)
    return z, dz


def _em_once(s: np.ndarray, n_terms: int):
    head, dhead = _direct_sums(s.real.copy(), s.imag.copy(), n_terms)
    tail, dtail = _em_tail(s, n_terms)
    trunc = _remainder_bound(s, n_terms)
    # Cauchy estimate on a circle of radius 1/2 for the derivative remainder.
    inflated = s - 0.5 + 0.5j * np.sign(s.imag + 0.0)
    dtrunc = 2.0 * _remainder_bound(inflated, n_terms) * (1 + 1 / (0.5 + 2 * _M + 1))
    Lmax = math.log(n_terms)
    phase = np.abs(s.imag) * Lmax + 1.0
    absum = np.array([np.sum(np.arange(1, n_terms, dtype=float) ** -sg) for sg in
                      np.unique(s.real)])
    lookup = dict(zip(np.unique(s.real), absum))
    mag = np.array([lookup[v] for v in s.real])
    rnd = 4 * _EPS * phase * mag
    return head + tail, dhead + dtail, trunc + rnd, dtrunc + rnd * (1 + Lmax)


def zeta_batch(s, cfg: EvalConfig = DEFAULT):
    """Vectorised zeta(s), zeta'(s) with absolute error estimates.

    Returns ``(zeta, zeta_prime, err_zeta, err_zeta_prime)`` as arrays shaped
    like ``s``.  The truncation part of each error is held below
    ``cfg.target_tolerance``; float rounding is reported but cannot be
    reduced by adding terms.
    """
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    shape = s.shape
    s = s.ravel()
    if np.any(s.real < 0.5):
        raise ValueError("zeta_batch requires Re s >= 1/2")
    if np.any(np.abs(s - 1) < POLE_RADIUS):
        raise PoleProximityError("s within 1e-8 of the pole; use laurent_zeta")
    tmax = float(np.max(np.abs(s.imag))) if s.size else 0.0
    n_terms = max(30, math.ceil(cfg.cutoff_factor * tmax))
    while True:
        if n_terms > cfg.max_terms:
            raise ConvergenceError(f"needs more than max_terms={cfg.max_terms} terms")
        if np.all(_remainder_bound(s, n_terms) <= cfg.target_tolerance):
            break
        n_terms *= 2
    z, dz, ez, edz = _em_once(s, n_terms)
    if cfg.monitor:
        if 2 * n_terms > cfg.max_terms:
            raise ConvergenceError("doubling check exceeds max_terms")
        z2, dz2, _, _ = _em_once(s, 2 * n_terms)
        gap = np.maximum(np.abs(z2 - z), np.abs(dz2 - dz))
        allowed = cfg.target_tolerance + np.maximum(ez, edz)
        if np.any(gap > allowed):
            raise ConvergenceError(f"doubling check disagrees by {gap.max():.3e}")
        ez = np.maximum(ez, np.abs(z2 - z))
        edz = np.maximum(edz, np.abs(dz2 - dz))
    return (z.reshape(shape), dz.reshape(shape), ez.reshape(shape), edz.reshape(shape))


def zeta_em(s: complex, cfg: EvalConfig = DEFAULT) -> complex:
    return complex(zeta_batch(s, cfg)[0][0])


def zeta_prime_em(s: complex, cfg: EvalConfig = DEFAULT) -> complex:
    return complex(zeta_batch(s, cfg)[1][0])


def _log_deriv_arrays(s, cfg: EvalConfig):
    z, dz, ez, edz = zeta_batch(s, cfg)
    az = np.abs(z)
    if np.any(az < 1e-12):
        raise DivisionInstabilityError("|zeta(s)| below 1e-12")
    q = dz / z
    err = (edz + np.abs(q) * ez) / np.maximum(az - ez, 1e-300)
    return q, err


def log_deriv(s: complex, cfg: EvalConfig = DEFAULT, *, with_error: bool = False):
    """zeta'/zeta(s); with ``with_error`` also return a propagated error bound."""
    q, err = _log_deriv_arrays(s, cfg)
    if with_error:
        return complex(q[0]), float(err[0])
    return complex(q[0])


def log_deriv_line(t: float, cfg: EvalConfig = DEFAULT) -> complex:
    if t == 0:
        raise ValueError("t must be nonzero (pole at s = 1)")
    return log_deriv(complex(1.0, t), cfg)


def log_deriv_line_array(t, cfg: EvalConfig = DEFAULT, *, group: int = 512) -> np.ndarray:
    """zeta'/zeta(1+it) for an array of t.

    Points are evaluated in groups sorted by |t| so that each group's
    truncation length follows its own largest |t|.
    """
    t = np.asarray(t, dtype=float)
    flat = t.ravel()
    order = np.argsort(np.abs(flat), kind="stable")
    out = np.empty(flat.shape, dtype=complex)
    for i in range(0, len(order), group):
        idx = order[i:i + group]
        out[idx] = _log_deriv_arrays(1.0 + 1j * flat[idx], cfg)[0]
    return out.reshape(t.shape)


# ---------------------------------------------------------------------------
# Laurent expansion about s = 1


@dataclass(frozen=True)
class StieltjesTable:
    values: tuple[float, ...]
    sources: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if len(self.values) < 11:
            raise ValueError("need gamma_0..gamma_N with N >= 10")
        if not 0.5772 < self.values[0] < 0.5773:
            raise ValueError("gamma_0 outside (0.5772, 0.5773)")
        for n in range(1, len(self.values)):
            if abs(self.values[n]) > berndt_bound(n):
                raise ValueError(f"|gamma_{n}| violates the Berndt bound")
        if not self.sources:
            object.__setattr__(self, "sources", ("literal",) * len(self.values))

    def __len__(self):
        return len(self.values)


def berndt_bound(n: int) -> float:
    """|gamma_n| <= 4(n-1)!/pi^n (n even), 2(n-1)!/pi^n (n odd), n >= 1."""
    c = 4.0 if n % 2 == 0 else 2.0
    return c * math.factorial(n - 1) / math.pi ** n


STIELTJES = StieltjesTable((
    0.5772156649015329,
    -0.07281584548367672,
    -0.009690363192872318,
    0.002053834420303346,
    0.002325370065467300,
    0.0007933238173010627,
    -0.0002387693454301996,
    -0.0005272895670577510,
    -0.0003521233538030395,
    -0.00003439477441808805,
    0.0002053328149090648,
), ("reference value, 16 significant digits",) * 11)


def _g_series(w, table: StieltjesTable):
    """g(w) = sum (-1)^n gamma_n w^n/n! and g'(w), so zeta(1+w) = 1/w + g(w)."""
    g = 0j
    dg = 0j
    for n in reversed(range(len(table))):
        c = (-1) ** n * table.values[n] / math.factorial(n)
        g = g * w + c
    for n in reversed(range(1, len(table))):
        c = (-1) ** n * table.values[n] / math.factorial(n - 1)
        dg = dg * w + c
    return g, dg


def laurent_zeta(s: complex, table: StieltjesTable = STIELTJES) -> complex:
    w = complex(s) - 1
    if abs(w) > 0.6:
        raise RadiusError("laurent_zeta needs |s - 1| <= 0.6")
    if w == 0:
        raise PoleProximityError("s = 1 is the pole")
    g, _ = _g_series(w, table)
    return 1 / w + g


def laurent_remainder_bound(s: complex, table: StieltjesTable = STIELTJES) -> float:
    """Majorant of the omitted Laurent terms: sum_{n>N} 4 r^n/(n pi^n), r = |s-1|."""
    q = abs(complex(s) - 1) / math.pi
    n0 = len(table)
    total = -4.0 * math.log1p(-q)
    head = sum(4.0 * q ** n / n for n in range(1, n0))
    rest = total - head
    # guard the subtraction with the first omitted term's geometric majorant
    direct = 4.0 * q ** n0 / (n0 * (1 - q))
    return max(min(rest, direct), 0.0) if rest > 0 else direct


def regularized_series(w: complex, table: StieltjesTable = STIELTJES) -> complex:
    """zeta'/zeta(1+w) + 1/w from the Laurent data, free of cancellation."""
    g, dg = _g_series(w, table)
    return (g + w * dg) / (1 + w * g)


def regularized_logderiv(t: float, cfg: EvalConfig = DEFAULT,
                         table: StieltjesTable = STIELTJES) -> complex:
    """zeta'/zeta(1+it) + 1/(it); tends to +gamma_0 as t -> 0."""
    if t == 0:
        return complex(table.values[0])
    if abs(t) < SWITCH_T:
        return regularized_series(1j * t, table)
    return log_deriv_line(t, cfg) + 1 / (1j * t)


def regular_parts(t, cfg: EvalConfig = DEFAULT, table: StieltjesTable = STIELTJES):
    """zeta(1+it) - 1/(it) and zeta'(1+it) - 1/t^2 for real t != 0, with an error bound.

    Euler-Maclaurin for |t| >= 1e-3, the Laurent series below.
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(t == 0):
        raise PoleProximityError("t = 0 is the pole")
    g = np.empty(t.shape, dtype=complex)
    dg = np.empty(t.shape, dtype=complex)
    err = np.zeros(t.shape)
    small = np.abs(t) < SWITCH_T
    for i in np.flatnonzero(small):
        g[i], dg[i] = _g_series(1j * t[i], table)
        err[i] = laurent_remainder_bound(1 + 1j * t[i], table)
    if np.any(~small):
        tb = t[~small]
        z, dz, ez, edz = zeta_batch(1 + 1j * tb, cfg)
        g[~small] = z - 1 / (1j * tb)
        dg[~small] = dz - 1 / tb ** 2
        err[~small] = np.maximum(ez, edz)
    return g, dg, err


def regularized_logderiv_array(t, cfg: EvalConfig = DEFAULT,
                               table: StieltjesTable = STIELTJES) -> np.ndarray:
    t = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty(t.shape, dtype=complex)
    small = np.abs(t) < SWITCH_T
    for i in np.flatnonzero(small):
        out[i] = table.values[0] if t[i] == 0 else regularized_series(1j * t[i], table)
    big = ~small
    if np.any(big):
        tb = t[big]
        out[big] = log_deriv_line_array(tb, cfg) + 1 / (1j * tb)
    return out


# ---------------------------------------------------------------------------
# bound check on the strip 1 <= sigma <= 2


@dataclass
class LogDerivBoundReport:
    max_ratio: float
    argmax: tuple[float, float]
    exceedances: list[tuple[float, float, float]]
    errors: list[tuple[float, float, str]]
    points: int

    @property
    def passed(self) -> bool:
        return not self.exceedances and not self.errors


def check_logderiv_bound(sigma_grid, t_grid, cfg: EvalConfig = DEFAULT) -> LogDerivBoundReport:
    """Max of |zeta'/zeta(sigma+it)| / (4 log|t|) over a grid; flags ratios >= 1."""
    factor = registry.value("logderiv_line_factor")
    tmin = registry.value("logderiv_line_tmin")
    sig = np.asarray(sigma_grid, dtype=float)
    tt = np.asarray(t_grid, dtype=float)
    if np.any((sig < 1) | (sig > 2)):
        raise ValueError("sigma must lie in [1, 2]")
    if np.any(np.abs(tt) < tmin):
        raise ValueError("|t| must be at least 100")
    best, arg = -1.0, (math.nan, math.nan)
    exceed, errors = [], []
    for sv in sig:
        try:
            q, err = _log_deriv_arrays(sv + 1j * tt, cfg)
        except ArithmeticError:
            # fall back to per-point evaluation so one bad point is only recorded
            q = np.full(tt.shape, np.nan, dtype=complex)
            err = np.zeros(tt.shape)
            for j, tv in enumerate(tt):
                try:
                    q[j], err[j] = log_deriv(complex(sv, tv), cfg, with_error=True)
                except ArithmeticError as exc:
                    errors.append((float(sv), float(tv), str(exc)))
        ratios = (np.abs(q) + err) / (factor * np.log(np.abs(tt)))
        ratios = np.where(np.isnan(ratios), -np.inf, ratios)
        i = int(np.argmax(ratios))
        if ratios[i] > best:
            best, arg = float(ratios[i]), (float(sv), float(tt[i]))
        for j in np.flatnonzero(ratios >= 1):
            exceed.append((float(sv), float(tt[j]), float(ratios[j])))
    return LogDerivBoundReport(best, arg, exceed, errors, len(sig) * len(tt))
