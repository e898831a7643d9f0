"""Adaptive quadrature on the 1-line and the mean-square bounds for F(t).

F(t) = -zeta'/zeta(1+2it) - 1/(2it) + (prime sum); its square integral is
split over [0, 1/4], [1/4, 5000] and [5000, ell/delta], each piece bounded by
the elementary inequality |f+g|^2 <= (1+1/eta)|f|^2 + (1+eta)|g|^2.
"""
from __future__ import annotations

import functools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import registry
from .prime_engine import PrimeSieve, build_sieve, prime_sum_F
from .report import Check, finding, upper_check
from .zeta_numerics import DEFAULT, EvalConfig, log_deriv_line_array, regularized_logderiv_array

__all__ = [
    "QuadResult", "MaxSubdivisionError", "adaptive_integrate", "simpson", "F",
    "reference_integrand", "reference_integral", "reference_integral_checks",
    "MomentSplit", "ParameterDomainError", "split_F_moments", "moment_piece",
    "tail_moment_bound", "second_moment_check", "SecondMoment",
]

# Gauss-Kronrod 7/15 nodes and weights (QUADPACK qk15)
_XGK = np.array([
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0,
])
_WGK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
])
_NODES = np.concatenate((-_XGK[:7], [0.0], _XGK[6::-1]))            # ascending, 15 nodes
_WK = np.concatenate((_WGK[:7], [_WGK[7]], _WGK[6::-1]))
_WG15 = np.zeros(15)
_WG15[[1, 3, 5]] = _WG[:3]
_WG15[[13, 11, 9]] = _WG[:3]
_WG15[7] = _WG[3]
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class QuadResult:
    value: float
    error_estimate: float
    panel_count: int

    def __post_init__(self):
        if not self.error_estimate >= 0:
            raise ValueError("error_estimate must be nonnegative")

    def __add__(self, other: "QuadResult") -> "QuadResult":
        return QuadResult(self.value + other.value, self.error_estimate + other.error_estimate,
                          self.panel_count + other.panel_count)


class MaxSubdivisionError(RuntimeError):
    def __init__(self, msg: str, partial: QuadResult):
        super().__init__(msg)
        self.partial = partial


def _gk15(f, lo: np.ndarray, hi: np.ndarray):
    c = 0.5 * (lo + hi)
    h = 0.5 * (hi - lo)
    x = c[:, None] + h[:, None] * _NODES[None, :]
    fx = np.asarray(f(x.ravel()), dtype=float).reshape(x.shape)
    if not np.all(np.isfinite(fx)):
        raise ValueError("integrand is not finite on the interval")
    k = h * (fx @ _WK)
    g = h * (fx @ _WG15)
    resabs = h * (np.abs(fx) @ _WK)
    # QUADPACK qk15 error scaling: |K-G| measures the G7 error, so it is damped
    # by (200|K-G|/resasc)^1.5 relative to the mean deviation resasc
    resasc = np.abs(h) * (np.abs(fx - (k / (2 * h))[:, None]) @ _WK)
    err = np.abs(k - g)
    scaled = np.where(resasc > 0, resasc * np.minimum(1.0, (200 * err / np.where(resasc > 0, resasc, 1.0)) ** 1.5), err)
    err = np.maximum(scaled, 50 * _EPS * resabs)
    return k, err


def adaptive_integrate(f, a: float, b: float, tol: float = 1e-10, hint_points=None, *,
                       max_panels: int = 2_000_000, initial_width: float | None = None) -> QuadResult:
    """Globally adaptive Gauss-Kronrod (G7/K15) quadrature of a vectorized ``f``.

    Stops once the summed |K15 - G7| estimates fall below
    ``tol * max(1, |value|)``.  Points in ``hint_points`` (and, with
    ``initial_width``, a uniform grid) become initial panel boundaries.
    """
    if not a < b:
        raise ValueError("need a < b")
    if not tol > 0:
        raise ValueError("tol must be positive")
    edges = [float(a), float(b)]
    if hint_points is not None:
        hp = np.asarray(hint_points, dtype=float)
        edges.extend(hp[(hp > a) & (hp < b)].tolist())
    if initial_width:
        n = max(1, math.ceil((b - a) / initial_width))
        edges.extend(np.linspace(a, b, n + 1)[1:-1].tolist())
    e = np.unique(np.array(edges))
    lo, hi = e[:-1], e[1:]
    val, err = _gk15(f, lo, hi)
    while True:
        total = math.fsum(val)
        total_err = float(np.sum(err))
        target = tol * max(1.0, abs(total))
        if total_err <= target:
            return QuadResult(total, total_err, len(lo))
        # bisect the largest-error panels until the rest would meet half the target
        order = np.argsort(err)[::-1]
        rest = total_err - np.cumsum(err[order])
        k = int(np.searchsorted(-rest, -0.5 * target)) + 1
        bad = np.zeros(len(lo), dtype=bool)
        bad[order[:k]] = True
        if len(lo) + bad.sum() > max_panels:
            raise MaxSubdivisionError(f"more than {max_panels} panels",
                                      QuadResult(total, total_err, len(lo)))
        mid = 0.5 * (lo[bad] + hi[bad])
        if np.any((mid <= lo[bad]) | (mid >= hi[bad])):
            raise MaxSubdivisionError("panels reached floating-point resolution",
                                      QuadResult(total, total_err, len(lo)))
        nlo = np.concatenate((lo[bad], mid))
        nhi = np.concatenate((mid, hi[bad]))
        nv, ne = _gk15(f, nlo, nhi)
        keep = ~bad
        lo = np.concatenate((lo[keep], nlo))
        hi = np.concatenate((hi[keep], nhi))
        val = np.concatenate((val[keep], nv))
        err = np.concatenate((err[keep], ne))
        order = np.argsort(lo, kind="stable")   # deterministic panel order
        lo, hi, val, err = lo[order], hi[order], val[order], err[order]


def simpson(f, a: float, b: float, nodes: int) -> float:
    """Composite Simpson rule on ``nodes`` (odd) equally spaced points."""
    if nodes % 2 == 0:
        nodes += 1
    x = np.linspace(a, b, nodes)
    y = np.asarray(f(x), dtype=float)
    h = (b - a) / (nodes - 1)
    return h / 3 * (y[0] + y[-1] + 4 * math.fsum(y[1:-1:2]) + 2 * math.fsum(y[2:-1:2]))


# ---------------------------------------------------------------------------
# F(t)


@functools.lru_cache(maxsize=2)
def _default_sieve(limit: int = 10 ** 6) -> PrimeSieve:
    return build_sieve(limit)


def F(t, sieve: PrimeSieve | None = None, cutoff: int = 10 ** 6, cfg: EvalConfig = DEFAULT):
    """-zeta'/zeta(1+2it) - 1/(2it) + sum_p log p/(p^(1/2+it)(p^(1+2it)-1)).

    The first two terms are evaluated together as minus the regularized log
    derivative at 2t, so F is continuous at t = 0.
    """
    s = sieve if sieve is not None else _default_sieve()
    tt = np.atleast_1d(np.asarray(t, dtype=float))
    reg = regularized_logderiv_array(2 * tt, cfg)
    ps, _ = prime_sum_F(tt, cutoff, s)
    out = -reg + ps
    return complex(out[0]) if np.ndim(t) == 0 else out


# ---------------------------------------------------------------------------
# reference integral


def reference_integrand(t) -> np.ndarray:
    """|zeta'/zeta(1+it) + 1/(it)|^2 (picklable, vectorized)."""
    return np.abs(regularized_logderiv_array(np.asarray(t, dtype=float))) ** 2


def _ref_chunk(args) -> QuadResult:
    a, b, tol, hints, width = args
    return adaptive_integrate(reference_integrand, a, b, tol, hints, initial_width=width)


def reference_integral(tol: float = 1e-7, table=None, *, jobs: int = 1, a: float = 0.5,
                       b: float = 1e4, hint_count: int = 10_000) -> QuadResult:
    """int_a^b |zeta'/zeta(1+it) + 1/(it)|^2 dt.

    Panels start at the first ``hint_count`` zero ordinates when a table is
    given, otherwise on a uniform 0.5 grid.  With ``jobs > 1`` the range is
    cut into contiguous pieces of roughly equal cost (work grows like t) and
    the pieces are summed in order.
    """
    if table is not None:
        hints = np.asarray(table.ordinates[:hint_count])
        width = None
    else:
        hints = None
        width = 0.5
    if jobs <= 1:
        return _ref_chunk((a, b, tol, hints, width))
    # equal-work cut points: cost ~ t dt, so cut at quantiles of t^2
    q = np.sqrt(np.linspace(a * a, b * b, jobs + 1))
    q[0], q[-1] = a, b
    pieces = [(float(q[i]), float(q[i + 1]), tol, hints, width) for i in range(jobs)]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        parts = list(ex.map(_ref_chunk, pieces))
    out = parts[0]
    for p in parts[1:]:
        out = out + p
    return out


def reference_integral_checks(res: QuadResult) -> list[Check]:
    bound = registry.value("reference_integral")
    return [
        upper_check("reference_integral", res.value, bound, error=res.error_estimate,
                    anchor=registry.anchor("reference_integral"),
                    note=f"{res.panel_count} panels"),
        upper_check("reference_integral error_estimate", res.error_estimate, 1.0,
                    anchor="quadrature error at most 1"),
    ]


# ---------------------------------------------------------------------------
# mean-square split of F


class ParameterDomainError(ValueError):
    pass


def moment_piece(a: float, b: float, eta1: float, zeta_part: float) -> float:
    """Bound on int_a^b |F|^2 given int_{2a}^{2b} |zeta'/zeta + 1/(iu)|^2 du <= zeta_part.

    Substituting u = 2t halves the zeta integral; the prime part is bounded
    pointwise by 1.7215, whose square is at most 2.9636.
    """
    if eta1 <= 0:
        raise ParameterDomainError("eta1 must be positive")
    return 0.5 * (1 + 1 / eta1) * zeta_part + registry.value("prime_sum_sqrt_sq") * (1 + eta1) * (b - a)


@dataclass
class MomentSplit:
    delta: float
    ell: float
    I1: float
    I2: float
    I3: float
    I3_coeff: float
    I3_offset: float
    total_coeff: float
    eta1_choices: tuple[float, float, float]
    checks: list[Check] = field(default_factory=list)


def split_F_moments(delta: float, *, eta1=None, reference: float | None = None,
                    desk_mode: bool = False) -> MomentSplit:
    """I1 + I2 + I3 >= int_0^{ell/delta} |F|^2, piece by piece.

    I1 uses |zeta'/zeta(1+iu) + 1/(iu)| <= 2.635 on (0, 1/2]; I2 the
    reference integral over [1/2, 1e4]; I3 the second-moment estimate
    1.6113 ell/delta on [1e4, 2 ell/delta].
    """
    if not 0 < delta <= 1:
        raise ParameterDomainError("delta must lie in (0, 1]")
    faithful = delta <= registry.value("delta_max")
    if not faithful and not desk_mode:
        raise ParameterDomainError("delta > 1e-13 needs desk mode")
    e1, e2, e3 = eta1 if eta1 is not None else (
        registry.value("eta1_I1"), registry.value("eta1_I2"), registry.value("eta1_I3"))
    ell = math.sqrt(1 + delta) + 1
    X = ell / delta
    sq = registry.value("prime_sum_sqrt_sq")
    ref = registry.value("reference_integral") if reference is None else reference
    I1 = moment_piece(0.0, 0.25, e1, registry.value("regularized_logderiv_bound") ** 2 * 0.5)
    I2 = moment_piece(0.25, 5000.0, e2, ref)
    i3c = 0.5 * (1 + 1 / e3) * registry.value("second_moment_2t") + sq * (1 + e3)
    i3o = sq * (1 + e3) * 5000.0
    I3 = i3c * X - i3o
    total = (I1 + I2 + I3) / X
    checks = [
        upper_check("I1", I1, registry.value("I1_bound"), anchor=registry.anchor("I1_bound")),
        upper_check("I2", I2, registry.value("I2_bound"), anchor=registry.anchor("I2_bound")),
        upper_check("I3 coefficient", i3c, registry.value("I3_coeff") + 5e-5,
                    anchor=registry.anchor("I3_coeff"), note="printed to 4 decimals"),
        upper_check("I3 offset (subtracted)", -i3o, -registry.value("I3_offset") + 0.05,
                    anchor=registry.anchor("I3_offset"), note="offset must be at least the printed one"),
    ]
    tot_name = f"(I1+I2+I3)/(ell/delta) at delta={delta:g}"
    if faithful:
        checks.append(upper_check(tot_name, total, registry.value("F_moment_coeff"),
                                  anchor=registry.anchor("F_moment_coeff")))
    else:
        checks.append(finding(tot_name, total, registry.value("F_moment_coeff"),
                              note="desk mode: delta outside (0, 1e-13]"))
    return MomentSplit(delta, ell, I1, I2, I3, i3c, i3o, total, (e1, e2, e3), checks)


def tail_moment_bound(eta1: float | None = None) -> float:
    """Coefficient c with int_{ell/delta}^inf |F|^2/t^2 dt <= c delta/ell.

    With X = ell/delta: the zeta part contributes (1+1/eta1) * 1.6113 * int_X^inf t/t^3 * X
    and the prime part 5.9272 (1+eta1) * X int_X^inf (t - X)/t^3 dt = 5.9272(1+eta1)/2.
    """
    e = registry.value("eta1_tail") if eta1 is None else eta1
    if e <= 0:
        raise ParameterDomainError("eta1 must be positive")
    zeta_part = (1 + 1 / e) * registry.value("second_moment_2t")      # X * int_X^inf t dt/t^3 = 1
    prime_part = registry.value("prime_sum_sqrt_sq2") * (1 + e) * 0.5  # X * int_X^inf (t-X)/t^3 dt = 1/2
    return zeta_part + prime_part


# ---------------------------------------------------------------------------
# desk-scale second moment


def _second_moment_integrand(cfg: EvalConfig):
    return lambda t: np.abs(log_deriv_line_array(t, cfg)) ** 2


@dataclass
class SecondMoment:
    T: float
    integral: QuadResult
    ratio: float
    checks: list[Check]


def second_moment_check(T: float, *, tol: float = 1e-7, cfg: EvalConfig | None = None,
                        table=None) -> SecondMoment:
    """int_{1e4}^T |zeta'/zeta(1+it)|^2 dt and its ratio to T (empirical; T << 4e13)."""
    if not 1e4 < T <= 1e5:
        raise ValueError("T must lie in (1e4, 1e5]")
    cfg = cfg or DEFAULT
    hints = None if table is None else table.ordinates
    res = adaptive_integrate(_second_moment_integrand(cfg), 1e4, T, tol, hints,
                             initial_width=None if table is not None else 0.5)
    ratio = (res.value + res.error_estimate) / T
    mean = res.value / (T - 1e4)
    checks = [
        upper_check(f"second moment ratio T={T:g}", ratio, registry.value("second_moment_coeff"),
                    anchor=registry.anchor("second_moment_coeff"),
                    note="empirical: the inequality assumes T >= 4e13"),
        finding(f"second moment mean on [1e4, {T:g}]", mean, registry.value("lambda_sq_over_n_sq"),
                note="mean-value heuristic: compare with sum Lambda(n)^2/n^2"),
    ]
    return SecondMoment(T, res, ratio, checks)
