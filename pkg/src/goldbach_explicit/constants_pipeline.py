"""Explicit constants from the J_psi bound through the final Goldbach gap constant.

Every published literal comes from :mod:`registry`; this module only
combines them, re-optimizes the free parameters and checks the printed
roundings.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import registry
from .report import Check, Report, finding, upper_check

__all__ = [
    "ProofParams", "DEFAULT_PARAMS", "DomainError", "c_of", "c_ratio", "alpha_of", "beta_of",
    "minimize_c", "jtheta_constant", "split_sides", "goldbach_constant", "threshold_x", "amgm_split_check",
    "ConstantReport", "constant_report",
]


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class ProofParams:
    kappa: float
    lam: float
    eta: float
    delta: float = 1e-13
    a: float = 1e-13

    def __post_init__(self):
        if not self.kappa > 1:
            raise DomainError("kappa must exceed 1")
        if not 1 < self.lam < 2:
            raise DomainError("lambda must lie in (1, 2)")
        if not self.eta > 0:
            raise DomainError("eta must be positive")
        if not 0 < self.delta <= 1:
            raise DomainError("delta must lie in (0, 1]")
        if not 1e-13 <= self.a < 1:
            raise DomainError("a must lie in [1e-13, 1)")

    @property
    def ell(self) -> float:
        return math.sqrt(1 + self.delta) + 1


DEFAULT_PARAMS = ProofParams(registry.value("kappa"), registry.value("lambda"), registry.value("eta"))


def c_of(p: ProofParams) -> float:
    k, l, e = p.kappa, p.lam, p.eta
    first = (1 + e) * registry.value("zero_sum_coeff") / (math.sqrt(6) * math.pi) \
        * (k * k + 1 / (l * l)) * (l ** 3 + 1) / (l - 1)
    second = registry.value("small_y_coeff") * (1 + 1 / e) * (l ** 3 - 1 / k ** 3) * (l + 1) / (l * l)
    return first + second


def c_ratio(p: ProofParams) -> float:
    """C(kappa, lambda, eta) / (kappa^2 - 1), the J_psi constant before rounding."""
    return c_of(p) / (p.kappa ** 2 - 1)


def _vec_ratio(k, l, e):
    first = (1 + e) * registry.value("zero_sum_coeff") / (math.sqrt(6) * math.pi) \
        * (k * k + 1 / (l * l)) * (l ** 3 + 1) / (l - 1)
    second = registry.value("small_y_coeff") * (1 + 1 / e) * (l ** 3 - 1 / k ** 3) * (l + 1) / (l * l)
    return (first + second) / (k * k - 1)


def _floor_m(kappa: float, lam: float) -> int:
    return math.floor(math.sqrt(2) * kappa * lam)


def alpha_of(kappa: float, lam: float) -> float:
    """16.01 (m+1) log^4(m+1) (m+3) m / 2 with m = floor(sqrt2 kappa lambda)."""
    m = _floor_m(kappa, lam)
    return registry.value("short_range_coeff") * (m + 1) * math.log(m + 1) ** 4 * (m + 3) * m / 2


def beta_of(kappa: float, lam: float) -> float:
    m = _floor_m(kappa, lam)
    return (m + 1) ** 3 / 3


def _golden(f, lo: float, hi: float, iters: int = 200) -> float:
    g = (math.sqrt(5) - 1) / 2
    a, b = lo, hi
    c, d = b - g * (b - a), a + g * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - g * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + g * (b - a)
            fd = f(d)
        if b - a <= 1e-15 * max(1.0, abs(a)):
            break
    return c if fc <= fd else d


def minimize_c(*, kappa_range=(2.0, 1e3), grid: int = 60, sweeps: int = 20):
    """Deterministic grid search then coordinate descent of C/(kappa^2-1).

    kappa and eta are searched on log scales; ties go to the
    lexicographically smallest (kappa, lambda, eta).  Returns
    ``(ProofParams, value)`` with ``value == c_ratio(params)``.
    """
    lk = np.linspace(math.log(kappa_range[0]), math.log(kappa_range[1]), grid)
    ll = np.linspace(1.0, 2.0, grid + 2)[1:-1]
    le = np.linspace(math.log(1e-12), 0.0, grid)
    K, L, E = np.meshgrid(np.exp(lk), ll, np.exp(le), indexing="ij")
    vals = _vec_ratio(K, L, E)
    i = int(np.argmin(vals))   # first minimum in C order = lexicographic tie-break
    x = [math.log(K.flat[i]), L.flat[i], math.log(E.flat[i])]
    bounds = [(lk[0], lk[-1]), (1.0 + 1e-9, 2.0 - 1e-9), (le[0], le[-1])]

    def obj(v):
        return float(_vec_ratio(math.exp(v[0]), v[1], math.exp(v[2])))

    best = obj(x)
    for _ in range(sweeps):
        for j in range(3):
            def f1(z, j=j):
                y = list(x)
                y[j] = z
                return obj(y)
            z = _golden(f1, *bounds[j])
            if f1(z) < best:
                x[j] = z
                best = f1(z)
    p = ProofParams(math.exp(x[0]), x[1], math.exp(x[2]))
    return p, c_ratio(p)


def jtheta_constant(eta: float, x_floor: float = 1e13, *, with_residual: bool = False,
                    delta: float = 1e-13) -> float:
    """(1+eta) 2.2258 + 31.612 (1+eta)^2 / (eta pi log^2(2.0001 x_floor)).

    With ``with_residual`` the term (1+1/eta)^2 delta^2 x^2/2 is added after
    dividing by delta log^2(2.0001/delta) x^2.
    """
    if eta <= 0:
        raise DomainError("eta must be positive")
    if x_floor < 1e13:
        raise DomainError("x_floor must be at least 1e13")
    ell_up = registry.value("ell_upper")
    val = (1 + eta) * registry.value("jpsi_const") \
        + registry.value("jtheta_bracket_coeff") * (1 + eta) ** 2 / (eta * math.pi * math.log(ell_up * x_floor) ** 2)
    if with_residual:
        val += (1 + 1 / eta) ** 2 * delta / (2 * math.log(ell_up / delta) ** 2)
    return val


def goldbach_constant(a: float) -> float:
    """6 * 2.5571 / (1/8 - a^3)."""
    if not 1e-13 <= a < 0.5:
        raise DomainError("a must lie in [1e-13, 1/2)")
    return 6 * registry.value("jtheta_const") / (0.125 - a ** 3)


def threshold_x(C: float, level: float | None = None, *, rel: float = 1e-6) -> float:
    """Smallest x in [1e3, 1e20] with C log^2 x / (2x) <= level (default 1e-13)."""
    if C <= 0:
        raise DomainError("C must be positive")
    level = registry.value("goldbach_a") if level is None else level
    g = lambda x: C * math.log(x) ** 2 / (2 * x) <= level
    lo, hi = 1e3, 1e20
    if g(lo):
        return lo
    if not g(hi):
        raise DomainError("threshold beyond 1e20")
    while hi / lo - 1 > rel:
        mid = math.sqrt(lo * hi)
        if g(mid):
            hi = mid
        else:
            lo = mid
    return hi


def split_sides(f, g, eta: float) -> tuple[float, float]:
    """(mean |f+g|^2, (1+eta) mean |f|^2 + (1+1/eta) mean |g|^2) for sampled f, g."""
    f = np.asarray(f)
    g = np.asarray(g)
    lhs = float(np.mean(np.abs(f + g) ** 2))
    rhs = (1 + eta) * float(np.mean(np.abs(f) ** 2)) + (1 + 1 / eta) * float(np.mean(np.abs(g) ** 2))
    return lhs, rhs


def amgm_split_check(eta: float, samples: int = 100, *, seed: int = 0, degree: int = 8,
                     nodes: int = 512) -> list[Check]:
    """int|f+g|^2 <= (1+eta) int|f|^2 + (1+1/eta) int|g|^2 for random trig polynomials on [0,1]."""
    if eta <= 0:
        raise DomainError("eta must be positive")
    rng = np.random.default_rng(seed)
    x = np.arange(nodes) / nodes
    basis = np.exp(2j * np.pi * np.outer(np.arange(-degree, degree + 1), x))
    worst = -math.inf
    for _ in range(samples):
        cf = rng.uniform(-1, 1, (2, 2 * degree + 1)) + 1j * rng.uniform(-1, 1, (2, 2 * degree + 1))
        f, g = cf @ basis
        lhs, rhs = split_sides(f, g, eta)
        worst = max(worst, (lhs - rhs) / rhs)
    return [upper_check(f"amgm split, eta={eta:g}, {samples} samples", float(worst), 1e-12,
                        anchor="|f+g|^2 <= (1+eta)|f|^2 + (1+1/eta)|g|^2",
                        note="largest relative excess LHS/RHS - 1")]


# ---------------------------------------------------------------------------
# report


@dataclass
class ConstantReport:
    entries: dict[str, dict] = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed is not False for c in self.checks)

    def to_json(self) -> str:
        return json.dumps({"entries": self.entries, "checks": [c.to_dict() for c in self.checks]},
                          indent=2, sort_keys=True)

    def to_report(self, config=None) -> Report:
        return Report("constants", list(self.checks), {"entries": self.entries}, dict(config or {}))


def constant_report(params: ProofParams | None = None) -> ConstantReport:
    """Evaluate the whole constant chain for ``params`` (default: the published choice)."""
    p = params or DEFAULT_PARAMS
    r = registry.value
    rep = ConstantReport()
    inputs = {"kappa": p.kappa, "lambda": p.lam, "eta": p.eta, "delta": p.delta, "a": p.a}

    def put(name, value, **extra):
        rep.entries[name] = {"value": value, "inputs": inputs, **extra}

    ratio = c_ratio(p)
    alpha = alpha_of(p.kappa, p.lam) / (1 + p.delta)
    beta = beta_of(p.kappa, p.lam)
    put("C_over_k2m1", ratio)
    put("alpha", alpha)
    put("beta", beta)
    _, opt = minimize_c()
    jt = jtheta_constant(r("jtheta_eta"))
    jt_res = jtheta_constant(r("jtheta_eta"), with_residual=True, delta=p.delta)
    gc = goldbach_constant(p.a)
    tx = threshold_x(r("goldbach_C"))
    put("jpsi_const", r("jpsi_const"), computed=ratio, optimum=opt)
    put("jtheta_const", jt, with_residual=jt_res, eta=r("jtheta_eta"))
    put("goldbach_C", gc)
    put("threshold_x", tx, C=r("goldbach_C"))

    a = registry.anchor
    rep.checks += [
        upper_check("C/(kappa^2-1)", ratio, r("jpsi_const"), anchor=a("jpsi_const")),
        upper_check("alpha/(1+delta)", alpha, r("alpha_over_1pd"), anchor=a("alpha_over_1pd")),
        upper_check("beta", beta, r("beta_max"), anchor=a("beta_max")),
        upper_check("minimize_c optimum", opt, r("jpsi_const"), anchor=a("jpsi_const")),
        upper_check("lower-order terms absorbed at x=1e13",
                    (alpha + r("initial_segment") + beta * p.delta) * p.delta,
                    (r("jpsi_const") - ratio) * p.delta * math.log(p.ell / p.delta) ** 2 * r("x_min") ** 2,
                    anchor="(alpha/(1+delta) + 0.961 + beta delta) delta fits under the rounding to 2.2258"),
        upper_check("zero-sum coefficient 2.028 * 2.0001 / 2", r("zero_sum_coeff_raw") * r("ell_upper") / 2,
                    r("zero_sum_coeff"), anchor=a("zero_sum_coeff")),
        upper_check("1.7215^2", r("prime_sum_sqrt") ** 2, r("prime_sum_sqrt_sq"),
                    anchor=a("prime_sum_sqrt_sq")),
        upper_check("6.8598 + 8.9454", r("F_moment_coeff") + r("F_tail_coeff"), r("F_total_coeff"),
                    anchor=a("F_total_coeff")),
        upper_check("15.8052 * 2.0001", r("F_total_coeff") * r("ell_upper"), r("jtheta_bracket_coeff"),
                    anchor=a("jtheta_bracket_coeff")),
        upper_check("J_theta bracket at eta=0.0693", jt, r("jtheta_const"), strict=True,
                    anchor=a("jtheta_const")),
        upper_check("J_theta bracket with residual term", jt_res, r("jtheta_const"), strict=True,
                    anchor=a("jtheta_const"), note="(1+1/eta)^2 delta^2 x^2/2 included"),
        upper_check("goldbach_constant(a)", gc, r("goldbach_C"), anchor=a("goldbach_C")),
        upper_check("122.75 <= 123", r("goldbach_C"), r("goldbach_C_int"), anchor=a("goldbach_C_int")),
        upper_check("threshold_x(122.75)", tx, r("threshold_x"), anchor=a("threshold_x")),
        upper_check("122.75 log^2(1.1e18) / (2.2e18)",
                    r("goldbach_C") * math.log(r("threshold_x")) ** 2 / (2 * r("threshold_x")),
                    r("goldbach_a"), anchor=a("threshold_x")),
        upper_check("1.1e18 <= verified range", r("threshold_x"), r("goldbach_verified"),
                    anchor=a("goldbach_verified")),
    ]
    return rep
