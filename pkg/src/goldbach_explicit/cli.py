"""``goldbach-explicit``: run a verification family and emit a versioned report.

Exit codes: 0 all assertions pass, 1 an assertion failed, 2 usage or
resource error.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import constants_pipeline as cp
from . import moment_quadrature as mq
from . import prime_engine as pe
from . import registry
from . import zero_lab as zl
from . import zeta_numerics as zn
from .report import Check, Report, finding, upper_check

CACHE_ENV = "GOLDBACH_EXPLICIT_CACHE"
LEMMAS = ("2.1", "2.2", "2.4", "2.5", "2.6-desk", "A.1", "A.2")


class ResourceError(RuntimeError):
    pass


@dataclass
class RunConfig:
    zeros_path: str | None = None
    sieve_limit: int | None = None
    tolerance: float = 1e-7
    desk_mode: bool = False
    output_format: str = "text"
    cache_dir: str | None = None
    jobs: int = 1
    params: str | None = None

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.output_format not in ("json", "csv", "text"):
            raise ValueError("format must be json, csv or text")


# ---------------------------------------------------------------------------
# resources


def _sieve(cfg: RunConfig, need: int) -> pe.PrimeSieve:
    limit = cfg.sieve_limit if cfg.sieve_limit is not None else need
    if limit < need:
        raise ResourceError(f"sieve limit {limit} is below the required {need}; raise --sieve-limit")
    return pe.cached_sieve(int(limit), cfg.cache_dir)


def _zeros(cfg: RunConfig) -> zl.ZeroTable:
    try:
        return zl.load_zeros(cfg.zeros_path, cfg.cache_dir)
    except FileNotFoundError as exc:
        raise ResourceError(f"{exc}; pass --zeros <path> (see scripts/make_zero_table.py)") from None


# ---------------------------------------------------------------------------
# lemma suites


def suite_logderiv_line(cfg: RunConfig) -> list[Check]:
    sig = np.round(np.arange(1.0, 2.0001, 0.1), 10)
    t = np.geomspace(100.0, 1e4, 200)
    r = zn.check_logderiv_bound(sig, t)
    note = f"max at sigma={r.argmax[0]:g}, t={r.argmax[1]:.6g}; {r.points} points"
    if r.errors:
        note += f"; {len(r.errors)} evaluation errors"
    ok = r.passed and r.max_ratio < 1
    return [Check("max |zeta'/zeta| / (4 log|t|)", r.max_ratio, 1.0, 0.0, ok,
                  registry.anchor("logderiv_line_factor"), note)]


def suite_kernel(cfg: RunConfig) -> list[Check]:
    table = _zeros(cfg)
    out = []
    for t in (4.0, 10.0, 100.0, 1e3, 1e4, 3e4):
        out.append(zl.zero_sum_kernel_check(t, 6.0, table))
        out.append(zl.zero_sum_kernel_check(t, 0.25, table))
    return out


def suite_near_pole(cfg: RunConfig) -> list[Check]:
    t = np.arange(1, 10_001) / 2e4
    reg = zn.regularized_logderiv_array(t)
    g, dg, err = zn.regular_parts(t)
    i = int(np.argmax(np.abs(reg)))
    return [
        upper_check("max |zeta'/zeta(1+it) + 1/(it)| on (0, 1/2]", float(np.abs(reg[i])),
                    registry.value("regularized_logderiv_bound"), error=1e-8,
                    anchor=registry.anchor("regularized_logderiv_bound"), note=f"argmax t={t[i]:g}; 1e4 points"),
        upper_check("max |zeta(1+it) - 1/(it)| on (0, 1/2]", float(np.max(np.abs(g))),
                    registry.value("laurent_zeta_bound"), error=float(err.max()), strict=True,
                    anchor=registry.anchor("laurent_zeta_bound")),
        upper_check("max |zeta'(1+it) - 1/t^2| on (0, 1/2]", float(np.max(np.abs(dg))),
                    registry.value("laurent_zeta_prime_bound"), error=float(err.max()), strict=True,
                    anchor=registry.anchor("laurent_zeta_prime_bound")),
    ]


def suite_window(cfg: RunConfig, n: int = 10_000, seed: int = 0) -> list[Check]:
    rng = np.random.default_rng(seed)
    delta = 10.0 ** rng.uniform(-13, 0, n)
    t = rng.uniform(-1e6, 1e6, n)
    return [zl.window_factor_check(delta, t)]


def suite_zero_counts(cfg: RunConfig) -> list[Check]:
    table = _zeros(cfg)
    grid = np.linspace(15.0, table.gamma_max, 2000)
    counts = np.searchsorted(table.ordinates, grid, side="right")
    dev = np.abs(counts - zl.main_term(grid)) - registry.value("zero_count_deviation") * np.log(grid)
    out = [upper_check("max |N(T) - main(T)| - 0.28 log T on table grid", float(dev.max()), 1.0,
                       anchor=registry.anchor("zero_count_deviation"),
                       note=f"2000 heights up to {table.gamma_max:.6g}; slack 1 for boundary zeros")]
    for T in (1e4, 5e4):
        zs = zl.zero_log_sums(T, table)
        out.append(upper_check(f"|sum log gamma - density integral| at T={T:g}",
                               abs(zs.sum_log - zs.density_integral), zs.budget,
                               anchor="sum_{gamma<=T} log gamma vs (1/2pi) int log t log(t/2pi) dt",
                               note=f"sum={zs.sum_log:.10g}"))
        lt = math.log(T)
        out.append(finding(f"sum log gamma vs T log^2 T / (4pi) at T={T:g}", zs.sum_log,
                           T * lt * lt / (4 * math.pi), note="inequality claimed only for T >= 1e13"))
        out.append(finding(f"sum_{{gamma>T}} log gamma/gamma^2 at T={T:g}", zs.sum_log_over_sq.verified_upper,
                           registry.value("zero_log_tail_coeff") / (2 * math.pi) * lt * lt / T,
                           note=f"head={zs.sum_log_over_sq.partial:.10g}; inequality claimed only for T >= 1e13"))
    return out


def suite_appendix_sums(cfg: RunConfig) -> list[Check]:
    n0 = int(registry.value("prime_sum_sqrt_n0"))
    s = _sieve(cfg, 500_000_000)
    if s.count_cum[-1] < n0:
        raise ResourceError(f"sieve holds fewer than {n0} primes; raise --sieve-limit to 5e8")
    out = []
    for which, key in (("A1_1", "prime_sum_sqrt"), ("A1_2", "lambda_sq_over_n_sq"),
                       ("A1_3", "log_sq_over_p2_minus_p")):
        bv = pe.appendix_sum(which, n0, s)
        out.append(upper_check(f"{which} verified_upper", bv.partial, registry.value(key), error=bv.tail_bound,
                               strict=True, anchor=registry.anchor(key),
                               note=f"head={bv.partial:.10f} tail<={bv.tail_bound:.6g}"))
        if which == "A1_1":
            out.append(upper_check("A1_1 head - 1.721381", abs(bv.partial - registry.value("prime_sum_sqrt_head")),
                                   1e-5, anchor=registry.anchor("prime_sum_sqrt_head")))
            out.append(upper_check("A1_1 tail bound", bv.tail_bound, registry.value("prime_sum_sqrt_tail"),
                                   anchor=registry.anchor("prime_sum_sqrt_tail")))
    return out


def suite_lambda_sq(cfg: RunConfig) -> list[Check]:
    x = 1e8
    s = _sieve(cfg, int(x))
    return pe.lambda_sq_check(x, s)


SUITES = {
    "2.1": suite_logderiv_line,
    "2.2": suite_kernel,
    "2.4": suite_near_pole,
    "2.5": suite_window,
    "2.6-desk": suite_zero_counts,
    "A.1": suite_appendix_sums,
    "A.2": suite_lambda_sq,
}


# ---------------------------------------------------------------------------
# commands


def _config_dict(cfg: RunConfig, **extra) -> dict:
    d = asdict(cfg)
    d.pop("output_format")
    d.update(extra)
    return d


def cmd_verify_lemma(name: str, cfg: RunConfig) -> Report:
    if name not in SUITES:
        raise KeyError(f"unknown lemma {name!r}; choose from {', '.join(LEMMAS)}")
    rep = Report(f"verify-lemma {name}", config=_config_dict(cfg, lemma=name))
    rep.extend(SUITES[name](cfg))
    return rep


def parse_params(text: str | None) -> cp.ProofParams:
    base = dict(kappa=cp.DEFAULT_PARAMS.kappa, lam=cp.DEFAULT_PARAMS.lam, eta=cp.DEFAULT_PARAMS.eta,
                delta=cp.DEFAULT_PARAMS.delta, a=cp.DEFAULT_PARAMS.a)
    if text:
        for item in text.split(","):
            key, _, val = item.partition("=")
            key = key.strip()
            key = "lam" if key == "lambda" else key
            if key not in base or not val:
                raise ValueError(f"bad --params entry {item!r}")
            base[key] = float(val)
    return cp.ProofParams(**base)


def cmd_constants(cfg: RunConfig) -> Report:
    p = parse_params(cfg.params)
    cr = cp.constant_report(p)
    rep = cr.to_report(_config_dict(cfg))
    return rep


def cmd_integrate(name: str, cfg: RunConfig, T: float = 2e4) -> Report:
    rep = Report(f"integrate {name}", config=_config_dict(cfg, integral=name, T=T))
    if name == "reference":
        table = None
        try:
            table = _zeros(cfg)
        except ResourceError:
            pass
        res = mq.reference_integral(cfg.tolerance, table, jobs=cfg.jobs)
        rep.extend(mq.reference_integral_checks(res))
        rep.data["reference"] = asdict(res)
    elif name == "moments":
        delta = registry.value("delta_max")
        split = mq.split_F_moments(delta, desk_mode=cfg.desk_mode)
        rep.extend(split.checks)
        tail = mq.tail_moment_bound()
        rep.add(upper_check("tail coefficient", tail, registry.value("F_tail_coeff"),
                            anchor=registry.anchor("F_tail_coeff")))
    elif name == "second-moment":
        sm = mq.second_moment_check(T, tol=max(cfg.tolerance, 1e-8))
        rep.extend(sm.checks)
        rep.data["integral"] = asdict(sm.integral)
    else:
        raise KeyError(f"unknown integral {name!r}")
    return rep


def cmd_scan_goldbach(N: int, C: float, cfg: RunConfig) -> Report:
    s = _sieve(cfg, int(N) + 1000)
    g = pe.verify_goldbach_theorem(int(N), C, s)
    rep = Report("scan-goldbach", config=_config_dict(cfg, N=N, C=C))
    rep.add(Check("violations of (x, x + C log^2 x] coverage", float(len(g.violations)), 0.0, 0.0,
                  g.passed and g.unverified_top is None, registry.anchor("goldbach_C_int"),
                  f"every real x in [2, {N}]"))
    rep.add(Check("even n in [6, N] that are not Goldbach numbers", float(len(g.non_goldbach_evens)), 0.0,
                  0.0, not g.non_goldbach_evens, "sum of two odd primes"))
    rep.add(finding("max distance to next Goldbach number", g.max_distance, note=f"at x={g.max_distance_x:g}"))
    rep.add(finding("smallest admissible C on the range", g.sup_required_C, C,
                    note=f"attained at x={g.sup_required_C_x:g}"))
    rep.add(finding("largest minimal partner", float(g.max_min_partner), note=f"n={g.max_min_partner_n}"))
    rep.data["goldbach"] = asdict(g)
    return rep


def cmd_selberg(x: float, delta: float, which: str, cfg: RunConfig) -> Report:
    if not 0 < delta <= 0.5:
        raise ValueError("delta must lie in (0, 0.5]")
    s = _sieve(cfg, math.floor((1 + delta) * x) + 1)
    j = pe.selberg_integral(x, delta, which, s)
    norm = delta * math.log(registry.value("ell_upper") / delta) ** 2 * x * x
    key = "jpsi_const" if which == "psi" else "jtheta_const"
    rep = Report("selberg", config=_config_dict(cfg, x=x, delta=delta, which=which))
    rep.add(finding(f"J_{which}(x, delta)", j, note="exact event sweep"))
    rep.add(finding("ratio to delta log^2(2.0001/delta) x^2", j / norm, registry.value(key),
                    note="empirical: desk scale, hypotheses need x >= 1e13, delta <= 1e-13"))
    rep.data["J"] = j
    return rep


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--zeros", dest="zeros_path", help="zero-ordinate file (one per line)")
    common.add_argument("--sieve-limit", type=lambda v: int(float(v)), help="sieve limit (default: as needed)")
    common.add_argument("--tol", dest="tolerance", type=float, default=1e-7, help="quadrature tolerance (relative)")
    common.add_argument("--desk-mode", action="store_true", help="downgrade out-of-hypothesis assertions")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--format", dest="output_format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--cache-dir", default=os.environ.get(CACHE_ENV),
                        help=f"cache directory (default: ${CACHE_ENV})")
    common.add_argument("--params", help="kappa=..,lambda=..,eta=..[,delta=..,a=..]")

    ap = argparse.ArgumentParser(prog="goldbach-explicit", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("verify-lemma", parents=[common], help="run one lemma's check suite")
    p.add_argument("name", choices=LEMMAS)
    sub.add_parser("constants", parents=[common], help="evaluate the constant chain")
    p = sub.add_parser("integrate", parents=[common], help="quadrature checks")
    p.add_argument("name", choices=("reference", "moments", "second-moment"))
    p.add_argument("--T", type=float, default=2e4, help="upper end for second-moment")
    p = sub.add_parser("scan-goldbach", parents=[common], help="Goldbach gap scan up to N")
    p.add_argument("N", type=lambda v: int(float(v)))
    p.add_argument("C", type=float)
    p = sub.add_parser("selberg", parents=[common], help="exact J_psi / J_theta")
    p.add_argument("x", type=float)
    p.add_argument("delta", type=float)
    p.add_argument("which", choices=("psi", "theta"))
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = RunConfig(args.zeros_path, args.sieve_limit, args.tolerance, args.desk_mode,
                        args.output_format, args.cache_dir, args.jobs, args.params)
        if args.command == "verify-lemma":
            rep = cmd_verify_lemma(args.name, cfg)
        elif args.command == "constants":
            rep = cmd_constants(cfg)
        elif args.command == "integrate":
            rep = cmd_integrate(args.name, cfg, args.T)
        elif args.command == "scan-goldbach":
            rep = cmd_scan_goldbach(args.N, args.C, cfg)
        else:
            rep = cmd_selberg(args.x, args.delta, args.which, cfg)
    except (ResourceError, pe.CapacityError, pe.OutOfRangeError, MemoryError) as exc:
        print(f"goldbach-explicit: resource error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"goldbach-explicit: error: {exc}", file=sys.stderr)
        return 2
    text = rep.render(cfg.output_format)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return 0 if rep.passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
