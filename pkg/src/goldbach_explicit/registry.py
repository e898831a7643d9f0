"""Single source of truth for every published constant the toolkit checks.

Each entry carries an ``anchor``: a short statement of the inequality the
constant appears in, so that a failing report line can be traced without
reading code.  Nothing outside this module should inline these literals.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Constant:
    name: str
    value: float
    anchor: str


_ENTRIES = [
    # zeta on the 1-line
    Constant("logderiv_line_factor", 4.0,
             "|zeta'/zeta(sigma+it)| <= 4 log|t| for 1<=sigma<=2, |t|>=100"),
    Constant("logderiv_line_tmin", 100.0, "lower end |t| >= 100 of the log-derivative bound"),
    Constant("regularized_logderiv_bound", 2.635,
             "|zeta'/zeta(1+it) + 1/(it)| <= 2.635 for 0<t<=1/2"),
    Constant("laurent_zeta_bound", 0.951, "|zeta(1+it) - 1/(it)| < 0.951 for 0<t<=1/2"),
    Constant("laurent_zeta_prime_bound", 0.862, "|zeta'(1+it) - 1/t^2| < 0.862 for 0<t<=1/2"),
    Constant("gamma0_majorant", 0.578, "|gamma_0| < 0.578 in the Laurent majorant"),
    Constant("second_moment_coeff", 0.8056,
             "int_{1e4}^T |zeta'/zeta(1+it)|^2 dt <= 0.8056 T for T >= 4e13"),
    Constant("second_moment_tmin", 4e13, "second-moment bound hypothesis T >= 4e13"),
    # zero sums
    Constant("kernel6_denominator", 2.0 * 6.0 ** 0.5,
             "sum_gamma 1/(6+(t-gamma)^2) <= log|t|/(2 sqrt 6) for |t|>=4"),
    Constant("kernel6_tmin", 4.0, "hypothesis |t| >= 4 of the a=6 kernel bound"),
    Constant("kernel_quarter_factor", 9.0,
             "sum_gamma 1/(1/4+(t-gamma)^2) <= 9 log|t| for |t|>=100"),
    Constant("kernel_quarter_tmin", 100.0, "hypothesis |t| >= 100 of the a=1/4 kernel bound"),
    Constant("zero_count_deviation", 0.28,
             "|N(T) - (T/2pi)log(T/2pi e) - 7/8| <= 0.28 log T"),
    Constant("zero_log_tail_coeff", 1.028,
             "sum_{gamma>T} log(gamma)/gamma^2 <= (1.028/2pi) log^2 T / T"),
    Constant("zero_log_sums_tmin", 1e13, "zero log-sum bounds hypothesis T >= 1e13"),
    Constant("log_2pi", 1.8378770664093453, "zeta'(0)/zeta(0) = log 2pi in the explicit formula"),
    # prime sums
    Constant("prime_sum_sqrt", 1.7215, "sum_p log p / (sqrt(p)(p-1)) < 1.7215"),
    Constant("prime_sum_sqrt_head", 1.721381, "head of sum_p log p/(sqrt(p)(p-1)) over p <= p_26355867"),
    Constant("prime_sum_sqrt_tail", 0.000104, "integral tail of sum_p log p/(sqrt(p)(p-1)) beyond n0"),
    Constant("prime_sum_sqrt_n0", 26355867, "head cutoff index n0 of the prime sums"),
    Constant("lambda_sq_over_n_sq", 0.8053, "sum_n Lambda(n)^2/n^2 < 0.8053"),
    Constant("log_sq_over_p2_minus_p", 0.982, "sum_p log^2 p/(p^2-p) < 0.982"),
    Constant("lambda_sq_over_n_const", 4.5222,
             "sum_{n<=x} Lambda(n)^2/n <= log^2(x)/2 + 4.5222 for x >= 1e13"),
    Constant("log_sq_over_p_const", 3.5402,
             "sum_{p<=x} log^2 p/p < log^2(x)/2 + 3.5402 for x >= 1e13"),
    Constant("log_sq_over_p_integral_const", 3.5401,
             "constant before the log^3 x/(8 pi sqrt x) term in sum_{p<=x} log^2 p/p"),
    Constant("lambda_sq_tmin", 1e13, "hypothesis x >= 1e13 of the Lambda^2/n bound"),
    # J_psi constant
    Constant("zero_sum_coeff", 2.0282,
             "C(k,l,e) = (1+e)(2.0282/(sqrt6 pi))(k^2+1/l^2)(l^3+1)/(l-1) + ..."),
    Constant("zero_sum_coeff_raw", 2.028, "(1 + 1.028) from the two zero log sums"),
    Constant("ell_upper", 2.0001, "ell = sqrt(1+delta)+1 < 2.0001 for delta <= 1e-13"),
    Constant("small_y_coeff", 1.3e-17,
             "C(k,l,e) second summand 1.3e-17 (1+1/e)(l^3-1/k^3)(l+1)/l^2"),
    Constant("short_range_coeff", 16.01, "V(delta,y)^2 <= 16.01 y log^4 y for y >= 2/(1+delta)"),
    Constant("initial_segment", 0.961, "int_1^{sqrt2 lambda} V(delta,y)^2 dy < 0.961 delta"),
    Constant("c_over_k2m1", 2.22571, "C(100,1.677,5e-11)/(100^2-1) = 2.22571..."),
    Constant("alpha_over_1pd", 9.8e10, "alpha(100,1.677)/(1+delta) <= 9.8e10"),
    Constant("beta_max", 4.5e6, "beta(100,1.677) <= 4.5e6"),
    Constant("jpsi_const", 2.2258,
             "J_psi(x,delta) <= 2.2258 delta log^2(2.0001/delta) x^2"),
    Constant("kappa", 100.0, "parameter choice kappa = 100"),
    Constant("lambda", 1.677, "parameter choice lambda = 1.677"),
    Constant("eta", 5e-11, "parameter choice eta = 5e-11"),
    Constant("delta_max", 1e-13, "hypothesis 0 < delta <= 1e-13"),
    Constant("x_min", 1e13, "hypothesis x >= 1e13"),
    # F(t) moments and J_theta
    Constant("prime_sum_sqrt_sq", 2.9636, "(1.7215)^2 <= 2.9636 in int_a^b |F|^2 split"),
    Constant("prime_sum_sqrt_sq2", 5.9272, "2 * 2.9636 after integration by parts"),
    Constant("second_moment_2t", 1.6113,
             "int_{1e4}^{2t} |zeta'/zeta(1+iu)+1/(iu)|^2 du <= 1.6113 t"),
    Constant("eta2", 1e-8, "auxiliary eta_2 = 1e-8 in the second-moment step"),
    Constant("reference_integral", 8400.0,
             "int_{1/2}^{1e4} |zeta'/zeta(1+it)+1/(it)|^2 dt <= 8400"),
    Constant("I1_bound", 4.8, "I_1 = int_0^{1/4} |F|^2 <= 4.8"),
    Constant("I2_bound", 34794.8, "I_2 = int_{1/4}^{5000} |F|^2 <= 34794.8"),
    Constant("I3_coeff", 6.8597, "I_3 <= 6.8597 ell/delta - 22542.6"),
    Constant("I3_offset", 22542.6, "I_3 <= 6.8597 ell/delta - 22542.6"),
    Constant("F_moment_coeff", 6.8598, "int_0^{ell/delta} |F|^2 <= 6.8598 ell/delta"),
    Constant("F_tail_coeff", 8.9454, "int_{ell/delta}^inf |F|^2/t^2 <= 8.9454 delta/ell"),
    Constant("eta1_I1", 1.5307, "eta_1 = 1.5307 for I_1"),
    Constant("eta1_I2", 0.5324, "eta_1 = 0.5324 for I_2"),
    Constant("eta1_I3", 0.5213, "eta_1 = 0.5213 for I_3"),
    Constant("eta1_tail", 0.7373, "eta_1 = 0.7373 for the 1/t^2 tail"),
    Constant("F_total_coeff", 15.8052, "6.8598 + 8.9454 = 15.8052"),
    Constant("jtheta_bracket_coeff", 31.612, "15.8052 * 2.0001 <= 31.612"),
    Constant("jtheta_eta", 0.0693, "eta = 0.0693 optimizes the J_theta bracket"),
    Constant("jtheta_const", 2.5571,
             "J_theta(x,delta) <= 2.5571 delta log^2(2.0001/delta) x^2"),
    # final constant
    Constant("goldbach_a", 1e-13, "a = 1e-13 in C > 6*2.5571/(1/8 - a^3)"),
    Constant("goldbach_C", 122.75, "C = 122.75 admissible"),
    Constant("goldbach_C_int", 123.0, "Goldbach number in (x, x + 123 log^2 x]"),
    Constant("threshold_x", 1.1e18, "122.75 log^2 x/(2x) <= 1e-13 for x >= 1.1e18"),
    Constant("goldbach_verified", 4e18, "binary Goldbach verified up to 4e18"),
]

REGISTRY: dict[str, Constant] = {c.name: c for c in _ENTRIES}
assert len(REGISTRY) == len(_ENTRIES), "duplicate registry names"


def value(name: str) -> float:
    return REGISTRY[name].value


def anchor(name: str) -> str:
    return REGISTRY[name].anchor
