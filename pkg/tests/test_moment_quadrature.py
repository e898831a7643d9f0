import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from goldbach_explicit import moment_quadrature as mq
from goldbach_explicit import zeta_numerics as zn
from goldbach_explicit.prime_engine import build_sieve


def test_polynomial_and_sine():
    r = mq.adaptive_integrate(lambda x: x * x, 0, 1)
    assert abs(r.value - 1 / 3) < 1e-10 and r.error_estimate >= 0
    r = mq.adaptive_integrate(np.sin, 0, math.pi)
    assert abs(r.value - 2) < 1e-10


def test_kronrod_exact_for_high_degree():
    # K15 integrates degree-22 polynomials exactly on one panel; G7 only to degree 13
    k, _ = mq._gk15(lambda t: t ** 22, np.array([0.0]), np.array([1.0]))
    assert abs(k[0] - 1 / 23) < 1e-15
    r = mq.adaptive_integrate(lambda t: t ** 22, 0, 1, 1e-14)
    assert abs(r.value - 1 / 23) < 1e-15


def test_simpson_oracle_on_logderiv_square():
    f = lambda t: np.abs(zn.log_deriv_line_array(t)) ** 2
    r = mq.adaptive_integrate(f, 0.5, 100, 1e-10, initial_width=0.5)
    oracle = mq.simpson(f, 0.5, 100, 10 ** 6 + 1)
    assert abs(r.value - oracle) <= 1e-4 * oracle
    assert abs(r.value - 66.27024825445) < 1e-8


def test_tolerance_refinement_moves_value_within_estimates():
    f = lambda t: np.abs(zn.regularized_logderiv_array(t)) ** 2
    a = mq.adaptive_integrate(f, 0.5, 60, 1e-6)
    b = mq.adaptive_integrate(f, 0.5, 60, 1e-7)
    assert abs(a.value - b.value) <= max(a.error_estimate, b.error_estimate)


@settings(max_examples=40, deadline=None)
@given(st.floats(-5, 5), st.floats(0.1, 5), st.floats(0.1, 5), st.floats(0.5, 4))
def test_additivity(a, w1, w2, k):
    f = lambda x: np.cos(k * x) + x * x
    c, b = a + w1, a + w1 + w2
    left = mq.adaptive_integrate(f, a, c, 1e-12)
    right = mq.adaptive_integrate(f, c, b, 1e-12)
    whole = mq.adaptive_integrate(f, a, b, 1e-12)
    slack = left.error_estimate + right.error_estimate + whole.error_estimate + 1e-12 * abs(whole.value)
    assert abs(left.value + right.value - whole.value) <= slack + 1e-13


@settings(max_examples=40, deadline=None)
@given(st.floats(-3, 3), st.floats(0.01, 6), st.floats(0.1, 30))
def test_nonnegativity_of_squares(a, w, k):
    r = mq.adaptive_integrate(lambda x: np.abs(np.sin(k * x)) ** 2, a, a + w, 1e-10)
    assert r.value >= -r.error_estimate


def test_quadrature_errors():
    with pytest.raises(ValueError):
        mq.adaptive_integrate(np.sin, 1, 0)
    with pytest.raises(ValueError):
        mq.adaptive_integrate(np.sin, 0, 1, tol=0)
    with pytest.raises(mq.MaxSubdivisionError) as ei:
        mq.adaptive_integrate(lambda x: 1 / np.sqrt(np.abs(x - 0.3)), 0, 1, 1e-14, max_panels=20)
    assert ei.value.partial.panel_count <= 20 and ei.value.partial.value > 0


def test_quadresult_invariants():
    with pytest.raises(ValueError):
        mq.QuadResult(1.0, -1.0, 1)
    s = mq.QuadResult(1.0, 0.1, 2) + mq.QuadResult(2.0, 0.2, 3)
    assert s == mq.QuadResult(3.0, s.error_estimate, 5) and abs(s.error_estimate - 0.3) < 1e-15


def test_zero_hints_reduce_panel_count(zeros):
    a, b = 0.5, 1500.0
    # at the working tolerance of the reference run; at 1e-9 both need the 0.5 scale
    plain = mq.reference_integral(1e-6, None, a=a, b=b)
    hinted = mq.reference_integral(1e-6, zeros, a=a, b=b)
    assert abs(plain.value - hinted.value) <= 2 * (plain.error_estimate + hinted.error_estimate) + 1e-9
    assert hinted.panel_count <= 0.8 * plain.panel_count


def test_reference_restricted_is_monotone():
    ten = mq.reference_integral(1e-10, None, a=0.5, b=10)
    fifty = mq.reference_integral(1e-10, None, a=0.5, b=50)
    assert 0 < ten.value < fifty.value


@pytest.fixture(scope="module")
def sieve6():
    return build_sieve(10 ** 6)


def test_F_at_zero(sieve6):
    ps = sieve6.primes_upto(10 ** 6).astype(float)
    oracle = -zn.STIELTJES.values[0] + math.fsum(np.log(ps) / (np.sqrt(ps) * (ps - 1)))
    assert abs(mq.F(0.0, sieve6).real - oracle) < 1e-12
    assert abs(mq.F(0.0, sieve6) - 1.1422542486660037) < 1e-12
    a, b = mq.F(1e-5, sieve6), mq.F(1e-6, sieve6)
    # the limit is real; the imaginary parts carry the linear term F'(0) t
    assert abs(a.real - b.real) < 1e-4 and abs(b.real - mq.F(0.0, sieve6).real) < 1e-4
    ps = sieve6.primes_upto(10 ** 6).astype(float)
    L = np.log(ps)
    g0, g1 = zn.STIELTJES.values[:2]
    slope = -math.fsum(L * L / np.sqrt(ps) / (ps - 1) + 2 * L * L * np.sqrt(ps) / (ps - 1) ** 2) \
        + 2 * (g0 * g0 + 2 * g1)
    assert abs(a.imag - slope * 1e-5) < 1e-8 and abs(b.imag - slope * 1e-6) < 1e-10
    assert abs(slope + 12.4215965455) < 1e-8
    linear = (10 * b - a) / 9
    assert abs(linear - mq.F(0.0, sieve6)) < 1e-8


@pytest.mark.parametrize("t", [0.3, 2.0, 50.0])
def test_F_modulus_even(t, sieve6):
    assert abs(abs(mq.F(t, sieve6)) - abs(mq.F(-t, sieve6))) < 1e-12


@settings(max_examples=30, deadline=None)
@given(st.floats(1e-4, 300))
def test_F_conjugate_symmetry(t):
    s = mq._default_sieve()
    assert abs(mq.F(-t, s) - mq.F(t, s).conjugate()) < 1e-10


def test_F_bound_far_out(sieve6):
    assert abs(mq.F(5000.0, sieve6)) <= 4 * math.log(1e4) + 1e-4 + 1.7215
    v = mq.F(np.array([0.3, 5000.0]), sieve6)
    assert abs(v[0] - complex(-0.56285, -0.76414)) < 1e-4


def test_moment_split_published():
    m = mq.split_F_moments(1e-13)
    assert m.I1 <= 4.8 and abs(m.I1 - 4.74480) < 1e-4
    assert m.I2 <= 34794.8 and abs(m.I2 - 34794.773) < 1e-2
    assert abs(m.I3_coeff - 6.859638) < 1e-5 and abs(m.I3_offset - 22542.62) < 1e-2
    assert m.total_coeff <= 6.8598
    assert m.eta1_choices == (1.5307, 0.5324, 0.5213)
    assert all(c.passed for c in m.checks)
    assert all(math.isfinite(v) and v >= 0 for v in (m.I1, m.I2, m.I3))


def test_moment_piece_matches_hand_formula():
    hand = 0.5 * (1 + 1 / 1.5307) * 2.635 ** 2 * 0.5 + 2.9636 * 2.5307 * 0.25
    assert abs(mq.moment_piece(0, 0.25, 1.5307, 2.635 ** 2 * 0.5) - hand) < 1e-12


def test_moment_split_desk_mode():
    with pytest.raises(mq.ParameterDomainError):
        mq.split_F_moments(1e-3)
    m = mq.split_F_moments(1e-3, desk_mode=True)
    assert m.checks[-1].passed is None
    with pytest.raises(mq.ParameterDomainError):
        mq.split_F_moments(0.0)
    with pytest.raises(mq.ParameterDomainError):
        mq.moment_piece(0, 1, -1.0, 1.0)


def test_tail_moment_bound():
    v = mq.tail_moment_bound()
    assert v <= 8.9454 and abs(v - 8.945368) < 1e-5
    assert mq.tail_moment_bound(1.0) > v
    big = [mq.tail_moment_bound(e) / (1 + e) for e in (1e3, 1e6, 1e9)]
    assert abs(big[-1] - 5.9272 / 2) < 1e-8
    assert abs(big[0] - 5.9272 / 2) > abs(big[1] - 5.9272 / 2) > abs(big[2] - 5.9272 / 2)


def test_tail_coefficient_chain_by_quadrature():
    # X int_X^inf t dt/t^3 = 1 and X int_X^inf (t - X)/t^3 dt = 1/2, checked at X = 7
    # through t = 1/s: int_X^inf g(t) dt = int_0^{1/X} g(1/s)/s^2 ds
    X = 7.0
    one = mq.adaptive_integrate(lambda s: X + 0 * s, 0, 1 / X, 1e-12)
    half = mq.adaptive_integrate(lambda s: X * (1 - X * s), 0, 1 / X, 1e-12)
    assert abs(one.value - 1) < 1e-12 and abs(half.value - 0.5) < 1e-12


def test_reference_parameterizations_agree():
    # int_{1/4}^{b} |reg(2t)|^2 dt = 1/2 int_{1/2}^{2b} |reg(u)|^2 du
    b = 40.0
    lhs = mq.adaptive_integrate(lambda t: np.abs(zn.regularized_logderiv_array(2 * t)) ** 2, 0.25, b, 1e-11)
    rhs = mq.reference_integral(1e-11, None, a=0.5, b=2 * b)
    assert abs(lhs.value - 0.5 * rhs.value) <= lhs.error_estimate + rhs.error_estimate + 1e-9


def test_second_moment_domain():
    with pytest.raises(ValueError):
        mq.second_moment_check(1e4)
    with pytest.raises(ValueError):
        mq.second_moment_check(2e5)


@pytest.mark.slow
def test_second_moment_at_2e4():
    sm = mq.second_moment_check(2e4, tol=1e-7, cfg=zn.EvalConfig(cutoff_factor=0.5))
    assert sm.ratio <= 0.8056
    assert abs(sm.integral.value - 8049.3184720) < 1e-3
    ratio_check, mean = sm.checks
    assert ratio_check.passed and "empirical" in ratio_check.note
    assert mean.passed is None and abs(mean.value - 0.8053) < 0.05
