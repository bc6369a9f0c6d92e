import math

import pytest
from mpmath import mp, mpf
import mpmath

from zetaforms.highprec import (
    DOUBLE_DERIVED,
    PLAIN,
    PrecisionContext,
    _elementary_tail_bound_log10,
    _em_tail_range,
    eval_S_direct,
    form_residual,
    power_sum_tail,
    zeta_value,
)
from zetaforms.linear_forms import FormSpec, table_for, zeta_form_derived, zeta_form_plain


CTX = PrecisionContext(digits=60, guard=20)


def test_precision_context_validation():
    with pytest.raises(ValueError):
        PrecisionContext(digits=40)
    with pytest.raises(ValueError):
        PrecisionContext(digits=60, guard=5)


def test_zeta_rejects_bad_s():
    with pytest.raises(ValueError):
        zeta_value(1, CTX)
    with pytest.raises(ValueError):
        zeta_value(0, CTX)


def test_zeta_2_and_4_against_pi_identities():
    with mp.workdps(CTX.workdps):
        assert abs(zeta_value(2, CTX) - mp.pi ** 2 / 6) < mpf(10) ** -CTX.digits
        assert abs(zeta_value(4, CTX) - mp.pi ** 4 / 90) < mpf(10) ** -CTX.digits


def test_zeta_3_twenty_digits_against_direct_summation_oracle():
    # oracle: plain summation with integral tail bound, at modest precision
    with mp.workdps(40):
        direct = mpf(0)
        N = 120000
        for m in range(1, N):
            direct += mpf(m) ** -3
        tail_hi = mpf(N) ** -3 + mpf(N) ** -2 / 2     # f(N) + int_N^inf x^-3 dx
        z3 = zeta_value(3, CTX)
        assert direct < z3 < direct + tail_hi
        assert abs(z3 - mpf("1.20205690315959428540")) < mpf(10) ** -20


def test_zeta_matches_mpmath_oracle():
    for s in (2, 3, 5, 8, 13, 40):
        with mp.workdps(CTX.workdps):
            assert abs(zeta_value(s, CTX) - mpmath.zeta(s)) < mpf(10) ** -CTX.digits


def test_power_sum_tail_matches_mpmath_hurwitz():
    for s, start in ((3, 7), (9, 48), (25, 240), (120, 64)):
        with mp.workdps(CTX.workdps):
            mine = power_sum_tail(s, start, CTX)
            ref = mpmath.zeta(s, start)
            assert abs(mine - ref) < mpf(10) ** -(CTX.digits - 2)


def test_em_tail_range_consistent_with_scalar():
    with mp.workdps(80):
        vals = _em_tail_range(9, 40, 48, -70)
        for idx, s in enumerate(range(9, 41)):
            assert abs(vals[idx] - mpmath.zeta(s, 48)) < mpf(10) ** -65


def test_S1_positive_and_truncation_stable():
    spec = FormSpec(a=7, r=1, n=1)
    res = eval_S_direct(spec, PLAIN, CTX)
    assert res.value > 0
    assert res.tail_bound_log10 < -(CTX.digits)
    # doubling the requested tail tolerance must not move reported digits
    res2 = eval_S_direct(spec, PLAIN, CTX, abs_tol_log10=2 * res.tail_bound_log10)
    assert abs(res.value - res2.value) < mpf(10) ** (-CTX.digits + 2)


def test_elementary_bound_is_actually_an_upper_bound():
    # compare the bound at T against the exactly summed stretch [T, 4T)
    from zetaforms.linear_forms import build_summand

    spec = FormSpec(a=7, r=1, n=1)
    s = build_summand(spec)
    T = 64
    with mp.workdps(40):
        chunk = mpf(0)
        for t in range(T, 4 * T):
            v = s.eval_exact(t)
            chunk += mpf(v.numerator) / mpf(v.denominator)
        assert math.log10(float(chunk)) < _elementary_tail_bound_log10(spec, PLAIN, T)


def test_residuals_at_200_digits_for_712():
    ctx = PrecisionContext(digits=200, guard=25)
    spec = FormSpec(a=7, r=1, n=2)
    table = table_for(spec)
    assert form_residual(zeta_form_plain(table), ctx) < mpf(10) ** -150
    assert form_residual(zeta_form_derived(table), ctx) < mpf(10) ** -150


def test_laurent_and_direct_paths_agree():
    # small decay exponent forces the Laurent path; compare against the
    # direct path at a spec where both are feasible
    spec = FormSpec(a=13, r=1, n=2)      # decay 13 + 4*7 = 41: direct feasible
    ctx = PrecisionContext(digits=80, guard=20)
    direct = eval_S_direct(spec, PLAIN, ctx)
    lt_res = None
    from zetaforms import highprec

    from zetaforms.linear_forms import build_summand

    lt = highprec._laurent_for(spec)
    t0 = build_summand(spec).first_nonzero_term()
    with mp.workdps(ctx.workdps):
        head = highprec._direct_sum(spec, PLAIN, t0, 64)
        K = 96
        while lt.tail_bound_log10(PLAIN, K, 64) > -100:
            K *= 2
        tail = lt.tail_value(PLAIN, K, 64, -100)
        lt_res = head + tail
    assert abs(direct.value - lt_res) < mpf(10) ** -75


def test_derived_eval_uses_no_numerical_differentiation():
    # the derived series value must match the exact linear form, which is
    # only possible if the second derivative is realized exactly
    ctx = PrecisionContext(digits=120, guard=20)
    spec = FormSpec(a=9, r=1, n=1)
    table = table_for(spec)
    d = zeta_form_derived(table)
    res = eval_S_direct(spec, DOUBLE_DERIVED, ctx)
    with mp.workdps(ctx.workdps):
        target = d.evaluate(lambda s: zeta_value(s, ctx))
        assert abs(res.value - target) < mpf(10) ** -100
