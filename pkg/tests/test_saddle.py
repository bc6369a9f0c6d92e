import pytest
from mpmath import mp, mpf, mpc

from zetaforms.saddle import (
    SaddlePlane,
    angle_distance,
    check_assumptions,
    compute_constants,
    find_mu1,
    find_tau0,
    nu_of,
    q_eval,
    q_expanded,
    q_scaled_residual,
    r_of_a,
    reduce_angle,
)
from zetaforms.exact_kernel import poly_eval_precise


def test_q_at_special_points():
    with mp.workdps(40):
        assert q_eval(13, 2, mpf(5)) > 0            # Q(2r+1) > 0
        # Q(0) = 2 (2r+1)^3 for odd a
        assert q_eval(13, 2, mpf(0)) == 2 * 5 ** 3
        assert q_eval(7, 1, mpf(0)) == 2 * 27


def test_q_matches_expanded_polynomial():
    import random

    rng = random.Random(23)
    p = q_expanded(7, 1)
    with mp.workdps(60):
        for _ in range(20):
            x = mpc(rng.uniform(-4, 4), rng.uniform(-4, 4))
            direct = q_eval(7, 1, x)
            via_poly = poly_eval_precise(p, x)
            scale = max(1, abs(direct))
            assert abs(direct - via_poly) / scale < mpf(10) ** -45


def test_find_mu1_13_2():
    mu1, cert = find_mu1(13, 2)
    assert mu1 > 5
    with mp.workdps(80):
        assert q_scaled_residual(13, 2, mu1) < mpf(10) ** -30
    assert cert["newton_steps"] >= 1


def test_mu1_uniqueness_probe():
    # exactly one sign change on a geometric grid over (c, 2 mu1 - c)
    mu1, _ = find_mu1(13, 2)
    c = 5
    with mp.workdps(40):
        lo, hi = mpf(c) + mpf(10) ** -6, 2 * mu1 - c
        pts = [lo * (hi / lo) ** (mpf(i) / 400) for i in range(401)]
        signs = [mp.sign(q_eval(13, 2, x)) for x in pts]
        changes = sum(1 for s0, s1 in zip(signs, signs[1:]) if s0 * s1 < 0)
    assert changes == 1


def test_find_tau0_13_2():
    tau0, cert = find_tau0(13, 2)
    assert mp.re(tau0) > 0 and mp.im(tau0) > 0
    with mp.workdps(80):
        assert q_scaled_residual(13, 2, tau0) < mpf(10) ** -30
        # conjugate-root symmetry
        assert q_scaled_residual(13, 2, mp.conj(tau0)) < mpf(10) ** -30


def test_tau0_closer_to_c_than_mu1_at_1001():
    r = r_of_a(1001)
    mu1, _ = find_mu1(1001, r)
    tau0, _ = find_tau0(1001, r)
    c = 2 * r + 1
    assert abs(tau0 - c) < mu1 - c


def test_f_real_on_inner_interval_and_bank_rules():
    plane = SaddlePlane(a=13, r=2)
    with mp.workdps(50):
        for x in (mpf(3) / 2, mpf(3), mpf("4.99")):
            assert abs(mp.im(plane.f(x))) < mpf(10) ** -45
        # upper bank: Im f(tau + i0) = 3 (tau - c) pi
        for x in (mpf(6), mpf("11.5")):
            imf = mp.im(plane.f(x, bank="upper"))
            assert abs(imf - 3 * (x - 5) * mp.pi) < mpf(10) ** -40
        with pytest.raises(ValueError):
            plane.f(mpf(6))              # on the cut without a bank tag
        with pytest.raises(ValueError):
            plane.f(mpf(0))              # left cut unsupported


def test_fprime_at_mu1_is_3_i_pi():
    plane = SaddlePlane(a=13, r=2)
    mu1, _ = find_mu1(13, 2)
    with mp.workdps(60):
        v = plane.f_prime(mu1, bank="upper")
        assert abs(v - mpc(0, 3 * mp.pi)) < mpf(10) ** -40


def test_fprime_finite_difference_consistency():
    plane = SaddlePlane(a=13, r=2)
    with mp.workdps(80):
        tau = mpf(2 * 2) + mpf(1) / 2           # 2r + 0.5, inside (1, c)
        h = mpf(10) ** -20
        fd = (plane.f(tau + h) - plane.f(tau - h)) / (2 * h)
        assert abs(fd - plane.f_prime(tau)) < mpf(10) ** -35


def test_f_increases_to_mu1_then_decreases_on_upper_bank():
    plane = SaddlePlane(a=13, r=2)
    mu1, _ = find_mu1(13, 2)
    with mp.workdps(50):
        xs = [5 + (mu1 - 5) * mpf(i) / 12 for i in range(1, 12)]
        vals = [mp.re(plane.f(x, bank="upper")) for x in xs]
        assert all(v0 < v1 for v0, v1 in zip(vals, vals[1:]))
        ys = [mu1 + i for i in range(1, 8)]
        vals2 = [mp.re(plane.f(y, bank="upper")) for y in ys]
        assert all(v0 > v1 for v0, v1 in zip(vals2, vals2[1:]))


def test_constants_13_2():
    data = compute_constants(13, 2)
    assert data.log_eps_pp_a < data.log_eps_a < 0
    # eps_a below the coarse bound 2^{6(r+1)} / r^{2(a-6r)}
    bound_log = 18 * mp.log(2) - 2 * mp.log(2)
    assert data.log_eps_a <= bound_log
    assert abs(data.angle_identity_residual) < mpf(10) ** -20
    assert data.fprime_tau0_minus_ipi < mpf(10) ** -40


def test_angle_limits_drift_decreasing():
    # arg f''(tau0) -> pi/3 with decreasing drift as a grows
    drifts = []
    for a in (1001, 10001):
        data = compute_constants(a, r_of_a(a))
        plane = SaddlePlane(a=a, r=r_of_a(a))
        with mp.workdps(data.dps):
            argf = mp.arg(plane.f_second(data.tau0))
            drifts.append(float(abs(argf - mp.pi / 3)))
    assert drifts[1] < drifts[0]


def test_check_assumptions_1001_all_pass():
    a = 1001
    r = r_of_a(a)
    data = compute_constants(a, r)
    rep = check_assumptions(a, r, data)
    assert rep["cond1_mu1_window"]["pass"]
    assert rep["cond2_nondegenerate_angles"]["pass"]
    assert rep["cond3_angle_identity"]["pass"]
    assert rep["all_pass"]


def test_check_assumptions_13_2_reports_regardless():
    data = compute_constants(13, 2)
    rep = check_assumptions(13, 2, data)
    assert "cond1_mu1_window" in rep
    assert rep["cond1_mu1_window"]["pass"] is False     # mu1 - c = 6.64 > 0.4
    assert rep["cond2_nondegenerate_angles"]["pass"]


def test_r_of_a_values_and_monotonicity():
    assert r_of_a(7) == 1                 # clamped
    assert r_of_a(13) == 2
    vals = [r_of_a(a) for a in (1001, 10001, 100001)]
    assert vals == sorted(vals)
    assert vals[0] == 72
    with pytest.raises(ValueError):
        r_of_a(8)


def test_reduce_angle_and_distance():
    with mp.workdps(30):
        assert abs(reduce_angle(3 * mp.pi) - mp.pi) < mpf(10) ** -25
        assert abs(reduce_angle(-3 * mp.pi) - mp.pi) < mpf(10) ** -25
        assert angle_distance(mp.pi / 2 + 7 * mp.pi, mp.pi / 2, mp.pi) < mpf(10) ** -25


def test_nu_of_magnitudes():
    with mp.workdps(30):
        assert nu_of(100001) < mpf(10) ** -4
        assert nu_of(1001) < mpf("0.002")
