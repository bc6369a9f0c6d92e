import math
import random
from fractions import Fraction

import pytest

from zetaforms.criterion import (
    AbstractInstance,
    EpsTable,
    InstanceDefect,
    choose_eps1,
    permutation_product_check,
    oscillation_subsequence,
    phi_build,
    coefficient_bound_check,
    random_smallness_table,
    random_signed_instance,
    rank_lower_bound,
    zeta_rank_bound,
)


def test_phi_build_powers_of_two():
    q = [2 ** n for n in range(1, 16)]
    assert phi_build(q, 1, 5) == 11          # smallest m with 2^m > 2^10
    for n in range(1, 8):
        m = phi_build(q, Fraction(1, 2), n)
        assert m >= n + 1
        assert q[m - 1] > 2 ** (n * Fraction(3, 2))
        assert q[m - 2] <= 2 ** (n * Fraction(3, 2))


def test_phi_build_superexponential_against_scan_oracle():
    q = [3 ** (n * n) for n in range(1, 9)]
    eps1 = Fraction(1, 2)
    n = 3
    # oracle: linear scan with exact power comparison
    threshold_num = q[n - 1] ** 3            # Q_n^{3} vs Q_m^{2}: compare squares
    m_oracle = None
    for m in range(n + 1, len(q) + 1):
        if q[m - 1] ** 2 > threshold_num:
            m_oracle = m
            break
    assert phi_build(q, eps1, n) == m_oracle == 4


def test_phi_build_errors():
    with pytest.raises(IndexError):
        phi_build([2, 4, 8], 1, 3)
    with pytest.raises(ValueError):
        phi_build([2, 4, 4], 1, 1)
    with pytest.raises(ValueError):
        phi_build([2, 4, 8], 0, 1)


def test_choose_eps1_k1_unconstrained():
    assert choose_eps1(1, 1, Fraction(1, 10)) == 1


def test_choose_eps1_k2_example():
    # constraints: eps1 < 1/4 strictly and 1 + eps1 <= 3/2  ->  1/8
    assert choose_eps1(2, 1, 1) == Fraction(1, 8)


def test_choose_eps1_postconditions_hold():
    rng = random.Random(2)
    for _ in range(100):
        k = rng.randint(1, 6)
        tau1 = Fraction(rng.randint(1, 40), rng.randint(1, 7))
        eps = Fraction(rng.randint(1, 9), rng.randint(1, 11))
        e1 = choose_eps1(k, tau1, eps)
        assert 0 < e1 <= 1
        if k > 1:
            grow = (1 + e1) ** (k - 1)
            assert (grow - 1) * tau1 < eps / 4
            assert grow <= 1 + eps / 2
            # maximality among dyadics: twice the value violates something
            g2 = (1 + 2 * e1) ** (k - 1)
            assert not ((g2 - 1) * tau1 < eps / 4 and g2 <= 1 + eps / 2) or 2 * e1 > 1


def test_permutation_identity_is_equality():
    table, phi, _ = random_smallness_table(random.Random(1), 3)
    rep = permutation_product_check(table, phi, 1, 3)
    ident = next(r for r in rep.rows if r[0] == (1, 2, 3))
    assert ident[1]                          # equality passes as <=


def test_permutation_check_power_table_all_sigmas():
    # eps_{j,n} = Q_n^{-tau_j}, tau = (3, 2, 1), Q = 2^n, phi from phi_build
    # with eps1 large enough that the iterate gaps cover log2(4!) = 4.58
    q = [2 ** n for n in range(1, 46)]
    eps = {}
    for j, tau in enumerate((3, 2, 1), start=1):
        for n in range(1, 46):
            eps[(j, n)] = Fraction(1, 2 ** (n * tau))
    table = EpsTable(k=3, eps=eps)
    eps1 = 5

    def phi(n):
        return phi_build(q, eps1, n)

    assert phi(1) == 7 and phi(7) == 43     # smallest m with 2^m > 2^(6n)
    rep = permutation_product_check(table, phi, 1, 3)
    assert rep.hypothesis_ok
    assert rep.conclusion_holds and rep.passed
    assert len(rep.rows) == 6


def test_permutation_check_adversarial_table_flags_hypothesis():
    eps = {}
    for j in (1, 2):
        for n in (1, 2, 3, 4):
            eps[(j, n)] = Fraction(1, 2 ** n) if j == 1 else Fraction(1, 3 ** n)
    # j = 1 decays slower than j = 2: hypothesis reversed
    table = EpsTable(k=2, eps=eps)
    rep = permutation_product_check(table, lambda n: n + 1, 1, 2)
    assert not rep.hypothesis_ok
    assert rep.hypothesis_violations
    assert not rep.passed                    # conclusion not asserted


def test_coefficient_bound_k1_is_three_m_over_eps():
    inst = AbstractInstance(k=1, values={(1, n): Fraction(1, 2 ** n) for n in (1, 2, 3)})
    rep = coefficient_bound_check(inst, [Fraction(5)], 1, lambda n: n + 1)
    assert rep.bounds[0] == 3 * Fraction(5)
    assert rep.passed


def test_coefficient_bound_zero_combination():
    inst = AbstractInstance(k=2, values={(j, n): Fraction((-1) ** n, 2 ** (n * j))
                                         for j in (1, 2) for n in range(1, 9)})
    rep = coefficient_bound_check(inst, [0, 0], 1, lambda n: n + 2)
    assert all(b == 0 for b in rep.bounds)
    assert rep.passed


def test_coefficient_bound_instance_defect_on_zero_eps():
    inst = AbstractInstance(k=1, values={(1, 1): Fraction(0), (1, 2): Fraction(1, 2)})
    with pytest.raises(InstanceDefect):
        coefficient_bound_check(inst, [1], 1, lambda n: n + 1)


def test_coefficient_bound_randomized_draws_hold():
    rng = random.Random(9)
    inst, phi, n0 = random_signed_instance(rng, 3)
    for _ in range(1000):
        lambdas = [Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(3)]
        rep = coefficient_bound_check(inst, lambdas, n0, phi)
        assert rep.passed


def test_rank_lower_bound():
    assert rank_lower_bound(2, [Fraction(1, 2), Fraction(1, 4)]) == Fraction(11, 4)
    assert rank_lower_bound(1, [Fraction(3, 2)]) == Fraction(5, 2)
    with pytest.raises(ValueError):
        rank_lower_bound(2, [1, 1])
    with pytest.raises(ValueError):
        rank_lower_bound(2, [1, -2])


def test_zeta_rank_bound_small_a_rejected():
    # at a = 13 the scaled forms do not decay; tau1 < 0
    with pytest.raises(ArithmeticError):
        zeta_rank_bound(13)


def test_oscillation_identity_cases():
    rep = oscillation_subsequence([0.0], [0.0], 0.9, 200)
    assert rep.psi == tuple(range(1, 201))
    rep = oscillation_subsequence([math.pi], [0.0], 0.9, 100)
    assert rep.psi == tuple(range(1, 101))
    assert rep.lambda_estimate == 1.0


def test_oscillation_golden_density():
    golden = (1 + math.sqrt(5)) / 2
    rep = oscillation_subsequence([math.pi * golden], [0.0], 0.5, 10000)
    # |cos| >= 1/2 on a set of density 2/3 for an equidistributed angle;
    # measured, with a loose window
    assert 0.6 < rep.accepted_fraction < 0.73
    assert 1.3 < rep.lambda_estimate < 1.7


def test_oscillation_failure():
    with pytest.raises(ArithmeticError):
        oscillation_subsequence([0.0], [math.pi / 2], 0.5, 50)


def test_permutation_check_randomized_suite_small():
    rng = random.Random(31)
    for _ in range(200):
        k = rng.randint(2, 5)
        table, phi, n0 = random_smallness_table(rng, k)
        rep = permutation_product_check(table, phi, n0, k)
        assert rep.hypothesis_ok, rep.hypothesis_violations[:3]
        assert rep.conclusion_holds
