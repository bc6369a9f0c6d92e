import math
import random

import numpy as np
import pytest

from zetaforms.diophantine import (
    ProjectiveInstance,
    convex_body_emptiness,
    type2_box_check,
    golden_convergents,
    projective_distance,
    siegel_verify,
    sqrt2_convergents,
    projective_distance_sweep,
)


def test_convergents_sqrt2_and_golden():
    cs = sqrt2_convergents(6)
    assert cs[:5] == [(1, 1), (3, 2), (7, 5), (17, 12), (41, 29)]
    for p, q in cs:
        assert abs(p * p - 2 * q * q) == 1
    gs = golden_convergents(8)
    for (p0, q0), (p1, q1) in zip(gs, gs[1:]):
        assert abs(p1 * q0 - p0 * q1) == 1


def test_projective_distance_extremes():
    inst = ProjectiveInstance(basis=np.array([[1.0, 0.0, 0.0]]))
    assert projective_distance(inst, [3, 0, 0]) < 1e-14          # P in F
    assert abs(projective_distance(inst, [0, 2, 0]) - 1) < 1e-14  # P orthogonal
    with pytest.raises(ValueError):
        projective_distance(inst, [0, 0, 0])


def test_projective_distance_against_grid_oracle():
    # oracle: brute-force minimization of ||P - f|| over a grid of F
    # elements, refined around the argmin until the step is ~1e-8
    def grid_min(e1, e2, P):
        c1, c2, half = 0.0, 0.0, 8.0
        best = math.inf
        for _ in range(9):
            s = np.linspace(c1 - half, c1 + half, 61)
            t = np.linspace(c2 - half, c2 + half, 61)
            S, T = np.meshgrid(s, t, indexing="ij")
            F = S[..., None] * e1 + T[..., None] * e2
            D = np.linalg.norm(P - F, axis=-1)
            idx = np.unravel_index(np.argmin(D), D.shape)
            best = float(D[idx])
            c1, c2 = float(S[idx]), float(T[idx])
            half *= 4.0 / 60.0 * 2.0
        return best

    rng = random.Random(19)
    done = 0
    while done < 6:
        e1 = np.array([rng.uniform(-2, 2) for _ in range(3)])
        e2 = np.array([rng.uniform(-2, 2) for _ in range(3)])
        if abs(np.linalg.det(np.array([e1, e2, np.cross(e1, e2)]))) < 1e-2:
            continue
        inst = ProjectiveInstance(basis=np.array([e1, e2]))
        P = np.array([rng.uniform(-3, 3) for _ in range(3)])
        if np.linalg.norm(P) < 0.5:
            continue
        got = projective_distance(inst, P)
        best = grid_min(e1, e2, P)
        assert abs(got - best / np.linalg.norm(P)) < 1e-6
        done += 1


def test_projective_instance_rejects_dependent_basis():
    with pytest.raises(ValueError):
        ProjectiveInstance(basis=np.array([[1.0, 2.0], [2.0, 4.0]]))


def test_kappa_is_coordinate_norm_bound():
    rng = random.Random(7)
    inst = ProjectiveInstance(basis=np.array([[1.0, 0.2, -0.5], [0.3, 2.0, 0.7]]))
    kappa = inst.kappa
    B = np.asarray(inst.basis)
    for _ in range(200):
        lam = np.array([rng.uniform(-5, 5), rng.uniform(-5, 5)])
        f = lam @ B
        assert np.max(np.abs(lam)) <= kappa * np.linalg.norm(f) + 1e-12


def test_distance_sweep_golden_line():
    golden = (1 + math.sqrt(5)) / 2
    rep = projective_distance_sweep(golden, tau=1.0, eps=0.2, p_max=10**6)
    assert rep.passed, rep.violations[:3]
    assert rep.checked > 10**6
    assert rep.norm_threshold == 100.0         # recorded burn-in
    assert -2.25 <= rep.best_exponent <= -1.95  # tightness probe near -2


def test_integer_points_never_on_the_line():
    golden = (1 + math.sqrt(5)) / 2
    inst = ProjectiveInstance(basis=np.array([[1.0, golden]]))
    rng = random.Random(3)
    for _ in range(500):
        P = [rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6)]
        if P == [0, 0]:
            continue
        assert projective_distance(inst, P) > 0


def test_siegel_sqrt2_consecutive_convergents():
    cs = sqrt2_convergents(26)
    forms = []
    qseq = []
    for (p0, q0), (p1, q1) in zip(cs, cs[1:]):
        forms.append([[q0, -p0], [q1, -p1]])
        qseq.append(q0)
    xi = math.sqrt(2)
    rep = siegel_verify(forms, qseq, points=[[xi, 1.0]], taus=[1.0],
                        subspace_basis=[[1, 0], [0, 1]])
    assert rep.passed
    for row in rep.rows_:
        assert row[1] != 0 and abs(row[1]) == 1    # consecutive convergents: det = +-1
    # bound exponent tracks d - k - sum tau = 0
    assert abs(rep.bound_slope - rep.expected_bound_slope) < 0.35


def test_siegel_duplicate_forms_rejected():
    forms = [[[1, 2], [1, 2]]]
    rep = siegel_verify(forms, [10], points=[[1.5, 1.0]], taus=[1.0],
                        subspace_basis=[[1, 0], [0, 1]])
    assert rep.hypothesis_failures
    assert not rep.passed


def test_siegel_d_equals_k_slope():
    # one point, one-dimensional rational subspace: the bound product is
    # d! * max_t |L(e_1)| and must decay like Q^{-tau}
    cs = golden_convergents(30)
    golden = (1 + math.sqrt(5)) / 2
    forms = []
    qseq = []
    for (p0, q0), (p1, q1) in zip(cs[4:-1], cs[5:]):
        forms.append([[q0, -p0]])
        qseq.append(q0)
    rep = siegel_verify(forms, qseq, points=[[golden, 1.0]], taus=[1.0],
                        subspace_basis=[[1, 0]])
    # restriction of (q x1 - p x2) to span((1,0)) is q != 0
    assert not rep.hypothesis_failures
    assert abs(rep.bound_slope - rep.expected_bound_slope) < 0.35


def test_convex_body_emptiness_golden():
    golden = (1 + math.sqrt(5)) / 2
    rep = convex_body_emptiness(points=[[1.0, golden]], taus=[1.0],
                                qn=13, n=6, eps=0.25)
    assert rep.passed
    assert rep.points_checked > 0


def test_convex_body_volume_cap():
    with pytest.raises(ValueError):
        convex_body_emptiness(points=[[1.0, 0.5, 0.25, 0.1]], taus=[2.0],
                              qn=10**4, n=3, eps=0.1, volume_cap=100)


def test_type2_box_sqrt2():
    from mpmath import mp
    cs = sqrt2_convergents(28)
    forms = [[p, q] for p, q in cs]
    qseq = [q for _, q in cs]
    with mp.workdps(60):
        xi = mp.sqrt(2)
    rep = type2_box_check(xis=[xi], forms=forms, qseq=qseq,
                          taus=[1.0], eps=0.2, Q=100)
    assert rep.hypothesis_ok, rep.decay_slopes
    assert rep.passed, rep.violations[:3]
    assert rep.boxes_checked == 200            # a1 in [-100, 100] minus zero
    for sample in rep.identity_samples:
        assert sample["gap"] < 1e-6 * max(1.0, sample["lhs"])


def test_type2_box_corrupted_forms_fail_hypothesis():
    from mpmath import mp
    cs = sqrt2_convergents(20)
    forms = [[p + (7 if i % 2 else -3), q] for i, (p, q) in enumerate(cs)]
    qseq = [q for _, q in cs]
    with mp.workdps(60):
        xi = mp.sqrt(2)
    rep = type2_box_check(xis=[xi], forms=forms, qseq=qseq,
                          taus=[1.0], eps=0.2, Q=50)
    assert not rep.hypothesis_ok
    assert not rep.passed
