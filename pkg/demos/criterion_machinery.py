"""The criterion's moving parts on synthetic exact data.

Shows the next-index map phi, the dyadic eps_1 selection, the permutation
product inequality, and the coefficient bound, all over exact tables.

Run:  python demos/criterion_machinery.py
"""
import random
from fractions import Fraction

from zetaforms.criterion import (
    choose_eps1,
    permutation_product_check,
    phi_build,
    coefficient_bound_check,
    random_smallness_table,
    random_signed_instance,
)

q = [2 ** n for n in range(1, 30)]
print("phi over Q_n = 2^n:")
for eps1 in (1, Fraction(1, 2), Fraction(1, 4)):
    row = [phi_build(q, eps1, n) for n in range(1, 9)]
    print(f"  eps1 = {eps1}: phi(1..8) = {row}")

print("\ndyadic eps1 selection:")
for k in (1, 2, 3, 5):
    e1 = choose_eps1(k, Fraction(3, 2), Fraction(1, 2))
    print(f"  k = {k}, tau1 = 3/2, eps = 1/2  ->  eps1 = {e1}")

rng = random.Random(4)
table, phi, n0 = random_smallness_table(rng, 3)
rep = permutation_product_check(table, phi, n0, 3)
print(f"\npermutation inequality on a random exact table (k = 3):")
print(f"  hypothesis holds: {rep.hypothesis_ok}")
for sigma, ok, eta in rep.rows:
    print(f"  sigma = {sigma}: eta = {eta}, inequality {'holds' if ok else 'FAILS'}")

inst, phi, n0 = random_signed_instance(rng, 3)
lambdas = [Fraction(7, 2), Fraction(-4), Fraction(1, 3)]
pb = coefficient_bound_check(inst, lambdas, n0, phi)
print(f"\ncoefficient bound (k = 3), lambdas = {lambdas}:")
for j, (lam, b) in enumerate(zip(pb.lambdas, pb.bounds), start=1):
    print(f"  |lambda_{j}| = {abs(lam)} <= bound {float(b):.3f}: {pb.ok_per_j[j-1]}")
