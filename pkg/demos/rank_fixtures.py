"""Exact rational rank over formal symbols: the shipped vector families.

Run:  python demos/rank_fixtures.py
"""
from zetaforms.symbolic import (
    generate_test_vector,
    gutnik_log2_columns,
    gutnik_zeta34_columns,
    polylog_pair_columns,
    rational_rank,
    zeta_pair_columns,
)

for name, (cols, fld) in (
    ("gutnik log2/zeta pair", gutnik_log2_columns()),
    ("gutnik zeta(3,4,5) pair", gutnik_zeta34_columns()),
):
    res = rational_rank(cols, fld)
    print(f"{name}: {len(cols)} columns over {fld.symbols} -> rank {res.rank} "
          f"(pivot route {res.rank_via_pivots}, kernel route {res.rank_via_kernel})")

for k in (2, 3):
    cols, fld = polylog_pair_columns(k)
    print(f"polylog pair family k={k}: {len(cols)} columns -> rank "
          f"{rational_rank(cols, fld).rank}")

for a in (7, 9):
    cols, fld = zeta_pair_columns(a)
    print(f"zeta pair columns a={a}: {len(cols)} columns -> rank "
          f"{rational_rank(cols, fld).rank} (all independent when formal)")

print("\ntest vectors with prescribed (scalar rank, paired rank):")
for a, n, N in ((7, 2, 3), (9, 2, 5), (11, 3, 7)):
    res = generate_test_vector(a, n, N)
    print(f"  a={a}: requested ({n}, {N}), built i={res.i}, j={res.j}, "
          f"patched={res.patched}, verified ({res.n_verified}, {res.N_verified})")
