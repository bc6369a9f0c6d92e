"""Asymptotic constants across scales.

Computes mu1, tau0 and the growth/oscillation constants for a desk-scale
pair (13, 2) and for larger a with r on the standard schedule, printing
the assumption report each time.

Run:  python demos/saddle_constants.py
"""
from mpmath import mp

from zetaforms import check_assumptions, compute_constants, r_of_a

for a, r in ((13, 2), (1001, None), (10001, None)):
    r = r if r is not None else r_of_a(a)
    data = compute_constants(a, r)
    print(f"\n(a, r) = ({a}, {r}),  c = {2 * r + 1},  dps = {data.dps}")
    print(f"  mu1  = {mp.nstr(data.mu1, 20)}  (scaled residual {mp.nstr(data.mu1_residual, 3)})")
    print(f"  tau0 = {mp.nstr(data.tau0, 20)}  (scaled residual {mp.nstr(data.tau0_residual, 3)})")
    print(f"  log eps   = {mp.nstr(data.log_eps_a, 12)}")
    print(f"  log eps'' = {mp.nstr(data.log_eps_pp_a, 12)}   (eps'' < eps < 1: "
          f"{bool(data.log_eps_pp_a < data.log_eps_a < 0)})")
    print(f"  omega = {mp.nstr(data.omega_a, 12)}, phi = {mp.nstr(data.phi_a, 12)}")
    print(f"  signed-law pair: omega+pi = {mp.nstr(data.omega_signed, 12)}, "
          f"phi+pi = {mp.nstr(data.phi_signed, 12)}")
    print(f"  angle identity residual: {mp.nstr(abs(data.angle_identity_residual), 3)}")
    report = check_assumptions(a, r, data)
    print(f"  assumptions: window {report['cond1_mu1_window']['pass']}, "
          f"angles {report['cond2_nondegenerate_angles']['pass']}, "
          f"identity {report['cond3_angle_identity']['pass']}")
    prox = report["proximity_diagnostics"]
    print(f"  proximity: mu1 - c < nu(a)? {prox['mu1_minus_c_below_nu']} "
          f"(nu = {prox['nu_a']}); |tau0 - c| < mu1 - c? {prox['tau0_closer_than_mu1']}")
