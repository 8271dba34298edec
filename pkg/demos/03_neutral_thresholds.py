"""
Critical thresholds over the Hartmann number
============================================

Minimizes the threshold curve over wavenumber for each Hartmann number,
producing the neutral points (a_crit, Re_E).  In the vanishing-coupling
limit the wall-driven state reproduces the classical energy-stability
threshold near 44.3 (quoted at wavenumber 1.21 in gap/pi units, i.e.
a_crit = 1.21 * pi/2 in the half-gap units used here).
"""

import numpy as np

from mhdes import Params, minimize_over_a, neutral_sweep

# the minimizing wavenumber drifts to larger a as Ha grows, so the sweep
# window must be wide enough to keep every minimum interior
points = neutral_sweep("couette", [0.1, 1.0, 10.0, 50.0], 0.1,
                       a_window=(0.2, 30.0), N=50)
print("flow     Ha      a_crit    Re_E       converged")
for p in points:
    print(f"{p.flow:8s} {p.Ha:<7g} {p.a_crit:<9.4f} {p.Re_E:<10.4f} "
          f"{p.converged}")

print()

points = neutral_sweep("hartmann", [0.1, 1.0, 10.0, 50.0], 0.1,
                       a_window=(0.2, 30.0), N=50)
for p in points:
    print(f"{p.flow:8s} {p.Ha:<7g} {p.a_crit:<9.4f} {p.Re_E:<10.4f} "
          f"{p.converged}")

print()

# the vanishing-coupling limit against the classical hydrodynamic values
pt = minimize_over_a(Params(flow="couette", Ha=1e-6, Pm=0.1), 0.2, 4.0, N=60)
print(f"couette limit:  Re_E = {pt.Re_E:.4f}  (classical 44.3), "
      f"a_crit*2/pi = {pt.a_crit * 2 / np.pi:.4f}  (classical 1.21)")
pt = minimize_over_a(Params(flow="hartmann", Ha=1e-6, Pm=0.1), 0.5, 5.0, N=60)
print(f"hartmann limit: Re_E = {pt.Re_E:.4f}  (classical 87.6)")
