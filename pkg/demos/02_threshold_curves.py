"""
Stability threshold versus wavenumber
=====================================

Tabulates Re_a = 1/m(a), the Reynolds number below which disturbance
energy at spanwise wavenumber a decays monotonically, over a log-spaced
grid for the standard parameter study (Pm = 0.1, Ha in {0.1, 1, 10, 50}).
Each column is one curve of the familiar threshold-versus-wavenumber
plot; the minimum over a of each column is the stability threshold Re_E.
"""

import numpy as np

from mhdes import Params, reynolds_curve

grid = np.geomspace(0.5, 8.0, 12)
ha_values = (0.1, 1.0, 10.0, 50.0)

for flow in ("couette", "hartmann"):
    curves = {}
    for Ha in ha_values:
        params = Params(flow=flow, Ha=Ha, Pm=0.1)
        curves[Ha] = dict(reynolds_curve(params, grid, N=50))
    print(f"--- {flow}: Re_a over wavenumber, one column per Ha ---")
    header = "a      " + "".join(f"Ha={Ha:<9g}" for Ha in ha_values)
    print(header)
    for a in grid:
        cells = "".join(f"{curves[Ha][float(a)]:<12.2f}" for Ha in ha_values)
        print(f"{a:<7.3f}{cells}")
    print()

# stronger magnetic coupling raises the whole curve: compare the values
# at a = 2 across Ha for the wall-driven state
params = {Ha: dict(reynolds_curve(Params(flow="couette", Ha=Ha, Pm=0.1),
                                  [2.0], N=50)) for Ha in ha_values}
print("couette Re_a at a=2:",
      ", ".join(f"Ha={Ha:g}: {params[Ha][2.0]:.1f}" for Ha in ha_values))
