"""
Laminar base states of a conducting channel flow
=================================================

Samples the wall-driven (couette) and pressure-driven (hartmann) base
states on the solver's collocation nodes and shows how the velocity
profile flattens into wall layers as the Hartmann number grows.
"""

import numpy as np

from mhdes import Params, baseflow_residual, build_operator, profile_for

op = build_operator(24)

# wall-driven state: U runs from -1 to +1, the induced field vanishes at
# both walls and peaks at the centerline
for Ha in (0.1, 5.0, 50.0):
    params = Params(flow="couette", Ha=Ha, Pm=0.1)
    s = profile_for(params, op.nodes)
    r1, r2 = baseflow_residual(s, params)
    print(f"couette  Ha={Ha:5g}  U(0)={s.U[12]:+.3f}  "
          f"Bbar(0)={s.Bbar[12]:.6f}  residuals=({r1:.1e}, {r2:.1e})")

print()

# pressure-driven state: centerline velocity normalized to 1; the profile
# tends to a plug with exponential Hartmann layers of width ~1/Ha
for Ha in (0.1, 5.0, 50.0):
    params = Params(flow="hartmann", Ha=Ha, Pm=0.1)
    s = profile_for(params, op.nodes)
    near_wall = s.U[1]  # first node inside z = +1
    print(f"hartmann Ha={Ha:5g}  U(0)={s.U[12]:.6f}  "
          f"U({op.nodes[1]:+.3f})={near_wall:.4f}")

print()

# a compact table of one profile, the same data `mhdes profile` emits
params = Params(flow="hartmann", Ha=10.0, Pm=0.1)
s = profile_for(params, op.nodes)
print("z        U         Bbar")
for i in range(0, op.N + 1, 4):
    print(f"{s.z[i]:+.4f}  {s.U[i]:8.5f}  {s.Bbar[i]:+8.5f}")
