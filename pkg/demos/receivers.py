"""
Splitting a multi-antenna receiver between information and energy
=================================================================

A receiver with several antennas can time-share, split power on every
antenna, or dedicate some antennas to each task. We trace the three regions
and the outer bound you would get if one signal could serve both purposes.
"""

import numpy as np

from wipt import SimoChannel, as_points, outer_bound, ps_region, ts_region

ch = SimoChannel(gains=(0.5, 0.5), power=1.0, sigma_n2=0.5, sigma_c2=0.5)
grid = np.linspace(0.0, 1.0, 6)

ts = ts_region(ch, grid)
ps = ps_region(ch, grid)
print("fraction  TS rate  TS energy  PS rate  PS energy")
for k, f in enumerate(grid):
    print(f"{f:8.1f}  {ts.rate[k]:7.4f}  {ts.energy[k]:9.4f}  {ps.rate[k]:7.4f}  {ps.energy[k]:9.4f}")

# Antenna switching gives a handful of discrete points
pts = as_points(ch)
for label, r, e in zip(pts.parameter, pts.rate, pts.energy):
    print(f"AS {label:5s} rate={r:.4f} energy={e:.4f}")

ob = outer_bound(ch)
print(f"outer bound corner: rate={ob.rate:.4f} energy={ob.energy:.4f}")
