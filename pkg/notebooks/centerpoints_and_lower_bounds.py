"""
Centerpoints and instances that resist every line
=================================================

Any line through a centerpoint of the disk centers is balanced, so random
lines through it are a cheap separator.  The concentric-circle construction
shows that some instances force many crossings on every such line.
"""

import numpy as np

from disksever import exact_centerpoint, gen_lower_bound, gen_random, halfplane_depth
from disksever.separators import crossings_through_point, sample_slopes

inst = gen_random(400, 20.0, seed=1)
p = exact_centerpoint(inst.centers)
print(f"centerpoint {p[0]:.3f}, {p[1]:.3f} has depth {halfplane_depth(inst.centers, p)}"
      f" (needs {-(-inst.n // 3)})")

angles = [s.angle for s in sample_slopes(0, 200)]
counts = crossings_through_point(inst, p, angles)
print(f"lines through it cross {counts.min()}..{counts.max()} disks, median {np.median(counts)}")

lb, params = gen_lower_bound(1000, 9000)
counts = crossings_through_point(lb, (0.0, 0.0), angles)
print(f"concentric instance: {params.layers} circles of {params.k} disks, "
      f"{params.m_prime} edges")
print(f"every sampled line through the origin crosses at least {counts.min()} disks "
      f"(guaranteed floor {params.crossing_floor():.2f})")
