"""A single curve search, step by step.

Three points in the plane lifted to height 0: (-1,0), (1,0), (0,3).
Starting from the pair {p1, p2} whose infimum is (-1; 0, 0), we follow
the curve of dual-feasible points while the third point becomes active.
"""
import math

import numpy as np

from socinf import Instance, solve, spair_from
from socinf.curve import alphas_of_x0, build_curve_system, gamma_plus
from socinf.pivots import full_step, partial_step

inst = Instance.from_array([[0.0, -1.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 3.0]])

# the pair S-pair: both cones touch at the midpoint, one unit below
start = spair_from(inst, [0, 1], [-1.0, 0.0, 0.0])
cs = build_curve_system(inst, start, inst[2])
print("z (part of p* off the support's affine hull):", cs.z)

# walk down the curve and watch the weights
for x0 in (-1.0, -1.25, -1.5, -5 / 3):
    astar, alpha = alphas_of_x0(cs, x0)
    print(f"x0={x0:+.4f}  xbar={gamma_plus(cs, x0)}  alpha*={astar:.4f}  alpha={alpha}")

# the full step lands on the circumcenter before any weight reaches zero
x_full = full_step(cs, -1.0)
x_part, k = partial_step(cs, -1.0)
print(f"full step at {x_full:.6f} (-5/3), partial step at {x_part:.6f} (-sqrt(10) = {-math.sqrt(10):.6f})")

res = solve(inst)
print("solver:", res.x_star, "support", res.support)
print("dual weights y_i0:", np.round(res.dual.y[:, 0], 6))
