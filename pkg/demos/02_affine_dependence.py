"""When the entering point is already in the support's affine hull.

p3 = (-0.9; 0.5, 0) lies on the line through (-1, 0) and (1, 0), so no
curve exists.  A ratio test picks the support point to drop instead.
"""
import numpy as np

from socinf import Instance, solve, spair_from
from socinf.curve import alphas_affdep, build_curve_system
from socinf.pivots import affdep_ratio

inst = Instance.from_array([[0.0, -1.0, 0.0], [0.0, 1.0, 0.0], [-0.9, 0.5, 0.0]])
start = spair_from(inst, [0, 1], [-1.0, 0.0, 0.0])

cs = build_curve_system(inst, start, inst[2])
print("affinely dependent:", cs.affinely_dependent, " w =", cs.w)

k, ratio = affdep_ratio(cs, -1.0)
print(f"drop support position {k} at alpha* = {ratio:.4f}")
print("weights of the fixed point after the move:", alphas_affdep(cs, -1.0, ratio))

res = solve(inst, start=start)
print("optimum", res.x_star, "support", res.support, "drops", res.stats.affdep_drops)

# started from the lowest point instead, the same optimum comes from one two-point solve
print("cold start:", solve(inst).x_star)
