"""Ball problems through lifting.

Enclosing a ball B(c, r) means lifting it to (-r; c); meeting it means
lifting to (r; c).  The optimal apex (x0; xbar) then reads off as the
ball B(xbar, -x0), or B(xbar, x0) when x0 > 0 (balls share interior).
"""
import numpy as np

from socinf import (
    Ball,
    brute_force_meb_points,
    largest_enclosed_ball,
    min_enclosing_and_intersecting,
    min_enclosing_ball,
    min_intersecting_ball,
)

rng = np.random.default_rng(7)
balls = [Ball(rng.standard_normal(2), rng.uniform(0.1, 0.6)) for _ in range(12)]

meb = min_enclosing_ball(balls)
print("enclosing:", meb.ball, "determined by", meb.support_indices)

meet = min_intersecting_ball(balls)
print("meeting:  ", meet.ball, meet.mode.value)

lens = [Ball([0.0, 0.0], 2.0), Ball([1.0, 0.0], 2.0)]
print("inside the lens:", largest_enclosed_ball(lens).ball)

mixed = min_enclosing_and_intersecting([Ball([0.0, 0.0], 0.0)], [Ball([4.0, 0.0], 1.0)])
print("contain the origin, touch B((4,0),1):", mixed.ball)

# points only: compare against enumerating every candidate support set
pts = rng.standard_normal((9, 2))
c, r = brute_force_meb_points(pts)
ours = min_enclosing_ball([Ball(p, 0.0) for p in pts]).ball
print(f"brute force r={r:.12f}, solver r={ours.radius:.12f}")
