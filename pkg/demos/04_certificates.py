"""Writing a result, then re-checking it without the solver.

The result file stores the apex, the support indices and the weights
y_i0; everything else in the dual certificate follows from
complementary slackness.
"""
import json
import pathlib
import tempfile

from socinf import io, kkt_check, solve, subgradient_oracle
from socinf.bench import generate_normal

inst = generate_normal(6, 300, seed=3)
res = solve(inst)

tmp = pathlib.Path(tempfile.mkdtemp())
io.write_instance(inst, tmp / "inst.csv")
(tmp / "result.json").write_text(json.dumps(io.result_to_dict(res), indent=1))

inst2 = io.read_instance(tmp / "inst.csv")
x, support, dual = io.read_result(tmp / "result.json", inst2)
rep = kkt_check(inst2, x, dual)
print(f"primal {rep.primal:.1e}  dual cone {rep.dual_cone:.1e}  "
      f"sum {rep.dual_sum:.1e}  slackness {rep.slackness:.1e}  -> {rep.passed}")

# an independent lower bound from supergradient ascent
bound, _ = subgradient_oracle(inst2, 100_000)
print(f"x0* = {x.p0:.9f}, oracle lower bound {bound:.9f}, gap {x.p0 - bound:.2e}")
print("same check from the shell:")
print(f"  socinf verify --input {tmp / 'inst.csv'} --result {tmp / 'result.json'}")
