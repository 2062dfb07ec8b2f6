"""The two-level model h = 1 + |t|^2 (1 - log|x|^2): its curvature, the
unbounded goodness ratio and the integrals that stay finite anyway."""
import math

from kmsdiff.estimates import (default_log_cutoffs, double_integral, goodness_violation,
                               poincare_radial_integral, tube_integral)
from kmsdiff.metric import counterexample_model, curvature_blocks

M = counterexample_model()
blocks = curvature_blocks(M, [1.0], log_x2=[-2.0])
print("h at |t|=1, log|x|^2=-2:", blocks["h"])
print("Levi form in dt/t, dx/x:\n", blocks["levi_log"].real)

print("\ngoodness ratio along t = 1/n:")
for row in goodness_violation(M, (10, 100, 1000, 10000)):
    print(f"  n={row['n']:>6}  ratio={row['ratio']:.6f}  log n={math.log(row['n']):.6f}")

print("\nPoincare integral at eps=0.5:", poincare_radial_integral(0.5).value, "=", 1 / math.log(2))

print("\ntube integral G(delta), eps=1:")
for ld in (-10, -50, -99):
    rep = tube_integral(M, 1.0, ld)
    print(f"  log delta={ld:>4}  G={rep.value:.8f}  closed form={rep.reference:.8f}")

print("\ndouble integral with shrinking inner cutoff:")
for V in default_log_cutoffs():
    print(f"  -log s0={V:8.2f}  value={double_integral(0.5, V).value:.10f}")
