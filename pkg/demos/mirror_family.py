"""The mirror-symmetric triple and its regime switch.

Two states tilted symmetrically off the z axis with prior p1 each, plus the
axis state itself. Above a threshold prior the axis state is ignored and a
pure pair carries the measurement; below it all three states participate.
The switch happens exactly at p1 = 1/(2 + cos t (sin t + cos t)), where the
two candidate formulas take the same value.
"""

import math

from qsd import mirror_regime, mirror_threshold, solve_mirror_symmetric

theta = math.pi / 3.0
thr = mirror_threshold(theta)
print(f"theta = 60 deg, threshold prior = {thr:.10f}")
print()
print(f"{'p1':>6} {'pair':>12} {'interior':>12} {'regime':>9} {'solved p':>14}  method")
for k in range(1, 10):
    p1 = 0.05 * k
    reg = mirror_regime(theta, p1)
    result = solve_mirror_symmetric(theta, p1)
    print(
        f"{p1:6.2f} {reg.pair_value:12.8f} {reg.interior_value:12.8f}"
        f" {reg.regime:>9} {result.p_opt:14.10f}  {result.method}"
    )

# the two candidates agree at the threshold itself: the optimum is
# continuous even though the measurement changes character
reg = mirror_regime(theta, thr)
print()
print(f"at the threshold: pair {reg.pair_value:.12f}, interior {reg.interior_value:.12f}")
print(f"gap = {abs(reg.pair_value - reg.interior_value):.2e}")
