"""The mean square of the regularized log derivative of zeta along Re s = 1/2.

Panels are seeded at zero ordinates so the quadrature does not have to
discover each spike on its own.  The full range [1/2, 10^4] takes about a
minute at tolerance 1e-6; pass --full to run it.

Run: python demos/reference_integral.py [--full]
"""
import sys
import time

from goldbach_explicit import moment_quadrature as mq
from goldbach_explicit import zero_lab as zl

zeros = zl.load_zeros()

for b in (10.0, 100.0, 1000.0):
    plain = mq.reference_integral(1e-6, None, b=b)
    hinted = mq.reference_integral(1e-6, zeros, b=b)
    print(f"[1/2, {b:g}]: {hinted.value:.6f} +/- {hinted.error_estimate:.1e}  "
          f"panels {hinted.panel_count} with hints, {plain.panel_count} without")

if "--full" in sys.argv:
    t = time.perf_counter()
    res = mq.reference_integral(1e-6, zeros)
    print(f"[1/2, 1e4]: {res.value:.6f} +/- {res.error_estimate:.1e}, "
          f"{res.panel_count} panels, {time.perf_counter() - t:.0f}s")
    for c in mq.reference_integral_checks(res):
        print(" ", c)

# the split of the F moments fed by the published reference value
m = mq.split_F_moments(1e-13)
print(f"I1 = {m.I1:.5f}, I2 = {m.I2:.3f}, total coefficient = {m.total_coeff:.6f}")
print(f"tail moment bound = {mq.tail_moment_bound():.6f}")
