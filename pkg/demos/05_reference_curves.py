"""Reference curves: metric = a * exp(b * logmar) + c.

The packaged REFERENCE_FITS_VR parameter sets map effective resolution to
expected VR reading metrics and sickness totals. This script evaluates them
across the design range, demonstrates the deterministic fitter by
recovering each parameter set from its own samples, and shows a forward
design query.
"""

import numpy as np

from readacuity import NOMINAL_LEVEL_X, REFERENCE_FITS_VR, eval_curve, fit_exp

print("== reference fits evaluated at the four levels ==")
header = "  ".join(f"{x:>7.2f}" for x in NOMINAL_LEVEL_X)
print(f"{'curve':>10}  {header}")
for key, curve in sorted(REFERENCE_FITS_VR.items()):
    row = "  ".join(f"{eval_curve(curve, x):7.3f}" for x in NOMINAL_LEVEL_X)
    print(f"{key:>10}  {row}")

print("\n== fitter round-trip: sample each curve, refit, compare ==")
for key, ref in sorted(REFERENCE_FITS_VR.items()):
    pts = [(x, eval_curve(ref, x)) for x in NOMINAL_LEVEL_X]
    fit = fit_exp(pts, with_offset=ref.with_offset)
    err = max(abs(fit.a - ref.a), abs(fit.b - ref.b), abs(fit.c - ref.c))
    print(f"{key:>10}: a={fit.a:+8.4f} b={fit.b:6.4f} c={fit.c:+8.4f} "
          f"R2={fit.r2:.6f}  max param err {err:.1e}")

print("\n== forward design: what does a clarity budget buy? ==")
ssq = REFERENCE_FITS_VR["ssq_total"]
cps = REFERENCE_FITS_VR["cps_en"]
for x in np.arange(0.0, 0.61, 0.15):
    print(f"effective resolution {x:4.2f} logMAR -> expected CPS "
          f"{eval_curve(cps, x):.2f} logMAR, SSQ total {eval_curve(ssq, x):5.1f}")
print("\nsickness roughly doubles every ~0.23 logMAR of degradation; keeping "
      "clarity at or better than 0 logMAR keeps both curves near their floor.")
