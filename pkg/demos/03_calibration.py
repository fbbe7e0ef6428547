"""Calibrating effective resolution.

VR: measure acuity at a few render-resolution scales, fit the logarithmic
model, and invert it to find the scales that realize target logMAR levels.
VST: clarity is degraded optically instead, via the fixed trial-lens table.
"""

import math

import numpy as np

from readacuity import ResolutionLevel, calibration

# acuity measured at four render scales (synthetic: the reference law plus
# a little measurement noise)
rng = np.random.default_rng(7)
scales = [0.10, 0.40, 0.70, 1.00]
measured = [(-0.2796 * math.log(x) - 0.0232) + rng.normal(0, 0.01) for x in scales]

model = calibration.fit_log_model(list(zip(scales, measured)))
print(f"fitted acuity = {model.a:.4f} * ln(scale) + {model.b:.4f}"
      f"   (R2 = {model.r2:.4f}, n = {model.n})")

print("\nscales realizing the four standard levels:")
for level in ResolutionLevel:
    target = level.nominal_logmar
    scale, clamped = calibration.scale_for_target(model, target)
    note = "  (clamped!)" if clamped else ""
    print(f"  level {level.value} ({target:.2f} logMAR) -> scale {scale:.3f}{note}")

print("\na target better than the device can reach comes back flagged:")
scale, clamped = calibration.scale_for_target(model, -0.5)
print(f"  target -0.50 logMAR -> scale {scale:.3f}, clamped = {clamped}")

print("\nVST trial-lens table (optical blur instead of render scaling):")
for level in ResolutionLevel:
    lens = calibration.lens_for_level(level)
    lens_desc = "no lens" if lens.diopter == 0 else f"{lens.diopter:+.2f} D"
    print(f"  level {level.value}: {lens_desc:>8} -> {lens.acuity_logmar:.2f} logMAR")
