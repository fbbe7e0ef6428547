"""Tour of the acuity unit conversions.

Print size on a reading chart is angular: what matters is the visual angle
the lowercase x-height subtends at the eye, not its physical size. This
script walks the full conversion chain at the standard 40 cm viewing
distance and shows how a distance change shifts sizes.
"""

import numpy as np

from readacuity import units

print("== physical size -> visual angle -> logMAR ==")
for h_cm in (0.0582, 0.1, 0.2909, 0.5818):
    theta = units.visual_angle(h_cm, 40.0)
    s = units.logmar_from_angle(theta)
    print(f"x-height {h_cm:7.4f} cm at 40 cm -> {theta:6.2f} arcmin "
          f"-> {s:+.3f} logMAR")

print("\n== logMAR -> required x-height at different distances ==")
for s in (-0.2, 0.0, 0.5, 1.0):
    sizes = {d: units.xheight_for(s, d) for d in (25.0, 40.0, 80.0)}
    rendered = "  ".join(f"{d:.0f}cm: {h:.4f}cm" for d, h in sizes.items())
    print(f"S = {s:+.1f}:  {rendered}")

print("\n== decimal acuity equivalents ==")
for s in (-0.3, 0.0, 0.3, 1.0):
    print(f"{s:+.1f} logMAR = decimal {units.decimal_from_logmar(s):.3f}")

print("\n== moving the chart: the whole size axis shifts ==")
sizes_at_80 = np.round(np.arange(1.0, -0.51, -0.1), 1)
sizes_at_40 = units.standardize_to_40cm(sizes_at_80, 80.0)
print("recorded at 80 cm:", " ".join(f"{x:+.2f}" for x in sizes_at_80[:5]), "...")
print("standardized 40cm:", " ".join(f"{x:+.2f}" for x in sizes_at_40[:5]), "...")
print("(speeds need no adjustment: reading speed is distance-invariant)")
