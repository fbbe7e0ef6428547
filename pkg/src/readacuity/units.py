"""Conversions among physical print size, viewing distance, visual angle,
logMAR, and decimal acuity.

Conventions used throughout the package:

* angles are carried in arc minutes (the 5 arcmin reference of the logMAR
  scale makes that the natural unit); degrees/radians appear only here,
  at the trig boundary,
* physical lengths (x-heights, viewing distances) are in centimeters,
* print sizes are logMAR values (dimensionless, may be negative).

All functions accept scalars or numpy arrays and are pure.
"""

from __future__ import annotations

import numpy as np

# Reference angle of the logMAR scale: 0 logMAR = an x-height subtending
# 5 arc minutes.
REFERENCE_ARCMIN = 5.0

_ARCMIN_PER_RADIAN = 60.0 * 180.0 / np.pi

# Standard viewing distance of the reading protocol, in centimeters.
STANDARD_DISTANCE_CM = 40.0


def visual_angle(xheight_cm, distance_cm):
    """Visual angle (arc minutes) subtended by an x-height at a distance.

    Uses the exact form 2*arctan(h / 2d); the small-angle approximation is
    never substituted, even though the difference is negligible at reading
    sizes.
    """
    h = np.asarray(xheight_cm, dtype=float)
    d = np.asarray(distance_cm, dtype=float)
    if np.any(h < 0):
        raise ValueError("x-height must be >= 0 cm")
    if np.any(d <= 0):
        raise ValueError("viewing distance must be > 0 cm")
    theta = 2.0 * np.arctan(h / (2.0 * d)) * _ARCMIN_PER_RADIAN
    return theta if theta.ndim else float(theta)


def logmar_from_angle(theta_arcmin):
    """Print size in logMAR for a visual angle in arc minutes."""
    theta = np.asarray(theta_arcmin, dtype=float)
    if np.any(theta <= 0):
        raise ValueError("visual angle must be > 0 arcmin")
    s = np.log10(theta / REFERENCE_ARCMIN)
    return s if s.ndim else float(s)


def angle_from_logmar(logmar):
    """Visual angle in arc minutes for a logMAR print size."""
    s = np.asarray(logmar, dtype=float)
    theta = REFERENCE_ARCMIN * np.power(10.0, s)
    return theta if theta.ndim else float(theta)


def xheight_for(logmar, distance_cm):
    """Physical x-height (cm) that subtends the requested logMAR size.

    Inverse of visual_angle composed with logmar_from_angle: rendering a
    glyph with this x-height at ``distance_cm`` reproduces ``logmar``.
    """
    d = np.asarray(distance_cm, dtype=float)
    if np.any(d <= 0):
        raise ValueError("viewing distance must be > 0 cm")
    theta_rad = np.asarray(angle_from_logmar(logmar)) / _ARCMIN_PER_RADIAN
    h = 2.0 * d * np.tan(theta_rad / 2.0)
    return h if h.ndim else float(h)


def decimal_from_logmar(logmar):
    """Decimal acuity equivalent of a logMAR value (0 logMAR -> 1.0, 20/20)."""
    s = np.asarray(logmar, dtype=float)
    a = np.power(10.0, -s)
    return a if a.ndim else float(a)


def logmar_from_decimal(decimal_acuity):
    """logMAR equivalent of a decimal acuity (> 0)."""
    a = np.asarray(decimal_acuity, dtype=float)
    if np.any(a <= 0):
        raise ValueError("decimal acuity must be > 0")
    s = -np.log10(a)
    return s if s.ndim else float(s)


def distance_shift(logmar, distance_cm, new_distance_cm):
    """Re-express an angular print size recorded at one distance at another.

    Moving from ``distance_cm`` to ``new_distance_cm`` offsets every size by
    log10(d'/d). Reading speeds need no adjustment: speed is
    distance-invariant when size is defined angularly.
    """
    d = np.asarray(distance_cm, dtype=float)
    dp = np.asarray(new_distance_cm, dtype=float)
    if np.any(d <= 0) or np.any(dp <= 0):
        raise ValueError("viewing distances must be > 0 cm")
    s = np.asarray(logmar, dtype=float) + np.log10(dp / d)
    return s if s.ndim else float(s)


def standardize_to_40cm(logmar, distance_cm):
    """Shift a print size measured at ``distance_cm`` to the 40 cm reference."""
    return distance_shift(logmar, distance_cm, STANDARD_DISTANCE_CM)
