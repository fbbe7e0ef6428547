"""Effective-resolution calibration.

VR clarity is controlled through the render-resolution scale x in (0, 1];
measured acuity y (logMAR) follows a logarithmic law y = a*ln(x) + b, fitted
here by closed-form least squares on (ln x, y). Inverting the fit gives the
scale that realizes a target acuity. VST clarity is produced optically
instead: trial lenses mounted in front of the cameras, with a fixed
level -> (diopter, acuity) table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .session import ResolutionLevel


@dataclass(frozen=True)
class CalibrationModel:
    """Fitted y = a*ln(x) + b with goodness-of-fit metadata.

    For a physically sensible display, a < 0: acuity worsens (logMAR grows)
    as the render scale drops.
    """

    a: float
    b: float
    r2: float
    n: int
    rmse: float


class ScaleResult(NamedTuple):
    scale: float
    clamped: bool


def fit_log_model(points: Sequence[tuple[float, float]]) -> CalibrationModel:
    """Least-squares fit of acuity on ln(scale) over (scale, logmar) points."""
    if len(points) < 2:
        raise ValueError("need at least 2 calibration points")
    for x, _ in points:
        if not 0 < x <= 1:
            raise ValueError(f"render scale must be in (0, 1], got {x}")
    if len({x for x, _ in points}) < 2:
        raise ValueError("calibration points need at least 2 distinct scales")

    u = [math.log(x) for x, _ in points]
    y = [v for _, v in points]
    n = len(points)
    mu_u = sum(u) / n
    mu_y = sum(y) / n
    suu = sum((ui - mu_u) ** 2 for ui in u)
    suy = sum((ui - mu_u) * (yi - mu_y) for ui, yi in zip(u, y))
    a = suy / suu
    b = mu_y - a * mu_u

    residuals = [yi - (a * ui + b) for ui, yi in zip(u, y)]
    ss_res = sum(r * r for r in residuals)
    ss_tot = sum((yi - mu_y) ** 2 for yi in y)
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return CalibrationModel(a=a, b=b, r2=r2, n=n, rmse=math.sqrt(ss_res / n))


def acuity_for_scale(model: CalibrationModel, scale: float) -> float:
    """Predicted acuity (logMAR) at a render scale in (0, 1]."""
    if not 0 < scale <= 1:
        raise ValueError(f"render scale must be in (0, 1], got {scale}")
    return model.a * math.log(scale) + model.b


def scale_for_target(model: CalibrationModel, target_logmar: float) -> ScaleResult:
    """Render scale that realizes a target acuity, clamped to (0, 1].

    Targets outside the device's reachable range (e.g. better than the
    acuity at full scale) come back clamped and flagged; silent clamping
    would corrupt a study design.
    """
    if model.a == 0:
        raise ValueError("model slope is zero; scale has no effect on acuity")
    x = math.exp((target_logmar - model.b) / model.a)
    if x > 1.0:
        return ScaleResult(1.0, True)
    if x <= 0.0:  # exp underflow for absurd targets
        return ScaleResult(math.ulp(0.0), True)
    return ScaleResult(x, False)


@dataclass(frozen=True)
class LensLevel:
    """Trial-lens configuration realizing one VST acuity level."""

    level: ResolutionLevel
    diopter: float  # 0 for no lens
    acuity_logmar: float


_LENS_TABLE = {
    ResolutionLevel.A: LensLevel(ResolutionLevel.A, 0.00, 0.00),
    ResolutionLevel.B: LensLevel(ResolutionLevel.B, -4.00, 0.22),
    ResolutionLevel.C: LensLevel(ResolutionLevel.C, -5.00, 0.40),
    ResolutionLevel.D: LensLevel(ResolutionLevel.D, -6.00, 0.60),
}


def lens_for_level(level: ResolutionLevel) -> LensLevel:
    """The fixed VST trial-lens mapping for a resolution level."""
    return _LENS_TABLE[level]
