"""Exponential reference curves: metric = a * exp(b * logmar) + c.

Reading metrics and sickness totals vary smoothly with effective resolution;
an exponential captures the rapid degradation beyond normal acuity. Fitting
is derivative-free and deterministic: a log-spaced grid over the rate b
(both signs), closed-form linear least squares for (a, c) at each candidate,
then golden-section refinement of b around the best grid point. Four-point
fits of a three-parameter model are accepted; n_points is recorded so
reports can flag the thin data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

# Nominal effective-resolution levels (logMAR) at which reference data are
# collected: levels A-D.
NOMINAL_LEVEL_X = (0.00, 0.22, 0.40, 0.60)

_B_GRID = np.geomspace(0.1, 10.0, 241)
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ExpCurve:
    """Fitted y = a*exp(b*x) + c (c fixed to 0 for the no-offset form)."""

    a: float
    b: float
    c: float
    r2: float
    n_points: int
    with_offset: bool
    degenerate: bool = False  # constant data: b indeterminate

    def __call__(self, x):
        return eval_curve(self, x)


class FitError(RuntimeError):
    """Fit failed; carries the best iterate seen and its residual."""

    def __init__(self, message: str, best: ExpCurve | None = None,
                 sse: float | None = None):
        super().__init__(message)
        self.best = best
        self.sse = sse


def eval_curve(curve: ExpCurve, x):
    """Evaluate a*exp(b*x) + c at scalar or array x."""
    xv = np.asarray(x, dtype=float)
    y = curve.a * np.exp(curve.b * xv) + curve.c
    return y if y.ndim else float(y)


def _linear_solve(x: np.ndarray, y: np.ndarray, b: float, with_offset: bool):
    """Best (a, c) and SSE for fixed rate b; None when b overflows."""
    with np.errstate(over="ignore", invalid="ignore"):
        z = np.exp(b * x)
    if not np.all(np.isfinite(z)):
        return None
    design = np.column_stack([z, np.ones_like(z)]) if with_offset else z[:, None]
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - design @ coef
    sse = float(resid @ resid)
    if not math.isfinite(sse):
        return None
    a = float(coef[0])
    c = float(coef[1]) if with_offset else 0.0
    return a, c, sse


def fit_exp(points: Sequence[tuple[float, float]], with_offset: bool = True) -> ExpCurve:
    """Least-squares exponential fit over (x, y) points.

    Requires >= 3 points (>= 4 with offset) at distinct x. Constant y is a
    degenerate case: the rate is indeterminate and the curve comes back
    flagged with b = 0.
    """
    minimum = 4 if with_offset else 3
    if len(points) < minimum:
        raise ValueError(f"need at least {minimum} points"
                         f" for with_offset={with_offset}")
    x = np.asarray([p[0] for p in points], dtype=float)
    y = np.asarray([p[1] for p in points], dtype=float)
    if len(np.unique(x)) != len(x):
        raise ValueError("x values must be distinct")

    ss_tot = float(((y - y.mean()) ** 2).sum())
    if ss_tot == 0.0:
        const = float(y[0])
        if with_offset:
            return ExpCurve(a=0.0, b=0.0, c=const, r2=1.0, n_points=len(x),
                            with_offset=True, degenerate=True)
        return ExpCurve(a=const, b=0.0, c=0.0, r2=1.0, n_points=len(x),
                        with_offset=False, degenerate=True)

    candidates = np.concatenate([-_B_GRID[::-1], _B_GRID])
    best_idx, best_sse, best_fit = -1, math.inf, None
    for i, b in enumerate(candidates):
        sol = _linear_solve(x, y, float(b), with_offset)
        if sol is not None and sol[2] < best_sse:
            best_idx, best_sse, best_fit = i, sol[2], (sol[0], sol[1], float(b))
    if best_fit is None:
        raise FitError("no finite candidate rate; data may be pathological")

    lo = float(candidates[max(best_idx - 1, 0)])
    hi = float(candidates[min(best_idx + 1, len(candidates) - 1)])

    def sse_at(b: float) -> float:
        sol = _linear_solve(x, y, b, with_offset)
        return sol[2] if sol is not None else math.inf

    u = hi - _GOLDEN * (hi - lo)
    v = lo + _GOLDEN * (hi - lo)
    fu, fv = sse_at(u), sse_at(v)
    for _ in range(200):
        if hi - lo <= 1e-12 * max(1.0, abs(lo), abs(hi)):
            break
        if fu <= fv:
            hi, v, fv = v, u, fu
            u = hi - _GOLDEN * (hi - lo)
            fu = sse_at(u)
        else:
            lo, u, fu = u, v, fv
            v = lo + _GOLDEN * (hi - lo)
            fv = sse_at(v)

    b_hat = (lo + hi) / 2.0
    sol = _linear_solve(x, y, b_hat, with_offset)
    if sol is None or sol[2] > best_sse:
        # refinement failed to improve; keep the grid optimum
        a_hat, c_hat, sse = best_fit[0], best_fit[1], best_sse
        b_hat = best_fit[2]
    else:
        a_hat, c_hat, sse = sol
    return ExpCurve(a=a_hat, b=b_hat, c=c_hat, r2=1.0 - sse / ss_tot,
                    n_points=len(x), with_offset=with_offset)


# Reference parameter sets mapping effective resolution (logMAR, 0 to 0.6)
# to VR reading metrics and SSQ totals, collected at the nominal A-D levels.
# Useful as forward-design targets and as fixtures for the fitter.
REFERENCE_FITS_VR: dict[str, ExpCurve] = {
    "cps_en": ExpCurve(0.1091, 2.5400, 0.3000, 0.9981, 4, True),
    "cps_cn": ExpCurve(0.1202, 2.7200, 0.2000, 0.9807, 4, True),
    "ra_en": ExpCurve(0.1228, 2.9600, -0.2200, 0.9970, 4, True),
    "ra_cn": ExpCurve(0.1838, 2.5600, -0.2200, 0.9880, 4, True),
    "acc_en": ExpCurve(-0.0942, 2.0000, 0.5822, 0.9739, 4, True),
    "acc_cn": ExpCurve(-0.1015, 2.7400, 1.0093, 0.9956, 4, True),
    "ssq_total": ExpCurve(9.7505, 3.0099, 0.0, 0.988, 4, False),
}
