"""Sentence reading speed and the four summary reading metrics.

The size-speed data of one session form a ReadingCurve: (logMAR, wpm) pairs
in strictly descending print size. From it we derive

* MRS  - maximum (plateau) reading speed,
* CPS  - critical print size, the smallest size sustaining near-maximum speed,
* RA   - reading acuity, smallest readable size with a 0.01/error penalty,
* ACC  - accessibility index, mean speed over the ten largest sizes / 200 wpm.

Speeds use the error-corrected rate 60*(n - e)/t, with the per-sentence word
count n taken from the data (10-word English sentences, 12-character Chinese
sentences); unmeasurable metrics are returned as None rather than raised.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .session import Session

ACC_REFERENCE_WPM = 200.0
ACC_SIZE_COUNT = 10
DEFAULT_CPS_FRACTION = 0.90
PLATEAU_SD_FACTOR = 1.96


class MrsMethod(str, Enum):
    SD_PLATEAU = "sd_plateau"
    FRACTION_MAX = "fraction_max"


class CpsMethod(str, Enum):
    FRACTION = "fraction"
    SD = "sd"


def reading_speed(word_count: int, errors: int, seconds: float) -> float:
    """Error-corrected reading speed in words per minute: 60*(n - e)/t."""
    if seconds <= 0:
        raise ValueError("reading time must be > 0 s")
    if not 0 <= errors <= word_count:
        raise ValueError("errors must be in 0..word_count")
    return max(0.0, 60.0 * (word_count - errors) / seconds)


@dataclass(frozen=True)
class ReadingCurve:
    """(size, speed) pairs in strictly descending print size."""

    points: tuple[tuple[float, float], ...]

    def __post_init__(self):
        for i, (s, rs) in enumerate(self.points):
            if rs < 0:
                raise ValueError("reading speeds must be >= 0")
            if i and s >= self.points[i - 1][0]:
                raise ValueError("sizes must be strictly descending")

    def __len__(self) -> int:
        return len(self.points)

    @property
    def sizes(self) -> tuple[float, ...]:
        return tuple(s for s, _ in self.points)

    @property
    def speeds(self) -> tuple[float, ...]:
        return tuple(rs for _, rs in self.points)

    def shifted(self, delta: float) -> "ReadingCurve":
        """The same curve with every size offset by delta (distance change)."""
        return ReadingCurve(tuple((s + delta, rs) for s, rs in self.points))

    def scaled(self, k: float) -> "ReadingCurve":
        if k <= 0:
            raise ValueError("speed scale factor must be > 0")
        return ReadingCurve(tuple((s, rs * k) for s, rs in self.points))


def curve_from_session(session: Session, pad_for_acc: bool = False) -> ReadingCurve:
    """Reading curve of a session's trials.

    A fully missed final sentence contributes 0 wpm at its size. With
    ``pad_for_acc``, a session stopped before presenting ten sizes is padded
    with 0-wpm points continuing the observed step, so ACC still averages
    over ten sizes.
    """
    pts = [
        (t.logmar, reading_speed(t.word_count, t.errors, t.duration_s))
        for t in session.trials
    ]
    if pad_for_acc and 0 < len(pts) < ACC_SIZE_COUNT:
        step = pts[-2][0] - pts[-1][0] if len(pts) >= 2 else 0.1
        while len(pts) < ACC_SIZE_COUNT:
            pts.append((pts[-1][0] - step, 0.0))
    return ReadingCurve(tuple(pts))


def _plateau_size(speeds: Sequence[float]) -> int:
    """Number of leading (largest-size) points forming the speed plateau.

    The plateau grows from the largest size until the next point is
    significantly slower than the running plateau: mean - RS > 1.96 * SD
    (sample SD; 0 for a single point). A flat curve is all plateau.
    """
    m = 1
    while m < len(speeds):
        plateau = speeds[:m]
        mean = sum(plateau) / m
        if m > 1:
            var = sum((x - mean) ** 2 for x in plateau) / (m - 1)
            sd = math.sqrt(var)
        else:
            sd = 0.0
        if mean - speeds[m] > PLATEAU_SD_FACTOR * sd:
            break
        m += 1
    return m


def mrs(curve: ReadingCurve, method: MrsMethod = MrsMethod.SD_PLATEAU) -> float | None:
    """Maximum reading speed, or None when fewer than 3 readable points exist."""
    readable = [rs for rs in curve.speeds if rs > 0]
    if len(readable) < 3:
        return None
    if method is MrsMethod.FRACTION_MAX:
        return max(curve.speeds)
    m = _plateau_size(curve.speeds)
    return sum(curve.speeds[:m]) / m


def cps(curve: ReadingCurve, p: float = DEFAULT_CPS_FRACTION,
        method: CpsMethod = CpsMethod.FRACTION) -> float | None:
    """Critical print size: smallest size sustaining near-maximum speed.

    FRACTION: smallest size with RS >= p * max speed (ties break to the
    smallest qualifying size). SD: smallest size on the plateau identified
    by the 1.96-SD rule. None when MRS is unmeasurable.
    """
    if not 0.80 <= p <= 1.00:
        raise ValueError("p must be in [0.80, 1.00]")
    if method is CpsMethod.FRACTION:
        peak = mrs(curve, MrsMethod.FRACTION_MAX)
        if peak is None:
            return None
        threshold = p * peak
        best = None
        for s, rs in curve.points:
            if rs >= threshold:
                best = s if best is None else min(best, s)
        return best
    if mrs(curve, MrsMethod.SD_PLATEAU) is None:
        return None
    m = _plateau_size(curve.speeds)
    return curve.points[m - 1][0]


def ra(session: Session) -> float | None:
    """Reading acuity: smallest size read with e < n, plus 0.01 per error there."""
    readable = [t for t in session.trials if t.errors < t.word_count]
    if not readable:
        return None
    smallest = min(readable, key=lambda t: t.logmar)
    return smallest.logmar + 0.01 * smallest.errors


def acc(curve: ReadingCurve) -> float | None:
    """Accessibility index: mean RS/200 over the ten largest presented sizes.

    Curves with fewer than ten points are averaged over what is presented,
    with a warning (pad the curve with 0-wpm points for the strict
    definition; curve_from_session does this for stopped sessions).
    """
    if not curve.points:
        return None
    speeds = curve.speeds[:ACC_SIZE_COUNT]
    if len(curve) < ACC_SIZE_COUNT:
        warnings.warn(
            f"ACC computed over {len(curve)} presented sizes (< {ACC_SIZE_COUNT})",
            stacklevel=2,
        )
    return sum(rs / ACC_REFERENCE_WPM for rs in speeds) / len(speeds)


@dataclass(frozen=True)
class ReadingMetrics:
    """Session summary: the four metrics plus the methods that produced them."""

    mrs: float | None
    cps: float | None
    ra: float | None
    acc: float | None
    cps_method: CpsMethod
    p: float
    mrs_method: MrsMethod


def metrics_from_session(
    session: Session,
    p: float = DEFAULT_CPS_FRACTION,
    cps_method: CpsMethod = CpsMethod.FRACTION,
    mrs_method: MrsMethod = MrsMethod.SD_PLATEAU,
) -> ReadingMetrics:
    curve = curve_from_session(session)
    # padding guarantees >= 10 sizes, so acc() never warns here
    acc_value = acc(curve_from_session(session, pad_for_acc=True))
    return ReadingMetrics(
        mrs=mrs(curve, mrs_method),
        cps=cps(curve, p, cps_method),
        ra=ra(session),
        acc=acc_value,
        cps_method=cps_method,
        p=p,
        mrs_method=mrs_method,
    )
