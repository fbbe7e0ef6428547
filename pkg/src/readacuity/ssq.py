"""Simulator Sickness Questionnaire scoring.

Sixteen symptom items rated 0-3 map onto three overlapping subscales
(Nausea, Oculomotor, Disorientation) that are weighted and summed per the
standard Kennedy et al. scoring rule:

    nausea         = 9.54  * sum of N-item ratings
    oculomotor     = 7.58  * sum of O-item ratings
    disorientation = 13.92 * sum of D-item ratings
    total          = 3.74  * (N raw + O raw + D raw)

Items appearing on two subscales count toward both raw sums (and hence
twice toward the total).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Sequence

N_ITEMS = 16
MAX_RATING = 3

# 1-indexed item numbers per subscale.
NAUSEA_ITEMS = (1, 6, 7, 8, 9, 15, 16)
OCULOMOTOR_ITEMS = (1, 2, 3, 4, 5, 9, 11)
DISORIENTATION_ITEMS = (5, 8, 10, 11, 12, 13, 14)

NAUSEA_WEIGHT = 9.54
OCULOMOTOR_WEIGHT = 7.58
DISORIENTATION_WEIGHT = 13.92
TOTAL_WEIGHT = 3.74

ITEM_LABELS = (
    "general discomfort",
    "fatigue",
    "headache",
    "eye strain",
    "difficulty focusing",
    "increased salivation",
    "sweating",
    "nausea",
    "difficulty concentrating",
    "fullness of head",
    "blurred vision",
    "dizziness (eyes open)",
    "dizziness (eyes closed)",
    "vertigo",
    "stomach awareness",
    "burping",
)


@dataclass(frozen=True)
class SsqScore:
    nausea: float
    oculomotor: float
    disorientation: float
    total: float


def score_ssq(ratings: Sequence[int]) -> SsqScore:
    """Score a 16-item SSQ response (each rating an integer 0-3)."""
    if len(ratings) != N_ITEMS:
        raise ValueError(f"expected {N_ITEMS} item ratings, got {len(ratings)}")
    for i, r in enumerate(ratings, start=1):
        if not isinstance(r, int) or isinstance(r, bool) or not 0 <= r <= MAX_RATING:
            raise ValueError(f"item {i}: rating must be an integer 0-{MAX_RATING}, got {r!r}")
    n_raw = sum(ratings[i - 1] for i in NAUSEA_ITEMS)
    o_raw = sum(ratings[i - 1] for i in OCULOMOTOR_ITEMS)
    d_raw = sum(ratings[i - 1] for i in DISORIENTATION_ITEMS)
    return SsqScore(
        nausea=NAUSEA_WEIGHT * n_raw,
        oculomotor=OCULOMOTOR_WEIGHT * o_raw,
        disorientation=DISORIENTATION_WEIGHT * d_raw,
        total=TOTAL_WEIGHT * (n_raw + o_raw + d_raw),
    )


@dataclass(frozen=True)
class SsqRecord:
    """One questionnaire administration: who, when (phase), and the ratings."""

    participant_id: str
    phase: str  # e.g. "pre" or a post-session label
    ratings: tuple[int, ...]

    @property
    def score(self) -> SsqScore:
        return score_ssq(list(self.ratings))


SSQ_COLUMNS = (
    ("participant_id", "phase")
    + tuple(f"item_{i}" for i in range(1, N_ITEMS + 1))
    + ("nausea", "oculomotor", "disorientation", "total")
)
_RESPONSE_COLUMNS = SSQ_COLUMNS[: 2 + N_ITEMS]


def read_ssq_csv(text: str) -> list[SsqRecord]:
    """Parse SSQ responses; score columns, if present, are ignored on input."""
    from .session import CsvError  # shared CSV error type

    reader = csv.reader(io.StringIO(text))
    try:
        header = tuple(next(reader))
    except StopIteration:
        raise CsvError("empty input: missing header") from None
    if header not in (SSQ_COLUMNS, _RESPONSE_COLUMNS):
        raise CsvError(
            f"expected columns {','.join(_RESPONSE_COLUMNS)}"
            "[,nausea,oculomotor,disorientation,total]", 1,
        )
    records = []
    for rownum, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise CsvError(f"expected {len(header)} fields, got {len(row)}", rownum)
        try:
            ratings = tuple(int(v) for v in row[2 : 2 + N_ITEMS])
            score_ssq(list(ratings))  # validates rating range
        except ValueError as exc:
            raise CsvError(str(exc), rownum) from exc
        records.append(SsqRecord(participant_id=row[0], phase=row[1], ratings=ratings))
    return records


def write_ssq_csv(records: Sequence[SsqRecord]) -> str:
    """Serialize responses with their computed subscale and total scores."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SSQ_COLUMNS)
    for rec in records:
        s = rec.score
        writer.writerow(
            [rec.participant_id, rec.phase, *rec.ratings,
             repr(s.nausea), repr(s.oculomotor), repr(s.disorientation), repr(s.total)]
        )
    return buf.getvalue()
