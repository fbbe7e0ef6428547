"""Reading-session protocol engine.

A session presents one sentence set to one participant under one condition:
sentences appear in strictly descending print size (0.1 logMAR steps), the
examiner advances with two timestamps per sentence and enters the word-error
tally, and the session stops as soon as a sentence is fully missed
(errors == word count).

Sessions round-trip losslessly through the CSV schema in SESSION_COLUMNS.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, replace
from enum import Enum
from importlib import resources
from typing import Iterable, Sequence

SIZE_STEP_LOGMAR = 0.1
_STEP_TOL = 1e-6

SESSION_COLUMNS = (
    "participant_id",
    "language",
    "display",
    "resolution_level",
    "viewing_distance_cm",
    "sentence_id",
    "logmar",
    "word_count",
    "errors",
    "start_ts_ms",
    "end_ts_ms",
    "duration_s",
)


class ValidationError(ValueError):
    """An invariant of the protocol data model was violated."""


class CsvError(ValidationError):
    """Malformed CSV input; carries the 1-based row number when known."""

    def __init__(self, message: str, row: int | None = None):
        self.row = row
        super().__init__(f"row {row}: {message}" if row is not None else message)


class Language(str, Enum):
    EN = "EN"
    CN = "CN"


class Display(str, Enum):
    VR = "VR"
    VST = "VST"
    NAKED_EYE = "NAKED_EYE"


class ResolutionLevel(str, Enum):
    """Effective-resolution levels with their nominal logMAR values."""

    A = "A"
    B = "B"
    C = "C"
    D = "D"

    @property
    def nominal_logmar(self) -> float:
        return _LEVEL_LOGMAR[self]

    @property
    def short_label(self) -> str:
        # B is nominally 0.22 logMAR but labelled 0.2 for short
        return _LEVEL_LABEL[self]


_LEVEL_LOGMAR = {
    ResolutionLevel.A: 0.00,
    ResolutionLevel.B: 0.22,
    ResolutionLevel.C: 0.40,
    ResolutionLevel.D: 0.60,
}
_LEVEL_LABEL = {
    ResolutionLevel.A: "0.0",
    ResolutionLevel.B: "0.2",
    ResolutionLevel.C: "0.4",
    ResolutionLevel.D: "0.6",
}


@dataclass(frozen=True)
class Condition:
    """One cell of the language x display x resolution design.

    NAKED_EYE is the lens-free baseline and carries no resolution level;
    VR and VST require one.
    """

    language: Language
    display: Display
    resolution_level: ResolutionLevel | None = None

    def __post_init__(self):
        if self.display is Display.NAKED_EYE:
            if self.resolution_level is not None:
                raise ValidationError("NAKED_EYE carries no resolution level")
        elif self.resolution_level is None:
            raise ValidationError(f"{self.display.value} requires a resolution level")

    def label(self) -> str:
        lvl = self.resolution_level.value if self.resolution_level else "-"
        return f"{self.language.value}:{self.display.value}:{lvl}"


@dataclass(frozen=True)
class Sentence:
    sentence_id: str
    logmar: float
    text: str
    word_count: int

    def __post_init__(self):
        if self.word_count < 1:
            raise ValidationError(f"sentence {self.sentence_id}: word_count must be >= 1")


# Canonical per-sentence word counts of the chart designs. The per-sentence
# count in the data file is authoritative; these are only used to sanity-check
# the packaged placeholder sets.
CANONICAL_WORD_COUNT = {Language.EN: 10, Language.CN: 12}


@dataclass(frozen=True)
class SentenceSet:
    """An ordered chart of sentences in strictly descending 0.1 logMAR steps."""

    set_id: str
    language: Language
    sentences: tuple[Sentence, ...]

    def __post_init__(self):
        if not self.sentences:
            raise ValidationError(f"set {self.set_id}: no sentences")
        sizes = [s.logmar for s in self.sentences]
        for i in range(1, len(sizes)):
            if abs((sizes[i - 1] - sizes[i]) - SIZE_STEP_LOGMAR) > _STEP_TOL:
                raise ValidationError(
                    f"set {self.set_id}: sizes must descend in {SIZE_STEP_LOGMAR} "
                    f"logMAR steps (got {sizes[i - 1]} -> {sizes[i]})"
                )
        texts = [s.text for s in self.sentences]
        if len(set(texts)) != len(texts):
            raise ValidationError(f"set {self.set_id}: duplicate sentence texts")

    def __len__(self) -> int:
        return len(self.sentences)

    @property
    def sizes(self) -> tuple[float, ...]:
        return tuple(s.logmar for s in self.sentences)

    @classmethod
    def from_dict(cls, data: dict) -> "SentenceSet":
        set_id = data["set_id"]
        sentences = tuple(
            Sentence(
                sentence_id=item.get("id", f"{set_id}-{i + 1:02d}"),
                logmar=float(item["logmar"]),
                text=item["text"],
                word_count=int(item["word_count"]),
            )
            for i, item in enumerate(data["sentences"])
        )
        return cls(set_id=set_id, language=Language(data["language"]), sentences=sentences)

    def to_dict(self) -> dict:
        return {
            "set_id": self.set_id,
            "language": self.language.value,
            "sentences": [
                {
                    "id": s.sentence_id,
                    "logmar": s.logmar,
                    "text": s.text,
                    "word_count": s.word_count,
                }
                for s in self.sentences
            ],
        }


def load_sentence_set(path) -> SentenceSet:
    with open(path, encoding="utf-8") as fh:
        return SentenceSet.from_dict(json.load(fh))


def packaged_sentence_sets(language: Language | None = None) -> list[SentenceSet]:
    """Placeholder sets shipped with the package (replaceable data files)."""
    sets = []
    root = resources.files("readacuity").joinpath("data")
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".json"):
            sets.append(SentenceSet.from_dict(json.loads(entry.read_text(encoding="utf-8"))))
    if language is not None:
        sets = [s for s in sets if s.language is language]
    return sets


def check_unique_texts(sets: Iterable[SentenceSet]) -> None:
    """Texts must be unique across all sets of a language."""
    seen: dict[tuple[Language, str], str] = {}
    for sset in sets:
        for s in sset.sentences:
            key = (sset.language, s.text)
            if key in seen:
                raise ValidationError(
                    f"text of {s.sentence_id} duplicates one in set {seen[key]}"
                )
            seen[key] = sset.set_id


@dataclass(frozen=True)
class TrialRecord:
    """One sentence presentation with its timing and error tally."""

    condition: Condition
    sentence_id: str
    logmar: float
    word_count: int
    errors: int
    start_ts_ms: int
    end_ts_ms: int
    duration_s: float

    def __post_init__(self):
        if not 0 <= self.errors <= self.word_count:
            raise ValidationError(
                f"trial {self.sentence_id}: errors must be in 0..{self.word_count}, "
                f"got {self.errors}"
            )
        if self.end_ts_ms <= self.start_ts_ms:
            raise ValidationError(f"trial {self.sentence_id}: end timestamp must follow start")
        derived = (self.end_ts_ms - self.start_ts_ms) / 1000.0
        if abs(self.duration_s - derived) > 0.001:
            raise ValidationError(
                f"trial {self.sentence_id}: duration_s inconsistent with timestamps"
            )

    @classmethod
    def from_timestamps(cls, condition, sentence: Sentence, errors: int,
                        start_ts_ms: int, end_ts_ms: int) -> "TrialRecord":
        return cls(
            condition=condition,
            sentence_id=sentence.sentence_id,
            logmar=sentence.logmar,
            word_count=sentence.word_count,
            errors=errors,
            start_ts_ms=start_ts_ms,
            end_ts_ms=end_ts_ms,
            duration_s=(end_ts_ms - start_ts_ms) / 1000.0,
        )

    @property
    def fully_missed(self) -> bool:
        return self.errors == self.word_count


@dataclass(frozen=True)
class Session:
    """One participant reading one sentence set under one condition."""

    participant_id: str
    viewing_distance_cm: float = 40.0
    trials: tuple[TrialRecord, ...] = ()

    def __post_init__(self):
        if self.viewing_distance_cm <= 0:
            raise ValidationError("viewing distance must be > 0 cm")
        for i in range(1, len(self.trials)):
            prev, cur = self.trials[i - 1], self.trials[i]
            if cur.logmar >= prev.logmar:
                raise ValidationError("trial sizes must be strictly descending")
            if prev.fully_missed:
                raise ValidationError("no trial may follow a fully missed sentence")
            if cur.condition != prev.condition:
                raise ValidationError("all trials in a session share one condition")
            if cur.start_ts_ms < prev.end_ts_ms:
                raise ValidationError("trial timestamps must be in order")

    @property
    def condition(self) -> Condition | None:
        return self.trials[0].condition if self.trials else None

    @property
    def stopped_early(self) -> bool:
        """True once a sentence was fully missed; no further trials accepted."""
        return bool(self.trials) and self.trials[-1].fully_missed


def run_trial(session: Session, sentence_set: SentenceSet, condition: Condition,
              start_ts_ms: int, end_ts_ms: int, errors: int) -> Session:
    """Record the next (largest unread) sentence and return the updated session.

    The trial's size and word count come from the sentence set; the stop rule
    marks the session stopped when errors equal the word count.
    """
    if session.stopped_early:
        raise ValidationError("session stopped: a sentence was fully missed")
    idx = len(session.trials)
    if idx >= len(sentence_set):
        raise ValidationError("all sentences of the set have been presented")
    if sentence_set.language is not condition.language:
        raise ValidationError("sentence set language does not match the condition")
    if session.trials and condition != session.trials[0].condition:
        raise ValidationError("condition differs from the session's previous trials")
    trial = TrialRecord.from_timestamps(
        condition, sentence_set.sentences[idx], errors, start_ts_ms, end_ts_ms
    )
    return replace(session, trials=session.trials + (trial,))


def _fmt_float(x: float) -> str:
    # repr round-trips exactly through float(), keeping the CSV lossless
    return repr(float(x))


def _trial_row(participant_id: str, distance_cm: float, t: TrialRecord) -> list[str]:
    cond = t.condition
    return [
        participant_id,
        cond.language.value,
        cond.display.value,
        cond.resolution_level.value if cond.resolution_level else "",
        _fmt_float(distance_cm),
        t.sentence_id,
        _fmt_float(t.logmar),
        str(t.word_count),
        str(t.errors),
        str(t.start_ts_ms),
        str(t.end_ts_ms),
        _fmt_float(t.duration_s),
    ]


def write_sessions_csv(sessions: Sequence[Session]) -> str:
    """Serialize sessions to the canonical CSV schema (UTF-8, dot decimals)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SESSION_COLUMNS)
    for session in sessions:
        for t in session.trials:
            writer.writerow(_trial_row(session.participant_id, session.viewing_distance_cm, t))
    return buf.getvalue()


def export_csv(session: Session) -> str:
    return write_sessions_csv([session])


def _parse_row(row: list[str], rownum: int) -> tuple[str, float, TrialRecord]:
    if len(row) != len(SESSION_COLUMNS):
        raise CsvError(f"expected {len(SESSION_COLUMNS)} fields, got {len(row)}", rownum)
    rec = dict(zip(SESSION_COLUMNS, row))
    try:
        language = Language(rec["language"])
        display = Display(rec["display"])
        level = ResolutionLevel(rec["resolution_level"]) if rec["resolution_level"] else None
        condition = Condition(language, display, level)
        trial = TrialRecord(
            condition=condition,
            sentence_id=rec["sentence_id"],
            logmar=float(rec["logmar"]),
            word_count=int(rec["word_count"]),
            errors=int(rec["errors"]),
            start_ts_ms=int(rec["start_ts_ms"]),
            end_ts_ms=int(rec["end_ts_ms"]),
            duration_s=float(rec["duration_s"]),
        )
        distance = float(rec["viewing_distance_cm"])
    except CsvError:
        raise
    except (ValueError, KeyError) as exc:
        raise CsvError(str(exc), rownum) from exc
    return rec["participant_id"], distance, trial


def read_sessions_csv(text: str) -> list[Session]:
    """Parse one or more sessions from CSV text.

    A new session starts whenever the (participant, condition, distance) key
    changes or the print size stops descending.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise CsvError("empty input: missing header") from None
    if tuple(header) != SESSION_COLUMNS:
        unknown = [c for c in header if c not in SESSION_COLUMNS]
        missing = [c for c in SESSION_COLUMNS if c not in header]
        detail = []
        if unknown:
            detail.append(f"unknown columns {unknown}")
        if missing:
            detail.append(f"missing columns {missing}")
        raise CsvError("; ".join(detail) or "columns out of order", 1)

    sessions: list[Session] = []
    current: list[TrialRecord] = []
    current_key: tuple | None = None

    def flush():
        if current:
            pid, dist = current_key
            try:
                sessions.append(
                    Session(participant_id=pid, viewing_distance_cm=dist,
                            trials=tuple(current))
                )
            except ValidationError as exc:
                raise CsvError(str(exc)) from exc
            current.clear()

    for rownum, row in enumerate(reader, start=2):
        if not row:
            continue
        pid, dist, trial = _parse_row(row, rownum)
        key = (pid, dist)
        boundary = (
            current_key != key
            or (current and (trial.logmar >= current[-1].logmar
                             or trial.condition != current[-1].condition
                             or current[-1].fully_missed))
        )
        if boundary:
            flush()
            current_key = key
        try:
            # constructing the growing session surfaces cross-trial invariant
            # violations at the offending row
            Session(participant_id=pid, viewing_distance_cm=dist,
                    trials=tuple(current) + (trial,))
        except ValidationError as exc:
            raise CsvError(str(exc), rownum) from exc
        current.append(trial)
    flush()
    return sessions


def import_csv(text: str) -> Session:
    """Parse exactly one session; lossless inverse of export_csv."""
    sessions = read_sessions_csv(text)
    if len(sessions) != 1:
        raise CsvError(f"expected exactly one session, found {len(sessions)}")
    return sessions[0]
