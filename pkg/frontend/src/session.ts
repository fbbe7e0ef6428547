/**
 * Live session state machine.
 *
 *   IDLE -> SHOWING -> SCORING -> SHOWING -> ... -> DONE
 *
 * Showing a sentence starts its timer; the examiner's advance (spacebar or
 * tap) freezes the duration and opens scoring; entering the error tally
 * commits the trial and either shows the next (smaller) sentence or ends
 * the session when every word was missed (stop rule) or the set is
 * exhausted. Trials serialize to the exact CSV schema the core analysis
 * pipeline imports.
 */

import type { Language, Sentence, SentenceSet } from "./sentences.js";

export type DisplayMode = "VR" | "VST" | "NAKED_EYE";
export type ResolutionLevel = "A" | "B" | "C" | "D";
export type Phase = "IDLE" | "SHOWING" | "SCORING" | "DONE";

export interface Condition {
  language: Language;
  display: DisplayMode;
  resolutionLevel: ResolutionLevel | null;
}

export interface TrialRecord {
  sentenceId: string;
  logmar: number;
  wordCount: number;
  errors: number;
  startTsMs: number;
  endTsMs: number;
  durationS: number;
}

export const SESSION_CSV_COLUMNS = [
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
] as const;

export class ProtocolError extends Error {}

export class LiveSession {
  readonly participantId: string;
  readonly condition: Condition;
  readonly viewingDistanceCm: number;
  readonly trials: TrialRecord[] = [];

  private readonly sentences: Sentence[];
  private readonly now: () => number;
  private phaseValue: Phase = "IDLE";
  private index = 0;
  private displayTs = 0;
  private advanceTs = 0;
  private stopped = false;

  constructor(
    participantId: string,
    condition: Condition,
    sentenceSet: SentenceSet,
    viewingDistanceCm = 40.0,
    now: () => number = Date.now,
  ) {
    if (condition.display === "NAKED_EYE" && condition.resolutionLevel !== null) {
      throw new ProtocolError("NAKED_EYE carries no resolution level");
    }
    if (condition.display !== "NAKED_EYE" && condition.resolutionLevel === null) {
      throw new ProtocolError(`${condition.display} requires a resolution level`);
    }
    if (condition.language !== sentenceSet.language) {
      throw new ProtocolError("sentence set language does not match the condition");
    }
    if (viewingDistanceCm <= 0) {
      throw new ProtocolError("viewing distance must be > 0 cm");
    }
    this.participantId = participantId;
    this.condition = condition;
    this.sentences = sentenceSet.sentences;
    this.viewingDistanceCm = viewingDistanceCm;
    this.now = now;
  }

  get phase(): Phase {
    return this.phaseValue;
  }

  get stoppedEarly(): boolean {
    return this.stopped;
  }

  get currentSentence(): Sentence | null {
    return this.index < this.sentences.length ? this.sentences[this.index]! : null;
  }

  /** Present the current sentence and start its timer. */
  show(): Sentence {
    if (this.phaseValue !== "IDLE" && this.phaseValue !== "SCORING") {
      throw new ProtocolError(`cannot show a sentence while ${this.phaseValue}`);
    }
    const sentence = this.currentSentence;
    if (sentence === null) throw new ProtocolError("no sentences left");
    this.displayTs = this.now();
    this.phaseValue = "SHOWING";
    return sentence;
  }

  /** Examiner advance (spacebar / tap): stop the timer, open scoring. */
  advance(): void {
    if (this.phaseValue !== "SHOWING") {
      throw new ProtocolError("advance is only valid while a sentence is showing");
    }
    // clock granularity guard: a duration must be strictly positive
    this.advanceTs = Math.max(this.now(), this.displayTs + 1);
    this.phaseValue = "SCORING";
  }

  /** Commit the error tally for the sentence just read. */
  scoreErrors(errors: number): void {
    if (this.phaseValue !== "SCORING") {
      throw new ProtocolError("scoring is only valid after an advance");
    }
    const sentence = this.sentences[this.index]!;
    if (!Number.isInteger(errors) || errors < 0 || errors > sentence.wordCount) {
      throw new ProtocolError(`errors must be an integer 0..${sentence.wordCount}`);
    }
    this.trials.push({
      sentenceId: sentence.id,
      logmar: sentence.logmar,
      wordCount: sentence.wordCount,
      errors,
      startTsMs: this.displayTs,
      endTsMs: this.advanceTs,
      durationS: (this.advanceTs - this.displayTs) / 1000.0,
    });
    this.index += 1;
    if (errors === sentence.wordCount) {
      this.stopped = true;
      this.phaseValue = "DONE";
    } else if (this.index >= this.sentences.length) {
      this.phaseValue = "DONE";
    } else {
      this.phaseValue = "SHOWING";
      this.displayTs = Math.max(this.now(), this.advanceTs + 1);
    }
  }

  exportCsv(): string {
    const level = this.condition.resolutionLevel ?? "";
    const unsafe = /[,"\r\n]/;
    if (unsafe.test(this.participantId)) {
      throw new ProtocolError("participant id must not contain commas or quotes");
    }
    for (const t of this.trials) {
      if (unsafe.test(t.sentenceId)) {
        throw new ProtocolError(`sentence id ${t.sentenceId} is not CSV-safe`);
      }
    }
    const rows = this.trials.map((t) =>
      [
        this.participantId,
        this.condition.language,
        this.condition.display,
        level,
        String(this.viewingDistanceCm),
        t.sentenceId,
        String(t.logmar),
        String(t.wordCount),
        String(t.errors),
        String(t.startTsMs),
        String(t.endTsMs),
        String(t.durationS),
      ].join(","),
    );
    return [SESSION_CSV_COLUMNS.join(","), ...rows].join("\n") + "\n";
  }
}
