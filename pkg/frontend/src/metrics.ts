/**
 * In-browser metrics preview, mirroring the core pipeline's defaults
 * operation for operation (same summation order, so doubles agree):
 * MRS from the 1.96-SD plateau, CPS by fraction-of-maximum with p = 0.90,
 * RA with the 0.01-per-error penalty, ACC over the ten largest sizes
 * normalized by 200 wpm (stopped sessions padded with 0-wpm sizes).
 */

import type { TrialRecord } from "./session.js";

export const ACC_REFERENCE_WPM = 200.0;
export const ACC_SIZE_COUNT = 10;
export const DEFAULT_CPS_FRACTION = 0.9;
const PLATEAU_SD_FACTOR = 1.96;

export interface CurvePoint {
  logmar: number;
  wpm: number;
}

export interface MetricsPreview {
  mrs: number | null;
  cps: number | null;
  ra: number | null;
  acc: number | null;
}

export function readingSpeedWpm(wordCount: number, errors: number, seconds: number): number {
  if (seconds <= 0) throw new RangeError("reading time must be > 0 s");
  return Math.max(0, (60.0 * (wordCount - errors)) / seconds);
}

export function curveFromTrials(trials: TrialRecord[], padForAcc = false): CurvePoint[] {
  const pts = trials.map((t) => ({
    logmar: t.logmar,
    wpm: readingSpeedWpm(t.wordCount, t.errors, t.durationS),
  }));
  if (padForAcc && pts.length > 0 && pts.length < ACC_SIZE_COUNT) {
    const step =
      pts.length >= 2 ? pts[pts.length - 2]!.logmar - pts[pts.length - 1]!.logmar : 0.1;
    while (pts.length < ACC_SIZE_COUNT) {
      pts.push({ logmar: pts[pts.length - 1]!.logmar - step, wpm: 0 });
    }
  }
  return pts;
}

function plateauSize(speeds: number[]): number {
  let m = 1;
  while (m < speeds.length) {
    const plateau = speeds.slice(0, m);
    const mean = plateau.reduce((a, b) => a + b, 0) / m;
    let sd = 0;
    if (m > 1) {
      const varSum = plateau.reduce((a, x) => a + (x - mean) ** 2, 0);
      sd = Math.sqrt(varSum / (m - 1));
    }
    if (mean - speeds[m]! > PLATEAU_SD_FACTOR * sd) break;
    m += 1;
  }
  return m;
}

export function mrsPlateau(curve: CurvePoint[]): number | null {
  const readable = curve.filter((p) => p.wpm > 0).length;
  if (readable < 3) return null;
  const speeds = curve.map((p) => p.wpm);
  const m = plateauSize(speeds);
  return speeds.slice(0, m).reduce((a, b) => a + b, 0) / m;
}

export function cpsFraction(curve: CurvePoint[], p = DEFAULT_CPS_FRACTION): number | null {
  if (p < 0.8 || p > 1.0) throw new RangeError("p must be in [0.80, 1.00]");
  const readable = curve.filter((pt) => pt.wpm > 0).length;
  if (readable < 3) return null;
  const peak = Math.max(...curve.map((pt) => pt.wpm));
  const threshold = p * peak;
  let best: number | null = null;
  for (const pt of curve) {
    if (pt.wpm >= threshold && (best === null || pt.logmar < best)) {
      best = pt.logmar;
    }
  }
  return best;
}

export function readingAcuity(trials: TrialRecord[]): number | null {
  let best: TrialRecord | null = null;
  for (const t of trials) {
    if (t.errors < t.wordCount && (best === null || t.logmar < best.logmar)) {
      best = t;
    }
  }
  return best === null ? null : best.logmar + 0.01 * best.errors;
}

export function accessibility(curve: CurvePoint[]): number | null {
  if (curve.length === 0) return null;
  const speeds = curve.slice(0, ACC_SIZE_COUNT).map((p) => p.wpm);
  return speeds.reduce((a, wpm) => a + wpm / ACC_REFERENCE_WPM, 0) / speeds.length;
}

export function previewMetrics(trials: TrialRecord[]): MetricsPreview {
  const curve = curveFromTrials(trials);
  return {
    mrs: mrsPlateau(curve),
    cps: cpsFraction(curve),
    ra: readingAcuity(trials),
    acc: accessibility(curveFromTrials(trials, true)),
  };
}
