/**
 * Screen density calibration. Text can only be sized in physical units once
 * the display's true pixels/cm is known; the examiner either matches an
 * on-screen bar against a physical reference (credit card by default) or
 * enters the device's known PPI.
 *
 * Plausibility bounds cover desk monitors up to high-density phones
 * (~200+ px/cm); values outside them indicate a mis-measured bar and the UI
 * re-prompts.
 */

export type CalibrationMethod = "RULER_MATCH" | "KNOWN_DPI";

export interface ScreenCalibration {
  pixelsPerCm: number;
  method: CalibrationMethod;
}

/** ISO/IEC 7810 ID-1 card width, the handiest physical reference. */
export const CREDIT_CARD_WIDTH_MM = 85.6;

export const MIN_PLAUSIBLE_PX_PER_CM = 10;
export const MAX_PLAUSIBLE_PX_PER_CM = 300;

export class CalibrationError extends Error {}

function checkPlausible(pixelsPerCm: number): number {
  if (!Number.isFinite(pixelsPerCm) || pixelsPerCm <= 0) {
    throw new CalibrationError("calibration must be a positive density");
  }
  if (
    pixelsPerCm < MIN_PLAUSIBLE_PX_PER_CM ||
    pixelsPerCm > MAX_PLAUSIBLE_PX_PER_CM
  ) {
    throw new CalibrationError(
      `${pixelsPerCm.toFixed(1)} px/cm is implausible ` +
        `(expected ${MIN_PLAUSIBLE_PX_PER_CM}-${MAX_PLAUSIBLE_PX_PER_CM}); ` +
        "re-adjust the bar or re-enter the density",
    );
  }
  return pixelsPerCm;
}

/** Bar adjusted to span a known physical width (default: credit card). */
export function calibrationFromBar(
  spanPx: number,
  physicalMm: number = CREDIT_CARD_WIDTH_MM,
): ScreenCalibration {
  if (spanPx <= 0) throw new CalibrationError("bar width must be > 0 px");
  if (physicalMm <= 0) throw new CalibrationError("reference width must be > 0 mm");
  return {
    pixelsPerCm: checkPlausible(spanPx / (physicalMm / 10.0)),
    method: "RULER_MATCH",
  };
}

/** Known pixels-per-inch entry, e.g. from the device's spec sheet. */
export function calibrationFromPpi(ppi: number): ScreenCalibration {
  if (ppi <= 0) throw new CalibrationError("PPI must be > 0");
  return { pixelsPerCm: checkPlausible(ppi / 2.54), method: "KNOWN_DPI" };
}

const STORAGE_KEY = "readacuity.screen_calibration";

interface StorageLike {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
}

/** Persist per device (localStorage in the browser; injectable for tests). */
export function saveCalibration(storage: StorageLike, cal: ScreenCalibration): void {
  storage.setItem(STORAGE_KEY, JSON.stringify(cal));
}

export function loadCalibration(storage: StorageLike): ScreenCalibration | null {
  const raw = storage.getItem(STORAGE_KEY);
  if (raw === null) return null;
  try {
    const parsed = JSON.parse(raw) as ScreenCalibration;
    checkPlausible(parsed.pixelsPerCm);
    return parsed;
  } catch {
    return null; // stale or corrupt entry: force recalibration
  }
}
