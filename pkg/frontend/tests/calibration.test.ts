import { describe, expect, it } from "vitest";

import {
  CalibrationError,
  calibrationFromBar,
  calibrationFromPpi,
  loadCalibration,
  saveCalibration,
} from "../src/calibration.js";

class MemoryStorage {
  private map = new Map<string, string>();
  getItem(key: string): string | null {
    return this.map.get(key) ?? null;
  }
  setItem(key: string, value: string): void {
    this.map.set(key, value);
  }
}

describe("screen calibration", () => {
  it("derives px/cm from a credit-card bar match", () => {
    // 324 px spanning 85.6 mm
    const cal = calibrationFromBar(324);
    expect(cal.pixelsPerCm).toBeCloseTo(37.85, 2);
    expect(cal.method).toBe("RULER_MATCH");
  });

  it("derives px/cm from a known PPI, including high-density phones", () => {
    const cal = calibrationFromPpi(516);
    expect(cal.pixelsPerCm).toBeCloseTo(203.1, 1);
    expect(cal.method).toBe("KNOWN_DPI");
  });

  it("rejects a zero-width bar", () => {
    expect(() => calibrationFromBar(0)).toThrow(CalibrationError);
  });

  it("rejects implausible densities so the UI re-prompts", () => {
    expect(() => calibrationFromBar(10)).toThrow(CalibrationError); // ~1.2 px/cm
    expect(() => calibrationFromPpi(5000)).toThrow(CalibrationError);
  });

  it("persists per device and survives a reload", () => {
    const storage = new MemoryStorage();
    const cal = calibrationFromBar(324);
    saveCalibration(storage, cal);
    expect(loadCalibration(storage)).toEqual(cal);
  });

  it("treats corrupt persisted entries as uncalibrated", () => {
    const storage = new MemoryStorage();
    storage.setItem("readacuity.screen_calibration", "{not json");
    expect(loadCalibration(storage)).toBeNull();
  });
});
