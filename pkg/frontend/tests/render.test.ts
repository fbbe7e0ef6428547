import { describe, expect, it } from "vitest";

import type { ScreenCalibration } from "../src/calibration.js";
import { MIN_LEGIBLE_XHEIGHT_PX, planSentenceRender } from "../src/render.js";

const PHONE_CAL: ScreenCalibration = { pixelsPerCm: 37.85, method: "RULER_MATCH" };
const OPTS = {
  fontXHeightRatio: 0.45,
  viewportWidthPx: 1600,
  viewportHeightPx: 900,
  meanAdvanceRatio: 0.5,
};
const TEN_WORDS = "the quick brown fox jumps over one very lazy dog";

describe("physical-size rendering", () => {
  it("renders 1.0 logMAR at 40 cm as a 22.0 px x-height (within 2%)", () => {
    const plan = planSentenceRender(1.0, 40.0, PHONE_CAL, TEN_WORDS, OPTS);
    expect(Math.abs(plan.xheightPx - 22.0) / 22.0).toBeLessThan(0.02);
    expect(plan.belowPixelFloor).toBe(false);
  });

  it("flags 0.0 logMAR at this density as below the legible pixel floor", () => {
    const plan = planSentenceRender(0.0, 40.0, PHONE_CAL, TEN_WORDS, OPTS);
    expect(plan.xheightPx).toBeCloseTo(2.2, 1);
    expect(plan.xheightPx).toBeLessThan(MIN_LEGIBLE_XHEIGHT_PX);
    expect(plan.belowPixelFloor).toBe(true);
  });

  it("flags sentences wider than the viewport as unpresentable", () => {
    const plan = planSentenceRender(1.0, 40.0, PHONE_CAL, TEN_WORDS, {
      ...OPTS,
      viewportWidthPx: 300,
    });
    expect(plan.presentable).toBe(false);
  });

  it("scales x-height linearly with calibration density", () => {
    const dense: ScreenCalibration = { pixelsPerCm: 75.7, method: "KNOWN_DPI" };
    const a = planSentenceRender(0.5, 40.0, PHONE_CAL, TEN_WORDS, OPTS);
    const b = planSentenceRender(0.5, 40.0, dense, TEN_WORDS, OPTS);
    expect(b.xheightPx / a.xheightPx).toBeCloseTo(2.0, 5);
  });

  it("rejects an out-of-range font ratio", () => {
    expect(() =>
      planSentenceRender(0.5, 40.0, PHONE_CAL, TEN_WORDS, {
        ...OPTS,
        fontXHeightRatio: 0,
      }),
    ).toThrow(RangeError);
  });
});
