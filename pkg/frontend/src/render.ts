/**
 * Physical-size-exact sentence rendering.
 *
 * A sentence at print size S viewed from d cm must be drawn with an
 * x-height of xheightCmFor(S, d) * pixelsPerCm device pixels. Font size is
 * derived from the measured x-height ratio of the loaded face (fonts differ
 * widely, so the ratio is probed at startup rather than assumed).
 */

import { xheightCmFor } from "./units.js";
import type { ScreenCalibration } from "./calibration.js";

/** Below this x-height the glyph grid can no longer carry the letterforms. */
export const MIN_LEGIBLE_XHEIGHT_PX = 5.0;

export interface RenderOptions {
  /** x-height / font-size ratio of the loaded face, measured via a probe glyph. */
  fontXHeightRatio: number;
  viewportWidthPx: number;
  viewportHeightPx: number;
  /** mean glyph advance as a fraction of font size (measured or estimated). */
  meanAdvanceRatio: number;
}

export interface RenderPlan {
  xheightPx: number;
  fontSizePx: number;
  estimatedLineWidthPx: number;
  /** false when the sentence cannot fit the viewport at this size. */
  presentable: boolean;
  /** true when the size is too small for the pixel grid: show a density warning. */
  belowPixelFloor: boolean;
}

export function planSentenceRender(
  logmar: number,
  distanceCm: number,
  cal: ScreenCalibration,
  text: string,
  opts: RenderOptions,
): RenderPlan {
  if (opts.fontXHeightRatio <= 0 || opts.fontXHeightRatio >= 1) {
    throw new RangeError("fontXHeightRatio must be in (0, 1)");
  }
  const xheightPx = xheightCmFor(logmar, distanceCm) * cal.pixelsPerCm;
  const fontSizePx = xheightPx / opts.fontXHeightRatio;
  const estimatedLineWidthPx = fontSizePx * opts.meanAdvanceRatio * text.length;
  return {
    xheightPx,
    fontSizePx,
    estimatedLineWidthPx,
    presentable:
      estimatedLineWidthPx <= opts.viewportWidthPx &&
      fontSizePx * 1.5 <= opts.viewportHeightPx,
    belowPixelFloor: xheightPx < MIN_LEGIBLE_XHEIGHT_PX,
  };
}

/**
 * Measure the x-height ratio of a font by probing a lowercase "x" on a
 * canvas. Returns null when canvas text metrics are unavailable.
 */
export function measureFontXHeightRatio(
  ctx: CanvasRenderingContext2D,
  fontFamily: string,
  probeSizePx = 100,
): number | null {
  ctx.font = `${probeSizePx}px ${fontFamily}`;
  const m = ctx.measureText("x");
  const ascent = m.actualBoundingBoxAscent;
  if (!Number.isFinite(ascent) || ascent <= 0) return null;
  return ascent / probeSizePx;
}
