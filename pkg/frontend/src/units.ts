/**
 * Acuity unit conversions, mirroring the core package's conventions:
 * angles in arc minutes, lengths in centimeters, print sizes in logMAR.
 * The exact 2*atan(h/2d) form is used, never the small-angle shortcut.
 */

export const REFERENCE_ARCMIN = 5.0;
export const STANDARD_DISTANCE_CM = 40.0;

const ARCMIN_PER_RADIAN = (60.0 * 180.0) / Math.PI;

export function visualAngleArcmin(xheightCm: number, distanceCm: number): number {
  if (xheightCm < 0) throw new RangeError("x-height must be >= 0 cm");
  if (distanceCm <= 0) throw new RangeError("viewing distance must be > 0 cm");
  return 2.0 * Math.atan(xheightCm / (2.0 * distanceCm)) * ARCMIN_PER_RADIAN;
}

export function logmarFromAngle(thetaArcmin: number): number {
  if (thetaArcmin <= 0) throw new RangeError("visual angle must be > 0 arcmin");
  return Math.log10(thetaArcmin / REFERENCE_ARCMIN);
}

export function angleFromLogmar(logmar: number): number {
  return REFERENCE_ARCMIN * Math.pow(10.0, logmar);
}

/** Physical x-height (cm) that subtends the requested size at a distance. */
export function xheightCmFor(logmar: number, distanceCm: number): number {
  if (distanceCm <= 0) throw new RangeError("viewing distance must be > 0 cm");
  const thetaRad = angleFromLogmar(logmar) / ARCMIN_PER_RADIAN;
  return 2.0 * distanceCm * Math.tan(thetaRad / 2.0);
}
