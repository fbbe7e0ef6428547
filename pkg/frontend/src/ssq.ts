/**
 * Simulator Sickness Questionnaire entry and scoring, matching the core
 * package: 16 items rated 0-3, three overlapping weighted subscales
 * (items on two subscales count toward both raw sums).
 */

export const N_ITEMS = 16;
export const MAX_RATING = 3;

export const NAUSEA_ITEMS = [1, 6, 7, 8, 9, 15, 16];
export const OCULOMOTOR_ITEMS = [1, 2, 3, 4, 5, 9, 11];
export const DISORIENTATION_ITEMS = [5, 8, 10, 11, 12, 13, 14];

const NAUSEA_WEIGHT = 9.54;
const OCULOMOTOR_WEIGHT = 7.58;
const DISORIENTATION_WEIGHT = 13.92;
const TOTAL_WEIGHT = 3.74;

export const ITEM_LABELS = [
  "General discomfort",
  "Fatigue",
  "Headache",
  "Eye strain",
  "Difficulty focusing",
  "Increased salivation",
  "Sweating",
  "Nausea",
  "Difficulty concentrating",
  "Fullness of head",
  "Blurred vision",
  "Dizziness (eyes open)",
  "Dizziness (eyes closed)",
  "Vertigo",
  "Stomach awareness",
  "Burping",
] as const;

export interface SsqScore {
  nausea: number;
  oculomotor: number;
  disorientation: number;
  total: number;
}

export function scoreSsq(ratings: number[]): SsqScore {
  if (ratings.length !== N_ITEMS) {
    throw new RangeError(`expected ${N_ITEMS} ratings, got ${ratings.length}`);
  }
  for (const [i, r] of ratings.entries()) {
    if (!Number.isInteger(r) || r < 0 || r > MAX_RATING) {
      throw new RangeError(`item ${i + 1}: rating must be an integer 0-${MAX_RATING}`);
    }
  }
  const rawSum = (items: number[]) =>
    items.reduce((acc, item) => acc + ratings[item - 1]!, 0);
  const n = rawSum(NAUSEA_ITEMS);
  const o = rawSum(OCULOMOTOR_ITEMS);
  const d = rawSum(DISORIENTATION_ITEMS);
  return {
    nausea: NAUSEA_WEIGHT * n,
    oculomotor: OCULOMOTOR_WEIGHT * o,
    disorientation: DISORIENTATION_WEIGHT * d,
    total: TOTAL_WEIGHT * (n + o + d),
  };
}

export const SSQ_CSV_COLUMNS = [
  "participant_id",
  "phase",
  ...Array.from({ length: N_ITEMS }, (_, i) => `item_${i + 1}`),
  "nausea",
  "oculomotor",
  "disorientation",
  "total",
];

export function ssqCsv(participantId: string, phase: string, ratings: number[]): string {
  const score = scoreSsq(ratings);
  const row = [
    participantId,
    phase,
    ...ratings.map(String),
    String(score.nausea),
    String(score.oculomotor),
    String(score.disorientation),
    String(score.total),
  ];
  return SSQ_CSV_COLUMNS.join(",") + "\n" + row.join(",") + "\n";
}
