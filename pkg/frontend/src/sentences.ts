/**
 * Sentence-set loading: the same JSON files the core package reads.
 * Sizes must descend in strict 0.1 logMAR steps; texts must be unique.
 */

export type Language = "EN" | "CN";

export interface Sentence {
  id: string;
  logmar: number;
  text: string;
  wordCount: number;
}

export interface SentenceSet {
  setId: string;
  language: Language;
  sentences: Sentence[];
}

const STEP = 0.1;
const STEP_TOL = 1e-6;

export function parseSentenceSet(json: unknown): SentenceSet {
  const data = json as {
    set_id?: unknown;
    language?: unknown;
    sentences?: unknown;
  };
  if (typeof data.set_id !== "string" || !Array.isArray(data.sentences)) {
    throw new Error("sentence set needs set_id and a sentences array");
  }
  if (data.language !== "EN" && data.language !== "CN") {
    throw new Error(`unsupported language ${String(data.language)}`);
  }
  const sentences: Sentence[] = data.sentences.map((raw: unknown, i: number) => {
    const item = raw as Record<string, unknown>;
    const logmar = Number(item.logmar);
    const wordCount = Number(item.word_count);
    const text = item.text;
    if (!Number.isFinite(logmar) || typeof text !== "string") {
      throw new Error(`sentence ${i + 1}: needs numeric logmar and text`);
    }
    if (!Number.isInteger(wordCount) || wordCount < 1) {
      throw new Error(`sentence ${i + 1}: word_count must be a positive integer`);
    }
    return {
      id: typeof item.id === "string" ? item.id : `${data.set_id}-${i + 1}`,
      logmar,
      text,
      wordCount,
    };
  });
  if (sentences.length === 0) throw new Error("sentence set is empty");
  for (let i = 1; i < sentences.length; i++) {
    const diff = sentences[i - 1]!.logmar - sentences[i]!.logmar;
    if (Math.abs(diff - STEP) > STEP_TOL) {
      throw new Error(
        `sizes must descend in ${STEP} logMAR steps ` +
          `(${sentences[i - 1]!.logmar} -> ${sentences[i]!.logmar})`,
      );
    }
  }
  const texts = new Set(sentences.map((s) => s.text));
  if (texts.size !== sentences.length) {
    throw new Error("duplicate sentence texts in set");
  }
  return { setId: data.set_id, language: data.language, sentences };
}
