/**
 * Cross-component contract: a session administered in the console, exported
 * to CSV, must import into the core analysis pipeline with zero validation
 * warnings and yield the same reading metrics the console previews.
 *
 * Requires the core package to be installed (the `readacuity` CLI on PATH).
 */

import { execFileSync } from "node:child_process";
import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { DEFAULT_SET } from "../src/defaultSet.js";
import { previewMetrics } from "../src/metrics.js";
import { LiveSession } from "../src/session.js";

function administerSession(): LiveSession {
  // deterministic clock: seconds per sentence chosen to mimic a reader who
  // slows down and finally fails at 0.0 logMAR
  let t = 1_700_000_000_000;
  const clock = () => t;
  const session = new LiveSession(
    "p01",
    { language: "EN", display: "VR", resolutionLevel: "B" },
    DEFAULT_SET,
    40.0,
    clock,
  );
  const plan: Array<[number, number]> = [
    [2987, 0], [3121, 0], [2899, 0], [3056, 0], [3180, 1],
    [2954, 0], [3312, 0], [3467, 1], [4120, 2], [5210, 3],
    [7480, 10], // 0.0 logMAR: every word missed -> stop
  ];
  session.show();
  for (const [ms, errors] of plan) {
    t += ms;
    session.advance();
    session.scoreErrors(errors); // auto-shows the next sentence
    t += 650; // examiner entry pause
  }
  return session;
}

describe("console export vs core pipeline", () => {
  it("imports cleanly and reproduces the previewed metrics", () => {
    const session = administerSession();
    expect(session.stoppedEarly).toBe(true);
    const preview = previewMetrics(session.trials);

    const dir = mkdtempSync(join(tmpdir(), "readacuity-it-"));
    const csvPath = join(dir, "session.csv");
    writeFileSync(csvPath, session.exportCsv(), "utf-8");

    const outDir = join(dir, "results");
    // non-zero exit or stderr output means the core rejected the export
    const stdout = execFileSync(
      "readacuity",
      ["analyze", csvPath, "--out-dir", outDir],
      { encoding: "utf-8", stdio: ["ignore", "pipe", "pipe"] },
    );
    expect(stdout).toContain("analyzed 1 sessions");

    const lines = readFileSync(join(outDir, "metrics.csv"), "utf-8")
      .trimEnd()
      .split("\n");
    expect(lines.length).toBe(2);
    const header = lines[0]!.split(",");
    const fields = lines[1]!.split(",");
    const col = (name: string) => {
      const idx = header.indexOf(name);
      expect(idx).toBeGreaterThanOrEqual(0);
      return fields[idx]!;
    };

    expect(col("participant_id")).toBe("p01");
    expect(col("language")).toBe("EN");
    expect(col("display")).toBe("VR");
    expect(col("resolution_level")).toBe("B");

    // the core serializes with 6 significant digits, so the parsed value may
    // differ from the preview double by up to half an ulp of the 6th digit
    const closeTo = (text: string, value: number | null) => {
      if (value === null) {
        expect(text).toBe("");
        return;
      }
      const parsed = Number(text);
      expect(Math.abs(parsed - value)).toBeLessThanOrEqual(
        5e-6 * Math.max(Math.abs(value), 1e-9),
      );
    };
    closeTo(col("mrs_wpm"), preview.mrs);
    closeTo(col("cps_logmar"), preview.cps);
    closeTo(col("ra_logmar"), preview.ra);
    closeTo(col("acc"), preview.acc);
  });

  it("a completed (non-stopped) session also round-trips", () => {
    let t = 9_000_000_000;
    const session = new LiveSession(
      "p02",
      { language: "EN", display: "VST", resolutionLevel: "D" },
      DEFAULT_SET,
      40.0,
      () => t,
    );
    session.show();
    for (let i = 0; i < DEFAULT_SET.sentences.length; i++) {
      t += 3000 + 17 * i;
      session.advance();
      session.scoreErrors(i % 3 === 2 ? 1 : 0);
      t += 500;
    }
    const preview = previewMetrics(session.trials);
    expect(preview.mrs).not.toBeNull();

    const dir = mkdtempSync(join(tmpdir(), "readacuity-it-"));
    const csvPath = join(dir, "session.csv");
    writeFileSync(csvPath, session.exportCsv(), "utf-8");
    const outDir = join(dir, "results");
    execFileSync("readacuity", ["analyze", csvPath, "--out-dir", outDir], {
      encoding: "utf-8",
    });
    const metricsText = readFileSync(join(outDir, "metrics.csv"), "utf-8");
    expect(metricsText.trimEnd().split("\n").length).toBe(2);
  });
});
