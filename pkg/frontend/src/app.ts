/**
 * Examiner console wiring: calibration, session setup, live test
 * administration, SSQ entry, and CSV export. All protocol logic lives in
 * the pure modules; this file only binds it to the DOM.
 */

import {
  CREDIT_CARD_WIDTH_MM,
  CalibrationError,
  calibrationFromBar,
  calibrationFromPpi,
  loadCalibration,
  saveCalibration,
  type ScreenCalibration,
} from "./calibration.js";
import { DEFAULT_SET } from "./defaultSet.js";
import { accessibility, curveFromTrials, previewMetrics } from "./metrics.js";
import { measureFontXHeightRatio, planSentenceRender } from "./render.js";
import { parseSentenceSet, type SentenceSet } from "./sentences.js";
import {
  LiveSession,
  ProtocolError,
  type Condition,
  type DisplayMode,
  type ResolutionLevel,
} from "./session.js";
import { ITEM_LABELS, N_ITEMS, scoreSsq, ssqCsv } from "./ssq.js";

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
};

const FONT_FAMILY = "'Times New Roman', 'Source Han Serif SC', serif";

let calibration: ScreenCalibration | null = loadCalibration(localStorage);
let sentenceSet: SentenceSet = DEFAULT_SET;
let session: LiveSession | null = null;
let fontXHeightRatio = 0.45; // conservative serif default until probed

function download(filename: string, text: string): void {
  const blob = new Blob([text], { type: "text/csv;charset=utf-8" });
  const a = document.createElement("a");
  a.href = URL.createObjectURL(blob);
  a.download = filename;
  a.click();
  URL.revokeObjectURL(a.href);
}

// ---- calibration panel ------------------------------------------------------

function initCalibration(): void {
  const bar = $<HTMLDivElement>("cal-bar");
  const slider = $<HTMLInputElement>("cal-slider");
  const status = $<HTMLSpanElement>("cal-status");

  const renderStatus = () => {
    status.textContent = calibration
      ? `calibrated: ${calibration.pixelsPerCm.toFixed(2)} px/cm (${calibration.method})`
      : "not calibrated";
    $<HTMLButtonElement>("setup-start").disabled = calibration === null;
  };

  slider.addEventListener("input", () => {
    bar.style.width = `${slider.value}px`;
  });
  bar.style.width = `${slider.value}px`;

  $<HTMLButtonElement>("cal-accept").addEventListener("click", () => {
    try {
      calibration = calibrationFromBar(Number(slider.value), CREDIT_CARD_WIDTH_MM);
      saveCalibration(localStorage, calibration);
      status.textContent = "";
    } catch (err) {
      if (err instanceof CalibrationError) {
        alert(`${err.message}`);
        return; // re-prompt: panel stays open
      }
      throw err;
    }
    renderStatus();
  });

  $<HTMLButtonElement>("cal-ppi-accept").addEventListener("click", () => {
    try {
      calibration = calibrationFromPpi(Number($<HTMLInputElement>("cal-ppi").value));
      saveCalibration(localStorage, calibration);
    } catch (err) {
      if (err instanceof CalibrationError) {
        alert(`${err.message}`);
        return;
      }
      throw err;
    }
    renderStatus();
  });

  renderStatus();
}

// ---- setup panel ------------------------------------------------------------

function initSetup(): void {
  $<HTMLInputElement>("setup-set-file").addEventListener("change", async (ev) => {
    const input = ev.target as HTMLInputElement;
    const file = input.files?.[0];
    if (!file) return;
    try {
      sentenceSet = parseSentenceSet(JSON.parse(await file.text()));
      $<HTMLSpanElement>("setup-set-name").textContent =
        `${sentenceSet.setId} (${sentenceSet.language}, ${sentenceSet.sentences.length} sentences)`;
    } catch (err) {
      alert(`could not load sentence set: ${(err as Error).message}`);
      input.value = "";
    }
  });

  $<HTMLButtonElement>("setup-start").addEventListener("click", () => {
    const display = $<HTMLSelectElement>("setup-display").value as DisplayMode;
    const levelRaw = $<HTMLSelectElement>("setup-level").value;
    const condition: Condition = {
      language: $<HTMLSelectElement>("setup-language").value as Condition["language"],
      display,
      resolutionLevel:
        display === "NAKED_EYE" ? null : (levelRaw as ResolutionLevel),
    };
    try {
      session = new LiveSession(
        $<HTMLInputElement>("setup-participant").value.trim() || "anon",
        condition,
        sentenceSet,
        Number($<HTMLInputElement>("setup-distance").value),
      );
    } catch (err) {
      alert((err as Error).message);
      return;
    }
    $("panel-setup").hidden = true;
    $("panel-run").hidden = false;
    session.show();
    renderCurrent();
  });
}

// ---- run panel --------------------------------------------------------------

function renderCurrent(): void {
  if (!session || !calibration) return;
  const sentence = session.currentSentence;
  if (!sentence) return;
  const stage = $<HTMLDivElement>("run-stage");
  const plan = planSentenceRender(
    sentence.logmar,
    session.viewingDistanceCm,
    calibration,
    sentence.text,
    {
      fontXHeightRatio,
      viewportWidthPx: stage.clientWidth || window.innerWidth,
      viewportHeightPx: stage.clientHeight || window.innerHeight / 2,
      meanAdvanceRatio: 0.5,
    },
  );
  const text = $<HTMLDivElement>("run-sentence");
  text.style.fontFamily = FONT_FAMILY;
  text.style.fontSize = `${plan.fontSizePx}px`;
  text.textContent = sentence.text;
  const warnings: string[] = [];
  if (!plan.presentable) warnings.push("size exceeds screen bounds: unpresentable");
  if (plan.belowPixelFloor) {
    warnings.push("x-height below the legible pixel floor: density warning");
  }
  $<HTMLDivElement>("run-warnings").textContent = warnings.join(" · ");
  $<HTMLDivElement>("run-status").textContent =
    `sentence ${session.trials.length + 1}/${sentenceSet.sentences.length} · ` +
    `${sentence.logmar.toFixed(1)} logMAR · x-height ${plan.xheightPx.toFixed(1)} px`;
  $("run-scoring").hidden = true;
}

function openScoring(): void {
  if (!session || session.phase !== "SHOWING") return;
  session.advance();
  const sentence = session.currentSentence!;
  const box = $<HTMLDivElement>("run-error-buttons");
  box.innerHTML = "";
  for (let e = 0; e <= sentence.wordCount; e++) {
    const btn = document.createElement("button");
    btn.textContent = String(e);
    btn.addEventListener("click", () => commitErrors(e));
    box.appendChild(btn);
  }
  $("run-scoring").hidden = false;
}

function commitErrors(errors: number): void {
  if (!session) return;
  try {
    session.scoreErrors(errors);
  } catch (err) {
    if (err instanceof ProtocolError) {
      alert(err.message);
      return;
    }
    throw err;
  }
  if (session.phase === "DONE") {
    finishSession();
  } else {
    // scoring auto-shows the next sentence; only the rendering is left to do
    renderCurrent();
  }
}

function finishSession(): void {
  if (!session) return;
  $("run-scoring").hidden = true;
  $<HTMLDivElement>("run-sentence").textContent = session.stoppedEarly
    ? "Session stopped: sentence fully missed."
    : "Session complete.";
  const m = previewMetrics(session.trials);
  const fmt = (v: number | null, digits = 2) => (v === null ? "—" : v.toFixed(digits));
  $<HTMLDivElement>("run-status").textContent =
    `MRS ${fmt(m.mrs, 1)} wpm · CPS ${fmt(m.cps)} logMAR · ` +
    `RA ${fmt(m.ra)} logMAR · ACC ${fmt(m.acc, 3)}`;
  const exportBtn = $<HTMLButtonElement>("run-export");
  exportBtn.hidden = false;
  exportBtn.onclick = () =>
    download(`session_${session!.participantId}.csv`, session!.exportCsv());
}

function initRun(): void {
  document.addEventListener("keydown", (ev) => {
    if (ev.code === "Space" && session?.phase === "SHOWING") {
      ev.preventDefault();
      openScoring();
    }
  });
  $<HTMLDivElement>("run-stage").addEventListener("click", () => {
    if (session?.phase === "SHOWING") openScoring();
  });
}

// ---- SSQ panel --------------------------------------------------------------

function initSsq(): void {
  const table = $<HTMLTableElement>("ssq-items");
  ITEM_LABELS.forEach((label, i) => {
    const row = table.insertRow();
    row.insertCell().textContent = `${i + 1}. ${label}`;
    for (let rating = 0; rating <= 3; rating++) {
      const cell = row.insertCell();
      const input = document.createElement("input");
      input.type = "radio";
      input.name = `ssq-${i}`;
      input.value = String(rating);
      if (rating === 0) input.checked = true;
      cell.appendChild(input);
    }
  });

  $<HTMLButtonElement>("ssq-export").addEventListener("click", () => {
    const ratings: number[] = [];
    for (let i = 0; i < N_ITEMS; i++) {
      const checked = document.querySelector<HTMLInputElement>(
        `input[name="ssq-${i}"]:checked`,
      );
      ratings.push(Number(checked?.value ?? 0));
    }
    const participant =
      session?.participantId ??
      ($<HTMLInputElement>("setup-participant").value.trim() || "anon");
    const phase = $<HTMLInputElement>("ssq-phase").value.trim() || "post";
    const score = scoreSsq(ratings);
    $<HTMLDivElement>("ssq-result").textContent =
      `N ${score.nausea.toFixed(2)} · O ${score.oculomotor.toFixed(2)} · ` +
      `D ${score.disorientation.toFixed(2)} · total ${score.total.toFixed(2)}`;
    download(`ssq_${participant}_${phase}.csv`, ssqCsv(participant, phase, ratings));
  });
}

function probeFont(): void {
  const canvas = document.createElement("canvas");
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  const ratio = measureFontXHeightRatio(ctx, FONT_FAMILY);
  if (ratio !== null) fontXHeightRatio = ratio;
}

probeFont();
initCalibration();
initSetup();
initRun();
initSsq();
