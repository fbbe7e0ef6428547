import json
import math

import pytest

from readacuity import cli, curves
from readacuity import session as se


def run(argv):
    return cli.main(argv)


def make_synthetic_session(participant, language, display, level, cps_target,
                           n_above=6, n_below=3):
    """A session whose fraction-method CPS is exactly cps_target.

    Sizes descend through cps_target in 0.1 steps; speeds are 200 wpm at and
    above the target and 100 wpm below (below 0.9 * 200), so the smallest
    qualifying size is the target itself.
    """
    cond = se.Condition(se.Language(language), se.Display(display),
                        se.ResolutionLevel(level))
    trials = []
    ts = 0
    for i in range(n_above + 1 + n_below):
        size = cps_target + 0.1 * (n_above - i)
        fast = i <= n_above
        dur_ms = 3000 if fast else 6000  # 200 wpm vs 100 wpm at 10 words
        trials.append(
            se.TrialRecord(cond, f"s{i + 1:02d}", size, 10, 0, ts, ts + dur_ms,
                           dur_ms / 1000.0)
        )
        ts += dur_ms + 1000
    return se.Session(participant_id=participant, trials=tuple(trials))


@pytest.fixture
def synthetic_study(tmp_path):
    """16 participants x 4 levels whose CPS medians follow the EN reference fit."""
    ref = curves.REFERENCE_FITS_VR["cps_en"]
    sessions = []
    for i in range(1, 17):
        for level, x in zip("ABCD", curves.NOMINAL_LEVEL_X):
            target = curves.eval_curve(ref, x)
            sessions.append(
                make_synthetic_session(f"p{i:02d}", "EN", "VR", level, target)
            )
    path = tmp_path / "sessions.csv"
    path.write_text(se.write_sessions_csv(sessions), encoding="utf-8")
    return path


class TestExitCodes:
    def test_no_arguments_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run([])
        assert exc.value.code == 2

    def test_analyze_without_inputs_is_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            run(["analyze", "--out-dir", str(tmp_path)])
        assert exc.value.code == 2

    def test_schedule_zero_participants_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            run(["schedule", "--participants", "0"])
        assert exc.value.code == 2

    def test_missing_file_is_data_error(self, tmp_path, capsys):
        code = run(["analyze", str(tmp_path / "nope.csv"), "--out-dir",
                    str(tmp_path / "out")])
        assert code == 1
        assert "error:" in capsys.readouterr().err

    def test_malformed_csv_reports_file_and_row(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        header = ",".join(se.SESSION_COLUMNS)
        bad.write_text(header + "\np,EN,VR,A,40.0,s1,1.0,10,99,0,3000,3.0\n")
        code = run(["analyze", str(bad), "--out-dir", str(tmp_path / "out")])
        assert code == 1
        err = capsys.readouterr().err
        assert "bad.csv:2" in err


class TestAnalyze:
    def test_single_session_one_metrics_row(self, tmp_path):
        sess = make_synthetic_session("p01", "EN", "VR", "A", 0.4)
        src = tmp_path / "one.csv"
        src.write_text(se.export_csv(sess), encoding="utf-8")
        out = tmp_path / "out"
        assert run(["analyze", str(src), "--out-dir", str(out)]) == 0
        lines = (out / "metrics.csv").read_text().splitlines()
        assert lines[0] == ",".join(cli.METRICS_COLUMNS)
        assert len(lines) == 2
        assert lines[1].startswith("p01,EN,VR,A,")

    def test_deterministic_outputs(self, synthetic_study, tmp_path):
        out1, out2 = tmp_path / "o1", tmp_path / "o2"
        assert run(["analyze", str(synthetic_study), "--out-dir", str(out1)]) == 0
        assert run(["analyze", str(synthetic_study), "--out-dir", str(out2)]) == 0
        for name in ("metrics.csv", "friedman.csv", "posthoc.csv", "curves.json"):
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes()

    def test_end_to_end_curve_reproduction(self, synthetic_study, tmp_path):
        out = tmp_path / "out"
        assert run(["analyze", str(synthetic_study), "--out-dir", str(out)]) == 0
        payload = json.loads((out / "curves.json").read_text())
        cps_curves = [c for c in payload if c["metric"] == "cps"]
        assert len(cps_curves) == 1
        fit = cps_curves[0]
        ref = curves.REFERENCE_FITS_VR["cps_en"]
        assert fit["a"] == pytest.approx(ref.a, rel=1e-4)
        assert fit["b"] == pytest.approx(ref.b, rel=1e-4)
        assert fit["c"] == pytest.approx(ref.c, rel=1e-4)
        assert fit["language"] == "EN" and fit["display"] == "VR"
        # oracle: fitting the same medians directly gives the same parameters
        medians = [(x, curves.eval_curve(ref, x)) for x in curves.NOMINAL_LEVEL_X]
        direct = curves.fit_exp(medians, with_offset=True)
        assert fit["a"] == pytest.approx(direct.a, rel=1e-9)
        assert fit["b"] == pytest.approx(direct.b, rel=1e-9)

    def test_config_file_resolves_and_flags_override(self, synthetic_study, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"p": 0.8, "wilcoxon_mode": "normal_approx"}))
        out = tmp_path / "out"
        assert run(["analyze", str(synthetic_study), "--out-dir", str(out),
                    "--config", str(cfg), "--p", "0.95"]) == 0
        prov = json.loads((out / "provenance.json").read_text())
        assert prov["config"]["p"] == 0.95  # flag beats config file
        assert prov["config"]["wilcoxon_mode"] == "normal_approx"

    def test_unknown_config_key_rejected(self, synthetic_study, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"cps_fraction": 0.9}))
        assert run(["analyze", str(synthetic_study), "--out-dir",
                    str(tmp_path / "out"), "--config", str(cfg)]) == 1

    def test_provenance_embeds_config_and_hashes(self, synthetic_study, tmp_path):
        out = tmp_path / "out"
        assert run(["analyze", str(synthetic_study), "--out-dir", str(out),
                    "--p", "0.85", "--approx"]) == 0
        prov = json.loads((out / "provenance.json").read_text())
        assert prov["config"]["p"] == 0.85
        assert prov["config"]["wilcoxon_mode"] == "normal_approx"
        assert len(prov["inputs"]) == 1
        assert len(prov["inputs"][0]["sha256"]) == 64

    def test_friedman_and_posthoc_shapes(self, synthetic_study, tmp_path):
        out = tmp_path / "out"
        assert run(["analyze", str(synthetic_study), "--out-dir", str(out)]) == 0
        friedman = (out / "friedman.csv").read_text().splitlines()
        assert friedman[0] == ",".join(cli.FRIEDMAN_COLUMNS)
        # four metrics for the single VR:EN family
        assert len(friedman) == 5
        posthoc = (out / "posthoc.csv").read_text().splitlines()
        assert len(posthoc) == 1 + 4 * 6  # six level pairs per metric


class TestCalibrate:
    @pytest.fixture
    def points_csv(self, tmp_path):
        a, b = -0.2796, -0.0232
        lines = ["scale,logmar"]
        for x in (0.10, 0.40, 0.70, 1.00):
            lines.append(f"{x},{a * math.log(x) + b}")
        path = tmp_path / "points.csv"
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path

    def test_reference_targets(self, points_csv, tmp_path):
        out = tmp_path / "cal"
        assert run(["calibrate", str(points_csv), "--out-dir", str(out)]) == 0
        model = json.loads((out / "model.json").read_text())
        assert model["a"] == pytest.approx(-0.2796, abs=1e-9)
        assert model["b"] == pytest.approx(-0.0232, abs=1e-9)
        rows = (out / "targets.csv").read_text().splitlines()
        assert rows[0] == ",".join(cli.TARGETS_COLUMNS)
        scales = [float(r.split(",")[2]) for r in rows[1:]]
        for got, want in zip(scales, (0.92, 0.42, 0.22, 0.11)):
            assert got == pytest.approx(want, abs=0.005)
        assert all(r.split(",")[3] == "false" for r in rows[1:])

    def test_two_point_warning(self, tmp_path):
        path = tmp_path / "two.csv"
        path.write_text("scale,logmar\n0.2,0.5\n0.9,0.1\n", encoding="utf-8")
        out = tmp_path / "cal"
        assert run(["calibrate", str(path), "--out-dir", str(out)]) == 0
        model = json.loads((out / "model.json").read_text())
        assert "warning" in model

    def test_unreachable_target_flagged(self, points_csv, tmp_path):
        out = tmp_path / "cal"
        assert run(["calibrate", str(points_csv), "--out-dir", str(out),
                    "--targets", "-0.5"]) == 0
        rows = (out / "targets.csv").read_text().splitlines()
        assert rows[1].split(",")[3] == "true"
        assert float(rows[1].split(",")[2]) == 1.0

    def test_singular_fit_fails(self, tmp_path, capsys):
        path = tmp_path / "flat.csv"
        path.write_text("scale,logmar\n0.5,0.1\n0.5,0.4\n", encoding="utf-8")
        assert run(["calibrate", str(path), "--out-dir", str(tmp_path / "o")]) == 1


class TestSchedule:
    def test_four_by_four_balance(self, tmp_path):
        out = tmp_path / "sched.csv"
        assert run(["schedule", "--participants", "4", "--languages", "EN",
                    "--displays", "VR", "--levels", "A,B,C,D",
                    "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == ",".join(cli.SCHEDULE_COLUMNS)
        assert len(lines) == 1 + 16
        cells = {}
        for line in lines[1:]:
            pid, pos, lang, disp, lvl = line.split(",")
            cells[(lvl, pos)] = cells.get((lvl, pos), 0) + 1
        assert set(cells.values()) == {1}

    def test_sixteen_conditions_once_each(self, tmp_path):
        out = tmp_path / "sched.csv"
        assert run(["schedule", "--participants", "16", "--out", str(out)]) == 0
        lines = out.read_text().splitlines()[1:]
        assert len(lines) == 16 * 16
        per_participant = {}
        for line in lines:
            pid, pos, lang, disp, lvl = line.split(",")
            per_participant.setdefault(pid, set()).add((lang, disp, lvl))
        assert all(len(conds) == 16 for conds in per_participant.values())

    def test_naked_eye_conditions_have_no_level(self, tmp_path):
        out = tmp_path / "sched.csv"
        assert run(["schedule", "--participants", "2", "--languages", "EN",
                    "--displays", "NAKED_EYE", "--out", str(out)]) == 0
        lines = out.read_text().splitlines()[1:]
        assert all(line.endswith(",NAKED_EYE,") for line in lines)


class TestSsqScore:
    def test_scores_appended(self, tmp_path, capsys):
        path = tmp_path / "ssq.csv"
        header = "participant_id,phase," + ",".join(f"item_{i}" for i in range(1, 17))
        ratings = ["0"] * 16
        ratings[5] = "1"  # nausea-only item
        path.write_text(header + "\np01,post-A," + ",".join(ratings) + "\n",
                        encoding="utf-8")
        assert run(["ssq-score", str(path)]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0].endswith("nausea,oculomotor,disorientation,total")
        fields = out[1].split(",")
        assert float(fields[-4]) == pytest.approx(9.54)
        assert float(fields[-1]) == pytest.approx(3.74)

    def test_bad_rating_rejected_with_row(self, tmp_path, capsys):
        path = tmp_path / "ssq.csv"
        header = "participant_id,phase," + ",".join(f"item_{i}" for i in range(1, 17))
        path.write_text(header + "\np01,pre," + ",".join(["5"] * 16) + "\n",
                        encoding="utf-8")
        assert run(["ssq-score", str(path)]) == 1
        assert "ssq.csv:2" in capsys.readouterr().err


class TestFitCurves:
    def test_round_trip_through_cli(self, tmp_path):
        ref = curves.REFERENCE_FITS_VR["ssq_total"]
        path = tmp_path / "xy.csv"
        lines = ["x,y"] + [f"{x},{curves.eval_curve(ref, x)}"
                           for x in curves.NOMINAL_LEVEL_X]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        out = tmp_path / "fit"
        assert run(["fit-curves", str(path), "--out-dir", str(out), "--no-offset",
                    "--metric", "ssq_total", "--display", "VR"]) == 0
        payload = json.loads((out / "curve.json").read_text())
        assert payload["a"] == pytest.approx(ref.a, rel=1e-4)
        assert payload["b"] == pytest.approx(ref.b, rel=1e-4)
        plot = (out / "plot.csv").read_text().splitlines()
        assert plot[0] == "x,y_observed,y_fitted"
        assert len(plot) == 5
