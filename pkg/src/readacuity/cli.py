"""Command-line front door for the analysis pipeline.

Subcommands: analyze, calibrate, schedule, ssq-score, fit-curves. All I/O is
file based (CSV in, CSV/JSON out) and deterministic: identical inputs produce
byte-identical outputs. Every analysis embeds its resolved configuration and
input hashes in provenance.json so the method choices behind a result stay
auditable.

Exit codes: 0 success, 1 data/validation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import statistics
import sys
from pathlib import Path

from . import __version__, calibration, curves, metrics, schedule, ssq, stats
from .session import (
    Condition,
    CsvError,
    Display,
    Language,
    ResolutionLevel,
    ValidationError,
    read_sessions_csv,
)

METRICS_COLUMNS = (
    "participant_id", "language", "display", "resolution_level",
    "mrs_wpm", "cps_logmar", "ra_logmar", "acc", "cps_method", "p",
)
FRIEDMAN_COLUMNS = ("family", "metric", "chi2", "df", "p", "kendall_w")
POSTHOC_COLUMNS = ("family", "metric", "pair", "W_stat", "p_raw", "p_adj", "significance")
TARGETS_COLUMNS = ("level", "target_logmar", "scale", "clamped")
SCHEDULE_COLUMNS = ("participant_id", "position", "language", "display", "resolution_level")

LEVEL_PAIRS = (("A", "B"), ("A", "C"), ("A", "D"), ("B", "C"), ("B", "D"), ("C", "D"))
FITTED_METRICS = ("cps", "ra", "acc")

DEFAULT_CONFIG = {
    "cps_method": "fraction",
    "p": 0.90,
    "wilcoxon_mode": "exact",
    "bonferroni_m": None,  # None: use the family size
}


def _fmt(x) -> str:
    """Fixed 6-significant-digit, locale-independent float formatting."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    return format(float(x), ".6g")


def _write_csv(path: Path, header, rows) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    path.write_text(buf.getvalue(), encoding="utf-8", newline="")


def _write_json(path: Path, payload) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                    encoding="utf-8")


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _load_config(path: str | None) -> dict:
    config = dict(DEFAULT_CONFIG)
    if path:
        with open(path, encoding="utf-8") as fh:
            user = json.load(fh)
        unknown = set(user) - set(DEFAULT_CONFIG)
        if unknown:
            raise ValidationError(f"unknown config keys: {sorted(unknown)}")
        config.update(user)
    return config


def _resolve_config(args, config: dict) -> dict:
    if getattr(args, "cps_method", None):
        config["cps_method"] = args.cps_method
    if getattr(args, "p", None) is not None:
        config["p"] = args.p
    if getattr(args, "wilcoxon_mode", None):
        config["wilcoxon_mode"] = args.wilcoxon_mode
    if not 0.80 <= config["p"] <= 1.00:
        raise ValidationError("p must be in [0.80, 1.00]")
    return config


def _provenance(out_dir: Path, command: str, config: dict, inputs: list[Path]) -> None:
    payload = {
        "tool": "readacuity",
        "version": __version__,
        "command": command,
        "config": config,
        "inputs": [{"path": str(p), "sha256": _sha256(p)} for p in inputs],
    }
    _write_json(out_dir / "provenance.json", payload)


def _condition_sort_key(cond: Condition):
    lvl = cond.resolution_level.value if cond.resolution_level else ""
    return (cond.language.value, cond.display.value, lvl)


def _load_sessions(paths: list[str]):
    sessions = []
    for path in paths:
        try:
            text = Path(path).read_text(encoding="utf-8")
            for sess in read_sessions_csv(text):
                if not sess.trials:
                    continue
                sessions.append(sess)
        except (CsvError, ValidationError) as exc:
            row = getattr(exc, "row", None)
            loc = f"{path}:{row}" if row is not None else path
            raise ValidationError(f"{loc}: {exc}") from exc
        except OSError as exc:
            raise ValidationError(f"{path}: {exc}") from exc
    return sessions


def cmd_analyze(args) -> int:
    config = _resolve_config(args, _load_config(args.config))
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    sessions = _load_sessions(args.sessions)
    if not sessions:
        raise ValidationError("no sessions found in the input files")

    cps_method = metrics.CpsMethod(config["cps_method"])
    p = float(config["p"])
    wilcoxon_mode = (stats.WilcoxonMode.EXACT if config["wilcoxon_mode"] == "exact"
                     else stats.WilcoxonMode.NORMAL_APPROX)

    # per-session metrics
    rows = []
    per_cell: dict[tuple, dict[str, dict[str, float]]] = {}
    for sess in sorted(sessions, key=lambda s: (s.participant_id,
                                                _condition_sort_key(s.condition))):
        cond = sess.condition
        m = metrics.metrics_from_session(sess, p=p, cps_method=cps_method)
        lvl = cond.resolution_level.value if cond.resolution_level else ""
        rows.append([
            sess.participant_id, cond.language.value, cond.display.value, lvl,
            _fmt(m.mrs), _fmt(m.cps), _fmt(m.ra), _fmt(m.acc),
            cps_method.value, _fmt(p),
        ])
        if cond.resolution_level is not None:
            cell = per_cell.setdefault(
                (cond.display.value, cond.language.value), {}
            ).setdefault(sess.participant_id, {})
            values = {"mrs": m.mrs, "cps": m.cps, "ra": m.ra, "acc": m.acc}
            cell[cond.resolution_level.value] = values
    _write_csv(out_dir / "metrics.csv", METRICS_COLUMNS, rows)

    friedman_rows, posthoc_rows = [], []
    curve_records = []
    for (display, language) in sorted(per_cell):
        participants = per_cell[(display, language)]
        family = f"{display}:{language}"
        for metric_name in ("mrs", "cps", "ra", "acc"):
            complete = {
                pid: [levels[lv][metric_name] for lv in "ABCD"]
                for pid, levels in sorted(participants.items())
                if all(lv in levels and levels[lv][metric_name] is not None
                       for lv in "ABCD")
            }
            if len(complete) >= 2:
                matrix = [complete[pid] for pid in sorted(complete)]
                fr = stats.friedman(matrix)
                friedman_rows.append([family, metric_name, _fmt(fr.chi2), str(fr.df),
                                      _fmt(fr.p), _fmt(fr.w)])
                results = []
                level_index = {lv: i for i, lv in enumerate("ABCD")}
                for la, lb in LEVEL_PAIRS:
                    xa = [complete[pid][level_index[la]] for pid in sorted(complete)]
                    xb = [complete[pid][level_index[lb]] for pid in sorted(complete)]
                    results.append(stats.wilcoxon_signed_rank(xa, xb, mode=wilcoxon_mode))
                adjusted = stats.adjust(results, config["bonferroni_m"])
                for (la, lb), res in zip(LEVEL_PAIRS, adjusted):
                    posthoc_rows.append([
                        family, metric_name, f"{la} vs.{lb}", _fmt(res.w_stat),
                        _fmt(res.p_raw), _fmt(res.p_adjusted),
                        stats.significance_marker(res.p_adjusted),
                    ])
            # reference-curve fit from medians over the four nominal levels
            if metric_name in FITTED_METRICS:
                medians = []
                for lv, x in zip("ABCD", curves.NOMINAL_LEVEL_X):
                    vals = [levels[lv][metric_name] for levels in participants.values()
                            if lv in levels and levels[lv][metric_name] is not None]
                    if vals:
                        medians.append((x, statistics.median(vals)))
                if len(medians) == 4:
                    fit = curves.fit_exp(medians, with_offset=True)
                    curve_records.append((metric_name, language, display, fit, medians))

    _write_csv(out_dir / "friedman.csv", FRIEDMAN_COLUMNS, friedman_rows)
    _write_csv(out_dir / "posthoc.csv", POSTHOC_COLUMNS, posthoc_rows)

    curve_payload = []
    for metric_name, language, display, fit, medians in curve_records:
        curve_payload.append({
            "metric": metric_name, "language": language, "display": display,
            "a": fit.a, "b": fit.b, "c": fit.c, "r2": fit.r2,
            "n_points": fit.n_points, "degenerate": fit.degenerate,
        })
        plot_rows = [[_fmt(x), _fmt(y), _fmt(curves.eval_curve(fit, x))]
                     for x, y in medians]
        _write_csv(out_dir / f"plot_{metric_name}_{language}_{display}.csv",
                   ("x", "y_observed", "y_fitted"), plot_rows)
    _write_json(out_dir / "curves.json", curve_payload)

    _provenance(out_dir, "analyze", config, [Path(p) for p in args.sessions])
    print(f"analyzed {len(sessions)} sessions -> {out_dir}")
    return 0


def _read_xy_csv(path: str, expected: tuple[str, str]) -> list[tuple[float, float]]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(header) != expected:
            raise CsvError(f"expected columns {','.join(expected)}", 1)
        points = []
        for rownum, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                points.append((float(row[0]), float(row[1])))
            except (ValueError, IndexError) as exc:
                raise CsvError(str(exc), rownum) from exc
    return points


def _target_label(i: int) -> str:
    # A, B, C, ... past Z falls back to T27, T28, ...
    return chr(ord("A") + i) if i < 26 else f"T{i + 1}"


def cmd_calibrate(args) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    try:
        points = _read_xy_csv(args.points, ("scale", "logmar"))
        model = calibration.fit_log_model(points)
    except (CsvError, ValueError) as exc:
        raise ValidationError(f"{args.points}: {exc}") from exc

    payload = {"a": model.a, "b": model.b, "r2": model.r2, "n": model.n}
    if model.n == 2:
        payload["warning"] = "exact fit from only 2 points; r2 is uninformative"
    _write_json(out_dir / "model.json", payload)

    targets = [float(t) for t in args.targets.split(",")]
    rows = []
    for i, target in enumerate(targets):
        scale, clamped = calibration.scale_for_target(model, target)
        rows.append([_target_label(i), _fmt(target), _fmt(scale), _fmt(clamped)])
    _write_csv(out_dir / "targets.csv", TARGETS_COLUMNS, rows)
    print(f"model a={_fmt(model.a)} b={_fmt(model.b)} r2={_fmt(model.r2)} -> {out_dir}")
    return 0


def _parse_conditions(args) -> list[Condition]:
    conditions = []
    for lang in args.languages.split(","):
        for disp in args.displays.split(","):
            display = Display(disp)
            if display is Display.NAKED_EYE:
                conditions.append(Condition(Language(lang), display, None))
            else:
                for lvl in args.levels.split(","):
                    conditions.append(
                        Condition(Language(lang), display, ResolutionLevel(lvl))
                    )
    return conditions


def cmd_schedule(args) -> int:
    try:
        conditions = _parse_conditions(args)
        plan = schedule.build_schedule(args.participants, conditions)
    except (ValueError, KeyError) as exc:
        raise ValidationError(str(exc)) from exc
    width = max(2, len(str(args.participants)))
    rows = []
    for i, row in enumerate(plan, start=1):
        pid = f"p{i:0{width}d}"
        for pos, cond in enumerate(row, start=1):
            lvl = cond.resolution_level.value if cond.resolution_level else ""
            rows.append([pid, str(pos), cond.language.value, cond.display.value, lvl])
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SCHEDULE_COLUMNS)
    writer.writerows(rows)
    if args.out:
        Path(args.out).write_text(buf.getvalue(), encoding="utf-8", newline="")
    else:
        sys.stdout.write(buf.getvalue())
    return 0


def cmd_ssq_score(args) -> int:
    try:
        text = Path(args.responses).read_text(encoding="utf-8")
        records = ssq.read_ssq_csv(text)
    except CsvError as exc:
        row = exc.row
        loc = f"{args.responses}:{row}" if row is not None else args.responses
        raise ValidationError(f"{loc}: {exc}") from exc
    except OSError as exc:
        raise ValidationError(f"{args.responses}: {exc}") from exc
    out = ssq.write_ssq_csv(records)
    if args.out:
        Path(args.out).write_text(out, encoding="utf-8", newline="")
    else:
        sys.stdout.write(out)
    return 0


def cmd_fit_curves(args) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    try:
        points = _read_xy_csv(args.points, ("x", "y"))
        fit = curves.fit_exp(points, with_offset=not args.no_offset)
    except (CsvError, ValueError) as exc:
        raise ValidationError(f"{args.points}: {exc}") from exc
    except curves.FitError as exc:
        raise ValidationError(f"{args.points}: {exc}") from exc
    payload = {
        "metric": args.metric, "language": args.language, "display": args.display,
        "a": fit.a, "b": fit.b, "c": fit.c, "r2": fit.r2,
        "n_points": fit.n_points, "degenerate": fit.degenerate,
    }
    _write_json(out_dir / "curve.json", payload)
    plot_rows = [[_fmt(x), _fmt(y), _fmt(curves.eval_curve(fit, x))] for x, y in points]
    _write_csv(out_dir / "plot.csv", ("x", "y_observed", "y_fitted"), plot_rows)
    print(f"fit a={_fmt(fit.a)} b={_fmt(fit.b)} c={_fmt(fit.c)} r2={_fmt(fit.r2)}"
          f" -> {out_dir}")
    return 0


def _positive_int(value: str) -> int:
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {value!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="readacuity",
        description="Reading-acuity study pipeline: schedules, sessions, metrics, "
                    "statistics, calibration, and reference curves.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_an = sub.add_parser("analyze", help="compute metrics, statistics, and curves "
                                          "from session CSVs")
    p_an.add_argument("sessions", nargs="+", help="session CSV files")
    p_an.add_argument("--out-dir", required=True)
    p_an.add_argument("--config", help="JSON config (cps_method, p, wilcoxon_mode, "
                                       "bonferroni_m)")
    p_an.add_argument("--cps-method", choices=["fraction", "sd"])
    p_an.add_argument("--p", type=float, help="CPS fraction threshold in [0.80, 1.00]")
    mode = p_an.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="wilcoxon_mode", action="store_const",
                      const="exact", help="exact Wilcoxon p-values")
    mode.add_argument("--approx", dest="wilcoxon_mode", action="store_const",
                      const="normal_approx", help="normal-approximation Wilcoxon")
    p_an.set_defaults(func=cmd_analyze, wilcoxon_mode=None)

    p_cal = sub.add_parser("calibrate", help="fit the render-scale vs logMAR model")
    p_cal.add_argument("points", help="CSV with columns scale,logmar")
    p_cal.add_argument("--out-dir", required=True)
    p_cal.add_argument("--targets", default="0.00,0.22,0.40,0.60",
                       help="comma-separated target logMAR values")
    p_cal.set_defaults(func=cmd_calibrate)

    p_sch = sub.add_parser("schedule", help="emit a Latin-square counterbalanced "
                                            "schedule CSV")
    p_sch.add_argument("--participants", type=_positive_int, required=True)
    p_sch.add_argument("--languages", default="EN,CN")
    p_sch.add_argument("--displays", default="VR,VST")
    p_sch.add_argument("--levels", default="A,B,C,D")
    p_sch.add_argument("--out", help="output CSV (default: stdout)")
    p_sch.set_defaults(func=cmd_schedule)

    p_ssq = sub.add_parser("ssq-score", help="score SSQ responses")
    p_ssq.add_argument("responses", help="CSV with participant_id,phase,item_1..item_16")
    p_ssq.add_argument("--out", help="output CSV (default: stdout)")
    p_ssq.set_defaults(func=cmd_ssq_score)

    p_fit = sub.add_parser("fit-curves", help="fit an exponential reference curve "
                                              "to x,y points")
    p_fit.add_argument("points", help="CSV with columns x,y")
    p_fit.add_argument("--out-dir", required=True)
    p_fit.add_argument("--no-offset", action="store_true",
                       help="fix the offset c to 0")
    p_fit.add_argument("--metric", default="")
    p_fit.add_argument("--language", default="")
    p_fit.add_argument("--display", default="")
    p_fit.set_defaults(func=cmd_fit_curves)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, CsvError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
