"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import arima, autoarima, cnn, diagnostics, evalbench, pca, series as sc
from .errors import DataError, EmptyFile, MissingArtifact, NumericalError, ThroughcastError

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERICAL = 0, 1, 2, 3
FORMATS = ("text", "json", "csv")
PLOT_KINDS = ("series", "differenced", "forecast_overlay", "acf", "qq", "speed")
FORECAST_HEADER = ("epoch_ms", "mean", "lower_95", "upper_95")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------------------
# helpers

def resolve_seed(value):
    if value is not None:
        return value
    env = os.environ.get("THROUGHCAST_SEED")
    if env is None or env.strip() == "":
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"THROUGHCAST_SEED must be an integer, got {env!r}") from None


def _order_from_args(args):
    try:
        return arima.ModelOrder.parse(args.order, args.seasonal, include_constant=not args.no_intercept)
    except DataError:
        raise
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad --order/--seasonal: {exc}") from None


def _need_input(args):
    if not args.input:
        raise UsageError(f"{args.command}: --input is required")
    return args.input


def _load_series(args, drop_duplicates=False):
    path = _need_input(args)
    tin, tout = sc.parse_subscriber_csv(path, repair=args.repair, drop_duplicates=drop_duplicates)
    return tin if args.column == "Tpt_in" else tout


def _out_dir(args):
    d = Path(args.out_dir)
    d.mkdir(parents=True, exist_ok=True)
    return d


def _fmt(x, spec=".6g"):
    if x is None:
        return "n/a"
    if isinstance(x, float) and not math.isfinite(x):
        return "nan"
    return format(x, spec)


def _json_default(o):
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    return str(o)


def _clean(o):
    # JSON has no NaN/Infinity; emit null instead
    if isinstance(o, float) and not math.isfinite(o):
        return None
    if isinstance(o, dict):
        return {k: _clean(v) for k, v in o.items()}
    if isinstance(o, (list, tuple)):
        return [_clean(v) for v in o]
    if isinstance(o, np.generic):
        return _clean(o.item())
    return o


def _dumps(obj):
    return json.dumps(_clean(obj), indent=2, default=_json_default, allow_nan=False)


def _csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([repr(v) if isinstance(v, float) else v for v in r])
    return buf.getvalue()


def _emit(out, text):
    out.write(text)
    if not text.endswith("\n"):
        out.write("\n")


# ---------------------------------------------------------------------------
# dataset summaries

def _raw_rows(path):
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r]
    if not rows:
        raise EmptyFile(f"{path}: file is empty")
    return rows[0], rows[1:]


def dataset_summary(header, rows):
    """Counts in the layout of a profiling report's "Dataset Statistics" block."""
    n = len(rows)
    missing = sum(1 for r in rows for c in r if c.strip() == "")
    cells = n * len(header)
    seen = set()
    dup = 0
    for r in rows:
        key = tuple(c.strip() for c in r)
        if key in seen:
            dup += 1
        else:
            seen.add(key)
    return {
        "Number of Variables": len(header),
        "Number of Rows": n,
        "Missing Cells": missing,
        "Missing Cells (%)": 100.0 * missing / cells if cells else 0.0,
        "Duplicate Rows": dup,
        "Duplicate Rows (%)": 100.0 * dup / n if n else 0.0,
    }


def _summary_lines(summary):
    lines = ["Dataset Statistics", ""]
    for k, v in summary.items():
        lines.append(f"{k}\t{v:.1f}%" if k.endswith("(%)") else f"{k}\t{v}")
    return lines


# ---------------------------------------------------------------------------
# commands

def cmd_stats(args, out, err):
    path = _need_input(args)
    header, rows = _raw_rows(path)
    summary = dataset_summary(header, rows)
    s = _load_series(args, drop_duplicates=True)
    v = s.values
    result = {"seed": args.seed, "input": str(path), "column": args.column, "dataset": summary}
    notices = []
    try:
        ds = diagnostics.descriptive_stats(v)
        result["descriptive"] = {"n": len(v), "mean": ds.mean, "std_dev": ds.std_dev, "skew": ds.skew,
                                 "kurtosis": ds.kurtosis, "jarque_bera": ds.jarque_bera[0],
                                 "jarque_bera_p": ds.jarque_bera[1]}
    except DataError as exc:
        result["descriptive"] = {"n": len(v), "mean": float(np.mean(v)), "std_dev": 0.0 if len(v) > 1 else None,
                                 "skew": None, "kurtosis": None, "jarque_bera": None, "jarque_bera_p": None}
        notices.append(f"descriptive moments unavailable: {exc}")
    try:
        result["adf"] = diagnostics.adf_test(v).to_dict()
    except ThroughcastError as exc:
        result["adf"] = None
        notices.append(f"ADF test skipped: {type(exc).__name__}: {exc}")
    d = _out_dir(args)
    max_lag = min(40, len(v) // 2)
    try:
        cg = diagnostics.correlogram(v, max_lag)
        (d / "correlogram.csv").write_text(_csv_text(
            ("lag", "acf", "pacf", "band"),
            [(int(l), float(a), float(p), float(cg.confidence_band)) for l, a, p in zip(cg.lags, cg.acf, cg.pacf)]))
        result["correlogram_csv"] = str(d / "correlogram.csv")
    except ThroughcastError as exc:
        notices.append(f"correlogram skipped: {exc}")
    try:
        z = diagnostics.standardize_residuals(v)
        qq = diagnostics.qq_points(z)
        (d / "qq.csv").write_text(_csv_text(("theoretical", "sample"), qq))
        result["qq_csv"] = str(d / "qq.csv")
    except ThroughcastError as exc:
        notices.append(f"Q-Q data skipped: {exc}")
    result["notices"] = notices
    for note in notices:
        err.write(f"warning: {note}\n")

    if args.format == "json":
        _emit(out, _dumps(result))
    elif args.format == "csv":
        rows = [("seed", args.seed)] + [(k, v) for k, v in summary.items()]
        rows += [(f"descriptive.{k}", v) for k, v in result["descriptive"].items()]
        if result["adf"]:
            rows += [(f"adf.{k}", v) for k, v in result["adf"].items() if not isinstance(v, dict)]
        _emit(out, _csv_text(("field", "value"), rows))
    else:
        lines = [f"Seed: {args.seed}", f"Input: {path} [{args.column}]", ""]
        lines += _summary_lines(summary)
        de = result["descriptive"]
        lines += ["", "Descriptive Statistics", ""]
        for k in ("n", "mean", "std_dev", "skew", "kurtosis", "jarque_bera", "jarque_bera_p"):
            lines.append(f"{k}\t{_fmt(de[k])}")
        lines += ["", "Augmented Dickey-Fuller Test", ""]
        if result["adf"]:
            a = result["adf"]
            lines.append(f"ADF Statistic\t{a['statistic']:.6f}")
            lines.append(f"p-value\t{a['p_value']:.6f}")
            lines.append(f"Lags Used\t{a['lags_used']}")
            lines.append(f"Observations\t{a['n_obs']}")
            for k, cv in a["critical_values"].items():
                lines.append(f"Critical Value ({k})\t{cv:.4f}")
        else:
            lines.extend(n for n in notices if n.startswith("ADF"))
        _emit(out, "\n".join(lines))
    return EXIT_OK


def _fit(args, s, order):
    if args.k_parts and args.k_parts > 1:
        return arima.fit_partitioned(s, order, args.k_parts)
    return arima.fit(s, order)


def cmd_fit(args, out, err):
    s = _load_series(args)
    order = _order_from_args(args)
    f = _fit(args, s, order)
    if args.format == "json":
        d = arima.summary_dict(f)
        d["seed"] = args.seed
        _emit(out, _dumps(d))
    elif args.format == "csv":
        rows = list(zip(f.param_names, f.params.tolist(), f.coeff_std_errors.tolist()))
        rows.append(("sigma2", f.sigma2, float("nan")))
        _emit(out, _csv_text(("param", "coef", "std_err"), rows))
    else:
        _emit(out, f"Seed: {args.seed}\n" + arima.format_summary(f))
    return EXIT_OK


def cmd_auto(args, out, err):
    s = _load_series(args)
    best, trace = autoarima.stepwise_search(s, d=args.d, max_p=args.max_p, max_q=args.max_q)
    if args.format == "json":
        d = json.loads(trace.to_json())
        d["seed"] = args.seed
        d["best_aic"] = best.aic
        _emit(out, _dumps(d))
    elif args.format == "csv":
        rows = [(e.order.label(), e.aic, e.fit_seconds, e.status) for e in trace.entries]
        _emit(out, _csv_text(("order", "aic", "fit_seconds", "status"), rows))
    else:
        _emit(out, autoarima.format_trace(trace))
    return EXIT_OK


def write_forecast(directory, fc):
    directory = Path(directory)
    rows = fc.to_rows()
    (directory / "forecast.csv").write_text(_csv_text(FORECAST_HEADER, rows))
    (directory / "forecast.json").write_text(_dumps({
        "horizon": fc.horizon,
        "rows": [dict(zip(FORECAST_HEADER, r)) for r in rows],
    }))


def cmd_forecast(args, out, err):
    s = _load_series(args)
    if args.horizon < 1:
        raise UsageError("--horizon must be >= 1")
    if args.auto:
        f, _ = autoarima.stepwise_search(s)
    else:
        f = _fit(args, s, _order_from_args(args))
    fc = arima.forecast(f, s, args.horizon)
    d = _out_dir(args)
    write_forecast(d, fc)
    offset = len(s) - len(f.residuals)
    fitted = s.values[offset:] - f.residuals
    (d / "fitted.csv").write_text(_csv_text(("epoch_ms", "fitted"),
                                            [(int(t), float(y)) for t, y in zip(s.epoch_ms[offset:], fitted)]))
    if args.format == "json":
        _emit(out, _dumps({"seed": args.seed, "order": f.order.label(), "horizon": fc.horizon,
                           "rows": [dict(zip(FORECAST_HEADER, r)) for r in fc.to_rows()]}))
    elif args.format == "csv":
        _emit(out, _csv_text(FORECAST_HEADER, fc.to_rows()))
    else:
        lines = [f"Seed: {args.seed}", f"Model: {f.order.label()}", f"Horizon: {fc.horizon}",
                 f"Wrote {d / 'forecast.csv'} and {d / 'forecast.json'}"]
        _emit(out, "\n".join(lines))
    return EXIT_OK


def _cnn_config(args):
    try:
        return cnn.CnnConfig(epochs=args.epochs, learning_rate=args.learning_rate,
                             batch_size=args.batch_size, seed=args.seed)
    except ValueError as exc:
        raise UsageError(f"bad CNN flags: {exc}") from None


def cmd_compare(args, out, err):
    s = _load_series(args)
    order = _order_from_args(args)
    split = sc.split_train_val_test(s)
    report = evalbench.compare_models(s, split, order, _cnn_config(args))
    d = _out_dir(args)
    (d / "compare.json").write_text(_dumps(dict(report.to_dict(), seed=args.seed)))
    (d / "compare.csv").write_text(report.to_csv())
    if args.format == "json":
        _emit(out, _dumps(dict(report.to_dict(), seed=args.seed)))
    elif args.format == "csv":
        _emit(out, report.to_csv())
    else:
        _emit(out, f"Seed: {args.seed}\n" + report.to_text())
    return EXIT_OK


def _int_list(text, flag):
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"{flag} must be a comma-separated list of integers") from None
    if not vals:
        raise UsageError(f"{flag} is empty")
    return vals


def cmd_bench(args, out, err):
    counts = _int_list(args.rows, "--rows")
    if any(b <= a for a, b in zip(counts, counts[1:])):
        raise UsageError("--rows must be strictly increasing")
    order = _order_from_args(args)
    table = evalbench.run_speed_test(counts, args.seed, order, _cnn_config(args),
                                     repetitions=args.repetitions, max_cnn_rows=args.max_cnn_rows)
    d = _out_dir(args)
    (d / "speed.csv").write_text(table.to_csv())
    (d / "speed.json").write_text(_dumps(table.to_dict()))
    if args.format == "json":
        _emit(out, _dumps(dict(table.to_dict(), seed=args.seed)))
    elif args.format == "csv":
        _emit(out, table.to_csv())
    else:
        _emit(out, f"Seed: {args.seed}\n" + table.to_text())
    return EXIT_OK


def _read_csv_dicts(path):
    p = Path(path)
    if not p.exists():
        raise MissingArtifact(f"{p} not found; run the command that produces it first")
    with p.open(newline="") as fh:
        return list(csv.DictReader(fh))


def plot_rows(args):
    what = args.what
    if what == "speed":
        recs = _read_csv_dicts(Path(args.out_dir) / "speed.csv")
        rows = []
        for label, col in (("arima", "arima_seconds"), ("cnn", "cnn_seconds")):
            rows += [(label, int(r["row_count"]), float(r[col])) for r in recs if r[col] != ""]
        return rows
    s = _load_series(args)
    if what == "series":
        return [(s.name, int(t), float(y)) for t, y in zip(s.epoch_ms, s.values)]
    if what == "differenced":
        dv = sc.difference(s.values, args.diff)
        rows = [("original", int(t), float(y)) for t, y in zip(s.epoch_ms, s.values)]
        rows += [("differenced", int(t), float(y)) for t, y in zip(s.epoch_ms[args.diff:], dv)]
        return rows
    if what == "acf":
        max_lag = min(40, len(s) // 2)
        cg = diagnostics.correlogram(s.values, max_lag)
        rows = [("acf", int(l), float(a)) for l, a in zip(cg.lags, cg.acf)]
        rows += [("band", int(l), float(cg.confidence_band)) for l in cg.lags]
        return rows
    if what == "qq":
        z = diagnostics.standardize_residuals(s.values)
        return [("qq", t, y) for t, y in diagnostics.qq_points(z)]
    if what == "forecast_overlay":
        fc = _read_csv_dicts(Path(args.out_dir) / "forecast.csv")
        fitted = _read_csv_dicts(Path(args.out_dir) / "fitted.csv")
        rows = [("actual", int(t), float(y)) for t, y in zip(s.epoch_ms, s.values)]
        rows += [("fitted", int(r["epoch_ms"]), float(r["fitted"])) for r in fitted]
        rows += [("forecast", int(r["epoch_ms"]), float(r["mean"])) for r in fc]
        return rows
    raise UsageError(f"unknown plot kind {what!r}")


def cmd_plotdata(args, out, err):
    rows = plot_rows(args)
    text = _csv_text(("series_label", "x", "y"), rows)
    if args.output:
        Path(args.output).write_text(text)
    else:
        out.write(text)
    return EXIT_OK


def _parse_coeffs(text):
    if not text:
        return None
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError("--coeffs must be comma-separated numbers") from None


def cmd_synth(args, out, err):
    n = args.n
    kw = dict(sigma=args.sigma, coeffs=_parse_coeffs(args.coeffs), slope=args.slope,
              period=args.period, amplitude=args.amplitude, level=args.level)
    if args.kind == "seasonal_arima":
        order = _order_from_args(args)
        kw["order"] = order
        kw["coeffs"] = {"ar": kw["coeffs"] or []}
    try:
        tin = sc.generate_synthetic(args.kind, n, seed=args.seed, name="Tpt_in", **kw)
        tout = sc.generate_synthetic(args.kind, n, seed=args.seed + 1, name="Tpt_out", **kw)
    except DataError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    path = Path(args.output) if args.output else _out_dir(args) / "synthetic.csv"
    sc.write_subscriber_csv(path, tin, tout)
    if args.format == "json":
        _emit(out, _dumps({"seed": args.seed, "kind": args.kind, "rows": n, "path": str(path)}))
    else:
        _emit(out, f"Seed: {args.seed}\nWrote {n} rows of {args.kind} to {path}")
    return EXIT_OK


def cmd_pca(args, out, err):
    path = _need_input(args)
    frame = sc.read_tabular_csv(path, numeric_columns=())
    removed = 0
    if args.dedupe:
        frame, removed, _ = sc.dedupe_rows(frame)
    columns = [c.strip() for c in args.columns.split(",")] if args.columns else None
    if columns:
        missing = [c for c in columns if c not in frame.column_names]
        if missing:
            raise UsageError(f"unknown column(s): {', '.join(missing)}")
    X, names, enc = pca.frame_matrix(frame, columns)
    model = pca.fit_pca(X)
    k = args.k or model.n_features
    scores = pca.transform(model, X, k)
    ev = pca.explained_variance(model)
    d = _out_dir(args)
    (d / "pca_model.json").write_text(_dumps(dict(model.to_dict(), columns=names,
                                                  encodings={c: m for c, m in enc.items()})))
    (d / "pca_scores.csv").write_text(_csv_text([f"pc{i + 1}" for i in range(k)],
                                                [tuple(float(v) for v in r) for r in scores]))
    result = {"columns": names, "encoded_columns": sorted(enc), "k": k, "n_samples": model.n_samples,
              "duplicates_removed": removed, "eigenvalues": model.eigenvalues.tolist(),
              "explained_variance": ev.tolist()}
    if args.format == "json":
        _emit(out, _dumps(result))
    elif args.format == "csv":
        _emit(out, _csv_text(("component", "eigenvalue", "explained_variance"),
                             [(i + 1, float(l), float(e)) for i, (l, e) in enumerate(zip(model.eigenvalues, ev))]))
    else:
        lines = [f"Samples: {model.n_samples}  Features: {model.n_features}  Duplicates removed: {removed}",
                 f"Ordinal-encoded: {', '.join(sorted(enc)) or 'none'}", "",
                 f"{'PC':<6}{'eigenvalue':>16}{'explained':>12}"]
        for i, (l, e) in enumerate(zip(model.eigenvalues, ev)):
            lines.append(f"{i + 1:<6}{l:>16.6g}{e:>12.4f}")
        _emit(out, "\n".join(lines))
    return EXIT_OK


def cmd_dedupe(args, out, err):
    path = _need_input(args)
    header, rows = _raw_rows(path)
    summary = dataset_summary(header, rows)
    frame = sc.TabularFrame(tuple(h.strip() for h in header), [tuple(c.strip() for c in r) for r in rows])
    frame, removed, frac = sc.dedupe_rows(frame)
    target = Path(args.output) if args.output else _out_dir(args) / "deduped.csv"
    with target.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(frame.column_names)
        w.writerows(frame.rows)
    if args.format == "json":
        _emit(out, _dumps(dict(summary, removed=removed, output=str(target))))
    elif args.format == "csv":
        _emit(out, _csv_text(("field", "value"), list(summary.items())))
    else:
        _emit(out, "\n".join(_summary_lines(summary) + ["", f"Removed {removed} rows ({100 * frac:.1f}%); "
                                                           f"wrote {target}"]))
    return EXIT_OK


COMMANDS = {
    "stats": cmd_stats, "fit": cmd_fit, "auto": cmd_auto, "forecast": cmd_forecast,
    "compare": cmd_compare, "bench": cmd_bench, "plotdata": cmd_plotdata, "synth": cmd_synth,
    "pca": cmd_pca, "dedupe": cmd_dedupe,
}


# ---------------------------------------------------------------------------
# parser

def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--input", help="input CSV path")
    common.add_argument("--column", choices=("Tpt_in", "Tpt_out"), default="Tpt_in")
    common.add_argument("--seed", type=int, default=None, help="random seed (default $THROUGHCAST_SEED or 0)")
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--out-dir", default=".", help="directory for written artifacts")
    common.add_argument("--repair", choices=("ffill",), default=None,
                        help="forward-fill missing hours instead of failing")

    model = _Parser(add_help=False)
    model.add_argument("--order", default="2,1,2", help="p,d,q")
    model.add_argument("--seasonal", default=None, help="P,D,Q,m")
    model.add_argument("--no-intercept", action="store_true")
    model.add_argument("--k-parts", type=int, default=None, help="fit on k sub-series and average")

    net = _Parser(add_help=False)
    net.add_argument("--epochs", type=int, default=50)
    net.add_argument("--learning-rate", type=float, default=0.001)
    net.add_argument("--batch-size", type=int, default=2)

    p = _Parser(prog="throughcast", description="Hourly throughput forecasting with ARIMA and a small CNN.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    sub.add_parser("stats", parents=[common], help="dataset statistics, ADF, correlogram and Q-Q data")
    sub.add_parser("fit", parents=[common, model], help="fit an ARIMA/SARIMA model and print its summary")
    a = sub.add_parser("auto", parents=[common], help="stepwise AIC order search")
    a.add_argument("--d", type=int, default=None)
    a.add_argument("--max-p", type=int, default=5)
    a.add_argument("--max-q", type=int, default=5)
    f = sub.add_parser("forecast", parents=[common, model], help="fit and write forecast.csv/json")
    f.add_argument("--horizon", type=int, default=24)
    f.add_argument("--auto", action="store_true", help="choose the order by stepwise search")
    sub.add_parser("compare", parents=[common, model, net], help="ARIMA vs CNN accuracy on an 80/10/10 split")
    b = sub.add_parser("bench", parents=[common, model, net], help="execution-speed table and slopes")
    b.add_argument("--rows", default="10,100,1000,10000")
    b.add_argument("--repetitions", type=int, default=3)
    b.add_argument("--max-cnn-rows", type=int, default=None)
    pl = sub.add_parser("plotdata", parents=[common], help="long-format CSV for plotting")
    pl.add_argument("what", choices=PLOT_KINDS)
    pl.add_argument("--diff", type=int, default=1, choices=(1, 2))
    pl.add_argument("--output", default=None)
    sy = sub.add_parser("synth", parents=[common, model], help="write a synthetic subscriber CSV")
    sy.add_argument("--kind", choices=sc.SYNTHETIC_KINDS, default="sine")
    sy.add_argument("--n", type=int, default=730)
    sy.add_argument("--sigma", type=float, default=1.0)
    sy.add_argument("--coeffs", default=None)
    sy.add_argument("--slope", type=float, default=1.0)
    sy.add_argument("--period", type=int, default=24)
    sy.add_argument("--amplitude", type=float, default=1.0)
    sy.add_argument("--level", type=float, default=0.0)
    sy.add_argument("--output", default=None)
    pc = sub.add_parser("pca", parents=[common], help="PCA on a tabular CSV")
    pc.add_argument("--k", type=int, default=None)
    pc.add_argument("--columns", default=None, help="comma-separated subset of columns")
    pc.add_argument("--dedupe", action="store_true")
    dd = sub.add_parser("dedupe", parents=[common], help="drop duplicate rows of a CSV")
    dd.add_argument("--output", default=None)
    return p


def main(argv=None, out=None, err=None):
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        args.seed = resolve_seed(args.seed)
        return COMMANDS[args.command](args, out, err)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:
        # --help exits through argparse
        return EXIT_OK if not exc.code else EXIT_USAGE
    except (DataError, OSError) as exc:
        where = getattr(locals().get("args"), "input", None)
        prefix = f"{where}: " if where and str(where) not in str(exc) else ""
        err.write(f"data error: {prefix}{type(exc).__name__}: {exc}\n")
        return EXIT_DATA
    except NumericalError as exc:
        err.write(f"numerical error: {type(exc).__name__}: {exc}\n")
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
