"""Accuracy metrics, the two-model comparison runner and the speed harness."""
from __future__ import annotations

import csv
import io
import json
import math
import statistics
import time
from dataclasses import dataclass, field

import numpy as np

from . import arima, cnn
from .diagnostics import adf_test
from .errors import (DegenerateX, Empty, EmptyClass, LengthMismatch, ThroughcastError,
                     TooShort, ZeroActual)
from .series import TimeSeries, generate_synthetic, minmax_normalize


def _pair(actual, predicted):
    a = np.asarray(actual, dtype=np.float64).reshape(-1)
    p = np.asarray(predicted, dtype=np.float64).reshape(-1)
    if a.size != p.size:
        raise LengthMismatch(f"actual has {a.size} values, predicted has {p.size}")
    return a, p


def rmse(actual, predicted):
    a, p = _pair(actual, predicted)
    if a.size == 0:
        raise Empty("no values to compare")
    return math.sqrt(float(np.mean((a - p) ** 2)))


def mape(actual, predicted):
    """Mean absolute percentage error, in percent."""
    a, p = _pair(actual, predicted)
    if a.size == 0:
        raise Empty("no values to compare")
    zeros = np.flatnonzero(a == 0)
    if zeros.size:
        raise ZeroActual(int(zeros[0]))
    return 100.0 * float(np.mean(np.abs(a - p) / np.abs(a)))


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    tn: int
    fp: int
    fn: int

    def __post_init__(self):
        vals = (self.tp, self.tn, self.fp, self.fn)
        if any(int(v) != v or v < 0 for v in vals):
            raise ValueError(f"counts must be non-negative integers, got {vals}")
        if sum(vals) < 1:
            raise ValueError("confusion counts are all zero")

    @property
    def total(self):
        return self.tp + self.tn + self.fp + self.fn

    def to_dict(self):
        return {"tp": self.tp, "tn": self.tn, "fp": self.fp, "fn": self.fn}


def balanced_accuracy(c):
    """Mean of sensitivity tp/(tp+fn) and specificity tn/(tn+fp)."""
    if c.tp + c.fn == 0:
        raise EmptyClass("no positive-class members (tp + fn = 0)")
    if c.tn + c.fp == 0:
        raise EmptyClass("no negative-class members (tn + fp = 0)")
    # one division over exact integers, so the result is correctly rounded
    pos, neg = c.tp + c.fn, c.tn + c.fp
    return (c.tp * neg + c.tn * pos) / (2 * pos * neg)


def direction_confusion(actual, predicted):
    """Confusion counts of up-moves between consecutive steps.

    An up-move is a strictly positive difference; zero differences count as down.
    """
    a, p = _pair(actual, predicted)
    if a.size < 2:
        raise TooShort("need at least 2 values to form a direction")
    ua = np.diff(a) > 0
    up = np.diff(p) > 0
    return ConfusionCounts(
        tp=int(np.sum(ua & up)),
        tn=int(np.sum(~ua & ~up)),
        fp=int(np.sum(~ua & up)),
        fn=int(np.sum(ua & ~up)),
    )


def _direction_score(actual, predicted):
    # balanced accuracy, or the recall of the only class present when the
    # actual path moves in one direction throughout
    c = direction_confusion(actual, predicted)
    try:
        return balanced_accuracy(c)
    except EmptyClass:
        if c.tp + c.fn:
            return c.tp / (c.tp + c.fn)
        return c.tn / (c.tn + c.fp)


def slope(table):
    """(y_last - y_first) / (x_last - x_first) over the first and last rows."""
    rows = [tuple(map(float, r)) for r in table]
    if len(rows) < 2:
        raise DegenerateX("need at least two rows")
    (x0, y0), (x1, y1) = rows[0], rows[-1]
    if x1 == x0:
        raise DegenerateX(f"first and last x are equal ({x0})")
    return (y1 - y0) / (x1 - x0)


def round_sig(x, sig):
    if x == 0 or not math.isfinite(x):
        return x
    return round(x, sig - 1 - math.floor(math.log10(abs(x))))


def format_sig(x, sig=4):
    return f"{x:.{sig}g}"


@dataclass(frozen=True)
class MetricReport:
    rmse: float
    mape_percent: float
    balanced_accuracy: float
    n_points: int

    @classmethod
    def from_forecast(cls, actual, predicted):
        a, p = _pair(actual, predicted)
        return cls(rmse(a, p), mape(a, p), _direction_score(a, p), int(a.size))

    def to_dict(self):
        return {"rmse": self.rmse, "mape_percent": self.mape_percent,
                "balanced_accuracy": self.balanced_accuracy, "n_points": self.n_points}


# ---------------------------------------------------------------------------
# comparison

@dataclass(frozen=True)
class ComparisonReport:
    arima: MetricReport
    cnn: MetricReport
    adf_p_value: float
    horizon: int
    test_length: int
    truncated: bool
    arima_order: str
    actual: tuple = field(repr=False)
    arima_forecast: tuple = field(repr=False)
    cnn_forecast: tuple = field(repr=False)

    def to_dict(self):
        return {
            "arima_order": self.arima_order,
            "horizon": self.horizon,
            "test_length": self.test_length,
            "truncated": self.truncated,
            "adf_p_value": self.adf_p_value,
            "arima": self.arima.to_dict(),
            "cnn": self.cnn.to_dict(),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self):
        p = "n/a" if self.adf_p_value is None else f"{self.adf_p_value:.4f}"
        lines = [
            f"{'Model':<8}{'RMSE':>14}{'MAPE %':>12}{'Bal. acc.':>12}{'Points':>8}",
        ]
        for name, m in (("ARIMA", self.arima), ("CNN", self.cnn)):
            lines.append(f"{name:<8}{m.rmse:>14.6g}{m.mape_percent:>12.4f}"
                         f"{m.balanced_accuracy:>12.4f}{m.n_points:>8d}")
        lines.append(f"ARIMA order: {self.arima_order}")
        lines.append(f"ADF p-value (train): {p}")
        note = " (truncated)" if self.truncated else ""
        lines.append(f"Horizon: {self.horizon} of {self.test_length} test points{note}")
        return "\n".join(lines)

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["model", "rmse", "mape_percent", "balanced_accuracy", "n_points"])
        for name, m in (("arima", self.arima), ("cnn", self.cnn)):
            w.writerow([name, repr(m.rmse), repr(m.mape_percent), repr(m.balanced_accuracy), m.n_points])
        return buf.getvalue()


def _concat(a, b):
    return TimeSeries(np.concatenate([a.epoch_ms, b.epoch_ms]),
                      np.concatenate([a.values, b.values]), a.spacing_ms, a.name)


def arima_forecast(train, history, order, horizon):
    """Fit on ``train`` then forecast ``horizon`` steps past ``history``.

    The training coefficients are re-run over ``history`` (train followed by
    any later observations) so the forecast starts from the latest state.
    """
    f = arima.fit(train, order)
    cond = arima.evaluate(history, order, f.ar, f.ma, f.sar, f.sma, f.constant, sigma2=f.sigma2)
    return arima.forecast(cond, history, horizon)


def _unscale(values, params):
    return np.asarray(values) * (params.max - params.min) + params.min


def cnn_forecast(train, history, config, horizon, validation=None):
    norm_train, params = minmax_normalize(train)
    norm_hist = TimeSeries(history.epoch_ms, (history.values - params.min) / (params.max - params.min),
                           history.spacing_ms, history.name)
    norm_val = None
    if validation is not None and len(validation) >= config.window + config.max_horizon:
        norm_val = (validation.values - params.min) / (params.max - params.min)
    model, report = cnn.train(norm_train, config, validation=norm_val)
    pred = cnn.predict_series(model, norm_hist, horizon)
    return _unscale(pred, params), report


def compare_models(series, split, arima_order, cnn_config):
    """Fit both models on the training part and score them on the test part.

    Both forecast from the end of train + validation. The horizon is the test
    length capped by the largest CNN head horizon; ``truncated`` marks the cap.
    """
    history = _concat(split.train, split.validation)
    test = split.test.values
    horizon = min(len(test), cnn_config.max_horizon)
    truncated = horizon < len(test)
    actual = test[:horizon]
    fa = arima_forecast(split.train, history, arima_order, horizon).mean
    fc, _ = cnn_forecast(split.train, history, cnn_config, horizon, split.validation)
    try:
        p = adf_test(split.train.values).p_value
    except ThroughcastError:
        p = None
    return ComparisonReport(
        arima=MetricReport.from_forecast(actual, fa),
        cnn=MetricReport.from_forecast(actual, fc),
        adf_p_value=p,
        horizon=horizon,
        test_length=len(test),
        truncated=truncated,
        arima_order=arima_order.label(),
        actual=tuple(actual.tolist()),
        arima_forecast=tuple(np.asarray(fa).tolist()),
        cnn_forecast=tuple(np.asarray(fc).tolist()),
    )


# ---------------------------------------------------------------------------
# speed harness

@dataclass(frozen=True)
class SpeedRow:
    row_count: int
    arima_seconds: float
    cnn_seconds: float
    arima_status: str = "ok"
    cnn_status: str = "ok"

    @property
    def measured(self):
        return self.arima_status == "ok" and self.cnn_status == "ok"

    def to_record(self):
        def cell(v, status):
            return v if status == "ok" else None
        return {"row_count": self.row_count,
                "arima_seconds": cell(self.arima_seconds, self.arima_status),
                "cnn_seconds": cell(self.cnn_seconds, self.cnn_status),
                "arima_status": self.arima_status, "cnn_status": self.cnn_status}


@dataclass(frozen=True)
class SpeedTable:
    rows: tuple
    slopes: tuple
    ratio_at_max: float
    repetitions: int = 3

    def pairs(self, model):
        """``(row_count, seconds)`` pairs from the origin through every measured row."""
        attr = "arima_seconds" if model == "arima" else "cnn_seconds"
        return [(0, 0.0)] + [(r.row_count, getattr(r, attr)) for r in self.rows if r.measured]

    def slope_lines(self):
        return [f"ARIMA Slope = {format_sig(self.slopes[0])}", f"CNN Slope = {format_sig(self.slopes[1])}"]

    def to_text(self):
        lines = [f"{'':<16}{'ARIMA (s)':>12}{'CNN (s)':>12}", f"{'0 rows':<16}{0:>12}{0:>12}"]
        for r in self.rows:
            a = f"{r.arima_seconds:.2f}" if r.arima_status == "ok" else r.arima_status
            c = f"{r.cnn_seconds:.2f}" if r.cnn_status == "ok" else r.cnn_status
            lines.append(f"{f'{r.row_count:,} rows':<16}{a:>12}{c:>12}")
        lines.append("")
        lines += self.slope_lines()
        lines.append(f"CNN/ARIMA time ratio at largest row count = {format_sig(self.ratio_at_max)}")
        return "\n".join(lines)

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["row_count", "arima_seconds", "cnn_seconds", "arima_status", "cnn_status"])
        for r in self.rows:
            w.writerow([r.row_count,
                        repr(r.arima_seconds) if r.arima_status == "ok" else "",
                        repr(r.cnn_seconds) if r.cnn_status == "ok" else "",
                        r.arima_status, r.cnn_status])
        return buf.getvalue()

    def to_dict(self):
        return {"rows": [r.to_record() for r in self.rows],
                "slopes": {"arima": self.slopes[0], "cnn": self.slopes[1]},
                "ratio_at_max": self.ratio_at_max, "repetitions": self.repetitions}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, default=_nan_none)


def _nan_none(o):
    return None


def bench_series(n, seed):
    """Seeded hourly benchmark data: a daily sine with Gaussian noise."""
    return generate_synthetic("sine", n, seed=seed, sigma=0.2, period=24, amplitude=1.0, level=5.0)


def _time_cell(fn, repetitions):
    times = []
    for _ in range(repetitions):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def run_speed_test(row_counts, seed=0, arima_order=None, cnn_config=None, repetitions=3,
                   max_cnn_rows=None):
    """Time ARIMA fit+forecast and CNN train+predict on seeded series of each size.

    Each cell is the median wall-clock time of ``repetitions`` sequential runs.
    Sizes either model cannot handle are recorded as ``skipped``; sizes above
    ``max_cnn_rows`` are recorded as ``capped`` for the CNN. Model errors mark
    the cell ``failed``.
    """
    counts = [int(c) for c in row_counts]
    if any(b <= a for a, b in zip(counts, counts[1:])):
        raise ValueError("row_counts must be strictly increasing")
    arima_order = arima_order or arima.ModelOrder(2, 1, 2)
    cnn_config = cnn_config or cnn.CnnConfig(seed=seed)
    horizon = cnn_config.max_horizon
    rows = []
    for n in counts:
        series = bench_series(n, seed)
        a_sec, a_st = float("nan"), "ok"
        c_sec, c_st = float("nan"), "ok"
        if n <= arima_order.min_length:
            a_st = "skipped"
        else:
            try:
                a_sec = _time_cell(lambda: arima.forecast(arima.fit(series, arima_order), series, horizon),
                                   repetitions)
            except ThroughcastError:
                a_st = "failed"
        if n < cnn_config.window + cnn_config.max_horizon:
            c_st = "skipped"
        elif max_cnn_rows is not None and n > max_cnn_rows:
            c_st = "capped"
        else:
            def run_cnn():
                norm, params = minmax_normalize(series)
                model, _ = cnn.train(norm, cnn_config)
                return _unscale(cnn.predict_series(model, norm, horizon), params)
            try:
                c_sec = _time_cell(run_cnn, repetitions)
            except ThroughcastError:
                c_st = "failed"
        rows.append(SpeedRow(n, a_sec, c_sec, a_st, c_st))
    table = SpeedTable(tuple(rows), (float("nan"), float("nan")), float("nan"), repetitions)
    measured = [r for r in rows if r.measured]
    if measured:
        last = measured[-1]
        slopes = (slope(table.pairs("arima")), slope(table.pairs("cnn")))
        ratio = last.cnn_seconds / last.arima_seconds if last.arima_seconds > 0 else float("inf")
        table = SpeedTable(tuple(rows), slopes, ratio, repetitions)
    return table
