"""Time-series data model and preprocessing.

Ingestion of the subscriber throughput CSV and of Table-5 style tabular
CSVs, cleaning (deduplication), min-max scaling, differencing, chronological
splitting, synthetic series and future timestamp construction.
"""
from __future__ import annotations

import csv
import math
import re
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np
from scipy.signal import lfilter

from . import _poly
from .errors import (
    BadFractions,
    BadLength,
    ConstantSeries,
    EmptyFile,
    LengthMismatch,
    MalformedHeader,
    NonHourlySpacing,
    NonPositiveHorizon,
    NonStationaryCoefficients,
    SeriesTooShort,
    UnparseableRow,
    UnsupportedOrder,
)

HOUR_MS = 3_600_000
HOUR_S = 3600
# first `ts` value of the subscriber extract
DEFAULT_START_MS = 1_664_316_000_000

SUBSCRIBER_HEADER = ("time_stamp", "ts", "Tpt_in", "Tpt_out")
_TIME_STAMP_RE = re.compile(r"^\d{4}-\d{2}-\d{2} \d{1,2}:\d{2}:\d{2}$")

UGRANSOME_COLUMNS = (
    "Timestamp", "Protocol", "Flag", "IP address", "Network traffic", "Threat",
    "Port", "Expended address", "Seed address", "Cluster", "Ransomware", "Prediction",
)
UGRANSOME_NUMERIC = frozenset({"Timestamp", "Network traffic", "Port", "Cluster"})


@dataclass(frozen=True)
class TimePoint:
    epoch_ms: int
    value: float

    def __post_init__(self):
        if self.epoch_ms < 0:
            raise ValueError("epoch_ms must be non-negative")
        if not math.isfinite(self.value):
            raise ValueError("value must be finite")


def _frozen(arr, dtype):
    out = np.array(arr, dtype=dtype)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Evenly spaced series of finite values keyed by epoch milliseconds.

    Arrays are stored read-only; derive new series with :meth:`with_values`
    or slicing instead of mutating.
    """

    epoch_ms: np.ndarray
    values: np.ndarray
    spacing_ms: int = HOUR_MS
    name: str = ""

    def __post_init__(self):
        ts = _frozen(self.epoch_ms, np.int64).reshape(-1)
        vals = _frozen(self.values, np.float64).reshape(-1)
        object.__setattr__(self, "epoch_ms", ts)
        object.__setattr__(self, "values", vals)
        if len(ts) == 0:
            raise SeriesTooShort("a TimeSeries needs at least one point")
        if len(ts) != len(vals):
            raise LengthMismatch(f"{len(ts)} timestamps but {len(vals)} values")
        if ts[0] < 0:
            raise ValueError("timestamps must be non-negative")
        if not np.all(np.isfinite(vals)):
            raise ValueError("series values must be finite")
        if self.spacing_ms <= 0:
            raise ValueError("spacing_ms must be positive")
        if len(ts) > 1:
            gaps = np.diff(ts)
            bad = np.nonzero(gaps != self.spacing_ms)[0]
            if len(bad):
                i = int(bad[0])
                raise NonHourlySpacing(int(ts[i]), int(ts[i + 1]), self.spacing_ms)

    @classmethod
    def from_values(cls, values, start_ms=DEFAULT_START_MS, spacing_ms=HOUR_MS, name=""):
        n = len(values)
        ts = start_ms + spacing_ms * np.arange(n, dtype=np.int64)
        return cls(ts, values, spacing_ms, name)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, item):
        if not isinstance(item, slice):
            i = range(len(self))[item]
            return TimePoint(int(self.epoch_ms[i]), float(self.values[i]))
        return TimeSeries(self.epoch_ms[item], self.values[item], self.spacing_ms, self.name)

    def __eq__(self, other):
        if not isinstance(other, TimeSeries):
            return NotImplemented
        return (
            self.spacing_ms == other.spacing_ms
            and self.name == other.name
            and np.array_equal(self.epoch_ms, other.epoch_ms)
            and np.array_equal(self.values, other.values)
        )

    @property
    def points(self):
        return [TimePoint(int(t), float(v)) for t, v in zip(self.epoch_ms, self.values)]

    @property
    def last_epoch_ms(self):
        return int(self.epoch_ms[-1])

    def with_values(self, values, name=None):
        return TimeSeries(self.epoch_ms, values, self.spacing_ms,
                          self.name if name is None else name)


@dataclass(frozen=True)
class NormalizationParams:
    min: float
    max: float

    def __post_init__(self):
        if not self.max > self.min:
            raise ConstantSeries(f"degenerate range: min={self.min}, max={self.max}")


@dataclass(frozen=True)
class DataSplit:
    train: TimeSeries
    validation: TimeSeries
    test: TimeSeries
    fractions: tuple = (0.8, 0.1, 0.1)


@dataclass(frozen=True)
class TabularFrame:
    column_names: tuple
    rows: tuple = field(default_factory=tuple)

    def __post_init__(self):
        names = tuple(self.column_names)
        rows = tuple(tuple(r) for r in self.rows)
        width = len(names)
        for i, r in enumerate(rows):
            if len(r) != width:
                raise LengthMismatch(f"row {i} has {len(r)} cells, expected {width}")
        object.__setattr__(self, "column_names", names)
        object.__setattr__(self, "rows", rows)

    def __len__(self):
        return len(self.rows)

    def column(self, name):
        j = self.column_names.index(name)
        return [r[j] for r in self.rows]


# ---------------------------------------------------------------------------
# ingestion

def _validate_time_stamp(text, line):
    if not _TIME_STAMP_RE.match(text):
        raise UnparseableRow(line, f"time_stamp {text!r} is not YYYY-MM-DD H:MM:SS")
    try:
        datetime.strptime(text, "%Y-%m-%d %H:%M:%S")
    except ValueError as exc:
        raise UnparseableRow(line, f"time_stamp {text!r}: {exc}") from None


def _format_time_stamp(epoch_ms):
    dt = datetime.fromtimestamp(epoch_ms / 1000, tz=timezone.utc)
    return f"{dt:%Y-%m-%d} {dt.hour}:{dt:%M:%S}"


def parse_subscriber_csv(path, repair=None, drop_duplicates=False):
    """Read a ``time_stamp,ts,Tpt_in,Tpt_out`` file into (incoming, outgoing) series.

    Rows are sorted by the epoch-millisecond ``ts`` column, which is
    authoritative; ``time_stamp`` is only checked for parseability.
    ``repair="ffill"`` forward-fills whole missing hours instead of raising
    :class:`NonHourlySpacing`. ``drop_duplicates`` discards exact repeats of
    an earlier data row before the spacing check.
    """
    if repair not in (None, "ffill"):
        raise ValueError(f"unknown repair mode {repair!r}")
    path = Path(path)
    with path.open(newline="") as fh:
        lines = [(i, row) for i, row in enumerate(csv.reader(fh), start=1) if row]
    if not lines:
        raise EmptyFile(f"{path}: file is empty")
    _, header = lines[0]
    if tuple(h.strip() for h in header) != SUBSCRIBER_HEADER:
        raise MalformedHeader(f"{path}: header must be {','.join(SUBSCRIBER_HEADER)}, got {','.join(header)}")
    if len(lines) == 1:
        raise EmptyFile(f"{path}: no data rows")

    records = []
    seen = set()
    for line, row in lines[1:]:
        if drop_duplicates:
            key = tuple(c.strip() for c in row)
            if key in seen:
                continue
            seen.add(key)
        if len(row) != 4:
            raise UnparseableRow(line, f"expected 4 fields, got {len(row)}")
        stamp, ts, tin, tout = (c.strip() for c in row)
        _validate_time_stamp(stamp, line)
        try:
            ts_i = int(ts)
            vin, vout = float(tin), float(tout)
        except ValueError as exc:
            raise UnparseableRow(line, str(exc)) from None
        if ts_i < 0 or not (math.isfinite(vin) and math.isfinite(vout)):
            raise UnparseableRow(line, "negative timestamp or non-finite throughput")
        records.append((ts_i, vin, vout))
    records.sort(key=lambda r: r[0])

    if repair == "ffill":
        records = _forward_fill(records)
    else:
        for prev, cur in zip(records, records[1:]):
            if cur[0] - prev[0] != HOUR_MS:
                raise NonHourlySpacing(prev[0], cur[0])

    ts = [r[0] for r in records]
    incoming = TimeSeries(ts, [r[1] for r in records], HOUR_MS, "Tpt_in")
    outgoing = TimeSeries(ts, [r[2] for r in records], HOUR_MS, "Tpt_out")
    return incoming, outgoing


def _forward_fill(records):
    out = [records[0]]
    for cur in records[1:]:
        prev = out[-1]
        gap = cur[0] - prev[0]
        if gap <= 0 or gap % HOUR_MS:
            raise NonHourlySpacing(prev[0], cur[0])
        for k in range(1, gap // HOUR_MS):
            out.append((prev[0] + k * HOUR_MS, prev[1], prev[2]))
        out.append(cur)
    return out


def write_subscriber_csv(path, incoming, outgoing):
    """Write the two throughput series back in the subscriber CSV layout."""
    if not np.array_equal(incoming.epoch_ms, outgoing.epoch_ms):
        raise LengthMismatch("incoming and outgoing series must share timestamps")
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(SUBSCRIBER_HEADER)
        for t, a, b in zip(incoming.epoch_ms, incoming.values, outgoing.values):
            w.writerow([_format_time_stamp(int(t)), int(t), repr(float(a)), repr(float(b))])


def read_tabular_csv(path, numeric_columns=UGRANSOME_NUMERIC):
    """Read a headed CSV into a :class:`TabularFrame`.

    Cells of columns named in ``numeric_columns`` are parsed as floats, the
    rest stay strings.
    """
    path = Path(path)
    with path.open(newline="") as fh:
        rows = [r for r in csv.reader(fh) if r]
    if not rows:
        raise EmptyFile(f"{path}: file is empty")
    header = tuple(h.strip() for h in rows[0])
    numeric = {j for j, h in enumerate(header) if h in numeric_columns}
    parsed = []
    for line, r in enumerate(rows[1:], start=2):
        if len(r) != len(header):
            raise UnparseableRow(line, f"expected {len(header)} fields, got {len(r)}")
        cells = []
        for j, c in enumerate(r):
            c = c.strip()
            if j in numeric:
                try:
                    cells.append(float(c))
                except ValueError:
                    raise UnparseableRow(line, f"column {header[j]!r} is numeric, got {c!r}") from None
            else:
                cells.append(c)
        parsed.append(tuple(cells))
    if not parsed:
        raise EmptyFile(f"{path}: no data rows")
    return TabularFrame(header, parsed)


def write_tabular_csv(path, frame):
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(frame.column_names)
        for r in frame.rows:
            w.writerow([repr(c) if isinstance(c, float) else c for c in r])


# ---------------------------------------------------------------------------
# cleaning and transforms

def dedupe_rows(frame):
    """Drop exact duplicate rows, keeping first occurrences in order.

    Returns ``(frame, removed_count, removed_fraction)``.
    """
    if len(frame) == 0:
        raise EmptyFile("cannot dedupe an empty frame")
    seen = set()
    kept = []
    for r in frame.rows:
        if r not in seen:
            seen.add(r)
            kept.append(r)
    removed = len(frame) - len(kept)
    return TabularFrame(frame.column_names, kept), removed, removed / len(frame)


def minmax_normalize(series):
    lo = float(np.min(series.values))
    hi = float(np.max(series.values))
    if hi == lo:
        raise ConstantSeries(f"series {series.name!r} is constant ({lo}); cannot min-max scale")
    params = NormalizationParams(lo, hi)
    scaled = (series.values - lo) / (hi - lo)
    return series.with_values(np.clip(scaled, 0.0, 1.0)), params


def denormalize(series, params):
    return series.with_values(series.values * (params.max - params.min) + params.min)


def difference(values, order):
    """Apply the first difference ``order`` times (0, 1 or 2)."""
    if order not in (0, 1, 2):
        raise UnsupportedOrder(f"differencing order must be 0, 1 or 2, got {order}")
    x = np.asarray(values, dtype=float)
    if len(x) <= order:
        raise SeriesTooShort(f"need more than {order} values to difference, got {len(x)}")
    return np.diff(x, n=order) if order else x.copy()


def undifference(diffed, order, initial_values):
    """Invert :func:`difference` given the first ``order`` original values."""
    init = np.asarray(initial_values, dtype=float)
    if len(init) != order:
        raise LengthMismatch(f"order {order} needs {order} initial values, got {len(init)}")
    if order not in (0, 1, 2):
        raise UnsupportedOrder(f"differencing order must be 0, 1 or 2, got {order}")
    x = np.asarray(diffed, dtype=float)
    if order == 0:
        return x.copy()
    # restore the (order-1)-th differences first, then integrate once more
    lower_init = np.diff(init, n=order - 1)[:1] if order > 1 else init
    first = np.concatenate([lower_init, lower_init[0] + np.cumsum(x)])
    if order == 1:
        return first
    return undifference(first, order - 1, init[: order - 1])


def split_train_val_test(series, fractions=(0.8, 0.1, 0.1)):
    """Chronological split: floor for train and validation, remainder to test."""
    fr = tuple(float(f) for f in fractions)
    if len(fr) != 3 or any(f <= 0 for f in fr) or abs(sum(fr) - 1.0) > 1e-9:
        raise BadFractions(f"fractions must be three positive numbers summing to 1, got {fractions}")
    n = len(series)
    if n < 10:
        raise SeriesTooShort(f"need at least 10 points to split, got {n}")
    n_train = math.floor(fr[0] * n)
    n_val = math.floor(fr[1] * n)
    if n_train == 0 or n_val == 0 or n - n_train - n_val == 0:
        raise SeriesTooShort(f"split of {n} points leaves an empty part")
    return DataSplit(
        series[:n_train],
        series[n_train:n_train + n_val],
        series[n_train + n_val:],
        fr,
    )


def predict_timestamps(last_epoch_s, n_hours, milliseconds=False):
    """Hourly timestamps following ``last_epoch_s``: ``last + k*3600`` for k = 1..n.

    Works in seconds; ``milliseconds=True`` scales the result by 1000 for CSV
    emission (the subscriber file stores epoch ms).
    """
    if n_hours < 1:
        raise NonPositiveHorizon(f"horizon must be >= 1, got {n_hours}")
    scale = 1000 if milliseconds else 1
    return [(int(last_epoch_s) + k * HOUR_S) * scale for k in range(1, n_hours + 1)]


# ---------------------------------------------------------------------------
# synthetic data

SYNTHETIC_KINDS = ("white_noise", "random_walk", "ar_process", "linear_trend", "sine", "seasonal_arima")


def generate_synthetic(kind, n, seed=0, sigma=1.0, *, coeffs=None, slope=1.0, period=24,
                       amplitude=1.0, order=None, level=0.0, start_ms=DEFAULT_START_MS, name=None):
    """Deterministic synthetic hourly series.

    ``level`` is added to every value. ``ar_process`` uses ``coeffs`` and a
    100-sample burn-in; ``seasonal_arima`` forwards ``order`` and ``coeffs``
    (a dict accepted by :func:`throughcast.arima.simulate`).
    """
    if n < 1:
        raise BadLength(f"n must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    t = np.arange(n, dtype=float)
    if kind == "white_noise":
        vals = sigma * rng.standard_normal(n)
    elif kind == "random_walk":
        vals = np.cumsum(sigma * rng.standard_normal(n))
    elif kind == "ar_process":
        coeffs = list(coeffs or [])
        if not _poly.is_stationary(coeffs):
            raise NonStationaryCoefficients(f"AR coefficients {coeffs} are not stationary")
        noise = sigma * rng.standard_normal(n + 100)
        vals = _ar_filter(noise, coeffs)[100:]
    elif kind == "linear_trend":
        vals = slope * t + sigma * rng.standard_normal(n) if sigma else slope * t
    elif kind == "sine":
        vals = amplitude * np.sin(2 * np.pi * t / period)
        if sigma:
            vals = vals + sigma * rng.standard_normal(n)
    elif kind == "seasonal_arima":
        from .arima import simulate

        return simulate(order, coeffs or {}, n, seed, sigma, level=level,
                        start_ms=start_ms, name=name or kind)
    else:
        raise ValueError(f"unknown synthetic kind {kind!r}; expected one of {SYNTHETIC_KINDS}")
    return TimeSeries.from_values(np.asarray(vals) + level, start_ms, HOUR_MS, name or kind)


def _ar_filter(noise, coeffs):
    return lfilter([1.0], _poly.ar_poly(coeffs), noise)
