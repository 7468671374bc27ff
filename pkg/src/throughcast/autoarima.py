"""Differencing selection and stepwise AIC order search."""
from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .arima import ModelOrder, fit
from .diagnostics import adf_test
from .errors import AllCandidatesFailed, ConstantSeries, DataError, NumericalError
from .series import TimeSeries, difference

_STARTS = ((2, 2), (0, 0), (1, 0), (0, 1))


def select_d(series, max_d=2, alpha=0.05):
    """Smallest d in 0..max_d whose d-th difference rejects a unit root at ``alpha``.

    A difference that comes out constant is treated as stationary. Returns
    ``max_d`` when no candidate passes.
    """
    values = series.values if isinstance(series, TimeSeries) else np.asarray(series, dtype=float)
    for d in range(max_d + 1):
        try:
            res = adf_test(difference(values, d))
        except ConstantSeries:
            return d
        if res.p_value < alpha:
            return d
    return max_d


@dataclass(frozen=True)
class TraceEntry:
    order: ModelOrder
    aic: float
    fit_seconds: float
    status: str = "ok"

    def line(self):
        head = self.order.label() + " :"
        if self.status != "ok":
            return f"{head} FAILED, Time={self.fit_seconds:.2f} sec"
        return f"{head} AIC={self.aic:.3f}, Time={self.fit_seconds:.2f} sec"

    def to_record(self):
        return {
            "order": self.order.to_dict(),
            "label": self.order.label(),
            "aic": self.aic if math.isfinite(self.aic) else None,
            "fit_seconds": self.fit_seconds,
            "status": self.status,
        }


@dataclass(frozen=True)
class SearchTrace:
    entries: tuple
    best: ModelOrder
    total_seconds: float
    incumbents: tuple = field(default=(), repr=False)

    def to_records(self):
        return [e.to_record() for e in self.entries]

    def to_json(self):
        return json.dumps({
            "entries": self.to_records(),
            "best": self.best.to_dict(),
            "best_label": self.best.label(),
            "total_seconds": self.total_seconds,
        }, indent=2)


def _rank(order, aic):
    # lower AIC, then fewer parameters, then lower p, then lower q
    return (aic, order.n_coeffs, order.p, order.q)


def stepwise_search(series, d=None, max_p=5, max_q=5):
    """Greedy neighbourhood search over (p, q, intercept) minimising AIC.

    Starts from (2,d,2), (0,d,0), (1,d,0), (0,d,1) with intercept, then moves
    to the first neighbour (p-1, p+1, q-1, q+1, intercept toggle) that
    strictly lowers AIC, until none does. Each (p, d, q, intercept) is fitted
    at most once, always conditioning on the first ``max_p`` differenced
    values so that AICs share one sample. Returns ``(best_fit, trace)``.
    """
    t_start = time.perf_counter()
    if d is None:
        d = select_d(series)
    entries = []
    fits = {}
    seen = set()

    def evaluate(p, q, const):
        key = (p, q, const)
        if key in seen:
            return None
        seen.add(key)
        order = ModelOrder(p, d, q, include_constant=const)
        t0 = time.perf_counter()
        try:
            result = fit(series, order, hold_back=max_p)
        except (DataError, NumericalError):
            entries.append(TraceEntry(order, float("inf"), time.perf_counter() - t0, "failed"))
            return None
        aic = result.aic
        if not math.isfinite(aic):
            entries.append(TraceEntry(order, float("inf"), time.perf_counter() - t0, "failed"))
            return None
        entries.append(TraceEntry(order, aic, time.perf_counter() - t0, "ok"))
        fits[key] = result
        return result

    for p, q in _STARTS:
        evaluate(min(p, max_p), min(q, max_q), True)
    if not fits:
        raise AllCandidatesFailed("every starting candidate failed to fit")
    inc_key = min(fits, key=lambda k: _rank(fits[k].order, fits[k].aic))
    incumbents = [fits[inc_key].aic]

    while True:
        p, q, const = inc_key
        neighbours = [(p - 1, q, const), (p + 1, q, const), (p, q - 1, const),
                      (p, q + 1, const), (p, q, not const)]
        moved = False
        for np_, nq, nc in neighbours:
            if not (0 <= np_ <= max_p and 0 <= nq <= max_q):
                continue
            res = evaluate(np_, nq, nc)
            if res is not None and res.aic < fits[inc_key].aic:
                inc_key = (np_, nq, nc)
                incumbents.append(res.aic)
                moved = True
                break
        if not moved:
            break

    best_key = min(fits, key=lambda k: _rank(fits[k].order, fits[k].aic))
    best = fits[best_key]
    trace = SearchTrace(tuple(entries), best.order, time.perf_counter() - t_start, tuple(incumbents))
    return best, trace


def format_trace(trace, header=True):
    """Render a trace as ``ARIMA(p,d,q)(P,D,Q)[m] intercept : AIC=..., Time=... sec`` lines.

    With ``header`` the block is framed with the "Performing stepwise search"
    line and a blank line before the summary, as auto-ARIMA tools print it.
    """
    lines = ["Performing stepwise search to minimize aic"] if header else []
    lines += [e.line() for e in trace.entries]
    if header:
        lines.append("")
    lines.append(f"Best model: {trace.best.label()}")
    lines.append(f"Total fit time: {trace.total_seconds:.3f} seconds")
    return "\n".join(lines)
