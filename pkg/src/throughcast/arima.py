"""ARIMA / SARIMA estimation by conditional sum of squares.

The model on the differenced series ``w = (1-B)^d (1-B^m)^D x`` is::

    phi(B) Phi(B^m) w_t = c + theta(B) Theta(B^m) e_t

Innovations are computed by the conditional recursion (pre-sample
innovations zero, the first ``p + P*m`` differenced values used only as
lags). Coefficients minimise ``sum(e_t^2)`` with a Nelder-Mead simplex;
candidate points outside the stationary/invertible region are penalised.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize
from scipy.signal import lfilter

from . import _poly
from .diagnostics import DiagnosticsReport, normal_two_sided
from .errors import (
    BadHorizon,
    DataError,
    DegenerateVariance,
    LengthMismatch,
    NonStationaryCoefficients,
    OptimizerDidNotConverge,
    PartTooShort,
    SeriesTooShort,
)
from .series import DEFAULT_START_MS, HOUR_MS, TimeSeries, predict_timestamps

PENALTY = 1e10
_Z95 = 1.959963984540054


@dataclass(frozen=True)
class ModelOrder:
    p: int = 0
    d: int = 0
    q: int = 0
    P: int = 0
    D: int = 0
    Q: int = 0
    m: int = 0
    include_constant: bool = True

    def __post_init__(self):
        for name in ("p", "d", "q", "P", "D", "Q", "m"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or v < 0:
                raise ValueError(f"order component {name} must be a non-negative integer, got {v!r}")
        seasonal = self.P or self.D or self.Q
        if seasonal and self.m < 2:
            raise ValueError("seasonal period m must be >= 2 when P, D or Q is positive")

    @classmethod
    def parse(cls, order, seasonal=None, include_constant=True):
        """Build from ``"p,d,q"`` and optional ``"P,D,Q,m"`` strings."""
        p, d, q = (int(v) for v in order.split(","))
        P = D = Q = m = 0
        if seasonal:
            P, D, Q, m = (int(v) for v in seasonal.split(","))
        return cls(p, d, q, P, D, Q, m, include_constant)

    @property
    def n_coeffs(self):
        return self.p + self.q + self.P + self.Q + int(self.include_constant)

    @property
    def n_params(self):
        """Coefficient count plus one for the innovation variance."""
        return self.n_coeffs + 1

    @property
    def ar_degree(self):
        return self.p + self.P * self.m

    @property
    def ma_degree(self):
        return self.q + self.Q * self.m

    @property
    def diff_lags(self):
        return self.d + self.D * self.m

    @property
    def min_length(self):
        """Series length must exceed this to fit.

        Differencing and AR conditioning consume ``diff_lags + max(ar, ma)``
        points; the rest must hold at least three per parameter, and never
        fewer than ten.
        """
        return self.diff_lags + max(self.ar_degree, self.ma_degree) + max(10, 3 * self.n_params)

    def with_constant(self, flag):
        return ModelOrder(self.p, self.d, self.q, self.P, self.D, self.Q, self.m, flag)

    def label(self):
        s = f"ARIMA({self.p},{self.d},{self.q})({self.P},{self.D},{self.Q})[{self.m}]"
        return s + (" intercept" if self.include_constant else "")

    def to_dict(self):
        return {k: getattr(self, k) for k in ("p", "d", "q", "P", "D", "Q", "m", "include_constant")}


@dataclass(frozen=True)
class ArimaFit:
    order: ModelOrder
    ar: np.ndarray
    ma: np.ndarray
    sar: np.ndarray
    sma: np.ndarray
    constant: float
    sigma2: float
    log_likelihood: float
    aic: float
    bic: float
    hqic: float
    residuals: np.ndarray = field(repr=False)
    n_effective: int
    coeff_std_errors: np.ndarray = field(repr=False)
    n_obs: int = 0
    css: float = 0.0
    converged: bool = True
    name: str = "y"
    n_conditioned: int = 0

    @property
    def params(self):
        return _pack(self.order, self.constant, self.ar, self.sar, self.ma, self.sma)

    @property
    def param_names(self):
        o = self.order
        names = ["intercept"] if o.include_constant else []
        names += [f"ar.L{i}" for i in range(1, o.p + 1)]
        names += [f"ar.S.L{i * o.m}" for i in range(1, o.P + 1)]
        names += [f"ma.L{i}" for i in range(1, o.q + 1)]
        names += [f"ma.S.L{i * o.m}" for i in range(1, o.Q + 1)]
        return names

    def summary(self, diagnostics=True):
        return format_summary(self, diagnostics=diagnostics)

    def to_dict(self):
        return {
            "dep_variable": self.name,
            "model": self.order.label(),
            "order": self.order.to_dict(),
            "n_obs": self.n_obs,
            "n_effective": self.n_effective,
            "log_likelihood": self.log_likelihood,
            "aic": self.aic,
            "bic": self.bic,
            "hqic": self.hqic,
            "sigma2": self.sigma2,
            "converged": self.converged,
            "params": {n: float(v) for n, v in zip(self.param_names, self.params)},
            "std_errors": {n: float(v) for n, v in zip(self.param_names, self.coeff_std_errors)},
        }


@dataclass(frozen=True)
class ForecastResult:
    horizon: int
    mean: np.ndarray
    lower_95: np.ndarray
    upper_95: np.ndarray
    future_timestamps: list
    psi_weights: np.ndarray

    def to_rows(self):
        return [
            (int(t), float(m), float(lo), float(hi))
            for t, m, lo, hi in zip(self.future_timestamps, self.mean, self.lower_95, self.upper_95)
        ]


# ---------------------------------------------------------------------------
# parameter vector helpers
# layout: [c] + phi + Phi + theta + Theta

def _pack(order, c, ar, sar, ma, sma):
    head = [c] if order.include_constant else []
    return np.concatenate([head, ar, sar, ma, sma]).astype(float)


def _unpack(order, x):
    i = 0
    c = 0.0
    if order.include_constant:
        c = x[0]
        i = 1
    ar = x[i:i + order.p]
    i += order.p
    sar = x[i:i + order.P]
    i += order.P
    ma = x[i:i + order.q]
    i += order.q
    sma = x[i:i + order.Q]
    return c, ar, sar, ma, sma


def expanded_polys(order, ar, sar, ma, sma):
    """Multiplied-out AR and MA lag polynomials of degree p+P*m and q+Q*m."""
    a = _poly.ar_poly(ar)
    if order.P:
        a = np.convolve(a, _poly.ar_poly(sar, order.m))
    b = _poly.ma_poly(ma)
    if order.Q:
        b = np.convolve(b, _poly.ma_poly(sma, order.m))
    return a, b


def admissible(ar, sar, ma, sma):
    return (_poly.is_stationary(ar) and _poly.is_stationary(sar)
            and _poly.is_invertible(ma) and _poly.is_invertible(sma))


def difference_series(values, order):
    """Apply ``(1-B)^d (1-B^m)^D``; output length ``n - d - D*m``."""
    x = np.asarray(values, dtype=float)
    if order.diff_lags == 0:
        return x.copy()
    if len(x) <= order.diff_lags:
        raise SeriesTooShort(f"need more than {order.diff_lags} values to difference")
    return np.convolve(x, _poly.difference_poly(order.d, order.D, order.m), "valid")


def innovations(w, a_full, b_full, c, start=None):
    """One-step innovations of the differenced series.

    The recursion begins at index ``start`` of ``w`` (default: the AR degree)
    with zero pre-sample innovations, so ``len(w) - start`` values are returned.
    """
    deg = len(a_full) - 1
    skip = 0 if start is None else start - deg
    z = np.convolve(w, a_full, "valid")[skip:] - c
    return lfilter([1.0], b_full, z)


def _start(order, hold_back):
    return max(order.ar_degree, hold_back or 0)


def _css(order, w, x, start=None):
    c, ar, sar, ma, sma = _unpack(order, x)
    a, b = expanded_polys(order, ar, sar, ma, sma)
    e = innovations(w, a, b, c, start)
    return float(e @ e)


def _objective(order, w, scale, start=None):
    def f(x):
        c, ar, sar, ma, sma = _unpack(order, x)
        if not admissible(ar, sar, ma, sma):
            return PENALTY
        a, b = expanded_polys(order, ar, sar, ma, sma)
        e = innovations(w, a, b, c, start)
        val = float(e @ e) / scale
        if not math.isfinite(val):
            return PENALTY
        return val

    return f


# ---------------------------------------------------------------------------
# evaluation at given coefficients

def _criteria(loglik, n_params, n_eff):
    aic = -2.0 * loglik + 2.0 * n_params
    bic = -2.0 * loglik + n_params * math.log(n_eff)
    hqic = -2.0 * loglik + 2.0 * n_params * math.log(math.log(n_eff)) if n_eff > math.e else float("nan")
    return aic, bic, hqic


def information_criteria(fit):
    """(AIC, BIC, HQIC) recomputed from the stored log-likelihood."""
    return _criteria(fit.log_likelihood, fit.order.n_params, fit.n_effective)


def evaluate(series, order, ar=(), ma=(), sar=(), sma=(), constant=0.0, sigma2=None,
             std_errors=None, converged=True, hold_back=None):
    """Run the innovation recursion at fixed coefficients and build an :class:`ArimaFit`.

    ``hold_back`` conditions on at least that many differenced observations
    (never fewer than the AR degree). ``sigma2`` defaults to the CSS estimate ``sum(e^2) / n_effective``. The
    Gaussian log-likelihood is ``-n/2 ln(2 pi sigma2) - sum(e^2) / (2 sigma2)``,
    which reduces to ``-n/2 (ln(2 pi sigma2) + 1)`` at the CSS estimate.
    """
    values = series.values if isinstance(series, TimeSeries) else np.asarray(series, dtype=float)
    name = series.name if isinstance(series, TimeSeries) and series.name else "y"
    ar, ma, sar, sma = (np.asarray(v, dtype=float).reshape(-1) for v in (ar, ma, sar, sma))
    if (len(ar), len(ma), len(sar), len(sma)) != (order.p, order.q, order.P, order.Q):
        raise LengthMismatch("coefficient lengths do not match the model order")
    c = float(constant) if order.include_constant else 0.0
    w = difference_series(values, order)
    a, b = expanded_polys(order, ar, sar, ma, sma)
    start = _start(order, hold_back)
    if len(w) <= start:
        raise SeriesTooShort("series too short for the AR lag polynomial")
    e = innovations(w, a, b, c, start)
    n_eff = len(e)
    css = float(e @ e)
    if sigma2 is None:
        sigma2 = css / n_eff
    sigma2 = float(sigma2)
    if not math.isfinite(sigma2) or sigma2 < 0:
        raise DegenerateVariance(f"innovation variance is not usable ({sigma2})")
    # exact fits (e.g. a noiseless trend) keep a strictly positive variance
    sigma2 = max(sigma2, np.finfo(float).tiny)
    loglik = -0.5 * n_eff * math.log(2 * math.pi * sigma2) - css / (2 * sigma2)
    aic, bic, hqic = _criteria(loglik, order.n_params, n_eff)
    if std_errors is None:
        std_errors = np.full(order.n_coeffs, np.nan)
    e.setflags(write=False)
    return ArimaFit(
        order=order, ar=ar, ma=ma, sar=sar, sma=sma, constant=c, sigma2=sigma2,
        log_likelihood=loglik, aic=aic, bic=bic, hqic=hqic, residuals=e, n_effective=n_eff,
        coeff_std_errors=np.asarray(std_errors, dtype=float), n_obs=len(values), css=css,
        converged=converged, name=name, n_conditioned=start,
    )


# ---------------------------------------------------------------------------
# estimation

def _lag_matrix(w, order, start=None):
    """Design matrix of the additive AR approximation used for starting values."""
    start = order.ar_degree if start is None else start
    rows = np.arange(start, len(w))
    cols = [w[rows - i] for i in range(1, order.p + 1)]
    cols += [w[rows - i * order.m] for i in range(1, order.P + 1)]
    if order.include_constant:
        cols.append(np.ones(len(rows)))
    X = np.column_stack(cols) if cols else np.empty((len(rows), 0))
    return X, w[rows]


def _ols_start(w, order, start=None):
    """OLS starting values: AR lags (and seasonal lags) plus intercept, MA at zero."""
    X, y = _lag_matrix(w, order, start)
    if X.shape[1]:
        beta = np.linalg.lstsq(X, y, rcond=None)[0]
    else:
        beta = np.empty(0)
    ar = beta[:order.p]
    sar = beta[order.p:order.p + order.P]
    c = beta[-1] if order.include_constant else 0.0
    # pull a non-stationary OLS solution back inside the admissible region
    for _ in range(50):
        if _poly.is_stationary(ar) and _poly.is_stationary(sar):
            break
        ar, sar = ar * 0.9, sar * 0.9
    return _pack(order, c, ar, sar, np.zeros(order.q), np.zeros(order.Q))


def _initial_simplex(order, x0, w):
    k = len(x0)
    sim = np.tile(x0, (k + 1, 1))
    level = float(np.std(w)) or 1.0
    for i in range(k):
        if order.include_constant and i == 0:
            step = 0.1 * max(abs(x0[0]), level)
        else:
            step = 0.1
        sim[i + 1, i] += step
    return sim


def _hessian_std_errors(fn, x, sigma2):
    """Standard errors from a central finite-difference Hessian of the CSS objective.

    For the concentrated Gaussian likelihood the covariance is
    ``2 sigma2 H^{-1}`` where ``H`` is the Hessian of ``sum(e^2)``.
    """
    k = len(x)
    if k == 0:
        return np.empty(0)
    h = 1e-4 * np.maximum(1.0, np.abs(x))
    f0 = fn(x)
    H = np.empty((k, k))
    for i in range(k):
        ei = np.zeros(k)
        ei[i] = h[i]
        H[i, i] = (fn(x + ei) - 2 * f0 + fn(x - ei)) / h[i] ** 2
        for j in range(i):
            ej = np.zeros(k)
            ej[j] = h[j]
            H[i, j] = H[j, i] = (
                fn(x + ei + ej) - fn(x + ei - ej) - fn(x - ei + ej) + fn(x - ei - ej)
            ) / (4 * h[i] * h[j])
    try:
        cov = 2.0 * sigma2 * np.linalg.inv(H)
    except np.linalg.LinAlgError:
        return np.full(k, np.nan)
    diag = np.diag(cov)
    with np.errstate(invalid="ignore"):
        return np.where(diag > 0, np.sqrt(np.abs(diag)), np.nan)


def _check_length(n, order):
    if n <= order.min_length:
        raise SeriesTooShort(
            f"{order.label()} needs more than {order.min_length} observations, got {n}"
        )


def fit(series, order, hold_back=None):
    """Estimate an ARIMA/SARIMA model by conditional sum of squares.

    ``hold_back`` fixes the number of leading differenced observations used
    only as lags, so that candidates of different AR order are scored on the
    same sample (needed when comparing their AIC).

    Pure non-seasonal AR models are linear in their coefficients, so the CSS
    optimum is the least-squares solution and is computed directly. All other
    models use Nelder-Mead from the OLS starting point and from zeros, followed
    by one restart from the better of the two.

    Raises
    ------
    SeriesTooShort
        If ``len(series) <= order.min_length``.
    OptimizerDidNotConverge
        If the final simplex run hits its iteration cap or no admissible point is found.
    """
    values = series.values if isinstance(series, TimeSeries) else np.asarray(series, dtype=float)
    _check_length(len(values), order)
    w = difference_series(values, order)
    start = _start(order, hold_back)
    if len(w) - start <= order.n_coeffs:
        raise SeriesTooShort(f"{order.label()}: hold-back of {start} leaves too few observations")
    k = order.n_coeffs
    raw = lambda x: _css(order, w, x, start)  # noqa: E731

    if k == 0:
        return evaluate(series, order, hold_back=start)

    x_ols = _ols_start(w, order, start)
    converged = True
    if order.q == 0 and order.Q == 0 and order.P == 0:
        X, y = _lag_matrix(w, order, start)
        beta = np.linalg.lstsq(X, y, rcond=None)[0]
        c, ar, _, _, _ = _unpack(order, _reorder_ls(order, beta))
        if _poly.is_stationary(ar):
            x_best = _pack(order, c, ar, [], [], [])
        else:
            x_best, converged = _nelder_mead(order, w, x_ols, start)
    else:
        x_best, converged = _nelder_mead(order, w, x_ols, start)

    if not converged:
        raise OptimizerDidNotConverge(f"{order.label()}: simplex hit its iteration cap")
    c, ar, sar, ma, sma = _unpack(order, x_best)
    if not admissible(ar, sar, ma, sma):
        raise OptimizerDidNotConverge(f"{order.label()}: no stationary/invertible optimum found")
    css = raw(x_best)
    sigma2 = css / (len(w) - start)
    se = _hessian_std_errors(raw, x_best, sigma2)
    return evaluate(series, order, ar, ma, sar, sma, c, std_errors=se, converged=converged,
                    hold_back=start)


def _reorder_ls(order, beta):
    # least-squares columns are [phi..., c]; parameter layout is [c, phi...]
    if order.include_constant:
        return np.concatenate([[beta[-1]], beta[:-1]])
    return beta


def _nelder_mead(order, w, x_ols, start=None):
    k = order.n_coeffs
    base = _css(order, w, x_ols, start)
    scale = base if base > 0 and math.isfinite(base) else 1.0
    f = _objective(order, w, scale, start)
    opts = {"maxiter": 200 * (k + 1), "maxfev": 400 * (k + 1), "fatol": 1e-8, "xatol": 1e-6}

    runs = []
    for x0 in (x_ols, np.zeros(k)):
        if order.include_constant and not np.any(x0):
            x0 = x0.copy()
            x0[0] = x_ols[0]
        res = minimize(f, x0, method="Nelder-Mead",
                       options=dict(opts, initial_simplex=_initial_simplex(order, x0, w)))
        runs.append(res)
    best = min(runs, key=lambda r: r.fun)
    res = minimize(f, best.x, method="Nelder-Mead",
                   options=dict(opts, initial_simplex=_initial_simplex(order, best.x, w)))
    if res.fun > best.fun:
        res = best
    if res.fun >= PENALTY:
        return res.x, False
    return res.x, bool(res.success)


def fit_partitioned(series, order, k_parts):
    """Fit K contiguous sub-series independently and average their estimates.

    Parts have equal length ``n // k_parts`` with the remainder appended to
    the last part. Coefficients and innovation variances are averaged; the
    likelihood and information criteria are then recomputed by running the
    innovation recursion over the whole series with the averaged coefficients.
    """
    if k_parts < 2:
        raise ValueError(f"k_parts must be >= 2, got {k_parts}")
    values = series.values if isinstance(series, TimeSeries) else np.asarray(series, dtype=float)
    n = len(values)
    size = n // k_parts
    if size <= order.min_length:
        raise PartTooShort(
            f"{k_parts} parts of {size} points; {order.label()} needs more than {order.min_length}"
        )
    fits = []
    for i in range(k_parts):
        stop = n if i == k_parts - 1 else (i + 1) * size
        part = values[i * size:stop]
        try:
            fits.append(fit(part, order))
        except DataError as exc:
            raise type(exc)(f"part {i}: {exc}") from exc
        except OptimizerDidNotConverge as exc:
            raise OptimizerDidNotConverge(f"part {i}: {exc}") from exc
        except DegenerateVariance as exc:
            raise DegenerateVariance(f"part {i}: {exc}") from exc

    def mean_of(attr):
        return np.mean([getattr(f, attr) for f in fits], axis=0)

    ar, ma, sar, sma = (mean_of(a) for a in ("ar", "ma", "sar", "sma"))
    c = float(mean_of("constant"))
    sigma2 = float(mean_of("sigma2"))
    w = difference_series(values, order)
    x = _pack(order, c, ar, sar, ma, sma)
    se = _hessian_std_errors(lambda v: _css(order, w, v), x, sigma2)
    return evaluate(series, order, ar, ma, sar, sma, c, sigma2=sigma2, std_errors=se,
                    converged=all(f.converged for f in fits))


# ---------------------------------------------------------------------------
# forecasting and simulation

def _future_timestamps(series, horizon):
    if not isinstance(series, TimeSeries):
        return predict_timestamps(0, horizon, milliseconds=True)
    last = series.last_epoch_ms
    if series.spacing_ms == HOUR_MS:
        sub = last % 1000
        return [t + sub for t in predict_timestamps(last // 1000, horizon, milliseconds=True)]
    return [last + k * series.spacing_ms for k in range(1, horizon + 1)]


def forecast(fit, series, horizon):
    """Multi-step forecasts on the original scale with 95% intervals.

    Iterates ``phi(B) Phi(B^m) (1-B)^d (1-B^m)^D x_t = c + theta(B) Theta(B^m) e_t``
    with future innovations at zero. Interval half-widths are
    ``1.96 sigma sqrt(sum_{j<h} psi_j^2)``.
    """
    if horizon < 1:
        raise BadHorizon(f"horizon must be >= 1, got {horizon}")
    x = series.values if isinstance(series, TimeSeries) else np.asarray(series, dtype=float)
    o = fit.order
    n = len(x)
    offset = o.diff_lags + fit.n_conditioned
    if len(fit.residuals) != n - offset:
        raise LengthMismatch("fit was not produced from this series (residual count differs)")
    a, b = expanded_polys(o, fit.ar, fit.sar, fit.ma, fit.sma)
    a_gen = np.convolve(a, _poly.difference_poly(o.d, o.D, o.m))
    pa, qb = len(a_gen) - 1, len(b) - 1

    xs = np.concatenate([x, np.zeros(horizon)])
    es = np.zeros(n + horizon)
    es[offset:n] = fit.residuals
    for t in range(n, n + horizon):
        acc = fit.constant
        for i in range(1, pa + 1):
            acc -= a_gen[i] * xs[t - i]
        for j in range(1, qb + 1):
            acc += b[j] * es[t - j]
        xs[t] = acc
    mean = xs[n:]
    psi = _poly.psi_weights(a_gen, b, horizon)
    half = _Z95 * np.sqrt(fit.sigma2 * np.cumsum(psi ** 2))
    return ForecastResult(
        horizon=horizon,
        mean=mean,
        lower_95=mean - half,
        upper_95=mean + half,
        future_timestamps=_future_timestamps(series, horizon),
        psi_weights=psi,
    )


def simulate(order, coeffs, n, seed=0, sigma=1.0, level=0.0, start_ms=DEFAULT_START_MS, name="simulated"):
    """Simulate the model's difference equation with Gaussian innovations.

    ``coeffs`` is a mapping with optional keys ``ar``, ``ma``, ``sar``, ``sma``
    and ``constant``. A 100-sample burn-in of the stationary part is discarded
    before integrating with zero initial values.
    """
    ar = np.asarray(coeffs.get("ar", np.zeros(order.p)), dtype=float)
    ma = np.asarray(coeffs.get("ma", np.zeros(order.q)), dtype=float)
    sar = np.asarray(coeffs.get("sar", np.zeros(order.P)), dtype=float)
    sma = np.asarray(coeffs.get("sma", np.zeros(order.Q)), dtype=float)
    c = float(coeffs.get("constant", 0.0)) if order.include_constant else 0.0
    if (len(ar), len(ma), len(sar), len(sma)) != (order.p, order.q, order.P, order.Q):
        raise LengthMismatch("coefficient lengths do not match the model order")
    if not admissible(ar, sar, ma, sma):
        raise NonStationaryCoefficients("coefficients are not stationary and invertible")
    rng = np.random.default_rng(seed)
    burn = 100
    e = sigma * rng.standard_normal(n + burn)
    a, b = expanded_polys(order, ar, sar, ma, sma)
    w = lfilter(b, a, e) + lfilter([1.0], a, np.full(n + burn, c))
    w = w[burn:]
    x = lfilter([1.0], _poly.difference_poly(order.d, order.D, order.m), w)
    return TimeSeries.from_values(x + level, start_ms, HOUR_MS, name)


# ---------------------------------------------------------------------------
# reporting

def format_summary(fit, diagnostics=True):
    """Text block laid out like a SARIMAX results table."""
    width = 78
    left = [
        ("Dep. Variable:", fit.name),
        ("Model:", fit.order.label()),
        ("Method:", "css"),
        ("Sample:", f"0 - {fit.n_obs}"),
        ("Covariance Type:", "css-hessian"),
    ]
    right = [
        ("No. Observations:", str(fit.n_obs)),
        ("Log Likelihood", f"{fit.log_likelihood:.3f}"),
        ("AIC", f"{fit.aic:.3f}"),
        ("BIC", f"{fit.bic:.3f}"),
        ("HQIC", f"{fit.hqic:.3f}"),
    ]
    lw = max(21, max(len(v) for _, v in left))
    width = max(width, 17 + lw + 3 + 19 + 15)
    lines = ["ARIMA Results".center(width), "=" * width]
    for (lk, lv), (rk, rv) in zip(left, right):
        lines.append(f"{lk:<17}{lv:>{lw}}   {rk:<19}{rv:>15}")
    lines.append("=" * width)
    lines.append(f"{'':<12}{'coef':>12}{'std err':>11}{'z':>10}{'P>|z|':>9}{'[0.025':>11}{'0.975]':>11}")
    lines.append("-" * width)
    names = fit.param_names + ["sigma2"]
    coefs = list(fit.params) + [fit.sigma2]
    ses = list(fit.coeff_std_errors) + [fit.sigma2 * math.sqrt(2.0 / fit.n_effective)]
    for name, coef, se in zip(names, coefs, ses):
        if se and math.isfinite(se) and se > 0:
            z = coef / se
            pz = normal_two_sided(z)
            lo, hi = coef - _Z95 * se, coef + _Z95 * se
            lines.append(f"{name:<12}{coef:>12.4g}{se:>11.3g}{z:>10.3f}{pz:>9.3f}{lo:>11.4g}{hi:>11.4g}")
        else:
            lines.append(f"{name:<12}{coef:>12.4g}{'nan':>11}{'nan':>10}{'nan':>9}{'nan':>11}{'nan':>11}")
    lines.append("=" * width)
    if diagnostics:
        try:
            lines.append(DiagnosticsReport.from_residuals(fit.residuals).to_text())
        except DataError as exc:
            lines.append(f"Diagnostics unavailable: {exc}")
        lines.append("=" * width)
    return "\n".join(lines)


def summary_dict(fit):
    out = fit.to_dict()
    try:
        out["diagnostics"] = DiagnosticsReport.from_residuals(fit.residuals).to_dict()
    except DataError as exc:
        out["diagnostics"] = {"error": str(exc)}
    return out


def summary_json(fit):
    return json.dumps(summary_dict(fit), indent=2)
