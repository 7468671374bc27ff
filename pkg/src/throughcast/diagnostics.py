"""Stationarity tests and residual diagnostics.

Everything here is a pure function of its inputs. Distribution tails use
``scipy.special``/``scipy.stats``; the Dickey-Fuller p-values come from the
tabulated quantiles below, not from an asymptotic approximation.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import stats
from scipy.special import ndtri

from .errors import (
    ConstantSeries,
    LagTooLarge,
    SeriesTooShort,
    SingularRegression,
    ZeroDenominator,
    ZeroVariance,
)

# Dickey-Fuller t-ratio quantiles (Fuller 1976, Table 8.5.2).
_DF_PROBS = np.array([0.01, 0.025, 0.05, 0.10, 0.90, 0.95, 0.975, 0.99])
_DF_SIZES = np.array([25, 50, 100, 250, 500, np.inf])
_DF_TABLE = {
    "constant": np.array([
        [-3.75, -3.33, -3.00, -2.63, -0.37, 0.00, 0.34, 0.72],
        [-3.58, -3.22, -2.93, -2.60, -0.40, -0.03, 0.29, 0.66],
        [-3.51, -3.17, -2.89, -2.58, -0.42, -0.05, 0.26, 0.63],
        [-3.46, -3.14, -2.88, -2.57, -0.42, -0.06, 0.24, 0.62],
        [-3.44, -3.13, -2.87, -2.57, -0.43, -0.07, 0.24, 0.61],
        [-3.43, -3.12, -2.86, -2.57, -0.44, -0.07, 0.23, 0.60],
    ]),
    "constant_trend": np.array([
        [-4.38, -3.95, -3.60, -3.24, -1.14, -0.80, -0.50, -0.15],
        [-4.15, -3.80, -3.50, -3.18, -1.19, -0.87, -0.58, -0.24],
        [-4.04, -3.73, -3.45, -3.15, -1.22, -0.90, -0.62, -0.28],
        [-3.99, -3.69, -3.43, -3.13, -1.23, -0.92, -0.64, -0.31],
        [-3.98, -3.68, -3.42, -3.13, -1.24, -0.93, -0.65, -0.32],
        [-3.96, -3.66, -3.41, -3.12, -1.25, -0.94, -0.66, -0.33],
    ]),
}
_P_FLOOR, _P_CEIL = 0.001, 0.999


# ---------------------------------------------------------------------------
# distribution tails

def chi2_sf(x, df):
    """Upper tail of the chi-square distribution."""
    if x <= 0:
        return 1.0
    return float(stats.chi2.sf(x, df))


def f_two_sided(h, df1, df2):
    """Two-sided p-value of a variance ratio under F(df1, df2)."""
    lower = stats.f.cdf(h, df1, df2)
    upper = stats.f.sf(h, df1, df2)
    return float(min(1.0, 2.0 * min(lower, upper)))


def normal_two_sided(z):
    return float(2.0 * stats.norm.sf(abs(z)))


# ---------------------------------------------------------------------------
# correlogram

@dataclass(frozen=True)
class Correlogram:
    lags: np.ndarray
    acf: np.ndarray
    pacf: np.ndarray
    confidence_band: float


def _centered(values, min_len=2):
    x = np.asarray(values, dtype=float)
    if len(x) < min_len:
        raise SeriesTooShort(f"need at least {min_len} values, got {len(x)}")
    xc = x - x.mean()
    denom = float(np.dot(xc, xc))
    if denom == 0.0 or np.ptp(x) == 0.0:
        raise ConstantSeries("series has zero variance")
    return xc, denom


def acf(values, max_lag):
    """Sample autocorrelations r_0..r_max_lag (r_0 is exactly 1)."""
    xc, denom = _centered(values)
    n = len(xc)
    if max_lag >= n or max_lag < 0:
        raise LagTooLarge(f"max_lag must be in [0, {n - 1}], got {max_lag}")
    out = np.empty(max_lag + 1)
    out[0] = 1.0
    for h in range(1, max_lag + 1):
        out[h] = np.dot(xc[:-h], xc[h:]) / denom
    return out


def pacf(values, max_lag):
    """Partial autocorrelations by the Durbin-Levinson recursion; index 0 is 1."""
    r = acf(values, max_lag)
    out = np.empty(max_lag + 1)
    out[0] = 1.0
    if max_lag == 0:
        return out
    phi = np.array([r[1]])
    out[1] = r[1]
    v = 1.0 - r[1] ** 2
    for k in range(2, max_lag + 1):
        if v <= 0:
            out[k:] = 0.0
            break
        kk = (r[k] - np.dot(phi, r[k - 1:0:-1])) / v
        phi = np.concatenate([phi - kk * phi[::-1], [kk]])
        v *= 1.0 - kk * kk
        out[k] = kk
    return out


def correlogram(values, max_lag):
    n = len(values)
    return Correlogram(
        lags=np.arange(max_lag + 1),
        acf=acf(values, max_lag),
        pacf=pacf(values, max_lag),
        confidence_band=1.96 / math.sqrt(n),
    )


# ---------------------------------------------------------------------------
# augmented Dickey-Fuller

@dataclass(frozen=True)
class AdfResult:
    statistic: float
    p_value: float
    lags_used: int
    n_obs: int
    critical_values: dict
    is_stationary: bool
    regression: str = "constant"

    @property
    def abs_statistic(self):
        return abs(self.statistic)

    def to_dict(self):
        return {
            "statistic": self.statistic,
            "abs_statistic": self.abs_statistic,
            "p_value": self.p_value,
            "lags_used": self.lags_used,
            "n_obs": self.n_obs,
            "critical_values": dict(self.critical_values),
            "is_stationary": self.is_stationary,
            "regression": self.regression,
        }


def schwert_lag(n):
    return int(math.floor(12.0 * (n / 100.0) ** 0.25))


def df_quantiles(n_obs, regression="constant"):
    """Dickey-Fuller quantiles interpolated (linearly in 1/n) at sample size ``n_obs``."""
    table = _DF_TABLE[regression]
    inv = 1.0 / _DF_SIZES  # descending: 1/25 ... 0
    x = 1.0 / max(float(n_obs), float(_DF_SIZES[0]))
    return np.array([np.interp(x, inv[::-1], table[::-1, j]) for j in range(table.shape[1])])


def df_pvalue(statistic, n_obs, regression="constant"):
    """Left-tail probability of a DF t-ratio.

    Interpolates the tabulated quantiles piecewise-linearly in probit space,
    extends the end segments linearly, and clamps to [0.001, 0.999].
    """
    q = df_quantiles(n_obs, regression)
    z = ndtri(_DF_PROBS)
    if statistic <= q[0]:
        zs = z[0] + (statistic - q[0]) * (z[1] - z[0]) / (q[1] - q[0])
    elif statistic >= q[-1]:
        zs = z[-1] + (statistic - q[-1]) * (z[-1] - z[-2]) / (q[-1] - q[-2])
    else:
        zs = np.interp(statistic, q, z)
    p = float(stats.norm.cdf(zs))
    return min(max(p, _P_FLOOR), _P_CEIL)


def adf_test(values, regression="constant", max_lag=None):
    """Augmented Dickey-Fuller test with a fixed number of augmentation lags.

    Regresses ``dy_t`` on a constant (and trend), ``y_{t-1}`` and ``k`` lagged
    differences; the statistic is the t-ratio of the ``y_{t-1}`` coefficient.
    ``k`` defaults to Schwert's rule ``floor(12 (n/100)^(1/4))``.
    """
    if regression not in _DF_TABLE:
        raise ValueError(f"regression must be one of {sorted(_DF_TABLE)}, got {regression!r}")
    y = np.asarray(values, dtype=float)
    n = len(y)
    if n >= 2 and np.ptp(y) == 0.0:
        raise ConstantSeries("cannot test a constant series for a unit root")
    k = schwert_lag(n) if max_lag is None else int(max_lag)
    if k < 0:
        raise ValueError("max_lag must be non-negative")
    n_obs = n - 1 - k
    if n_obs < 20:
        raise SeriesTooShort(f"ADF needs >= 20 observations after lag trimming, got {n_obs} (n={n}, lags={k})")

    dy = np.diff(y)
    rows = np.arange(k, n - 1)
    cols = [y[rows]]
    cols += [dy[rows - i] for i in range(1, k + 1)]
    cols.append(np.ones(n_obs))
    if regression == "constant_trend":
        cols.append(np.arange(1, n_obs + 1, dtype=float))
    X = np.column_stack(cols)
    target = dy[rows]

    beta, _, rank, _ = np.linalg.lstsq(X, target, rcond=None)
    if rank < X.shape[1]:
        raise SingularRegression("ADF design matrix is rank deficient")
    resid = target - X @ beta
    dof = n_obs - X.shape[1]
    if dof <= 0:
        raise SeriesTooShort("no residual degrees of freedom in ADF regression")
    s2 = float(resid @ resid) / dof
    xtx_inv = np.linalg.inv(X.T @ X)
    se = math.sqrt(s2 * xtx_inv[0, 0])
    if se == 0.0:
        raise SingularRegression("zero standard error on the lagged level")
    stat = float(beta[0] / se)

    q = df_quantiles(n_obs, regression)
    crit = {"1%": float(q[0]), "5%": float(q[2]), "10%": float(q[3])}
    p = df_pvalue(stat, n_obs, regression)
    return AdfResult(stat, p, k, n_obs, crit, p < 0.05, regression)


# ---------------------------------------------------------------------------
# residual statistics

def ljung_box(residuals, lags):
    """Ljung-Box portmanteau statistic and its chi-square(lags) p-value."""
    e = np.asarray(residuals, dtype=float)
    n = len(e)
    if lags < 1 or n <= lags:
        raise SeriesTooShort(f"Ljung-Box needs lags >= 1 and n > lags (n={n}, lags={lags})")
    r = acf(e, lags)
    k = np.arange(1, lags + 1)
    q = float(n * (n + 2) * np.sum(r[1:] ** 2 / (n - k)))
    return q, chi2_sf(q, lags)


@dataclass(frozen=True)
class DescriptiveStats:
    mean: float
    std_dev: float
    skew: float
    kurtosis: float
    jarque_bera: tuple


def jarque_bera_from_moments(n, skew, kurtosis):
    jb = n / 6.0 * (skew ** 2 + (kurtosis - 3.0) ** 2 / 4.0)
    return jb, chi2_sf(jb, 2)


def descriptive_stats(values):
    """Mean, sample sd, skew, non-excess kurtosis, and Jarque-Bera (stat, p)."""
    x = np.asarray(values, dtype=float)
    n = len(x)
    if n < 4:
        raise SeriesTooShort(f"need at least 4 values, got {n}")
    xc = x - x.mean()
    m2 = float(np.mean(xc ** 2))
    if m2 == 0.0:
        raise ZeroVariance("zero variance")
    m3 = float(np.mean(xc ** 3))
    m4 = float(np.mean(xc ** 4))
    skew = m3 / m2 ** 1.5
    kurt = m4 / m2 ** 2
    return DescriptiveStats(
        mean=float(x.mean()),
        std_dev=float(np.std(x, ddof=1)),
        skew=skew,
        kurtosis=kurt,
        jarque_bera=jarque_bera_from_moments(n, skew, kurt),
    )


def heteroskedasticity_test(residuals):
    """Ratio of squared-residual sums, last third over first third.

    Thirds have ``floor(n/3)`` points each; the middle remainder is ignored.
    Returns ``(H, two-sided p)`` under F(h, h).
    """
    e = np.asarray(residuals, dtype=float)
    n = len(e)
    if n < 9:
        raise SeriesTooShort(f"need at least 9 residuals, got {n}")
    h = n // 3
    first = float(np.sum(e[:h] ** 2))
    last = float(np.sum(e[n - h:] ** 2))
    if first == 0.0:
        raise ZeroDenominator("first third of the residuals is identically zero")
    ratio = last / first
    return ratio, f_two_sided(ratio, h, h)


def standardize_residuals(residuals):
    e = np.asarray(residuals, dtype=float)
    if len(e) < 2:
        raise ZeroVariance("need at least two residuals")
    s = float(np.std(e, ddof=1))
    if s == 0.0:
        raise ZeroVariance("residuals are constant")
    return (e - e.mean()) / s


def normal_quantiles(n):
    """Plotting-position quantiles ``Phi^-1((i - 0.5)/n)``, exactly antisymmetric."""
    q = np.zeros(n)
    half = n // 2
    i = np.arange(1, half + 1)
    q[:half] = ndtri((i - 0.5) / n)
    q[n - half:] = -q[:half][::-1]
    return q


def qq_points(values):
    x = np.sort(np.asarray(values, dtype=float))
    if len(x) < 3:
        raise SeriesTooShort(f"need at least 3 values for a Q-Q plot, got {len(x)}")
    theo = normal_quantiles(len(x))
    return [(float(t), float(s)) for t, s in zip(theo, x)]


# ---------------------------------------------------------------------------
# report

REPORT_KEYS = (
    "Ljung-Box (L1) (Q)", "Prob(Q)", "Jarque-Bera (JB)", "Prob(JB)",
    "Heteroskedasticity (H)", "Prob(H) (two-sided)", "Skew", "Kurtosis",
)


@dataclass(frozen=True)
class DiagnosticsReport:
    kurtosis: float
    skew: float
    jarque_bera: tuple
    ljung_box_l1: tuple
    heteroskedasticity: tuple
    standardized_residuals: np.ndarray = field(repr=False)
    qq_points: list = field(repr=False)

    @classmethod
    def from_residuals(cls, residuals):
        e = np.asarray(residuals, dtype=float)
        ds = descriptive_stats(e)
        return cls(
            kurtosis=ds.kurtosis,
            skew=ds.skew,
            jarque_bera=ds.jarque_bera,
            ljung_box_l1=ljung_box(e, 1),
            heteroskedasticity=heteroskedasticity_test(e),
            standardized_residuals=standardize_residuals(e),
            qq_points=qq_points(e),
        )

    def summary_fields(self):
        return {
            "Ljung-Box (L1) (Q)": self.ljung_box_l1[0],
            "Prob(Q)": self.ljung_box_l1[1],
            "Jarque-Bera (JB)": self.jarque_bera[0],
            "Prob(JB)": self.jarque_bera[1],
            "Heteroskedasticity (H)": self.heteroskedasticity[0],
            "Prob(H) (two-sided)": self.heteroskedasticity[1],
            "Skew": self.skew,
            "Kurtosis": self.kurtosis,
        }

    def to_text(self):
        f = self.summary_fields()
        pairs = [
            ("Ljung-Box (L1) (Q)", "Jarque-Bera (JB)"),
            ("Prob(Q)", "Prob(JB)"),
            ("Heteroskedasticity (H)", "Skew"),
            ("Prob(H) (two-sided)", "Kurtosis"),
        ]
        lines = []
        for left, right in pairs:
            lines.append(f"{left + ':':<26}{f[left]:>10.2f}   {right + ':':<20}{f[right]:>10.2f}")
        return "\n".join(lines)

    def to_dict(self):
        return {k: float(v) for k, v in self.summary_fields().items()}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)
