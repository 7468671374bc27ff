import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from throughcast import arima as A
from throughcast.arima import ModelOrder
from throughcast.errors import (
    BadHorizon,
    LengthMismatch,
    NonStationaryCoefficients,
    PartTooShort,
    SeriesTooShort,
)
from throughcast.series import TimeSeries, difference

# Exact-likelihood AR(2) estimates from a reference statistical package on
# A.simulate(ModelOrder(2, 0, 0), {"ar": [0.5, -0.3]}, 4000, seed), frozen offline.
MLE_AR2_REF = {
    0: (0.492627, -0.286797),
    1: (0.494863, -0.298485),
    2: (0.489629, -0.293857),
    3: (0.520981, -0.316367),
    4: (0.491164, -0.281295),
    5: (0.519222, -0.316461),
    6: (0.498592, -0.278691),
    7: (0.505946, -0.293776),
    8: (0.466032, -0.277620),
    9: (0.511477, -0.310405),
}


def _series(values):
    return TimeSeries.from_values(np.asarray(values, dtype=float), 0, 3_600_000, "y")


# ---------------------------------------------------------------------------
# ModelOrder

def test_order_parse_and_label():
    o = ModelOrder.parse("2,1,2")
    assert (o.p, o.d, o.q, o.include_constant) == (2, 1, 2, True)
    assert o.label() == "ARIMA(2,1,2)(0,0,0)[0] intercept"
    s = ModelOrder.parse("1,0,1", "1,1,0,24", include_constant=False)
    assert (s.P, s.D, s.Q, s.m) == (1, 1, 0, 24)
    assert s.ar_degree == 25 and s.diff_lags == 24


@pytest.mark.parametrize("bad", ["1,2", "a,b,c", "-1,0,0"])
def test_order_parse_rejects(bad):
    with pytest.raises(ValueError):
        ModelOrder.parse(bad)


def test_seasonal_requires_period():
    with pytest.raises(ValueError):
        ModelOrder(1, 0, 0, P=1, m=0)
    with pytest.raises(ValueError):
        ModelOrder(1, 0, 0, P=1, m=1)


def test_order_param_count():
    o = ModelOrder(2, 1, 2, 1, 0, 1, 12, True)
    assert o.n_coeffs == 7
    assert o.n_params == 8


# ---------------------------------------------------------------------------
# fit: closed-form cases

def test_mean_only_model_is_sample_mean():
    rng = np.random.default_rng(3)
    x = 5 + rng.standard_normal(500)
    f = A.fit(_series(x), ModelOrder(0, 0, 0))
    assert abs(f.constant - x.mean()) < 1e-6
    assert f.sigma2 == pytest.approx(np.var(x), rel=1e-9)
    assert f.n_effective == 500 == len(f.residuals)


def test_linear_trend_drift():
    x = 3.0 * np.arange(200)
    f = A.fit(_series(x), ModelOrder(0, 1, 0))
    assert f.constant == pytest.approx(3.0, abs=1e-10)
    assert f.sigma2 < 1e-20
    assert np.max(np.abs(f.residuals)) < 1e-10


def test_ar2_recovery():
    for seed in range(5):
        s = A.simulate(ModelOrder(2, 0, 0, include_constant=False), {"ar": [0.5, -0.3]}, 4000, seed)
        f = A.fit(s, ModelOrder(2, 0, 0))
        assert abs(f.ar[0] - 0.5) < 0.05 and abs(f.ar[1] + 0.3) < 0.05


@pytest.mark.parametrize("seed", sorted(MLE_AR2_REF))
def test_ar2_matches_exact_mle_reference(seed):
    s = A.simulate(ModelOrder(2, 0, 0), {"ar": [0.5, -0.3]}, 4000, seed)
    f = A.fit(s, ModelOrder(2, 0, 0))
    np.testing.assert_allclose(f.ar, MLE_AR2_REF[seed], atol=1e-3)


@pytest.mark.parametrize("phi", [0.3, 0.6, 0.9])
def test_ar1_recovery_rate(phi):
    hits = 0
    for seed in range(10):
        s = A.simulate(ModelOrder(1, 0, 0), {"ar": [phi]}, 4000, seed)
        hits += abs(A.fit(s, ModelOrder(1, 0, 0)).ar[0] - phi) < 0.05
    assert hits >= 9


def test_arma11_recovery():
    s = A.simulate(ModelOrder(1, 0, 1), {"ar": [0.6], "ma": [0.3], "constant": 1.0}, 4000, 11)
    f = A.fit(s, ModelOrder(1, 0, 1))
    assert abs(f.ar[0] - 0.6) < 0.06
    assert abs(f.ma[0] - 0.3) < 0.06
    # stationary mean is c / (1 - phi) = 2.5; intercept recovers c
    assert abs(f.constant - 1.0) < 0.15
    assert np.all(np.isfinite(f.coeff_std_errors))


def test_ma_fit_is_invertible():
    s = A.simulate(ModelOrder(0, 0, 2), {"ma": [0.4, 0.2]}, 2000, 5)
    f = A.fit(s, ModelOrder(0, 0, 2))
    roots = np.roots(np.r_[f.ma[::-1], 1.0])
    assert np.all(np.abs(roots) > 1.0)


def test_seasonal_ar_recovery():
    o = ModelOrder(0, 0, 0, 1, 0, 0, 12, False)
    s = A.simulate(o, {"sar": [0.6]}, 4000, 2)
    f = A.fit(s, o)
    assert abs(f.sar[0] - 0.6) < 0.05
    assert f.param_names == ["ar.S.L12"]


def test_css_optimum_not_worse_than_start():
    s = A.simulate(ModelOrder(2, 1, 2), {"ar": [0.4, -0.2], "ma": [0.3, 0.1]}, 1500, 7)
    o = ModelOrder(2, 1, 2)
    f = A.fit(s, o)
    w = A.difference_series(s.values, o)
    start = f.n_conditioned
    x0 = A._ols_start(w, o, start)
    assert A._css(o, w, f.params, start) <= A._css(o, w, x0, start) + 1e-12


def test_differencing_consistency():
    s = A.simulate(ModelOrder(1, 1, 1), {"ar": [0.5], "ma": [0.3], "constant": 0.2}, 2000, 4)
    f1 = A.fit(s, ModelOrder(1, 1, 1))
    f0 = A.fit(difference(s.values, 1), ModelOrder(1, 0, 1))
    np.testing.assert_allclose(f1.ar, f0.ar, atol=1e-4)
    np.testing.assert_allclose(f1.ma, f0.ma, atol=1e-4)


def test_information_criteria_invariants():
    s = A.simulate(ModelOrder(1, 0, 0), {"ar": [0.5]}, 300, 1)
    f = A.fit(s, ModelOrder(1, 0, 1))
    k = f.order.n_params
    assert f.aic == -2 * f.log_likelihood + 2 * k
    assert f.bic == pytest.approx(-2 * f.log_likelihood + k * math.log(f.n_effective))
    assert f.hqic == pytest.approx(-2 * f.log_likelihood + 2 * k * math.log(math.log(f.n_effective)))
    assert A.information_criteria(f) == (f.aic, f.bic, f.hqic)
    # CSS Gaussian likelihood at the CSS variance
    assert f.log_likelihood == pytest.approx(-f.n_effective / 2 * (math.log(2 * math.pi * f.sigma2) + 1))


def test_criteria_formula_examples():
    assert A._criteria(-10.0, 3, 100)[0] == 26.0
    a1 = A._criteria(-10.0, 3, 100)[0]
    a2 = A._criteria(-10.0, 4, 100)[0]
    assert a2 - a1 == 2.0
    aic, bic, _ = A._criteria(-10.0, 3, math.e ** 2)
    assert bic - 20.0 == pytest.approx(3 * 2.0)


def test_too_short_series():
    with pytest.raises(SeriesTooShort):
        A.fit(_series(np.arange(50.0)), ModelOrder(9, 9, 9))
    o = ModelOrder(2, 1, 2)
    with pytest.raises(SeriesTooShort):
        A.fit(_series(np.random.default_rng(0).standard_normal(o.min_length)), o)


def test_hold_back_sets_common_sample():
    s = A.simulate(ModelOrder(1, 0, 0), {"ar": [0.5]}, 400, 2)
    f1 = A.fit(s, ModelOrder(1, 0, 0), hold_back=5)
    f3 = A.fit(s, ModelOrder(3, 0, 0), hold_back=5)
    assert f1.n_effective == f3.n_effective == 395


# ---------------------------------------------------------------------------
# forecasting

def test_forecast_mean_only():
    x = np.random.default_rng(1).normal(4.0, 2.0, 300)
    f = A.fit(_series(x), ModelOrder(0, 0, 0))
    fc = A.forecast(f, _series(x), 10)
    np.testing.assert_allclose(fc.mean, f.constant)
    width = fc.upper_95 - fc.lower_95
    np.testing.assert_allclose(width, 2 * 1.959963984540054 * math.sqrt(f.sigma2))
    assert fc.psi_weights[0] == 1 and np.all(fc.psi_weights[1:] == 0)


def test_forecast_random_walk():
    x = np.cumsum(np.random.default_rng(2).standard_normal(300))
    o = ModelOrder(0, 1, 0, include_constant=False)
    f = A.fit(_series(x), o)
    fc = A.forecast(f, _series(x), 6)
    np.testing.assert_allclose(fc.mean, x[-1])
    np.testing.assert_allclose(fc.psi_weights, 1.0)
    half = (fc.upper_95 - fc.mean) / 1.959963984540054
    np.testing.assert_allclose(half ** 2, np.arange(1, 7) * f.sigma2)


def test_forecast_ar1_halving():
    o = ModelOrder(1, 0, 0, include_constant=False)
    s = _series(np.arange(1.0, 9.0))
    f = A.evaluate(s, o, ar=[0.5])
    fc = A.forecast(f, s, 4)
    np.testing.assert_allclose(fc.mean, [4, 2, 1, 0.5])


def test_pure_ma_psi_weights():
    o = ModelOrder(0, 0, 2, include_constant=False)
    s = _series(np.random.default_rng(0).standard_normal(100))
    f = A.evaluate(s, o, ma=[0.4, -0.2])
    fc = A.forecast(f, s, 5)
    np.testing.assert_allclose(fc.psi_weights, [1, 0.4, -0.2, 0, 0])


def test_forecast_timestamps_and_rows():
    s = A.simulate(ModelOrder(1, 0, 0), {"ar": [0.5]}, 200, 0)
    f = A.fit(s, ModelOrder(1, 0, 0))
    fc = A.forecast(f, s, 48)
    ts = np.asarray(fc.future_timestamps)
    assert ts[0] == s.last_epoch_ms + 3_600_000
    assert np.all(np.diff(ts) == 3_600_000)
    rows = fc.to_rows()
    assert len(rows) == 48 and len(rows[0]) == 4


def test_forecast_errors():
    s = A.simulate(ModelOrder(1, 0, 0), {"ar": [0.5]}, 200, 0)
    f = A.fit(s, ModelOrder(1, 0, 0))
    with pytest.raises(BadHorizon):
        A.forecast(f, s, 0)
    with pytest.raises(LengthMismatch):
        A.forecast(f, _series(s.values[:150]), 3)


@settings(max_examples=30, deadline=None)
@given(
    phi=st.floats(-0.9, 0.9),
    theta=st.floats(-0.9, 0.9),
    d=st.integers(0, 1),
    seed=st.integers(0, 10_000),
    horizon=st.integers(1, 30),
)
def test_interval_ordering_property(phi, theta, d, seed, horizon):
    o = ModelOrder(1, d, 1)
    s = A.simulate(o, {"ar": [phi], "ma": [theta]}, 120, seed)
    f = A.evaluate(s, o, ar=[phi], ma=[theta], constant=0.1)
    fc = A.forecast(f, s, horizon)
    assert fc.psi_weights[0] == 1.0
    assert np.all(fc.lower_95 <= fc.mean) and np.all(fc.mean <= fc.upper_95)
    assert np.all(np.diff(fc.upper_95 - fc.mean) >= -1e-12)


# ---------------------------------------------------------------------------
# simulation

def test_simulate_deterministic_cases():
    s = A.simulate(ModelOrder(0, 0, 0), {"constant": 5.0}, 50, 0, sigma=0.0)
    np.testing.assert_allclose(s.values, 5.0)
    s = A.simulate(ModelOrder(0, 1, 0), {"constant": 2.0}, 50, 0, sigma=0.0)
    np.testing.assert_allclose(np.diff(s.values), 2.0)
    a = A.simulate(ModelOrder(1, 0, 1), {"ar": [0.3], "ma": [0.2]}, 100, 9)
    b = A.simulate(ModelOrder(1, 0, 1), {"ar": [0.3], "ma": [0.2]}, 100, 9)
    np.testing.assert_array_equal(a.values, b.values)


def test_simulate_ar1_acf():
    s = A.simulate(ModelOrder(1, 0, 0), {"ar": [0.9]}, 10_000, 3)
    x = s.values - s.values.mean()
    r1 = float(x[1:] @ x[:-1] / (x @ x))
    assert abs(r1 - 0.9) < 0.02


def test_simulate_rejects_nonstationary():
    with pytest.raises(NonStationaryCoefficients):
        A.simulate(ModelOrder(1, 0, 0), {"ar": [1.1]}, 50, 0)
    with pytest.raises(NonStationaryCoefficients):
        A.simulate(ModelOrder(0, 0, 1), {"ma": [1.5]}, 50, 0)


# ---------------------------------------------------------------------------
# partitioned fitting

def test_partitioned_requires_two_parts():
    s = A.simulate(ModelOrder(1, 0, 0), {"ar": [0.5]}, 400, 0)
    with pytest.raises(ValueError):
        A.fit_partitioned(s, ModelOrder(1, 0, 0), 1)


def test_partitioned_too_short():
    with pytest.raises(PartTooShort):
        A.fit_partitioned(_series(np.random.default_rng(0).standard_normal(25)), ModelOrder(2, 1, 2), 5)


def test_partitioned_ar1_accuracy():
    s = A.simulate(ModelOrder(1, 0, 0), {"ar": [0.6]}, 4000, 8)
    f = A.fit_partitioned(s, ModelOrder(1, 0, 0), 2)
    assert abs(f.ar[0] - 0.6) < 0.07
    assert f.n_obs == 4000


def test_partitioned_identical_halves():
    half = A.simulate(ModelOrder(1, 0, 1), {"ar": [0.5], "ma": [0.2]}, 600, 12).values
    o = ModelOrder(1, 0, 1)
    single = A.fit(half, o)
    combined = A.fit_partitioned(_series(np.r_[half, half]), o, 2)
    np.testing.assert_allclose(combined.params, single.params, atol=1e-9)
    assert combined.sigma2 == pytest.approx(single.sigma2, abs=1e-12)


def test_partitioned_is_mean_of_parts():
    s = A.simulate(ModelOrder(2, 0, 0), {"ar": [0.5, -0.3]}, 3000, 4)
    o = ModelOrder(2, 0, 0)
    parts = [A.fit(s.values[i * 1000:(i + 1) * 1000], o) for i in range(3)]
    comb = A.fit_partitioned(s, o, 3)
    np.testing.assert_allclose(comb.ar, np.mean([p.ar for p in parts], axis=0), atol=1e-12)
    assert comb.n_effective == 3000 - 2


# ---------------------------------------------------------------------------
# reporting

def test_summary_text_fields():
    s = A.simulate(ModelOrder(2, 1, 2), {"ar": [0.4, -0.2], "ma": [0.3, 0.1]}, 800, 3)
    f = A.fit(s, ModelOrder(2, 1, 2))
    text = f.summary()
    for key in ("Dep. Variable:", "Model:", "No. Observations:", "Log Likelihood", "AIC", "BIC",
                "HQIC", "coef", "std err", "P>|z|", "intercept", "ar.L1", "ar.L2", "ma.L1", "ma.L2",
                "sigma2", "Ljung-Box", "Jarque-Bera"):
        assert key in text
    widths = {len(line) for line in text.splitlines() if line.startswith("=")}
    assert len(widths) == 1


def test_summary_json_roundtrip():
    s = A.simulate(ModelOrder(1, 0, 0), {"ar": [0.5]}, 300, 3)
    f = A.fit(s, ModelOrder(1, 0, 0))
    d = json.loads(A.summary_json(f))
    assert d["model"] == f.order.label()
    assert set(d["params"]) == {"intercept", "ar.L1"}
    assert d["aic"] == pytest.approx(f.aic)
    assert "diagnostics" in d
