import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from throughcast import diagnostics as D
from throughcast import errors as E
from throughcast import series as S

# Reference values computed offline on the identical seeded sequences with an
# established statistics package (adfuller at the same fixed lag, acorr_ljungbox,
# jarque_bera) and frozen here.
ADF_REF = {
    "white_noise": [-5.309252, -4.218693, -5.592491, -5.253949, -4.359431],
    "random_walk": [-0.807072, -1.839317, -0.156977, -0.61456, -1.239009],
}
JB_EXP_REF = (5122.768006736421, 2.1315378463234844, 9.58022809024122)
LB_AR1_REF = 291.3126499081478
LB_WN5_REF = (16.84113616622975, 0.004811152423326418)

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)


# ---------------------------------------------------------------------------
# correlogram

def test_acf_lag0_and_alternating():
    x = np.tile([1.0, -1.0], 50)
    r = D.acf(x, 5)
    assert r[0] == 1.0
    assert abs(r[1] + 1) < 0.05


def test_acf_matches_direct_sum():
    x = S.generate_synthetic("ar_process", 300, seed=2, coeffs=[0.5]).values
    xc = x - x.mean()
    direct = [np.sum(xc[: len(x) - h] * xc[h:]) / np.sum(xc * xc) for h in range(6)]
    assert np.allclose(D.acf(x, 5), direct, atol=1e-12)


def test_white_noise_acf_pacf_band():
    x = S.generate_synthetic("white_noise", 2000, seed=11).values
    bound = 3 / math.sqrt(2000)
    assert np.all(np.abs(D.acf(x, 20)[1:]) < bound)
    assert np.all(np.abs(D.pacf(x, 20)[1:]) < bound)


def test_pacf_ar1():
    x = S.generate_synthetic("ar_process", 5000, seed=3, coeffs=[0.6]).values
    p = D.pacf(x, 10)
    assert abs(p[1] - 0.6) < 0.05
    assert np.all(np.abs(p[2:]) < 3 / math.sqrt(5000))
    assert p[1] == D.acf(x, 1)[1]


def test_acf_guards():
    with pytest.raises(E.ConstantSeries):
        D.acf([2.0, 2.0, 2.0], 1)
    with pytest.raises(E.LagTooLarge):
        D.acf([1.0, 2.0, 3.0], 3)


def test_correlogram_band():
    cg = D.correlogram(np.arange(100.0) % 7, 10)
    assert cg.lags.tolist() == list(range(11))
    assert cg.confidence_band == pytest.approx(1.96 / 10)


@settings(max_examples=200)
@given(arrays(np.float64, st.integers(3, 80), elements=finite), st.integers(0, 2))
def test_acf_bounded(x, lag):
    if np.std(x) < 1e-6 or lag >= len(x):
        return
    r = D.acf(x, lag)
    assert r[0] == 1.0
    assert np.all(np.abs(r) <= 1 + 1e-12)


# ---------------------------------------------------------------------------
# ADF

@pytest.mark.parametrize("seed", range(5))
def test_adf_white_noise(seed):
    res = D.adf_test(S.generate_synthetic("white_noise", 500, seed=seed).values)
    assert res.p_value < 0.01 and res.is_stationary
    assert abs(res.statistic - ADF_REF["white_noise"][seed]) < 0.1


@pytest.mark.parametrize("seed", range(5))
def test_adf_random_walk(seed):
    res = D.adf_test(S.generate_synthetic("random_walk", 500, seed=seed).values)
    assert res.p_value > 0.10 and not res.is_stationary
    assert abs(res.statistic - ADF_REF["random_walk"][seed]) < 0.1


def test_adf_fields():
    res = D.adf_test(S.generate_synthetic("random_walk", 500, seed=1).values)
    assert res.lags_used == D.schwert_lag(500) == 17
    assert res.n_obs == 500 - 1 - 17
    cv = res.critical_values
    assert cv["1%"] < cv["5%"] < cv["10%"]
    assert 0 <= res.p_value <= 1
    assert res.abs_statistic == abs(res.statistic)
    json.dumps(res.to_dict())


def test_adf_trend_regression():
    t = np.arange(400.0)
    x = 0.05 * t + S.generate_synthetic("white_noise", 400, seed=4).values
    assert D.adf_test(x, regression="constant_trend").p_value < 0.01


def test_adf_guards():
    with pytest.raises(E.ConstantSeries):
        D.adf_test(np.full(100, 3.0))
    with pytest.raises(E.SeriesTooShort):
        D.adf_test(np.arange(15.0) ** 0.5)


def test_adf_pvalue_monotone_and_clamped():
    stats = np.linspace(-8, 3, 200)
    p = [D.df_pvalue(s, 200) for s in stats]
    assert np.all(np.diff(p) >= 0)
    assert min(p) == 0.001 and max(p) == 0.999


def test_adf_quantiles_reproduce_table():
    q = D.df_quantiles(100)
    # 5% point of the constant-only case at n = 100
    assert q[2] == pytest.approx(-2.89, abs=1e-9)
    assert D.df_pvalue(q[2], 100) == pytest.approx(0.05, abs=1e-12)


def test_adf_differencing_lowers_pvalue():
    wins = 0
    for seed in range(50):
        rw = S.generate_synthetic("random_walk", 300, seed=100 + seed).values
        if D.adf_test(np.diff(rw)).p_value < D.adf_test(rw).p_value:
            wins += 1
    assert wins >= 48


# ---------------------------------------------------------------------------
# Ljung-Box and distribution tails

def test_chi2_tail_reference():
    assert D.chi2_sf(5.991, 2) == pytest.approx(0.05, abs=1e-4)
    assert D.chi2_sf(3.841, 1) == pytest.approx(0.05, abs=1e-4)
    assert D.chi2_sf(0.0, 3) == 1.0


def test_f_two_sided_reference():
    assert D.f_two_sided(1.0, 30, 30) == pytest.approx(1.0)
    # upper tail of F(30, 30) at 2.0 is 0.03114
    assert D.f_two_sided(2.0, 30, 30) == pytest.approx(2 * 0.03114, abs=2e-4)


def test_ljung_box_zero():
    # r_1 = 0 exactly: [1, 0, -1, 0] has centred lag-1 products summing to zero
    q, p = D.ljung_box(np.array([1.0, 0.0, -1.0, 0.0] * 25), 1)
    assert q == pytest.approx(0.0, abs=1e-20) and p == pytest.approx(1.0)


def test_ljung_box_reference():
    e = S.generate_synthetic("ar_process", 500, seed=0, coeffs=[0.8]).values
    q, p = D.ljung_box(e, 1)
    assert q == pytest.approx(LB_AR1_REF, rel=1e-10) and p < 0.001
    w = S.generate_synthetic("white_noise", 300, seed=1).values
    q5, p5 = D.ljung_box(w, 5)
    assert q5 == pytest.approx(LB_WN5_REF[0], rel=1e-10)
    assert p5 == pytest.approx(LB_WN5_REF[1], rel=1e-8)


def test_ljung_box_white_noise_size():
    hits = sum(D.ljung_box(S.generate_synthetic("white_noise", 1000, seed=s).values, 1)[1] > 0.05
               for s in range(100))
    assert hits >= 95 - 3  # nominal 95; allow binomial slack of about one sd


def test_ljung_box_guard():
    with pytest.raises(E.SeriesTooShort):
        D.ljung_box([1.0, 2.0], 2)


# ---------------------------------------------------------------------------
# moments and Jarque-Bera

def test_two_point_moments():
    x = np.tile([1.0, -1.0], 30)
    ds = D.descriptive_stats(x)
    assert ds.skew == 0.0 and ds.kurtosis == 1.0
    assert ds.jarque_bera[0] == pytest.approx(60 / 6)


def test_jb_normal_case_exact():
    jb, p = D.jarque_bera_from_moments(500, 0.0, 3.0)
    assert jb == 0.0 and p == 1.0


def test_jb_exponential_reference():
    x = np.random.default_rng(0).exponential(1.0, 2000)
    ds = D.descriptive_stats(x)
    assert ds.jarque_bera[0] == pytest.approx(JB_EXP_REF[0], rel=1e-10)
    assert ds.skew == pytest.approx(JB_EXP_REF[1], rel=1e-10)
    assert ds.kurtosis == pytest.approx(JB_EXP_REF[2], rel=1e-10)
    assert ds.jarque_bera[1] < 0.01


@given(st.floats(0, 5), st.floats(0, 5), st.floats(0.01, 1))
def test_jb_monotone(s, k, step):
    base = D.jarque_bera_from_moments(100, s, 3 + k)[0]
    assert D.jarque_bera_from_moments(100, s + step, 3 + k)[0] > base
    assert D.jarque_bera_from_moments(100, s, 3 + k + step)[0] > base
    assert D.jarque_bera_from_moments(100, s, 3 - k - step)[0] > base


def test_descriptive_guards():
    with pytest.raises(E.SeriesTooShort):
        D.descriptive_stats([1.0, 2.0, 3.0])
    with pytest.raises(E.ZeroVariance):
        D.descriptive_stats([1.0] * 10)


# ---------------------------------------------------------------------------
# heteroskedasticity

def test_het_symmetric():
    rng = np.random.default_rng(1)
    a = rng.standard_normal(50)
    h, p = D.heteroskedasticity_test(np.concatenate([a, 5 * rng.standard_normal(50), a]))
    assert h == pytest.approx(1.0) and p == pytest.approx(1.0)


def test_het_scaled_blocks():
    rng = np.random.default_rng(5)
    r = np.concatenate([rng.standard_normal(300), 0.1 * rng.standard_normal(300), 2 * rng.standard_normal(300)])
    h, p = D.heteroskedasticity_test(r)
    direct = np.sum(r[600:] ** 2) / np.sum(r[:300] ** 2)
    assert h == pytest.approx(direct, rel=1e-12)
    assert abs(h - 4) < 0.8 and p < 0.01


def test_het_guards():
    with pytest.raises(E.ZeroDenominator):
        D.heteroskedasticity_test(np.r_[np.zeros(3), np.ones(6)])
    with pytest.raises(E.SeriesTooShort):
        D.heteroskedasticity_test(np.ones(8))


@settings(max_examples=100)
@given(arrays(np.float64, st.integers(9, 120), elements=st.floats(-100, 100)),
       st.floats(1e-3, 1e3) | st.floats(-1e3, -1e-3))
def test_het_scale_invariant(r, c):
    k = len(r) // 3
    if np.sum(r[:k] ** 2) < 1e-6:
        return
    h1, p1 = D.heteroskedasticity_test(r)
    h2, p2 = D.heteroskedasticity_test(c * r)
    assert h2 == pytest.approx(h1, rel=1e-9)
    assert p2 == pytest.approx(p1, rel=1e-6, abs=1e-12)


# ---------------------------------------------------------------------------
# standardisation and Q-Q

def test_standardize_example():
    assert D.standardize_residuals([1.0, 2.0, 3.0]).tolist() == [-1.0, 0.0, 1.0]


def test_standardize_idempotent_and_guard():
    z = D.standardize_residuals(np.random.default_rng(3).standard_normal(40))
    assert np.allclose(D.standardize_residuals(z), z, atol=1e-12)
    assert abs(z.mean()) < 1e-9 and abs(z.std(ddof=1) - 1) < 1e-9
    with pytest.raises(E.ZeroVariance):
        D.standardize_residuals([4.0, 4.0, 4.0])


def test_qq_n3():
    theo = [t for t, _ in D.qq_points([3.0, 1.0, 2.0])]
    assert theo == pytest.approx([-0.9674, 0.0, 0.9674], abs=1e-3)
    assert [s for _, s in D.qq_points([3.0, 1.0, 2.0])] == [1.0, 2.0, 3.0]


@given(st.integers(3, 400))
def test_qq_antisymmetric(n):
    q = D.normal_quantiles(n)
    assert np.array_equal(q, -q[::-1])


def test_qq_slope_normal():
    x = np.random.default_rng(8).standard_normal(5000)
    t, s = np.array(D.qq_points(x)).T
    assert abs(np.polyfit(t, s, 1)[0] - 1) < 0.05


def test_qq_guard():
    with pytest.raises(E.SeriesTooShort):
        D.qq_points([1.0, 2.0])


# ---------------------------------------------------------------------------
# report

def test_report_fields_and_json():
    e = np.random.default_rng(4).standard_normal(200)
    rep = D.DiagnosticsReport.from_residuals(e)
    assert rep.jarque_bera[0] >= 0 and rep.heteroskedasticity[0] > 0
    d = json.loads(rep.to_json())
    assert list(d) == list(D.REPORT_KEYS)
    text = rep.to_text()
    for key in D.REPORT_KEYS:
        assert key + ":" in text
    sr = rep.standardized_residuals
    assert abs(sr.mean()) < 1e-9 and abs(sr.std(ddof=1) - 1) < 1e-9
