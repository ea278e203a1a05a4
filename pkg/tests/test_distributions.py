import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad
from scipy.optimize import brentq

from pgduse import (
    ArityMismatch,
    Dataset,
    DomainError,
    EmptyDataset,
    ModelKind,
    NonPositiveObservation,
    NonPositiveParameter,
    PgduseParams,
    cdf,
    hazard,
    ks_pvalue,
    ks_statistic,
    log_pdf,
    median,
    pdf,
    quantile,
    sample,
    survival,
    validate_params,
)

from conftest import ALL_KINDS, GRID_LAMBDAS, grid_params

E = math.e


# ----------------------------------------------------------------------
# parameter validation
# ----------------------------------------------------------------------

def test_validate_params_accepts_benchmark_mle():
    p = validate_params(ModelKind.PGDUSE, [0.03362141, 3.80657627])
    assert p.lam == 0.03362141 and p.theta == 3.80657627


@pytest.mark.parametrize("raw", [[0.0], [-1.0], [float("nan")], [float("inf")]])
def test_validate_params_rejects_nonpositive(raw):
    with pytest.raises(NonPositiveParameter):
        validate_params(ModelKind.ED, raw)


@pytest.mark.parametrize(
    "kind,raw",
    [
        (ModelKind.PGDUSE, [1.0]),
        (ModelKind.GDUSE, [1.0, 2.0, 3.0]),
        (ModelKind.ED, [1.0, 2.0]),
    ],
)
def test_validate_params_arity(kind, raw):
    with pytest.raises(ArityMismatch):
        validate_params(kind, raw)


def test_dataset_invariants():
    d = Dataset([3.0, 1.0, 2.0])
    assert d.n == 3
    assert d.total == 6.0
    assert list(d.sorted_values) == [1.0, 2.0, 3.0]
    assert list(d.observations) == [3.0, 1.0, 2.0]
    with pytest.raises(EmptyDataset):
        Dataset([])
    with pytest.raises(NonPositiveObservation):
        Dataset([1.0, -2.0])
    with pytest.raises(NonPositiveObservation):
        Dataset([1.0, float("nan")])


# ----------------------------------------------------------------------
# cdf
# ----------------------------------------------------------------------

def test_cdf_limits():
    p = PgduseParams(1.0, 1.0)
    assert cdf(ModelKind.PGDUSE, p, 1e3) == pytest.approx(1.0, abs=1e-12)
    for kind in ALL_KINDS:
        for params in grid_params(kind):
            assert cdf(kind, params, 0.0) == 0.0
            assert cdf(kind, params, -1.0) == 0.0


def test_cdf_value_against_quadrature_oracle():
    # oracle: integrate the density over [0, 1] to 1e-10
    p = (1.0, 2.0)
    oracle, err = quad(lambda x: pdf(ModelKind.PGDUSE, p, x), 0.0, 1.0,
                       epsabs=1e-14, epsrel=1e-12, limit=500)
    assert err < 1e-10
    assert oracle == pytest.approx(0.26323934972685736, abs=1e-10)
    assert cdf(ModelKind.PGDUSE, p, 1.0) == pytest.approx(oracle, abs=1e-10)


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_cdf_nondecreasing_on_grid(kind):
    for params in grid_params(kind):
        top = quantile(kind, params, 1.0 - 1e-9)
        xs = np.linspace(0.0, top, 1000)
        values = cdf(kind, params, xs)
        assert np.all(np.diff(values) >= 0.0)
        assert values[-1] >= 1.0 - 1e-8


def test_pgduse_theta_one_is_duse():
    for lam in GRID_LAMBDAS:
        xs = np.linspace(0.0, 20.0 / lam, 500)
        gap = np.abs(cdf(ModelKind.PGDUSE, (lam, 1.0), xs) - cdf(ModelKind.DUSE, (lam,), xs))
        assert np.max(gap) < 1e-12


# ----------------------------------------------------------------------
# pdf / log_pdf
# ----------------------------------------------------------------------

def test_pdf_at_origin():
    assert pdf(ModelKind.PGDUSE, (1.0, 2.0), 0.0) == 0.0
    assert pdf(ModelKind.PGDUSE, (1.0, 0.5), 0.0) == math.inf  # integrable blow-up
    assert pdf(ModelKind.ED, (0.01384327,), 0.0) == pytest.approx(0.01384327, rel=1e-15)


def test_pdf_normalizes_at_benchmark_params():
    p = (0.03362141, 3.80657627)
    top = quantile(ModelKind.PGDUSE, p, 1.0 - 1e-12)
    total, _ = quad(lambda x: pdf(ModelKind.PGDUSE, p, x), 0.0, top,
                    epsabs=1e-12, epsrel=1e-11, limit=1000)
    assert total == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_pdf_normalizes_on_grid(kind):
    for params in grid_params(kind):
        top = quantile(kind, params, 1.0 - 1e-10)
        total, _ = quad(lambda x: pdf(kind, params, x), 0.0, top,
                        epsabs=1e-12, epsrel=1e-10, limit=1000,
                        points=[quantile(kind, params, q) for q in (0.25, 0.5, 0.75)])
        assert abs(total - 1.0) < 1e-7


def test_log_pdf_frozen_value():
    # log(lam/(e-1)) + 1 - lam*x - exp(-lam*x) at lam = x = 1, theta = 1
    expected = -math.log(E - 1.0) - math.exp(-1.0)
    assert expected == pytest.approx(-0.9092042957843604, abs=1e-15)
    assert log_pdf(ModelKind.PGDUSE, (1.0, 1.0), 1.0) == pytest.approx(expected, abs=1e-12)


def test_log_pdf_at_origin_and_negative():
    assert log_pdf(ModelKind.PGDUSE, (1.0, 2.0), 0.0) == -math.inf
    assert log_pdf(ModelKind.PGDUSE, (1.0, 2.0), -3.0) == -math.inf


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_exp_log_pdf_matches_pdf(kind):
    params = grid_params(kind)[0]
    xs = np.linspace(1e-3, 30.0, 100)
    assert np.array_equal(np.exp(log_pdf(kind, params, xs)), pdf(kind, params, xs))


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_log_pdf_agrees_with_log_of_pdf(kind):
    for params in grid_params(kind):
        xs = np.linspace(0.05, 25.0, 120)
        dens = np.asarray(pdf(kind, params, xs))
        keep = dens >= 1e-300
        gap = np.abs(np.asarray(log_pdf(kind, params, xs))[keep] - np.log(dens[keep]))
        assert np.max(gap) < 1e-10


# ----------------------------------------------------------------------
# survival / hazard
# ----------------------------------------------------------------------

@pytest.mark.parametrize("kind", ALL_KINDS)
def test_survival_is_complement(kind):
    for params in grid_params(kind):
        assert survival(kind, params, 0.0) == 1.0
        xs = np.linspace(0.0, 20.0, 200)
        gap = np.abs(survival(kind, params, xs) - (1.0 - np.asarray(cdf(kind, params, xs))))
        assert np.max(gap) < 1e-14


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_hazard_times_survival_is_pdf(kind):
    for params in grid_params(kind):
        xs = np.linspace(0.01, quantile(kind, params, 1.0 - 1e-11), 300)
        s = np.asarray(survival(kind, params, xs))
        keep = s > 1e-12
        h = np.asarray(hazard(kind, params, xs))[keep]
        g = np.asarray(pdf(kind, params, xs))[keep]
        assert np.max(np.abs(h * s[keep] - g) / np.maximum(g, 1e-300)) < 1e-10


def test_hazard_frozen_value():
    d = cdf(ModelKind.PGDUSE, (1.0, 2.0), 1.0)
    expected = pdf(ModelKind.PGDUSE, (1.0, 2.0), 1.0) / (1.0 - d)
    assert hazard(ModelKind.PGDUSE, (1.0, 2.0), 1.0) == pytest.approx(expected, rel=1e-12)
    assert hazard(ModelKind.PGDUSE, (1.0, 2.0), 1.0) == pytest.approx(0.5610693815457461, rel=1e-12)


def test_hazard_infinite_when_survival_underflows():
    assert survival(ModelKind.ED, (1.0,), 1e6) == 0.0
    assert hazard(ModelKind.ED, (1.0,), 1e6) == math.inf


# ----------------------------------------------------------------------
# quantile / median
# ----------------------------------------------------------------------

def test_quantile_zero_and_domain():
    for kind in ALL_KINDS:
        params = grid_params(kind)[0]
        assert quantile(kind, params, 0.0) == 0.0
        with pytest.raises(DomainError):
            quantile(kind, params, -0.1)
        with pytest.raises(DomainError):
            quantile(kind, params, 1.0)


def test_quantile_median_against_bisection_oracle():
    root = brentq(lambda x: cdf(ModelKind.PGDUSE, (1.0, 1.0), x) - 0.5, 1e-12, 60.0,
                  xtol=1e-14)
    closed = quantile(ModelKind.PGDUSE, (1.0, 1.0), 0.5)
    assert closed == pytest.approx(root, abs=1e-12)
    assert closed == pytest.approx(0.9678854057726787, abs=1e-14)


def test_median_is_quantile_half():
    p = PgduseParams(0.03362141, 3.80657627)
    assert median(p) == quantile(ModelKind.PGDUSE, p, 0.5)
    assert cdf(ModelKind.PGDUSE, p, median(p)) == pytest.approx(0.5, abs=1e-9)


@pytest.mark.parametrize("lam", (0.5, 1.0, 2.0))
@pytest.mark.parametrize("theta", (0.5, 1.0, 5.0))
def test_quantile_cdf_round_trip(lam, theta):
    for x in (0.1, 1.0, 10.0):
        q = cdf(ModelKind.PGDUSE, (lam, theta), x)
        if 1.0 - q < 1e-7:
            # one ulp of q already moves x by more than the tolerance there
            continue
        assert quantile(ModelKind.PGDUSE, (lam, theta), q) == pytest.approx(x, rel=1e-9)


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_cdf_quantile_round_trip(kind):
    for params in grid_params(kind):
        for q in (1e-6, 0.01, 0.25, 0.5, 0.9, 0.999):
            assert cdf(kind, params, quantile(kind, params, q)) == pytest.approx(q, abs=1e-9)


@settings(max_examples=80, deadline=None)
@given(
    lam=st.floats(0.05, 20.0),
    theta=st.floats(0.05, 20.0),
    q=st.floats(1e-9, 1.0, exclude_max=True),
)
def test_quantile_round_trip_property(lam, theta, q):
    x = quantile(ModelKind.PGDUSE, (lam, theta), q)
    assert x >= 0.0
    assert cdf(ModelKind.PGDUSE, (lam, theta), x) == pytest.approx(q, abs=1e-8)


@settings(max_examples=60, deadline=None)
@given(
    lam=st.floats(0.05, 20.0),
    theta=st.floats(0.05, 20.0),
    a=st.floats(0.0, 50.0),
    b=st.floats(0.0, 50.0),
)
def test_cdf_monotone_property(lam, theta, a, b):
    lo, hi = sorted((a, b))
    assert cdf(ModelKind.PGDUSE, (lam, theta), lo) <= cdf(ModelKind.PGDUSE, (lam, theta), hi)


# ----------------------------------------------------------------------
# sampling
# ----------------------------------------------------------------------

def test_sample_empty_and_deterministic():
    assert sample(ModelKind.PGDUSE, (1.0, 2.0), 0, 5).size == 0
    a = sample(ModelKind.GDUSE, (2.0, 1.0), 64, seed=123)
    b = sample(ModelKind.GDUSE, (2.0, 1.0), 64, seed=123)
    assert np.array_equal(a, b)
    assert np.all(a > 0.0)


def test_sample_passes_ks_against_generating_cdf():
    xs = sample(ModelKind.PGDUSE, (1.0, 2.0), 10000, seed=99)
    d = ks_statistic(Dataset(xs), lambda x: cdf(ModelKind.PGDUSE, (1.0, 2.0), x))
    assert ks_pvalue(d, 10000, "asymptotic") > 0.01
    assert ks_pvalue(d, 10000, "exact") > 0.01
