import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tailfence.distributions import Frechet, HillHorror, Pareto
from tailfence.empirical import Sample
from tailfence.errors import DomainError, EstimatorUndefined
from tailfence.estimators import (
    ALL_METHODS,
    EstimateResult,
    EstimatorInputs,
    Method,
    estimate,
    estimate_all,
    estimate_from_inputs,
    frech_fence,
    frech_quartile,
    hillhorror_quartile,
    par_fence,
    par_quartile,
    parse_methods,
    sample_statistics,
)
from tailfence.measures import tail_profile, theoretical_boxplot

ALPHAS = [0.5, 1.0, 2.0]


def population_inputs(model):
    box = theoretical_boxplot(model)
    return EstimatorInputs(box.q1, box.q3, box.outer_right, tail_profile(model).p_extreme_right)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_par_quartile_identity(alpha):
    inp = population_inputs(Pareto(alpha, 1))
    assert par_quartile(inp.q1_hat, inp.q3_hat) == pytest.approx(alpha, abs=1e-9)
    # scale does not matter for a log-spread estimator
    inp = population_inputs(Pareto(alpha, 7.5))
    assert par_quartile(inp.q1_hat, inp.q3_hat) == pytest.approx(alpha, abs=1e-9)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_par_fence_identity(alpha):
    inp = population_inputs(Pareto(alpha, 1))
    assert par_fence(inp.p_extreme_right_hat, inp.outer_right_hat) == pytest.approx(alpha, abs=1e-9)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_frech_quartile_identity(alpha):
    inp = population_inputs(Frechet(alpha))
    assert frech_quartile(inp.q1_hat, inp.q3_hat) == pytest.approx(alpha, abs=1e-9)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_frech_fence_identity(alpha):
    inp = population_inputs(Frechet(alpha))
    assert frech_fence(inp.p_extreme_right_hat, inp.outer_right_hat) == pytest.approx(alpha, abs=1e-9)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_hillhorror_quartile_identity(alpha):
    inp = population_inputs(HillHorror(alpha))
    assert hillhorror_quartile(inp.q1_hat, inp.q3_hat) == pytest.approx(alpha, abs=1e-9)


def test_frech_fence_on_pareto_population():
    inp = population_inputs(Pareto(1, 1))
    assert frech_fence(inp.p_extreme_right_hat, inp.outer_right_hat) == pytest.approx(0.9827, abs=5e-4)


def test_hillhorror_on_pareto_can_be_negative():
    # Pareto(1): Q3/Q1 = 3, so the adjusted spread is log 3 - log(log 4 / log(4/3)) < 0
    inp = population_inputs(Pareto(1, 1))
    expected = math.log(3) / (math.log(3) - math.log(math.log(4) / math.log(4 / 3)))
    value = hillhorror_quartile(inp.q1_hat, inp.q3_hat)
    assert value == pytest.approx(expected, rel=1e-12)
    assert value == pytest.approx(-2.318, abs=1e-3)


@settings(max_examples=200, deadline=None)
@given(p=st.floats(1e-12, 1e-3), o_r=st.floats(10, 1e6))
def test_fence_estimators_agree_for_rare_extremes(p, o_r):
    a, b = par_fence(p, o_r), frech_fence(p, o_r)
    assert abs(a - b) <= 0.05 * abs(a)


@settings(max_examples=200, deadline=None)
@given(q1=st.floats(1e-6, 1e6), ratio=st.floats(1.0001, 1e4), scale=st.floats(1e-3, 1e3))
def test_quartile_estimators_are_scale_free(q1, ratio, scale):
    q3 = q1 * ratio
    for f in (par_quartile, frech_quartile):
        assert f(q1 * scale, q3 * scale) == pytest.approx(f(q1, q3), rel=1e-9)
        assert f(q1, q3) > 0


@pytest.mark.parametrize(
    "fn,args,reason",
    [
        (par_quartile, (0.0, 2.0), "first quartile is not positive"),
        (par_quartile, (-1.0, 2.0), "first quartile is not positive"),
        (frech_quartile, (2.0, 2.0), "third quartile does not exceed first quartile"),
        (hillhorror_quartile, (2.0, 1.0), "third quartile does not exceed first quartile"),
        (par_fence, (0.0, 5.0), "no extreme right outliers in sample"),
        (frech_fence, (0.0, 5.0), "no extreme right outliers in sample"),
        (par_fence, (0.1, -1.0), "right outer fence is not positive"),
        (par_fence, (0.1, 1.0), "right outer fence equals 1"),
        (frech_fence, (1.0, 5.0), "every observation is an extreme right outlier"),
        (
            hillhorror_quartile,
            (1.0, math.log(4) / math.log(4 / 3)),
            "adjusted quartile spread is zero",
        ),
    ],
)
def test_undefined_reasons(fn, args, reason):
    with pytest.raises(EstimatorUndefined) as info:
        fn(*args)
    assert info.value.reason == reason
    assert isinstance(info.value, DomainError)


def test_quartile_estimators_fail_on_nonpositive_sample():
    s = Sample(np.linspace(-5, 5, 101))
    for m in (Method.PAR_QUARTILE, Method.FRECH_QUARTILE, Method.HILLHORROR_QUARTILE):
        with pytest.raises(EstimatorUndefined, match="first quartile"):
            estimate(m, s)


def test_estimate_all_inlines_failures():
    s = Sample([1, 2, 3, 4, 5, 6, 7, 8])  # no outliers
    out = estimate_all(s)
    assert list(out) == list(ALL_METHODS)
    assert isinstance(out[Method.PAR_FENCE], EstimatorUndefined)
    assert out[Method.PAR_FENCE].reason == "no extreme right outliers in sample"
    assert isinstance(out[Method.PAR_QUARTILE], EstimateResult)
    inputs = sample_statistics(s)
    assert out[Method.PAR_QUARTILE].inputs == inputs
    assert out[Method.PAR_QUARTILE].alpha_hat == par_quartile(inputs.q1_hat, inputs.q3_hat)


def test_sample_statistics_hand_fixture():
    s = Sample([1, 2, 3, 4, 5, 6, 7, 100])
    inp = sample_statistics(s)
    assert inp == EstimatorInputs(2.25, 6.75, 20.25, 1 / 8)
    r = estimate_from_inputs("par-fence", inp)
    assert r.alpha_hat == pytest.approx(math.log(8) / math.log(20.25), rel=1e-12)
    assert r.as_dict()["inputs"]["outer_right_hat"] == 20.25


def test_par_quartile_on_large_pareto_sample():
    model = Pareto(1, 1)
    s = Sample(model.sample(np.random.default_rng(2024), 100_000))
    assert estimate("par-quartile", s).alpha_hat == pytest.approx(1.0, abs=0.03)


def test_parse_methods():
    assert parse_methods("all") == ALL_METHODS
    assert parse_methods(["par-fence", "par-fence", "frech-quartile"]) == (Method.PAR_FENCE, Method.FRECH_QUARTILE)
    assert parse_methods(["frech-quartile", "all"])[0] == Method.FRECH_QUARTILE
    assert len(parse_methods(["frech-quartile", "all"])) == len(ALL_METHODS)
    with pytest.raises(DomainError, match="unknown estimator 'hill'"):
        parse_methods(["hill"])
    with pytest.raises(DomainError):
        parse_methods([])
