import json
import math

import pytest
from hypothesis import given, settings, strategies as st

from kmsdiff import errors as E
from kmsdiff.estimates import (cauchy_convergence, coefficient_l1_norm, default_log_cutoffs,
                               double_integral, goodness_violation, inner_radial_integral,
                               poincare_radial_integral, tube_integral, tube_integral_estimates)
from kmsdiff.metric import MetricModel, counterexample_model

EPS_LIST = [10.0 ** -j for j in range(1, 7)]


def test_poincare_values():
    rep = poincare_radial_integral(0.5)
    assert rep.value == pytest.approx(1 / math.log(2), rel=1e-6)
    assert abs(rep.value - 1.4426950408889634) < 1e-6
    assert poincare_radial_integral(math.exp(-1)).value == pytest.approx(1.0, rel=1e-12)
    values = [poincare_radial_integral(e).value for e in EPS_LIST]
    assert all(b < a for a, b in zip(values, values[1:]))
    assert values[-1] < 0.08


@settings(max_examples=50, deadline=None)
@given(st.floats(1e-3, 0.9), st.floats(1.01, 1e6))
def test_poincare_with_cutoff(eps, factor):
    # antiderivative -1/log r
    cutoff = eps / factor
    rep = poincare_radial_integral(eps, cutoff)
    assert rep.value == pytest.approx(1 / math.log(cutoff) - 1 / math.log(eps), rel=1e-9)
    assert rep.rel_error < 1e-9


def test_poincare_far_cutoff_in_log_form():
    rep = poincare_radial_integral(0.5, log_cutoff=4000.0)
    assert rep.value == pytest.approx(1 / math.log(2) - 1 / 4000.0, rel=1e-12)


def test_poincare_domain():
    with pytest.raises(E.DomainError):
        poincare_radial_integral(1.5)
    with pytest.raises(E.DomainError):
        poincare_radial_integral(0.5, cutoff=0.6)


def test_goodness_ratio_tracks_log_n():
    rows = goodness_violation(n_list=(100, 1000, 10000, round(math.e ** 10)))
    for r in rows:
        assert abs(r["ratio_over_log_n"] - 1) < 0.01
    assert rows[0]["ratio"] == pytest.approx(math.log(100), rel=0.01)
    assert rows[-1]["ratio"] == pytest.approx(10, rel=0.01)
    ratios = [r["ratio"] for r in rows]
    assert all(b > a for a, b in zip(ratios, ratios[1:]))


def test_goodness_lhs_is_half_n():
    # |dlog h / dt| at t = 1/n with 1 - log|x|^2 = n^2: h = 2, derivative n
    for r in goodness_violation(n_list=(10, 100, 1000)):
        assert r["lhs"] == pytest.approx(r["n"] / 2, rel=1e-12)


def tube_closed_form(eps, log_delta):
    A = 1 - log_delta
    return math.log(1 + eps ** 2 * A) / (2 * A)


def test_tube_value():
    rep = tube_integral(counterexample_model(), 1.0, -99.0)
    assert rep.value == pytest.approx(math.log(101) / 200, rel=1e-6)
    assert abs(rep.value - 0.0230756) < 1e-7


@settings(max_examples=40, deadline=None)
@given(st.floats(0.05, 0.99), st.floats(-500, -0.1))
def test_tube_against_closed_form(eps, log_delta):
    rep = tube_integral(counterexample_model(), eps, log_delta)
    assert rep.value == pytest.approx(tube_closed_form(eps, log_delta), rel=1e-9)


def test_tube_decay_and_rate():
    deltas = [-10.0 * j for j in range(1, 11)]
    values = [tube_integral(counterexample_model(), 1.0, d).value for d in deltas]
    assert all(b < a for a, b in zip(values, values[1:]))
    assert values[-1] < values[0] / 4
    scaled = [v * (1 - d) / math.log(1 - d) for v, d in zip(values, deltas)]
    assert max(scaled) < 0.6 and min(scaled) > 0.5


def test_tube_without_closed_form():
    model = MetricModel.triangular([2], [1.0, 1.0], [[], [1.0]])
    rep = tube_integral(model, 0.5, -20.0)
    assert rep.reference is None and rep.rel_error is None and rep.value > 0


@settings(max_examples=40, deadline=None)
@given(st.floats(0.05, 0.99), st.floats(0.5, 1e4))
def test_inner_radial_against_antiderivative(eps, A):
    # int r^3/(1+A r^2)^2 dr = (log(1+A r^2) + 1/(1+A r^2)) / (2 A^2)
    u = A * eps * eps
    expected = (math.log1p(u) + 1 / (1 + u) - 1) / (2 * A * A)
    val, err = inner_radial_integral(eps, A)
    assert val == pytest.approx(expected, rel=1e-8, abs=1e-300)


def test_log_cutoff_schedule():
    assert default_log_cutoffs(3) == pytest.approx([8 * math.log(10), 32 * math.log(10),
                                                    128 * math.log(10)])


def test_double_integral_converges():
    values = [double_integral(0.5, V).value for V in default_log_cutoffs()]
    conv = cauchy_convergence(values)
    assert conv["converged"] and all(r >= 2 for r in conv["ratios"])
    assert all(b > a for a, b in zip(values, values[1:]))


def test_double_integral_model_route_agrees():
    # generic evaluation through eval_metric vs the substituted inner integral
    for V in default_log_cutoffs(3):
        fast = double_integral(0.5, V).value
        slow = double_integral(0.5, V, counterexample_model()).value
        assert slow == pytest.approx(fast, rel=1e-9)


def test_decade_cutoffs_shrink_slower_than_two():
    """Inner cutoffs 1e-2, 1e-4, 1e-6 at eps = 0.5 give a single ratio of
    about 1.874: the early differences are not yet in the asymptotic regime."""
    values = [double_integral(0.5, 2 * j * math.log(10)).value for j in (1, 2, 3)]
    conv = cauchy_convergence(values, needed=1)
    assert conv["ratios"][0] == pytest.approx(1.8740282880, rel=1e-6)
    assert not conv["converged"]


@pytest.mark.xfail(strict=True, reason="decade cutoffs give ratio 1.874 < 2; see the geometric schedule")
def test_decade_cutoffs_as_stated():
    values = [double_integral(0.5, 2 * j * math.log(10)).value for j in (1, 2, 3)]
    assert cauchy_convergence(values, needed=1)["converged"]


def test_cauchy_convergence_helper():
    assert cauchy_convergence([0, 1, 1.5, 1.75, 1.875])["converged"]
    assert not cauchy_convergence([0, 1, 1.6, 2.0, 2.3])["converged"]
    assert cauchy_convergence([0, 1, 1.5, 1.75, 1.875])["ratios"] == [2.0, 2.0, 2.0]


def test_tube_estimates_report():
    rep = tube_integral_estimates()
    assert rep["tube_decreasing"] and rep["convergence"]["converged"]
    for row in rep["tube"]:
        assert row["rel_error"] < 1e-6
    json.dumps(rep)


def test_tube_estimates_raise_on_bad_schedule():
    bad = [2 * j * math.log(10) for j in (1, 2, 3)]
    with pytest.raises(E.NonConvergent):
        tube_integral_estimates(log_cutoffs=bad)
    rep = tube_integral_estimates(log_cutoffs=bad, raise_on_failure=False)
    assert not rep["convergence"]["converged"]


@pytest.mark.parametrize("entry", [(0, 0), (0, 1), (1, 1)])
def test_levi_coefficients_locally_integrable(entry):
    values = [coefficient_l1_norm(counterexample_model(), entry, 0.5, V)[0]
              for V in default_log_cutoffs()]
    assert all(math.isfinite(v) and v > 0 for v in values)
    conv = cauchy_convergence(values)
    # either geometric shrinking or already settled at rounding level
    assert conv["converged"] or max(conv["differences"][1:]) < 1e-12 * values[-1]
