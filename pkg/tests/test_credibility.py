import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from scepticalp.credibility import (
    ConfidenceInterval,
    StudySummary,
    box_assessment,
    critical_value,
    replication_success_at_level,
    sceptical_prior_variance,
    scepticism_limit,
)
from scepticalp.exceptions import DomainError, NotSignificantError
from scepticalp.sceptical import sceptical_p_two_sided

ORIGINAL = StudySummary.from_ci(0.25, 0.89, 0.95, estimate=0.57)
REPLICATION = StudySummary.from_ci(0.01, 0.65, 0.95, estimate=0.33)


def test_scepticism_limit_examples():
    assert scepticism_limit(0.25, 0.89) == pytest.approx(0.22, abs=0.005)
    assert scepticism_limit(0.5, 0.5) == 0.0
    assert scepticism_limit(0.1, 0.4) == pytest.approx(0.1125, rel=1e-14)


def test_scepticism_limit_negative_interval():
    assert scepticism_limit(-0.89, -0.25) == scepticism_limit(0.25, 0.89)


@pytest.mark.parametrize("lo,hi", [(-0.1, 0.4), (0.0, 1.0), (-1.0, 0.0)])
def test_scepticism_limit_requires_significance(lo, hi):
    with pytest.raises(NotSignificantError):
        scepticism_limit(lo, hi)


def test_prior_variance_examples():
    assert sceptical_prior_variance(0.16327, 3.4912, 1.96) == pytest.approx(0.01227, abs=5e-6)
    z = 1.959964
    assert sceptical_prior_variance(0.3, math.sqrt(2) * z, z) == pytest.approx(0.09, rel=1e-12)
    assert sceptical_prior_variance(0.3, 1e6, z) < 1e-12


def test_prior_variance_not_significant():
    with pytest.raises(NotSignificantError):
        sceptical_prior_variance(0.2, 1.5, 1.959964)
    with pytest.raises(NotSignificantError):
        sceptical_prior_variance(0.2, -1.959964, 1.959964)


@given(st.floats(2.0, 50.0), st.floats(0.01, 0.4))
def test_prior_variance_decreasing_in_t(t, k):
    z = 1.959964
    assert sceptical_prior_variance(0.2, t * (1 + k), z) < sceptical_prior_variance(0.2, t, z)


def test_box_examples():
    tau2 = sceptical_prior_variance(ORIGINAL.standard_error, ORIGINAL.t, critical_value(0.05))
    t_box, p_box = box_assessment(REPLICATION.estimate, REPLICATION.standard_error, tau2)
    assert t_box == pytest.approx(1.65, abs=0.025)
    assert p_box == pytest.approx(0.098, abs=0.005)
    tau2 = sceptical_prior_variance(ORIGINAL.standard_error, ORIGINAL.t, critical_value(0.10))
    _, p_box = box_assessment(REPLICATION.estimate, REPLICATION.standard_error, tau2)
    assert p_box == pytest.approx(0.078, abs=0.005)
    assert box_assessment(0.0, 0.2, 0.01) == (0.0, 1.0)


def test_fig1_success_flags():
    assert not replication_success_at_level(ORIGINAL, REPLICATION, 0.05).success
    assert replication_success_at_level(ORIGINAL, REPLICATION, 0.10).success


def test_exact_copy_of_strong_original_succeeds():
    z = critical_value(0.05)
    study = StudySummary(1.5 * z * 0.1, 0.1)  # t^2 = 2.25 z^2
    assert replication_success_at_level(study, study, 0.05).success


def test_original_not_significant_raises():
    weak = StudySummary(0.1, 0.1)
    with pytest.raises(NotSignificantError):
        replication_success_at_level(weak, REPLICATION, 0.05)


@given(st.floats(0.001, 0.5), st.floats(0.05, 5), st.floats(0.01, 2))
def test_half_width_of_prior_interval_equals_limit(alpha, est, se):
    z = critical_value(alpha)
    assume((est / se) ** 2 > z * z * 1.0001)
    tau2 = sceptical_prior_variance(se, est / se, z)
    limit = scepticism_limit(est - z * se, est + z * se)
    assert math.sqrt(tau2) * z == pytest.approx(limit, rel=1e-10, abs=1e-12)


@given(st.floats(0.05, 5), st.floats(0.05, 1), st.floats(-5, 5), st.floats(0.05, 1))
def test_sign_equivariance(est_o, se_o, est_r, se_r):
    assume((est_o / se_o) ** 2 > 4.0)
    a = replication_success_at_level(StudySummary(est_o, se_o), StudySummary(est_r, se_r))
    b = replication_success_at_level(StudySummary(-est_o, se_o), StudySummary(-est_r, se_r))
    assert a.scepticism_limit == pytest.approx(b.scepticism_limit, rel=1e-12)
    assert a.sceptical_prior_variance == pytest.approx(b.sceptical_prior_variance, rel=1e-12)
    assert a.box_tail_probability == pytest.approx(b.box_tail_probability, rel=1e-12)
    assert a.box_statistic == pytest.approx(-b.box_statistic, rel=1e-12)


def test_box_success_equivalent_to_sceptical_p():
    rng = np.random.default_rng(7)
    z = critical_value(0.05)
    checked = 0
    for _ in range(5000):
        t_o, t_r = rng.normal(0, 4, 2)
        c = math.exp(rng.uniform(-4, 4))
        if t_o * t_o <= z * z:
            continue
        se_r = 1.0
        orig, rep = StudySummary(t_o * math.sqrt(c), math.sqrt(c)), StudySummary(t_r, se_r)
        res = replication_success_at_level(orig, rep, 0.05)
        assert res.success == (sceptical_p_two_sided(t_o, t_r, c) <= 0.05)
        checked += 1
    assert checked > 1000


def test_one_sided_blocks_wrong_direction():
    orig = StudySummary(0.6, 0.1)
    wrong = StudySummary(-0.9, 0.1)
    assert replication_success_at_level(orig, wrong, 0.05, sided=2).success
    res = replication_success_at_level(orig, wrong, 0.025, sided=1)
    assert not res.success
    assert res.box_tail_probability > 0.5


def test_one_sided_at_half_level_matches_two_sided_when_signs_agree():
    orig, rep = StudySummary(-0.57, 0.16), StudySummary(-0.45, 0.15)
    two = replication_success_at_level(orig, rep, 0.05, sided=2)
    one = replication_success_at_level(orig, rep, 0.025, sided=1)
    assert one.sceptical_prior_variance == pytest.approx(two.sceptical_prior_variance)
    assert one.success == two.success
    assert one.box_tail_probability == pytest.approx(two.box_tail_probability / 2)


def test_confidence_interval_roundtrip():
    study = StudySummary(0.4, 0.1)
    ci = study.confidence_interval(0.9)
    again = StudySummary.from_ci(ci.lower, ci.upper, 0.9)
    assert again.estimate == pytest.approx(0.4)
    assert again.standard_error == pytest.approx(0.1)


def test_invalid_summaries():
    with pytest.raises(DomainError):
        StudySummary(0.1, 0.0)
    with pytest.raises(DomainError):
        ConfidenceInterval(0.5, 0.5)
    with pytest.raises(DomainError):
        critical_value(0.05, sided=3)
