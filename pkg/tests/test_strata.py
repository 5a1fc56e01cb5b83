from __future__ import annotations

from random import Random

import pytest

from normcurve.curve import random_plane_curve
from normcurve.exactfield import FieldSpec
from normcurve.localmodel import random_frame
from normcurve.strata import (
    InvariantViolation,
    codim_one_check,
    fiber_dim_check,
    level_set_linearity,
    remark_test,
    replay_deform_trial,
    survey_deform,
    survey_fiber,
    survey_leading,
    survey_splitting,
    trial_seed,
    worker_count,
)

P = FieldSpec.prime()


def test_trial_seed_distinct_and_stable():
    seeds = [trial_seed(7, i) for i in range(1000)]
    assert len(set(seeds)) == 1000
    assert trial_seed(7, 3) == seeds[3]
    assert trial_seed(8, 3) != seeds[3]


def test_worker_count_env(monkeypatch):
    monkeypatch.setenv("NORMCURVE_THREADS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("NORMCURVE_THREADS", "0")
    assert worker_count() >= 1
    monkeypatch.setenv("NORMCURVE_THREADS", "x")
    assert worker_count() >= 1


def test_invariant_violation_carries_seed():
    exc = InvariantViolation("bad", 42)
    assert exc.seed == 42 and "42" in str(exc)


def test_survey_splitting_twisted_cubics():
    rep = survey_splitting(3, 3, 20, 1, P)
    assert rep.histogram == {"{2,2}": 20}
    assert rep.to_json()["parameters"]["field"] == {"prime": P.p}


def test_survey_splitting_deterministic():
    assert survey_splitting(4, 5, 5, 9, P).to_json() == survey_splitting(4, 5, 5, 9, P).to_json()


@pytest.mark.parametrize("d,r", [(3, 1), (4, 2)])
def test_survey_deform_agrees(d, r):
    rep = survey_deform(d, r, 10, 5, P)
    ok = [t for t in rep.trials if t["status"] == "ok"]
    assert ok and all(t["match"] for t in ok)
    assert rep.agreement == len(ok) / 10
    if r >= 2:
        assert rep.diagnostics["kernel_sum_equals_combined"]["trials"] == 10


def test_replay_matches_survey_row():
    rep = survey_deform(4, 1, 4, 11, P)
    row = rep.trials[2]
    replay = replay_deform_trial(4, 1, row["seed"], P)
    assert {k: row[k] for k in replay} == replay


@pytest.mark.parametrize("d,l0", [(3, 1), (4, 1), (4, 2), (4, 3)])
def test_level_sets_linear(d, l0):
    rng = Random(d * 10 + l0)
    g = random_plane_curve(d, rng, P)
    rep = level_set_linearity(g, l0, 15, rng)
    assert rep.closure_failures == 0 and rep.nested
    assert rep.dim_next <= rep.dim_estimate


def test_level_set_dimensions_quartic():
    rng = Random(3)
    g = random_plane_curve(4, rng, P)
    frame = random_frame(rng, P)
    dims = [level_set_linearity(g, l0, 10, Random(l0), frame).dim_estimate for l0 in (1, 2, 3, 4)]
    assert dims == [5, 4, 3, 3]


@pytest.mark.parametrize("d", [3, 4, 5])
def test_codim_one(d):
    rng = Random(d)
    g = random_plane_curve(d, rng, P)
    out = codim_one_check(g, random_frame(rng, P))
    assert out["rank"] == 1 and out["kernel_dim"] == d and out["kernel_contains_span"]


def test_fiber_check():
    rng = Random(6)
    out = fiber_dim_check(random_plane_curve(3, rng, P), 1, 10, rng)
    assert out["fiber_dim"] == 4 and out["hit_rate"] >= 0.9


def test_survey_leading_and_fiber():
    rep = survey_leading(4, 6, 2, P)
    assert not rep.anomalies and rep.diagnostics["c1_rank_one"] == 6
    assert survey_leading(3, 2, 2, P).notes
    fib = survey_fiber(3, 1, 2, 2, P, inner=5)
    assert sum(fib.histogram.values()) == 2


@pytest.mark.parametrize("d", [3, 4])
def test_remark_verdicts(d):
    rep = remark_test(d, None, 20, 1, P)
    v = rep.verdicts()
    assert v["exact_constant_per_l"]
    assert v["cech"]["matches_exact"]
    assert v["trunc"]["constant_per_l"]
    assert rep.realized_leading_degrees()


def test_remark_trunc_disagrees_at_quartics():
    rep = remark_test(4, None, 20, 1, P)
    assert rep.verdicts()["trunc"]["mismatched_sample_twists"] > 0


def test_remark_rejects_conics():
    with pytest.raises(ValueError):
        remark_test(2, None, 1, 0, P)
