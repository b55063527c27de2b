import numpy as np
import pytest
from hypothesis import given, strategies as st

from pots_sim.engine import RunResult, run_experiment
from pots_sim.metrics import (
    ConsistencyError,
    average_reward_by_level,
    build_report,
    efficiency_by_level,
    gini_coefficient,
)
from pots_sim.model import AllocationScheme, SimulationConfig, parse_distribution


def gini_bruteforce(values):
    x = [float(v) for v in values]
    n = len(x)
    diff = sum(abs(a - b) for a in x for b in x)
    return diff / (2 * n * n * (sum(x) / n))


def fake_run(rewards, seed=0):
    rewards = np.asarray(rewards, dtype=float)
    return RunResult(rewards, np.zeros(len(rewards), dtype=np.int64), np.zeros(0, dtype=np.int64), seed)


def test_gini_equal():
    assert gini_coefficient([3.0] * 10) == 0.0


def test_gini_two_point():
    assert gini_coefficient([0, 10]) == pytest.approx(0.5, abs=1e-15)


def test_gini_concentrated():
    x = [0.0] * 1599 + [10_000.0]
    assert gini_coefficient(x) == pytest.approx(1599 / 1600, rel=1e-12)
    assert gini_coefficient(x) == pytest.approx(0.99938, abs=1e-5)


@pytest.mark.parametrize("bad", [[], [0, 0, 0], [-1, 3]])
def test_gini_errors(bad):
    with pytest.raises(ValueError):
        gini_coefficient(bad)


nonneg = st.lists(st.one_of(st.just(0.0), st.floats(1e-6, 1e6)), min_size=1, max_size=60).filter(lambda v: sum(v) > 0)


@given(nonneg, st.floats(1e-3, 1e3))
def test_gini_scale_invariant(values, c):
    assert gini_coefficient([v * c for v in values]) == pytest.approx(gini_coefficient(values), abs=1e-9)


@given(nonneg)
def test_gini_matches_bruteforce(values):
    g = gini_coefficient(values)
    assert 0.0 <= g <= 1.0
    assert g == pytest.approx(gini_bruteforce(values), abs=1e-9)


@given(st.floats(1e-3, 1e6), st.integers(1, 50))
def test_gini_zero_iff_equal(v, n):
    assert gini_coefficient([v] * n) == pytest.approx(0.0, abs=1e-12)
    assert gini_coefficient([v] * n + [2 * v]) > 0


def test_efficiency_examples():
    eff = efficiency_by_level({1.0: 6.24, 2.0: 16.50, 100.0: 1343.5})
    assert eff[1.0] == 6.24
    assert eff[2.0] == 8.25
    assert eff[100.0] == pytest.approx(13.435, rel=1e-12)


@given(st.dictionaries(st.floats(0.01, 1e3), st.floats(0, 1e4), min_size=1), st.floats(0.01, 100))
def test_efficiency_homogeneous(avgs, c):
    base = efficiency_by_level(avgs)
    scaled = efficiency_by_level({k: v * c for k, v in avgs.items()})
    for k in avgs:
        assert scaled[k] == pytest.approx(base[k] * c, rel=1e-12)


def test_efficiency_rejects_nonpositive_level():
    with pytest.raises(ValueError):
        efficiency_by_level({0.0: 1.0})


def test_average_single_participant_levels():
    dist = parse_distribution("1:1,2:1,5:1")
    out = average_reward_by_level([fake_run([1.25, 0.0, 8.75])], dist)
    assert out == {1.0: (1.25, 0.0), 2.0: (0.0, 0.0), 5.0: (8.75, 0.0)}


def test_average_mean_and_sd_across_runs():
    dist = parse_distribution("1:2,3:1")
    runs = [fake_run([1.0, 3.0, 6.0]), fake_run([2.0, 2.0, 8.0]), fake_run([0.0, 1.0, 9.0])]
    out = average_reward_by_level(runs, dist)
    # per-run level-1 means: 2.0, 2.0, 0.5
    assert out[1.0][0] == pytest.approx(1.5)
    assert out[1.0][1] == pytest.approx(np.std([2.0, 2.0, 0.5], ddof=1))
    assert out[3.0] == (pytest.approx(23 / 3), pytest.approx(np.std([6.0, 8.0, 9.0], ddof=1)))


def test_average_requires_results():
    with pytest.raises(ConsistencyError):
        average_reward_by_level([], parse_distribution("1:4"))


def test_uniform_report():
    cfg = SimulationConfig(parse_distribution("1:1600"), 16, AllocationScheme.EQUAL_SHARE,
                           rounds=1000, runs=5, master_seed=3)
    results = run_experiment(cfg)
    rep = build_report(cfg, results)
    assert len(rep.levels) == 1
    lv = rep.level(1.0)
    assert lv.avg_reward == pytest.approx(6.25, rel=1e-12)
    assert lv.efficiency == pytest.approx(6.25, rel=1e-12)
    assert lv.sd_reward == pytest.approx(0.0, abs=1e-9)
    assert rep.total_reward == pytest.approx(10_000, rel=1e-6)
    expected_gini = np.mean([gini_bruteforce(r.cumulative_reward) for r in results])
    assert rep.gini > 0
    assert rep.gini == pytest.approx(expected_gini, abs=1e-9)
    assert rep.scenario == rep.distribution == "1:1600"


def test_report_echoes_config():
    cfg = SimulationConfig(parse_distribution("1:8,2:8"), 4, AllocationScheme.PROPORTIONAL,
                           rounds=20, runs=3, master_seed=42)
    rep = build_report(cfg, run_experiment(cfg), scenario="demo")
    assert (rep.scenario, rep.distribution, rep.team_size, rep.scheme, rep.rounds, rep.runs,
            rep.master_seed) == ("demo", "1:8,2:8", 4, AllocationScheme.PROPORTIONAL, 20, 3, 42)
    for st_ in rep.levels:
        assert st_.efficiency == pytest.approx(st_.avg_reward / st_.level, rel=1e-12)
        assert st_.avg_reward >= 0
    assert rep.total_reward == pytest.approx(200.0, rel=1e-6)


def test_report_consistency_errors():
    cfg = SimulationConfig(parse_distribution("1:4"), 2, rounds=1, runs=1)
    with pytest.raises(ConsistencyError):
        build_report(cfg, [])
    with pytest.raises(ConsistencyError):
        build_report(cfg, [fake_run([5.0, 5.0, 0.0, 0.0])] * 2)
    with pytest.raises(ConsistencyError):
        build_report(cfg, [fake_run([5.0, 4.0, 0.0, 0.0])])
    with pytest.raises(ConsistencyError):
        build_report(cfg, [fake_run([5.0, 5.0, 0.0])])
