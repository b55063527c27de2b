import math

from pots_sim.engine import TeamAssignment, run_round
from pots_sim.model import AllocationScheme, PerformanceDistribution, SimulationConfig
from pots_sim.rng import RngStream


def engine_win_frequencies(scenario, rounds, seed):
    """Winner frequencies of the engine racing the scenario's fixed teams."""
    perf = [p for team in scenario.teams for p in team]
    size = scenario.team_size
    counts = {}
    for p in perf:
        counts[p] = counts.get(p, 0) + 1
    cfg = SimulationConfig(
        PerformanceDistribution.from_mapping(counts), size, AllocationScheme.EQUAL_SHARE,
        base_work=scenario.base_work, workload_factor_low=scenario.low,
        workload_factor_high=scenario.high, rounds=rounds, runs=1,
    )
    assignment = TeamAssignment(tuple(
        tuple(range(t * size, (t + 1) * size)) for t in range(len(scenario.teams))
    ))
    rng = RngStream(seed)
    wins = [0] * len(scenario.teams)
    for r in range(rounds):
        wins[run_round(rng, assignment, perf, cfg, r).winner] += 1
    return [w / rounds for w in wins]


def within_three_se(p_engine, n_engine, p_oracle, n_oracle):
    var = p_oracle * (1 - p_oracle) * (1 / n_engine + 1 / n_oracle)
    return abs(p_engine - p_oracle) <= 3 * math.sqrt(var) + 1e-12


# (criterion id, passed, detail) lines printed in the terminal summary
ACCEPTANCE_LINES = []


def record(criterion, passed, detail):
    ACCEPTANCE_LINES.append((criterion, bool(passed), detail))
    return passed
