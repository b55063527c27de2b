"""Per-level average reward, efficiency and disparity summaries."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .engine import RunResult
from .model import AllocationScheme, PerformanceDistribution, SimulationConfig, serialize_distribution


class ConsistencyError(ValueError):
    """Run results do not match the config they are reported under."""


@dataclass(frozen=True)
class LevelStats:
    level: float
    population_at_level: int
    avg_reward: float
    sd_reward: float
    efficiency: float


@dataclass(frozen=True)
class MetricsReport:
    scenario: str
    distribution: str
    team_size: int
    scheme: AllocationScheme
    rounds: int
    runs: int
    master_seed: int
    round_reward: float
    levels: tuple[LevelStats, ...]
    gini: float

    def level(self, value: float) -> LevelStats:
        for stats in self.levels:
            if stats.level == value:
                return stats
        raise KeyError(value)

    @property
    def total_reward(self) -> float:
        return sum(s.avg_reward * s.population_at_level for s in self.levels)


def _level_slices(dist: PerformanceDistribution):
    # expand_population lays levels out contiguously in ascending order
    start = 0
    for level, count in dist.entries:
        yield level, count, slice(start, start + count)
        start += count


def average_reward_by_level(results: Sequence[RunResult],
                            dist: PerformanceDistribution) -> dict[float, tuple[float, float]]:
    """Map level to ``(mean, sd)`` of the per-run level mean cumulative reward.

    The sd is taken across runs (``ddof=1``) and is 0 for a single run.
    """
    if not results:
        raise ConsistencyError("no run results to aggregate")
    matrix = np.stack([r.cumulative_reward for r in results])
    if matrix.shape[1] != dist.population:
        raise ConsistencyError(
            f"results cover {matrix.shape[1]} participants, distribution has {dist.population}"
        )
    out = {}
    for level, _, sl in _level_slices(dist):
        per_run = matrix[:, sl].mean(axis=1)
        sd = float(per_run.std(ddof=1)) if len(per_run) > 1 else 0.0
        out[level] = (float(per_run.mean()), sd)
    return out


def efficiency_by_level(avg_rewards: Mapping[float, float]) -> dict[float, float]:
    out = {}
    for level, avg in avg_rewards.items():
        if level <= 0:
            raise ValueError(f"level must be positive, got {level}")
        out[level] = avg / level
    return out


def gini_coefficient(values: Sequence[float]) -> float:
    """Gini index of non-negative values: 0 for equality, ``(n-1)/n`` when one holds all."""
    x = np.sort(np.asarray(values, dtype=np.float64))
    if x.size == 0:
        raise ValueError("gini of an empty sequence")
    if x[0] < 0:
        raise ValueError("gini requires non-negative values")
    total = x.sum()
    if total <= 0:
        raise ValueError("gini is undefined when every value is zero")
    n = x.size
    rank = np.arange(1, n + 1, dtype=np.float64)
    g = float(np.dot(2 * rank - n - 1, x) / (n * total))
    return min(max(g, 0.0), 1.0)


def build_report(cfg: SimulationConfig, results: Sequence[RunResult],
                 scenario: str | None = None) -> MetricsReport:
    if not results:
        raise ConsistencyError("no run results to report")
    if len(results) != cfg.runs:
        raise ConsistencyError(f"expected {cfg.runs} runs, got {len(results)}")
    expected = cfg.rounds * cfg.round_reward
    for i, r in enumerate(results):
        total = float(r.cumulative_reward.sum())
        if abs(total - expected) > 1e-6 * expected:
            raise ConsistencyError(f"run {i} paid {total}, expected {expected}")

    avg = average_reward_by_level(results, cfg.distribution)
    eff = efficiency_by_level({level: a for level, (a, _) in avg.items()})
    levels = tuple(
        LevelStats(level, count, avg[level][0], avg[level][1], eff[level])
        for level, count, _ in _level_slices(cfg.distribution)
    )
    gini = float(np.mean([gini_coefficient(r.cumulative_reward) for r in results]))
    text = serialize_distribution(cfg.distribution)
    report = MetricsReport(
        scenario=scenario if scenario is not None else text,
        distribution=text,
        team_size=cfg.team_size,
        scheme=cfg.scheme,
        rounds=cfg.rounds,
        runs=cfg.runs,
        master_seed=cfg.master_seed,
        round_reward=cfg.round_reward,
        levels=levels,
        gini=gini,
    )
    if abs(report.total_reward - expected) > 1e-6 * expected:
        raise ConsistencyError(f"report pays {report.total_reward}, expected {expected}")
    return report
