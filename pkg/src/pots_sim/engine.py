"""Team shuffling, sprint timing, winner selection and payouts.

The per-round functions here operate on an explicit :class:`RngStream` and
are the readable definition of the game. :func:`run_simulation` executes the
same draw sequence through a compiled kernel; :func:`run_simulation_reference`
replays it round by round through the Python functions and must agree with
the kernel bit for bit.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._kernel import simulate_run
from .model import AllocationScheme, DivisibilityError, SimulationConfig, validate_config
from .rng import RngStream, derive_seed

THREADS_ENV = "POTS_SIM_THREADS"


@dataclass(frozen=True)
class TeamAssignment:
    teams: tuple[tuple[int, ...], ...]

    @property
    def team_count(self) -> int:
        return len(self.teams)


@dataclass(frozen=True)
class RoundResult:
    round_index: int
    team_times: tuple[float, ...]
    winner: int
    payouts: dict[int, float]


@dataclass(frozen=True, eq=False)
class RunResult:
    """Totals for one run.

    ``winners`` holds the winning team index of every round; team indices
    refer to that round's shuffle and are only comparable between runs that
    share a seed.
    """

    cumulative_reward: np.ndarray
    win_counts: np.ndarray
    winners: np.ndarray
    seed: int

    def same_as(self, other: RunResult) -> bool:
        return (
            self.seed == other.seed
            and np.array_equal(self.cumulative_reward, other.cumulative_reward)
            and np.array_equal(self.win_counts, other.win_counts)
            and np.array_equal(self.winners, other.winners)
        )


def assign_teams(rng: RngStream, n: int, team_size: int) -> TeamAssignment:
    """Shuffle ``0..n-1`` and cut it into consecutive blocks of ``team_size``."""
    if team_size < 1 or n % team_size:
        raise DivisibilityError(f"population {n} is not divisible by team_size {team_size}")
    ids = list(range(n))
    rng.shuffle(ids)
    return TeamAssignment(
        tuple(tuple(ids[i:i + team_size]) for i in range(0, n, team_size))
    )


def member_time(rng: RngStream, performance: float, base_work: float, team_size: int,
                low: float, high: float) -> float:
    u = rng.uniform(low, high)
    return base_work / team_size * u / performance


def team_time(rng: RngStream, team: Sequence[int], performances: Sequence[float],
              cfg: SimulationConfig) -> float:
    # members relay one block each, so completion is the sum of member times
    total = 0.0
    for pid in team:
        total += member_time(rng, performances[pid], cfg.base_work, cfg.team_size,
                             cfg.workload_factor_low, cfg.workload_factor_high)
    return total


def allocate_rewards(team: Sequence[int], performances: Sequence[float],
                     scheme: AllocationScheme, reward: float) -> list[float]:
    """Split ``reward`` across ``team``.

    ``performances`` is aligned with ``team`` (one entry per member).
    """
    if len(team) == 0:
        raise ValueError("team must be nonempty")
    if len(performances) != len(team):
        raise ValueError("performances must align with team members")
    if scheme is AllocationScheme.EQUAL_SHARE:
        return [reward / len(team)] * len(team)
    power = 0.0
    for p in performances:
        power += p
    return [reward * p / power for p in performances]


def pick_winner(team_times: Sequence[float]) -> int:
    """Index of the fastest team; exact ties go to the lowest index."""
    best = 0
    for t in range(1, len(team_times)):
        if team_times[t] < team_times[best]:
            best = t
    return best


def run_round(rng: RngStream, assignment: TeamAssignment, performances: Sequence[float],
              cfg: SimulationConfig, round_index: int = 0) -> RoundResult:
    times = tuple(team_time(rng, team, performances, cfg) for team in assignment.teams)
    winner = pick_winner(times)
    team = assignment.teams[winner]
    shares = allocate_rewards(team, [performances[pid] for pid in team],
                              cfg.scheme, cfg.round_reward)
    return RoundResult(round_index, times, winner, dict(zip(team, shares)))


def run_simulation_reference(cfg: SimulationConfig, run_seed: int) -> RunResult:
    """Slow round-by-round run; same output as :func:`run_simulation`."""
    validate_config(cfg)
    perf = cfg.performances()
    n = len(perf)
    rng = RngStream(run_seed)
    cumulative = np.zeros(n)
    wins = np.zeros(n, dtype=np.int64)
    winners = np.empty(cfg.rounds, dtype=np.int64)
    for r in range(cfg.rounds):
        assignment = assign_teams(rng, n, cfg.team_size)
        result = run_round(rng, assignment, perf, cfg, r)
        winners[r] = result.winner
        for pid, coins in result.payouts.items():
            cumulative[pid] += coins
            wins[pid] += 1
    return RunResult(cumulative, wins, winners, run_seed)


def run_simulation(cfg: SimulationConfig, run_seed: int) -> RunResult:
    validate_config(cfg)
    perf = np.asarray(cfg.performances(), dtype=np.float64)
    cumulative, wins, winners = simulate_run(
        perf,
        cfg.team_size,
        float(cfg.base_work),
        float(cfg.round_reward),
        cfg.rounds,
        float(cfg.workload_factor_low),
        float(cfg.workload_factor_high),
        cfg.scheme is AllocationScheme.PROPORTIONAL,
        np.uint64(run_seed),
    )
    return RunResult(cumulative, wins, winners, run_seed)


def default_workers() -> int:
    raw = os.environ.get(THREADS_ENV, "").strip()
    if not raw:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return value


def run_seeds(cfg: SimulationConfig) -> list[int]:
    return [derive_seed(cfg.master_seed, i) for i in range(cfg.runs)]


def run_experiment(cfg: SimulationConfig, workers: int | None = None) -> list[RunResult]:
    """All ``cfg.runs`` runs, ordered by run index.

    Run ``i`` is seeded with ``derive_seed(cfg.master_seed, i)``, so the
    result does not depend on ``workers``. The kernel releases the GIL, which
    lets a thread pool use several cores.
    """
    validate_config(cfg)
    seeds = run_seeds(cfg)
    workers = default_workers() if workers is None else workers
    if workers <= 1 or cfg.runs == 1:
        return [run_simulation(cfg, s) for s in seeds]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda s: run_simulation(cfg, s), seeds))
