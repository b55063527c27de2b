"""Independent checks for tiny fixed-team races.

Nothing here imports the engine: sampling uses numpy's PCG64 and the timing
formula is restated in vectorized form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class TinyScenario:
    """Fixed teams (at most 4 teams of at most 4 members, all the same size)."""

    teams: tuple[tuple[float, ...], ...]
    base_work: float = 600.0
    low: float = 0.8
    high: float = 1.2

    def __post_init__(self) -> None:
        teams = tuple(tuple(float(p) for p in team) for team in self.teams)
        object.__setattr__(self, "teams", teams)
        if not 1 <= len(teams) <= 4:
            raise ValueError("a tiny scenario has 1 to 4 teams")
        size = len(teams[0])
        if not 1 <= size <= 4 or any(len(t) != size for t in teams):
            raise ValueError("teams must all have the same size, between 1 and 4")
        if any(p <= 0 for t in teams for p in t):
            raise ValueError("performances must be positive")
        if not 0 < self.low <= self.high:
            raise ValueError("need 0 < low <= high")

    @property
    def team_size(self) -> int:
        return len(self.teams[0])

    def time_interval(self, team: int) -> tuple[float, float]:
        share = self.base_work / self.team_size
        inv = sum(1.0 / p for p in self.teams[team])
        return share * self.low * inv, share * self.high * inv


def dominance_check(s: TinyScenario) -> int | None:
    """Team whose slowest possible time beats every rival's fastest, if any."""
    intervals = [s.time_interval(t) for t in range(len(s.teams))]
    for t, (_, worst) in enumerate(intervals):
        if all(worst < best for o, (best, _) in enumerate(intervals) if o != t):
            return t
    return None


def win_probability_bruteforce(s: TinyScenario, samples: int, seed: int,
                               chunk: int = 250_000) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(seed))
    perf = np.array(s.teams)
    share = s.base_work / s.team_size
    counts = np.zeros(len(s.teams), dtype=np.int64)
    done = 0
    while done < samples:
        m = min(chunk, samples - done)
        u = rng.uniform(s.low, s.high, size=(m,) + perf.shape)
        times = (share * u / perf).sum(axis=2)
        counts += np.bincount(times.argmin(axis=1), minlength=len(s.teams))
        done += m
    return counts / samples
