"""Domain types, the distribution text grammar and config validation."""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple

U64_MASK = (1 << 64) - 1

DEFAULT_BASE_WORK = 600.0
DEFAULT_ROUND_REWARD = 10.0
DEFAULT_ROUNDS = 1000
DEFAULT_RUNS = 100
DEFAULT_FACTOR_LOW = 0.8
DEFAULT_FACTOR_HIGH = 1.2
PAPER_TEAM_SIZES = (1, 2, 4, 8, 16, 32, 64)


class ValidationError(ValueError):
    """Base class for every input/config problem (CLI exit code 1)."""


class DistributionSyntaxError(ValidationError):
    pass


class DistributionDomainError(ValidationError):
    pass


class DivisibilityError(ValidationError):
    pass


class RangeError(ValidationError):
    pass


class AllocationScheme(enum.Enum):
    EQUAL_SHARE = "equal"
    PROPORTIONAL = "proportional"

    @classmethod
    def parse(cls, text: str | AllocationScheme) -> AllocationScheme:
        if isinstance(text, cls):
            return text
        key = str(text).strip().lower().replace("-", "_")
        aliases = {
            "equal": cls.EQUAL_SHARE,
            "equal_share": cls.EQUAL_SHARE,
            "proportional": cls.PROPORTIONAL,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValidationError(
                f"unknown allocation scheme {text!r} (expected 'equal' or 'proportional')"
            ) from None

    def __str__(self) -> str:
        return self.value


_LEVEL_RE = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")
_COUNT_RE = re.compile(r"[+-]?\d+")


def format_level(level: float) -> str:
    """Shortest text that parses back to exactly ``level``."""
    if level.is_integer() and abs(level) < 1e15:
        return str(int(level))
    return repr(level)


@dataclass(frozen=True)
class PerformanceDistribution:
    """Population described as ``{level: count}`` in canonical ascending order."""

    entries: tuple[tuple[float, int], ...]

    def __post_init__(self) -> None:
        if not self.entries:
            raise DistributionDomainError("distribution has no entries")
        prev = None
        for level, count in self.entries:
            if not (isinstance(level, float) and math.isfinite(level)) or level <= 0:
                raise DistributionDomainError(f"level must be a positive number, got {level!r}")
            if not isinstance(count, int) or isinstance(count, bool) or count <= 0:
                raise DistributionDomainError(f"count must be a positive integer, got {count!r}")
            if prev is not None and level <= prev:
                raise DistributionDomainError("levels must be strictly increasing and unique")
            prev = level

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[float, int]]) -> PerformanceDistribution:
        """Build from unordered ``(level, count)`` pairs; duplicate levels are rejected."""
        seen: dict[float, int] = {}
        for level, count in pairs:
            level = float(level)
            if level in seen:
                raise DistributionDomainError(f"duplicate level {format_level(level)}")
            seen[level] = count
        for level, count in seen.items():
            if level <= 0 or not math.isfinite(level):
                raise DistributionDomainError(f"level must be positive, got {format_level(level)}")
            if count <= 0:
                raise DistributionDomainError(
                    f"count for level {format_level(level)} must be positive, got {count}"
                )
        return cls(tuple(sorted(seen.items())))

    @classmethod
    def from_mapping(cls, mapping: Mapping[float, int]) -> PerformanceDistribution:
        return cls.from_pairs(mapping.items())

    @property
    def population(self) -> int:
        return sum(count for _, count in self.entries)

    @property
    def levels(self) -> tuple[float, ...]:
        return tuple(level for level, _ in self.entries)

    def as_dict(self) -> dict[float, int]:
        return dict(self.entries)

    def __str__(self) -> str:
        return serialize_distribution(self)


def parse_distribution(spec: str) -> PerformanceDistribution:
    """Parse ``"level:count, level:count, ..."``.

    Braces around the whole list are tolerated so that ``{1:800,2:800}``
    can be pasted as written.

    >>> parse_distribution("100:800, 1:800").entries
    ((1.0, 800), (100.0, 800))
    """
    text = spec.strip()
    if text.startswith("{") and text.endswith("}"):
        text = text[1:-1]
    if not text.strip():
        raise DistributionSyntaxError("empty distribution")
    pairs = []
    for raw in text.split(","):
        parts = raw.split(":")
        if len(parts) != 2:
            raise DistributionSyntaxError(f"expected 'level:count', got {raw.strip()!r}")
        level_txt, count_txt = parts[0].strip(), parts[1].strip()
        if not _LEVEL_RE.fullmatch(level_txt):
            raise DistributionSyntaxError(f"malformed level {level_txt!r}")
        if not _COUNT_RE.fullmatch(count_txt):
            raise DistributionSyntaxError(f"malformed count {count_txt!r}")
        pairs.append((float(level_txt), int(count_txt)))
    return PerformanceDistribution.from_pairs(pairs)


def serialize_distribution(dist: PerformanceDistribution) -> str:
    return ",".join(f"{format_level(level)}:{count}" for level, count in dist.entries)


class Participant(NamedTuple):
    id: int
    performance: float


def expand_population(dist: PerformanceDistribution) -> list[Participant]:
    """One participant per unit of count, ascending by level, ids ``0..n-1``."""
    out: list[Participant] = []
    for level, count in dist.entries:
        start = len(out)
        out.extend(Participant(start + k, level) for k in range(count))
    return out


@dataclass(frozen=True)
class SimulationConfig:
    distribution: PerformanceDistribution
    team_size: int
    scheme: AllocationScheme = AllocationScheme.EQUAL_SHARE
    base_work: float = DEFAULT_BASE_WORK
    round_reward: float = DEFAULT_ROUND_REWARD
    rounds: int = DEFAULT_ROUNDS
    runs: int = DEFAULT_RUNS
    workload_factor_low: float = DEFAULT_FACTOR_LOW
    workload_factor_high: float = DEFAULT_FACTOR_HIGH
    master_seed: int = 0
    # cached per-participant performances; derived, not part of equality
    _performances: tuple[float, ...] = field(default=(), init=False, repr=False, compare=False)

    @property
    def population(self) -> int:
        return self.distribution.population

    @property
    def team_count(self) -> int:
        return self.population // self.team_size

    def performances(self) -> tuple[float, ...]:
        if not self._performances:
            perf = tuple(p.performance for p in expand_population(self.distribution))
            object.__setattr__(self, "_performances", perf)
        return self._performances


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def validate_config(cfg: SimulationConfig) -> None:
    """Raise a :class:`ValidationError` subclass if ``cfg`` is unusable."""
    if not isinstance(cfg.distribution, PerformanceDistribution):
        raise ValidationError("distribution must be a PerformanceDistribution")
    if not isinstance(cfg.scheme, AllocationScheme):
        raise ValidationError(f"scheme must be an AllocationScheme, got {cfg.scheme!r}")
    if not _is_int(cfg.team_size) or cfg.team_size < 1:
        raise RangeError(f"team_size must be a positive integer, got {cfg.team_size!r}")
    for name in ("rounds", "runs"):
        value = getattr(cfg, name)
        if not _is_int(value) or value < 1:
            raise RangeError(f"{name} must be >= 1, got {value!r}")
    for name in ("base_work", "round_reward"):
        value = getattr(cfg, name)
        if not (math.isfinite(value) and value > 0):
            raise RangeError(f"{name} must be positive, got {value!r}")
    low, high = cfg.workload_factor_low, cfg.workload_factor_high
    if not (math.isfinite(low) and math.isfinite(high) and 0 < low <= high):
        raise RangeError(f"workload factor range must satisfy 0 < low <= high, got [{low}, {high}]")
    if not _is_int(cfg.master_seed) or not 0 <= cfg.master_seed <= U64_MASK:
        raise RangeError(f"master_seed must be an unsigned 64-bit integer, got {cfg.master_seed!r}")
    n = cfg.population
    if n % cfg.team_size:
        raise DivisibilityError(
            f"population {n} is not divisible by team_size {cfg.team_size}"
        )
