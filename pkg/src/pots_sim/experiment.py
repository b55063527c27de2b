"""Experiment grids: JSON configs, named scenario presets and the grid runner."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Iterator, NamedTuple

from .engine import run_experiment
from .metrics import MetricsReport, build_report
from .model import (
    DEFAULT_BASE_WORK,
    DEFAULT_FACTOR_HIGH,
    DEFAULT_FACTOR_LOW,
    DEFAULT_ROUND_REWARD,
    DEFAULT_ROUNDS,
    DEFAULT_RUNS,
    PAPER_TEAM_SIZES,
    AllocationScheme,
    PerformanceDistribution,
    SimulationConfig,
    ValidationError,
    format_level,
    parse_distribution,
    validate_config,
)
from .rng import derive_seed

BOTH_SCHEMES = (AllocationScheme.EQUAL_SHARE, AllocationScheme.PROPORTIONAL)
CONFIG_KEYS = {
    "distributions", "team_sizes", "schemes", "rounds", "runs", "base_work",
    "round_reward", "workload_factor", "master_seed",
}


class ConfigError(ValidationError):
    pass


class CellError(RuntimeError):
    """A grid cell failed while running; the message names the cell."""


class Cell(NamedTuple):
    index: int
    scenario: str
    config: SimulationConfig

    def describe(self) -> str:
        c = self.config
        return f"cell {self.index} ({self.scenario}, team_size={c.team_size}, scheme={c.scheme})"


@dataclass(frozen=True)
class ExperimentGrid:
    distributions: tuple[tuple[str, PerformanceDistribution], ...]
    team_sizes: tuple[int, ...] = PAPER_TEAM_SIZES
    schemes: tuple[AllocationScheme, ...] = BOTH_SCHEMES
    rounds: int = DEFAULT_ROUNDS
    runs: int = DEFAULT_RUNS
    base_work: float = DEFAULT_BASE_WORK
    round_reward: float = DEFAULT_ROUND_REWARD
    workload_factor_low: float = DEFAULT_FACTOR_LOW
    workload_factor_high: float = DEFAULT_FACTOR_HIGH
    master_seed: int = 0

    def cells(self) -> Iterator[Cell]:
        """Cells in distribution, team size, scheme order.

        Cell ``i`` is seeded with ``derive_seed(master_seed, i)``.
        """
        index = 0
        for name, dist in self.distributions:
            for team_size in self.team_sizes:
                for scheme in self.schemes:
                    cfg = SimulationConfig(
                        distribution=dist,
                        team_size=team_size,
                        scheme=scheme,
                        base_work=self.base_work,
                        round_reward=self.round_reward,
                        rounds=self.rounds,
                        runs=self.runs,
                        workload_factor_low=self.workload_factor_low,
                        workload_factor_high=self.workload_factor_high,
                        master_seed=derive_seed(self.master_seed, index),
                    )
                    yield Cell(index, name, cfg)
                    index += 1

    def validate(self) -> None:
        if not self.distributions:
            raise ConfigError("grid has no distributions")
        if not self.team_sizes:
            raise ConfigError("grid has no team sizes")
        if not self.schemes:
            raise ConfigError("grid has no allocation schemes")
        names = [name for name, _ in self.distributions]
        dupes = sorted({n for n in names if names.count(n) > 1})
        if dupes:
            raise ConfigError(f"duplicate distribution names: {', '.join(dupes)}")
        if len(set(self.team_sizes)) != len(self.team_sizes):
            raise ConfigError("duplicate team sizes")
        if len(set(self.schemes)) != len(self.schemes):
            raise ConfigError("duplicate schemes")
        for cell in self.cells():
            try:
                validate_config(cell.config)
            except ValidationError as exc:
                raise ConfigError(f"{cell.describe()}: {exc}") from exc

    def with_overrides(self, **changes: Any) -> ExperimentGrid:
        changes = {k: v for k, v in changes.items() if v is not None}
        return replace(self, **changes)


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ConfigError(message)


def _int_list(value: Any, key: str) -> tuple[int, ...]:
    _require(isinstance(value, list) and value, f"'{key}' must be a nonempty list")
    _require(all(isinstance(v, int) and not isinstance(v, bool) for v in value),
             f"'{key}' must contain integers")
    return tuple(value)


def _number(value: Any, key: str) -> float:
    _require(isinstance(value, (int, float)) and not isinstance(value, bool),
             f"'{key}' must be a number")
    return float(value)


def _integer(value: Any, key: str) -> int:
    _require(isinstance(value, int) and not isinstance(value, bool), f"'{key}' must be an integer")
    return value


def grid_from_dict(data: dict, validate: bool = True) -> ExperimentGrid:
    """Build a grid from parsed JSON; omitted fields take paper defaults.

    Pass ``validate=False`` when overrides will be applied before running.
    """
    _require(isinstance(data, dict), "config must be a JSON object")
    unknown = sorted(set(data) - CONFIG_KEYS)
    _require(not unknown, f"unknown config keys: {', '.join(unknown)}")
    raw = data.get("distributions")
    _require(isinstance(raw, list) and raw, "'distributions' must be a nonempty list")
    dists = []
    for i, item in enumerate(raw):
        _require(isinstance(item, dict) and {"name", "spec"} <= set(item),
                 f"distributions[{i}] needs 'name' and 'spec'")
        name, spec = item["name"], item["spec"]
        _require(isinstance(name, str) and name.strip() != "", f"distributions[{i}].name must be a string")
        _require(isinstance(spec, str), f"distributions[{i}].spec must be a string")
        try:
            dists.append((name, parse_distribution(spec)))
        except ValidationError as exc:
            raise ConfigError(f"distribution {name!r}: {exc}") from exc

    kwargs: dict[str, Any] = {"distributions": tuple(dists)}
    if "team_sizes" in data:
        kwargs["team_sizes"] = _int_list(data["team_sizes"], "team_sizes")
    if "schemes" in data:
        schemes = data["schemes"]
        _require(isinstance(schemes, list) and schemes, "'schemes' must be a nonempty list")
        kwargs["schemes"] = tuple(AllocationScheme.parse(s) for s in schemes)
    for key in ("rounds", "runs", "master_seed"):
        if key in data:
            kwargs[key] = _integer(data[key], key)
    for key in ("base_work", "round_reward"):
        if key in data:
            kwargs[key] = _number(data[key], key)
    if "workload_factor" in data:
        wf = data["workload_factor"]
        _require(isinstance(wf, list) and len(wf) == 2, "'workload_factor' must be [low, high]")
        kwargs["workload_factor_low"] = _number(wf[0], "workload_factor[0]")
        kwargs["workload_factor_high"] = _number(wf[1], "workload_factor[1]")

    grid = ExperimentGrid(**kwargs)
    if validate:
        grid.validate()
    return grid


def load_config(path: str | Path, validate: bool = True) -> ExperimentGrid:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from exc
    return grid_from_dict(data, validate)


TEN_LAYER = "1:800,2:400,3:200,4:100,5:50,6:30,7:10,8:5,9:3,10:2"
PAPER_RATIOS = (2, 5, 10, 100)
_FAMILY_SPECS = {
    "two-class": "1:800,{r}:800",
    "lone-low": "1:1,{r}:1599",
    "lone-high": "1:1599,{r}:1",
}
_PRESET_RE = re.compile(r"(two-class|lone-low|lone-high)-r(\d+(?:\.\d+)?)")
# the distributions plotted in the figures (r=5 and r=10 were left out there)
PAPER_SCENARIOS = (
    "two-class-r2", "two-class-r100", "lone-low-r2", "lone-low-r100",
    "lone-high-r2", "lone-high-r100", "ten-layer",
)


def preset_names() -> list[str]:
    names = [f"{family}-r{r}" for family in _FAMILY_SPECS for r in PAPER_RATIOS]
    return names + ["ten-layer", "paper", "paper-all"]


def preset_distribution(name: str) -> PerformanceDistribution:
    if name == "ten-layer":
        return parse_distribution(TEN_LAYER)
    m = _PRESET_RE.fullmatch(name)
    if not m:
        raise ConfigError(f"unknown preset {name!r}; known: {', '.join(preset_names())}")
    ratio = float(m.group(2))
    if ratio <= 0 or ratio == 1:
        raise ConfigError(f"preset {name!r}: r must be positive and different from 1")
    return parse_distribution(_FAMILY_SPECS[m.group(1)].format(r=format_level(ratio)))


def preset(name: str) -> ExperimentGrid:
    """Paper scenario(s) on the default grid.

    ``paper`` bundles the seven plotted distributions; ``paper-all`` adds the
    r=5 and r=10 variants.
    """
    if name == "paper":
        names = list(PAPER_SCENARIOS)
    elif name == "paper-all":
        names = [n for n in preset_names() if not n.startswith("paper")]
    else:
        names = [name]
    grid = ExperimentGrid(tuple((n, preset_distribution(n)) for n in names))
    grid.validate()
    return grid


def run_grid(grid: ExperimentGrid, workers: int | None = None) -> list[MetricsReport]:
    """One report per cell, in cell order.

    Runs inside a cell are spread over ``workers`` threads; the numbers do not
    depend on the worker count.
    """
    grid.validate()
    reports = []
    for cell in grid.cells():
        try:
            results = run_experiment(cell.config, workers=workers)
            reports.append(build_report(cell.config, results, scenario=cell.scenario))
        except Exception as exc:
            raise CellError(f"{cell.describe()} failed: {exc}") from exc
    return reports
