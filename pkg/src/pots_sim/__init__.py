"""Seeded Monte-Carlo simulator of Proof of Team Sprint reward fairness."""

from .engine import (
    RoundResult,
    RunResult,
    TeamAssignment,
    allocate_rewards,
    assign_teams,
    member_time,
    run_experiment,
    run_round,
    run_simulation,
    team_time,
)
from .experiment import ExperimentGrid, load_config, preset, run_grid
from .metrics import (
    LevelStats,
    MetricsReport,
    average_reward_by_level,
    build_report,
    efficiency_by_level,
    gini_coefficient,
)
from .model import (
    AllocationScheme,
    Participant,
    PerformanceDistribution,
    SimulationConfig,
    ValidationError,
    expand_population,
    parse_distribution,
    validate_config,
)
from .output import emit_csv, emit_plotdata
from .rng import RngStream, derive_seed

__version__ = "0.1.0"
