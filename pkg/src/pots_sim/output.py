"""CSV tables and plot-ready series."""

from __future__ import annotations

import csv
import re
from pathlib import Path
from typing import Sequence

from .metrics import MetricsReport
from .model import AllocationScheme, format_level

CSV_HEADER = (
    "scenario", "scheme", "team_size", "level", "population",
    "avg_reward", "sd_reward", "efficiency", "gini",
)
PLOT_METRICS = ("avg_reward", "efficiency")
_SCHEME_ORDER = {AllocationScheme.EQUAL_SHARE: 0, AllocationScheme.PROPORTIONAL: 1}


def fmt(x: float) -> str:
    s = f"{x:.6f}"
    # avoid "-0.000000" from tiny negative rounding noise
    return "0.000000" if s == "-0.000000" else s


def _rows(reports: Sequence[MetricsReport]) -> list[tuple]:
    rows = []
    for rep in reports:
        for st in rep.levels:
            rows.append((rep.scenario, str(rep.scheme), rep.team_size, st.level, rep, st))
    rows.sort(key=lambda r: r[:4])
    return rows


def emit_csv(reports: Sequence[MetricsReport], path: str | Path) -> Path:
    if not reports:
        raise ValueError("no reports to write")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for scenario, scheme, team_size, level, rep, st in _rows(reports):
            writer.writerow([
                scenario, scheme, team_size, format_level(level), st.population_at_level,
                fmt(st.avg_reward), fmt(st.sd_reward), fmt(st.efficiency), fmt(rep.gini),
            ])
    return path


def _safe_name(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]+", "_", name)


def emit_plotdata(reports: Sequence[MetricsReport], out_dir: str | Path) -> list[Path]:
    """Write ``<scenario>_<metric>.csv`` per scenario and metric.

    Each file has one row per team size and one column per ``<level>_<scheme>``
    series; cells absent from ``reports`` are left empty.
    """
    if not reports:
        raise ValueError("no reports to write")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    by_scenario: dict[str, list[MetricsReport]] = {}
    for rep in reports:
        by_scenario.setdefault(rep.scenario, []).append(rep)

    written = []
    for scenario in sorted(by_scenario):
        reps = by_scenario[scenario]
        levels = sorted({st.level for rep in reps for st in rep.levels})
        schemes = sorted({rep.scheme for rep in reps}, key=_SCHEME_ORDER.__getitem__)
        team_sizes = sorted({rep.team_size for rep in reps})
        lookup = {(rep.team_size, rep.scheme): rep for rep in reps}
        series = [(level, scheme) for level in levels for scheme in schemes]
        for metric in PLOT_METRICS:
            path = out_dir / f"{_safe_name(scenario)}_{metric}.csv"
            with open(path, "w", encoding="utf-8", newline="") as fh:
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(["team_size"] + [f"{format_level(lv)}_{sc}" for lv, sc in series])
                for ts in team_sizes:
                    row = [ts]
                    for level, scheme in series:
                        rep = lookup.get((ts, scheme))
                        value = ""
                        if rep is not None:
                            for st in rep.levels:
                                if st.level == level:
                                    value = fmt(getattr(st, metric))
                        row.append(value)
                    writer.writerow(row)
            written.append(path)
    return written
