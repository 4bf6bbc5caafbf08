"""Shared fixtures: the checked-in scenarios, integrated once per session.

The regression runs use each scenario's own grid (dt = 1e-3 over
t in [0, 12], snapshot every 10 steps).  A three-emitter run takes a few
seconds, so every (scenario, ratio) pair is integrated exactly once and
the result is shared by all test modules.
"""

from __future__ import annotations

import functools
from pathlib import Path

import pytest

from wgqed.cli import simulate_scenario
from wgqed.scenario import load_scenario

SCENARIO_DIR = Path(__file__).resolve().parent.parent / "scenarios"


def scenario_path(stem: str) -> Path:
    return SCENARIO_DIR / f"{stem}.cfg"


@functools.lru_cache(maxsize=None)
def _cached_run(stem: str, ratio):
    sc = load_scenario(scenario_path(stem))
    if ratio is not None:
        sc = sc.with_ratio(ratio)
    return simulate_scenario(sc)


@pytest.fixture(scope="session")
def scenario_run():
    """scenario_run(stem, ratio=None) -> (Trajectory, StateTrajectory)."""
    return _cached_run
