"""Named time series extracted from trajectories, and peak summaries.

Population labels are '+'-separated computational basis strings over
{g, e}, e.g. "egg+geg+gge" for the symmetrized single-excitation
probability of three emitters; the corresponding series is named with a
"P_" prefix ("P_egg+geg+gge").
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .entanglement import concurrence_fill, wootters_concurrence
from .integrator import StateTrajectory
from .pulse import GaussianPulse, amplitude
from .qubit_algebra import EmitterRegister, basis_index

__all__ = [
    "PeakSummary",
    "Trajectory",
    "population",
    "peak",
    "entanglement_series",
    "build_trajectory",
]


@dataclass(frozen=True)
class PeakSummary:
    value: float
    time: float


@dataclass
class Trajectory:
    times: np.ndarray
    populations: dict = field(default_factory=dict)      # label -> series
    concurrence: np.ndarray = None
    fill: np.ndarray = None
    pulse_intensity: np.ndarray = None

    def series_map(self) -> dict:
        """All named series in output-column order."""
        out = {f"P_{label}": series for label, series in self.populations.items()}
        if self.concurrence is not None:
            out["concurrence"] = self.concurrence
        if self.fill is not None:
            out["fill"] = self.fill
        if self.pulse_intensity is not None:
            out["pulse_intensity"] = self.pulse_intensity
        return out


def _label_indices(register: EmitterRegister, label_spec: str):
    tokens = [tok.strip() for tok in label_spec.split("+")]
    if not tokens or any(not tok for tok in tokens):
        raise ValueError(f"malformed population label {label_spec!r}")
    return [basis_index(register, tok) for tok in tokens]


def population(rho: np.ndarray, register: EmitterRegister, label_spec: str) -> float:
    """Sum of the named diagonal elements of a density matrix."""
    idxs = _label_indices(register, label_spec)
    return float(sum(rho[i, i].real for i in idxs))


def peak(trajectory: Trajectory, series_name: str) -> PeakSummary:
    """Global maximum of a named series and its grid time (first hit on ties)."""
    series = trajectory.series_map().get(series_name)
    if series is None:
        raise KeyError(f"unknown series {series_name!r}")
    if len(series) == 0:
        raise ValueError(f"series {series_name!r} is empty")
    i = int(np.argmax(series))
    return PeakSummary(float(series[i]), float(trajectory.times[i]))


def entanglement_series(states: StateTrajectory, register: EmitterRegister, measure: str = None) -> np.ndarray:
    """Per-time entanglement of the physical density matrix.

    measure: "concurrence" (two emitters) or "fill" (three); inferred from
    the register size when omitted.
    """
    n = register.n_emitters
    if measure is None:
        measure = {2: "concurrence", 3: "fill"}.get(n)
        if measure is None:
            raise ValueError(f"no entanglement measure defined for {n} emitters")
    phys = states.physical()
    if measure == "concurrence":
        if n != 2:
            raise ValueError(f"concurrence needs 2 emitters, register has {n}")
        return np.array([wootters_concurrence(rho) for rho in phys])
    if measure == "fill":
        if n != 3:
            raise ValueError(f"concurrence fill needs 3 emitters, register has {n}")
        return np.array([concurrence_fill(rho) for rho in phys])
    raise ValueError(f"unknown measure {measure!r}")


def build_trajectory(
    states: StateTrajectory,
    population_labels=(),
    want_concurrence: bool = False,
    want_fill: bool = False,
    pulse: GaussianPulse = None,
) -> Trajectory:
    """Assemble the requested named series from recorded hierarchy states."""
    register = states.register
    phys = states.physical()
    diag = np.real(np.einsum("tii->ti", phys))
    populations = {}
    for label in population_labels:
        idxs = _label_indices(register, label)
        populations[label] = diag[:, idxs].sum(axis=1)
    traj = Trajectory(times=states.times, populations=populations)
    if want_concurrence:
        traj.concurrence = entanglement_series(states, register, "concurrence")
    if want_fill:
        traj.fill = entanglement_series(states, register, "fill")
    if pulse is not None:
        traj.pulse_intensity = np.square(amplitude(pulse, states.times))
    return traj
