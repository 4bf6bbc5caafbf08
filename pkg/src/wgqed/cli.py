"""Command-line front end: single runs and chirality sweeps.

`wgqed run <scenario>` integrates one scenario and writes
  <stem>.csv           time series (header `t`, one column per series,
                       12-significant-digit values)
  <stem>_summary.json  per-series peaks plus the fully resolved config

`wgqed sweep <scenario>` repeats the run for every Gamma_r/Gamma_l ratio
in `sweep.ratios` (Gamma_l held at Gamma, Gamma_r = ratio * Gamma_l) and
additionally writes an aggregate CSV of per-ratio peak values.

Exit codes: 0 success; 2 scenario parse/validation failure (the message
names the offending key); 3 integration blow-up (message reports the
time).
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .hierarchy import initial_state
from .integrator import IntegrationBlowUpError, integrate
from .observables import Trajectory, build_trajectory
from .qubit_algebra import EmitterRegister
from .scenario import Scenario, ScenarioError, load_scenario

__all__ = ["simulate_scenario", "run", "sweep", "main"]


def simulate_scenario(sc: Scenario):
    """Integrate a scenario; returns (named-series trajectory, raw state trajectory)."""
    state0 = initial_state(EmitterRegister(sc.n_emitters), sc.n_photons)
    states = integrate(sc.chain, sc.pulse, state0, sc.integrator)
    traj = build_trajectory(
        states,
        sc.populations,
        want_concurrence=sc.want_concurrence,
        want_fill=sc.want_fill,
        pulse=sc.pulse if sc.want_pulse else None,
    )
    return traj, states


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _write_csv(path: Path, times, series: dict) -> None:
    lines = ["t," + ",".join(series)]
    columns = list(series.values())
    for i, t in enumerate(times):
        lines.append(",".join([_fmt(t)] + [_fmt(col[i]) for col in columns]))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _peaks(traj: Trajectory) -> dict:
    out = {}
    for name, series in traj.series_map().items():
        i = int(series.argmax())
        out[name] = {"value": float(series[i]), "time": float(traj.times[i])}
    return out


def _emit(quiet: bool, text: str) -> None:
    if not quiet:
        print(text)


def run(scenario_path, out_dir=".", dt=None, quiet=False) -> list:
    """Single run; returns the written file paths."""
    sc = load_scenario(scenario_path, dt_override=dt)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = Path(scenario_path).stem

    traj, _states = simulate_scenario(sc)
    peaks = _peaks(traj)

    csv_path = out / f"{stem}.csv"
    json_path = out / f"{stem}_summary.json"
    _write_csv(csv_path, traj.times, traj.series_map())
    _write_json(
        json_path,
        {
            "scenario": sc.resolved(),
            "peaks": peaks,
            "series": list(traj.series_map()),
            "n_time_points": int(len(traj.times)),
        },
    )
    for name, entry in peaks.items():
        _emit(quiet, f"{name}: max {entry['value']:.6g} at t = {entry['time']:g}")
    _emit(quiet, f"wrote {csv_path}")
    _emit(quiet, f"wrote {json_path}")
    return [csv_path, json_path]


def sweep(scenario_path, out_dir=".", dt=None, quiet=False) -> list:
    """One run per Gamma_r/Gamma_l ratio plus an aggregate peak CSV."""
    sc = load_scenario(scenario_path, dt_override=dt)
    if not sc.sweep_ratios:
        raise ScenarioError("sweep.ratios", "required for the sweep command")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = Path(scenario_path).stem

    ratios = list(sc.sweep_ratios)
    with ThreadPoolExecutor(max_workers=min(4, len(ratios))) as pool:
        trajs = list(pool.map(lambda r: simulate_scenario(sc.with_ratio(r))[0], ratios))

    written = []
    agg_names = None
    agg_rows = []
    peaks_by_ratio = {}
    for ratio, traj in zip(ratios, trajs):
        peaks = _peaks(traj)
        peaks_by_ratio[f"{ratio:g}"] = peaks
        tag = f"{stem}_ratio{ratio:g}"
        csv_path = out / f"{tag}.csv"
        json_path = out / f"{tag}_summary.json"
        _write_csv(csv_path, traj.times, traj.series_map())
        _write_json(
            json_path,
            {
                "scenario": sc.with_ratio(ratio).resolved(),
                "peaks": peaks,
                "series": list(traj.series_map()),
                "n_time_points": int(len(traj.times)),
            },
        )
        written += [csv_path, json_path]
        names = [n for n in traj.series_map() if n != "pulse_intensity"]
        if agg_names is None:
            agg_names = names
        agg_rows.append(
            [ratio] + [v for n in names for v in (peaks[n]["value"], peaks[n]["time"])]
        )
        _emit(quiet, f"ratio {ratio:g}: " + "; ".join(
            f"{n} max {peaks[n]['value']:.6g} at {peaks[n]['time']:g}" for n in names
        ))

    header = ["ratio"] + [col for n in agg_names for col in (f"{n}_max", f"{n}_t")]
    lines = [",".join(header)]
    for row in agg_rows:
        lines.append(",".join(_fmt(v) for v in row))
    agg_csv = out / f"{stem}_sweep.csv"
    agg_csv.write_text("\n".join(lines) + "\n", encoding="utf-8")
    agg_json = out / f"{stem}_sweep_summary.json"
    _write_json(
        agg_json,
        {
            "scenario": sc.resolved(),
            "ratios": ratios,
            "peaks_by_ratio": peaks_by_ratio,
        },
    )
    written += [agg_csv, agg_json]
    _emit(quiet, f"wrote {agg_csv}")
    _emit(quiet, f"wrote {agg_json}")
    return written


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wgqed",
        description="Emitter-chain waveguide dynamics from scenario files",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("run", "integrate one scenario"),
        ("sweep", "run every Gamma_r/Gamma_l ratio in sweep.ratios"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("scenario", help="path to a scenario file")
        p.add_argument("--out-dir", default=".", help="directory for CSV/JSON output")
        p.add_argument("--dt", type=float, default=None, help="override integrator.dt")
        p.add_argument("--quiet", action="store_true", help="suppress progress output")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    command = run if args.command == "run" else sweep
    try:
        command(args.scenario, out_dir=args.out_dir, dt=args.dt, quiet=args.quiet)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: scenario file not found: {exc.filename}", file=sys.stderr)
        return 2
    except IntegrationBlowUpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
