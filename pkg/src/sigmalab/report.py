"""Deterministic report emission: JSON, trajectory CSVs, and figures.

Reports must be byte-identical for identical inputs, so keys are
sorted, rationals are serialized as "p/q" strings, floats are rounded
to 12 decimals before serialization, and nothing time- or path-
dependent is ever written into the JSON.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Union

from .scenarios import ScenarioReport, Trajectory

Jsonable = Union[None, bool, int, float, str, list, dict]


def to_jsonable(obj) -> Jsonable:
    """Recursively convert report values into JSON-stable primitives."""
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, float):
        return round(obj, 12)
    if isinstance(obj, (type(None), bool, int, str)):
        return obj
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return str(obj)


def dumps_report(data: dict) -> str:
    return json.dumps(to_jsonable(data), indent=2, sort_keys=True) + "\n"


def write_json(data: dict, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_report(data), encoding="utf-8")
    return path


def write_trajectory_csv(traj: Trajectory, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = ["index,value"]
    lines.extend(f"{i},{v:.12f}" for i, v in zip(traj.index, traj.values))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def render_trajectory_png(
    traj: Trajectory, path: Union[str, Path], title: str
) -> Path:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(traj.index, traj.values, marker="o", color="#1f77b4")
    ax.set_xlabel("n")
    ax.set_ylabel(traj.name)
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def _safe_stem(name: str) -> str:
    return "".join(c if c.isalnum() or c in "-_" else "-" for c in name)


def write_report_outputs(
    data: dict,
    out_dir: Union[str, Path],
    stem: str,
    trajectories: Iterable[Trajectory] = (),
) -> list[Path]:
    """Write report.json plus one CSV and one PNG per trajectory."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = [write_json(data, out / f"{stem}.json")]
    for traj in trajectories:
        base = f"{stem}-{_safe_stem(traj.name)}"
        written.append(write_trajectory_csv(traj, out / f"{base}.csv"))
        written.append(
            render_trajectory_png(traj, out / f"{base}.png", title=stem)
        )
    return written


def scenario_report_dict(report: ScenarioReport) -> dict:
    return report.to_json_dict()
