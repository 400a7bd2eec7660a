"""Serialization of trajectories, polytopes and run reports."""

from __future__ import annotations

import csv
import json

import numpy as np

from .convex import Polytope
from .flow import Trajectory
from .suites import RunReport


def point_to_interleaved(v: np.ndarray) -> list:
    """Unit representative as a flat [re, im, re, im, ...] list."""
    out = []
    for z in np.asarray(v, dtype=complex):
        out.extend([float(np.real(z)), float(np.imag(z))])
    return out


def interleaved_to_point(values) -> np.ndarray:
    vals = list(values)
    if len(vals) % 2 != 0:
        raise ValueError("interleaved point data must have even length")
    return np.array([complex(vals[i], vals[i + 1]) for i in range(0, len(vals), 2)])


def write_trajectory_csv(path, traj: Trajectory):
    """Columns: t, f, grad_norm, then the interleaved state."""
    n = traj.states.shape[1] if traj.n_steps else 0
    header = ["t", "f", "grad_norm"]
    for j in range(n):
        header.extend([f"state{j}_re", f"state{j}_im"])
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for i in range(traj.n_steps):
            row = [repr(float(traj.times[i])), repr(float(traj.f_values[i])),
                   repr(float(traj.grad_norms[i]))]
            row.extend(repr(x) for x in point_to_interleaved(traj.states[i]))
            writer.writerow(row)


def polytope_to_json_dict(body: Polytope, name: str = "") -> dict:
    doc = {"schema": "gradmap-polytope/1", **body.to_json_dict()}
    if name:
        doc["name"] = name
    return doc


def write_json(path, doc: dict):
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def report_to_json(report: RunReport) -> str:
    return json.dumps(report.to_json_dict(), indent=2, sort_keys=True) + "\n"


def report_without_timings(doc: dict) -> dict:
    out = dict(doc)
    out.pop("timings", None)
    return out
