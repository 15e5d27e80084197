"""JSON / CSV serialization for instances, estimates, reports and clouds.

Instance files store each matrix as nested lists of [re, im] pairs; the
encoding round-trips binary64 exactly (Python's shortest-repr floats).
"""

from __future__ import annotations

import dataclasses
import json

import numpy as np

from .bounds import BoundReport, CommutatorComparison, EqualityDiagnostic
from .harness import InstanceEvaluation, SuiteConfig, SuiteReport
from .linalg import as_square_matrix
from .radius import RadiusEstimate, RangeCloud

MATRIX_KEYS = ("A", "T", "S", "X", "Y")


class InstanceFormatError(ValueError):
    """Raised when an instance file does not match the expected schema."""


def matrix_to_json(m) -> list:
    arr = as_square_matrix(m)
    return [[[float(v.real), float(v.imag)] for v in row] for row in arr]


def matrix_from_json(data, dim: int) -> np.ndarray:
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InstanceFormatError(f"malformed matrix entries: {exc}") from exc
    if arr.shape != (dim, dim, 2):
        raise InstanceFormatError(f"expected a {dim}x{dim} matrix of [re, im] pairs, got shape {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def save_instance(path, matrices: dict) -> None:
    """Write an instance JSON {"dim": n, "A": ..., "T": ..., optional S/X/Y}."""
    if "A" not in matrices or "T" not in matrices:
        raise InstanceFormatError("instance requires at least matrices 'A' and 'T'")
    dim = np.asarray(matrices["A"]).shape[0]
    payload = {"dim": int(dim)}
    for key in MATRIX_KEYS:
        if key in matrices and matrices[key] is not None:
            payload[key] = matrix_to_json(matrices[key])
    with open(path, "w") as fp:
        json.dump(payload, fp)
        fp.write("\n")


def load_instance(path) -> dict:
    """Read an instance JSON back into a dict of complex matrices."""
    with open(path) as fp:
        try:
            payload = json.load(fp)
        except json.JSONDecodeError as exc:
            raise InstanceFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(payload, dict) or "dim" not in payload:
        raise InstanceFormatError("instance file must be an object with a 'dim' field")
    dim = int(payload["dim"])
    out = {"dim": dim}
    for key in MATRIX_KEYS:
        if key in payload:
            out[key] = matrix_from_json(payload[key], dim)
    if "A" not in out or "T" not in out:
        raise InstanceFormatError("instance file must contain matrices 'A' and 'T'")
    return out


def cloud_to_csv(cloud: RangeCloud, fp) -> None:
    fp.write("theta,re,im\n")
    for theta, z in zip(cloud.thetas, cloud.points):
        fp.write(f"{float(theta)!r},{float(z.real)!r},{float(z.imag)!r}\n")


def _plain(value):
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def radius_to_dict(rad: RadiusEstimate) -> dict:
    return {k: _plain(v) for k, v in dataclasses.asdict(rad).items()}


def report_to_dict(report: BoundReport) -> dict:
    return {k: _plain(v) for k, v in dataclasses.asdict(report).items()}


def diagnostic_to_dict(diag: EqualityDiagnostic) -> dict:
    return {
        "case_id": diag.case_id,
        "equality_holds": diag.equality_holds,
        "re_im_constant": diag.re_im_constant,
        "disk": {
            "is_disk": diag.disk.is_disk,
            "radius_k": diag.disk.radius_k,
            "max_deviation": diag.disk.max_deviation,
        },
        "target": diag.target,
    }


def comparison_to_dict(cmp: CommutatorComparison) -> dict:
    return {k: _plain(v) for k, v in dataclasses.asdict(cmp).items()}


def evaluation_to_dict(ev: InstanceEvaluation) -> dict:
    out = {
        "index": ev.index,
        "spec": dataclasses.asdict(ev.spec),
        "adjointable": ev.adjointable,
        "violations": list(ev.violations),
    }
    if ev.rad is not None:
        out["radius"] = radius_to_dict(ev.rad)
    if ev.sampled is not None:
        out["sampled"] = ev.sampled
    out["reports"] = [report_to_dict(r) for r in ev.reports]
    out["diagnostics"] = [diagnostic_to_dict(d) for d in ev.diagnostics]
    if ev.comparison is not None:
        out["commutator_comparison"] = comparison_to_dict(ev.comparison)
    return out


def suite_report_to_dict(report: SuiteReport) -> dict:
    config = dataclasses.asdict(report.config)
    config["dims"] = list(report.config.dims)
    config["constructions"] = list(report.config.constructions)
    return {
        "config": config,
        "n_instances": len(report.evaluations),
        "instances": [evaluation_to_dict(ev) for ev in report.evaluations],
        "counterexamples": list(report.counterexamples),
        "wall_time": report.wall_time,
    }
