"""JSON sequence and state files, CSV scan tables.

Sequence file::

    {"schema_version": 1, "n": 4, "label": "w4", "target": "W",
     "pulses": [{"kind": "Y", "angle": 0.7853981633974483}, ...]}

Angles are radians. Python's float repr is the shortest string that round-trips,
so write -> read is lossless.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from pathlib import Path

import numpy as np

from .simcore import PULSE_KINDS, Pulse, PulseSequence, StateVector

SCHEMA_VERSION = 1
SCAN_HEADER = ("n", "min_params", "fidelity", "seed")


class SequenceFileError(ValueError):
    """Malformed sequence or state file; ``field`` names the offending entry."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def atomic_write_text(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def sequence_to_dict(seq: PulseSequence, label: str | None = None,
                     target: str | None = None) -> dict:
    data = {"schema_version": SCHEMA_VERSION, "n": seq.n}
    if label is not None:
        data["label"] = label
    if target is not None:
        data["target"] = target
    data["pulses"] = [{"kind": p.kind, "angle": p.angle} for p in seq.pulses]
    return data


def sequence_from_dict(data) -> tuple[PulseSequence, dict]:
    """Validate a decoded sequence file; returns the sequence and its metadata."""
    if not isinstance(data, dict):
        raise SequenceFileError("<root>", "expected a JSON object")
    version = data.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SequenceFileError("schema_version", f"expected {SCHEMA_VERSION}, got {version!r}")
    n = data.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise SequenceFileError("n", f"expected a positive integer, got {n!r}")
    pulses = data.get("pulses")
    if not isinstance(pulses, list):
        raise SequenceFileError("pulses", "expected a list")
    parsed = []
    for idx, entry in enumerate(pulses):
        where = f"pulses[{idx}]"
        if not isinstance(entry, dict):
            raise SequenceFileError(where, "expected an object with 'kind' and 'angle'")
        kind = entry.get("kind")
        if kind not in PULSE_KINDS:
            raise SequenceFileError(f"{where}.kind", f"must be one of {list(PULSE_KINDS)}, got {kind!r}")
        angle = entry.get("angle")
        if isinstance(angle, bool) or not isinstance(angle, (int, float)) or not math.isfinite(angle):
            raise SequenceFileError(f"{where}.angle", f"expected a finite number, got {angle!r}")
        parsed.append(Pulse(kind, float(angle)))
    for key in ("label", "target"):
        if key in data and not isinstance(data[key], str):
            raise SequenceFileError(key, "expected a string")
    meta = {k: data[k] for k in ("label", "target") if k in data}
    return PulseSequence(n, tuple(parsed)), meta


def write_sequence(path, seq: PulseSequence, label: str | None = None,
                   target: str | None = None) -> None:
    text = json.dumps(sequence_to_dict(seq, label, target), indent=2) + "\n"
    atomic_write_text(path, text)


def read_sequence(path) -> tuple[PulseSequence, dict]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SequenceFileError("<file>", str(exc)) from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SequenceFileError("<json>", str(exc)) from exc
    return sequence_from_dict(data)


def state_to_dict(state: StateVector) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "n": state.n,
        "basis": state.basis,
        "amps": [[float(a.real), float(a.imag)] for a in state.amps],
    }


def write_state(path, state: StateVector) -> None:
    atomic_write_text(path, json.dumps(state_to_dict(state)) + "\n")


def read_state(path) -> StateVector:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise SequenceFileError("<file>", str(exc)) from exc
    except json.JSONDecodeError as exc:
        raise SequenceFileError("<json>", str(exc)) from exc
    if not isinstance(data, dict):
        raise SequenceFileError("<root>", "expected a JSON object")
    n = data.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise SequenceFileError("n", f"expected a positive integer, got {n!r}")
    basis = data.get("basis", "full")
    amps = data.get("amps")
    try:
        arr = np.array(amps, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError("expected [[re, im], ...]")
        state = StateVector(n, basis, arr[:, 0] + 1j * arr[:, 1])
    except (TypeError, ValueError) as exc:
        raise SequenceFileError("amps", str(exc)) from exc
    norm = state.norm()
    if not math.isclose(norm, 1.0, rel_tol=0, abs_tol=1e-9):
        raise SequenceFileError("amps", f"state is not normalized (norm {norm!r})")
    return state


def _json_number(x):
    if x is None or (isinstance(x, float) and not math.isfinite(x)):
        return None
    return x


def scan_csv_text(scan, seed: int) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SCAN_HEADER)
    for rec in scan.records:
        writer.writerow([
            rec.n,
            "" if rec.min_param_count is None else rec.min_param_count,
            "" if rec.fidelity is None else repr(rec.fidelity),
            seed,
        ])
    return buf.getvalue()


def scan_sidecar(scan, config) -> dict:
    rows = []
    for rec in scan.records:
        row = {"n": rec.n, "min_params": rec.min_param_count,
               "fidelity": _json_number(rec.fidelity), "seed": rec.seed}
        if rec.result is not None:
            res = rec.result
            row.update(i=res.ansatz.i, j=res.ansatz.j, restart_index=res.restart_index,
                       params=[float(p) for p in res.best_params])
        rows.append(row)
    return {
        "schema_version": SCHEMA_VERSION,
        "fit": {"slope": _json_number(scan.slope), "intercept": _json_number(scan.intercept),
                "r": _json_number(scan.r)},
        "config": {k: _json_number(v) for k, v in config.to_dict().items()},
        "rows": rows,
    }


def write_scan(csv_path, scan, config) -> Path:
    """Write the CSV table and its ``.json`` fit sidecar; returns the sidecar path."""
    csv_path = Path(csv_path)
    atomic_write_text(csv_path, scan_csv_text(scan, config.seed))
    sidecar = csv_path.with_suffix(".json")
    atomic_write_text(sidecar, json.dumps(scan_sidecar(scan, config), indent=2) + "\n")
    return sidecar
