"""On-disk formats: grid fields, energy traces, limit probes, reports.

A grid field is stored as a raw little-endian float64 payload in a
``.field`` file with a JSON sidecar of the same stem describing dimension,
shape, box lengths, dtype, and layout.  Traces and probes are plain CSV
with fixed headers so external plotting needs no schema knowledge.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .spectral import EnergyTrace, GridField, TraceSource


FIELD_DTYPE = "f64-le"
FIELD_LAYOUT = "row-major"


def field_sidecar_path(path: Path) -> Path:
    return Path(path).with_suffix(".json")


def save_field(f: GridField, path) -> Path:
    """Write payload to ``path`` (.field) and the JSON header alongside it."""
    path = Path(path)
    if path.suffix != ".field":
        raise ValueError(f"field payloads use the .field extension, got {path.name}")
    header = {
        "dim": f.n,
        "shape": list(f.shape),
        "box_length": list(f.box_length),
        "dtype": FIELD_DTYPE,
        "layout": FIELD_LAYOUT,
    }
    payload = np.ascontiguousarray(f.samples, dtype="<f8")
    path.write_bytes(payload.tobytes())
    field_sidecar_path(path).write_text(json.dumps(header, sort_keys=True, indent=1) + "\n")
    return path


def load_field(path) -> GridField:
    path = Path(path)
    header = json.loads(field_sidecar_path(path).read_text())
    if header.get("dtype") != FIELD_DTYPE or header.get("layout") != FIELD_LAYOUT:
        raise ValueError(f"unsupported field encoding: {header}")
    shape = tuple(int(s) for s in header["shape"])
    raw = np.frombuffer(path.read_bytes(), dtype="<f8")
    if raw.size != int(np.prod(shape)):
        raise ValueError(
            f"payload holds {raw.size} values; header shape {shape} needs {int(np.prod(shape))}"
        )
    samples = raw.reshape(shape)
    return GridField(int(header["dim"]), shape, tuple(float(L) for L in header["box_length"]), samples)


def save_trace(tr: EnergyTrace, path) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "energy", "source"])
        for t, e in zip(tr.times, tr.values):
            w.writerow([repr(float(t)), repr(float(e)), tr.source.value])
    return path


def load_trace(path) -> EnergyTrace:
    path = Path(path)
    times, values, source = [], [], None
    with path.open() as fh:
        for row in csv.DictReader(fh):
            times.append(float(row["t"]))
            values.append(float(row["energy"]))
            source = row["source"]
    return EnergyTrace(np.array(times), np.array(values), TraceSource(source))


def save_probe(probe, path) -> Path:
    """LimitProbe CSV: rho, value, and the overall verdict on each row."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["rho", "value", "verdict"])
        for rho, v in zip(probe.rho_values, probe.values):
            w.writerow([repr(float(rho)), repr(float(v)), probe.verdict.value])
    return path


def save_classification(cls, trace_path, path) -> Path:
    """DecayClassification JSON with a pointer to its evidence trace CSV."""
    path = Path(path)
    save_trace(cls.evidence, trace_path)
    doc = cls.to_report()
    doc["evidence_trace"] = str(trace_path)
    path.write_text(json.dumps(doc, sort_keys=True, indent=1) + "\n")
    return path
