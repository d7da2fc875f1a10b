"""File formats: unitary matrices, sample sets, and score/curve reports.

All files are JSON with a ``format`` tag and a schema version.  Floats are
written with Python's shortest round-tripping representation, so writing and
re-reading is bit exact.  Output files are written to a temporary path and
renamed into place, so a failed run never leaves a partial file.
"""

from __future__ import annotations

import hashlib
import json
import os

import numpy as np

from .distributions import SampleSet
from .errors import FileFormatError

__all__ = [
    "read_unitary",
    "write_unitary",
    "read_samples",
    "write_samples",
    "write_report",
    "config_digest",
]

UNITARY_FORMAT = "gbslxe-unitary"
SAMPLES_FORMAT = "gbslxe-samples"
REPORT_FORMAT = "gbslxe-report"
SCHEMA_VERSION = 1


def _load(path: str, expected_format: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise FileFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("format") != expected_format:
        raise FileFormatError(f"{path} is not a {expected_format} file")
    if doc.get("version") != SCHEMA_VERSION:
        raise FileFormatError(f"{path} has unsupported version {doc.get('version')}")
    return doc


def write_json_atomic(path: str, doc: dict) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")
    os.replace(tmp, path)


def read_unitary(path: str) -> np.ndarray:
    """Read an m x m complex matrix stored as row-major [re, im] pairs."""
    doc = _load(path, UNITARY_FORMAT)
    try:
        m = int(doc["m"])
        entries = doc["entries"]
    except KeyError as exc:
        raise FileFormatError(f"{path} misses field {exc}") from exc
    if len(entries) != m * m:
        raise FileFormatError(f"{path}: expected {m * m} entries, got {len(entries)}")
    flat = np.array([complex(re, im) for re, im in entries])
    return flat.reshape(m, m)


def write_unitary(path: str, u) -> None:
    u = np.asarray(u, dtype=complex)
    m = u.shape[0]
    doc = {
        "format": UNITARY_FORMAT,
        "version": SCHEMA_VERSION,
        "m": m,
        "entries": [[z.real, z.imag] for z in u.ravel()],
    }
    write_json_atomic(path, doc)


def read_samples(path: str) -> SampleSet:
    doc = _load(path, SAMPLES_FORMAT)
    try:
        m = int(doc["m"])
        raw = doc["samples"]
    except KeyError as exc:
        raise FileFormatError(f"{path} misses field {exc}") from exc
    samples = []
    for row in raw:
        if len(row) != m:
            raise FileFormatError(f"{path}: sample {row} has wrong length")
        if any(int(x) != x or x < 0 for x in row):
            raise FileFormatError(f"{path}: sample {row} has invalid counts")
        samples.append(tuple(int(x) for x in row))
    return SampleSet(
        modes=m,
        samples=samples,
        meta=doc.get("meta", {}),
        unitary_ref=doc.get("unitary_ref"),
    )


def write_samples(path: str, samples: SampleSet) -> None:
    doc = {
        "format": SAMPLES_FORMAT,
        "version": SCHEMA_VERSION,
        "m": samples.modes,
        "unitary_ref": samples.unitary_ref,
        "samples": [list(s) for s in samples.samples],
        "meta": samples.meta,
    }
    write_json_atomic(path, doc)


def config_digest(config: dict) -> str:
    """Stable digest of a run configuration (no timestamps included)."""
    canon = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


def write_report(path: str, kind: str, config: dict, body: dict) -> None:
    """Write a report file; payloads are deterministic given config+seeds."""
    from . import __version__

    doc = {
        "format": REPORT_FORMAT,
        "version": SCHEMA_VERSION,
        "kind": kind,
        "tool_version": __version__,
        "config": config,
        "config_digest": config_digest(config),
    }
    doc.update(body)
    write_json_atomic(path, doc)
