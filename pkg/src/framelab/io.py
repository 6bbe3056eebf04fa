"""Canonical JSON interchange for frames and reports.

Frame files look like::

    {"field": "R", "m": 2, "n": 3, "columns": [[[re, im], [re, im]], ...]}

Floats are written with Python's shortest round-trip repr (at most 17
significant digits), so a written frame re-parses bit for bit.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .frames import Frame, FrameError


def frame_to_dict(frame: Frame) -> dict:
    cols = frame.columns
    return {
        "field": frame.field,
        "m": frame.m,
        "n": frame.n,
        "columns": [
            [[float(z.real), float(z.imag)] for z in cols[:, j]] for j in range(frame.n)
        ],
    }


def frame_from_dict(d: dict) -> Frame:
    try:
        field, m, n, columns = d["field"], int(d["m"]), int(d["n"]), d["columns"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FrameError(f"malformed frame object: {exc}") from None
    if len(columns) != n:
        raise FrameError(f"frame declares n={n} but has {len(columns)} columns")
    a = np.empty((m, n), dtype=complex)
    for j, col in enumerate(columns):
        if len(col) != m:
            raise FrameError(f"column {j} has {len(col)} entries, expected m={m}")
        for i, entry in enumerate(col):
            if len(entry) != 2:
                raise FrameError(f"entry ({i}, {j}) is not a [re, im] pair")
            re, im = float(entry[0]), float(entry[1])
            if field == "R" and im != 0.0:
                raise FrameError(f"real frame has nonzero imaginary part at ({i}, {j})")
            a[i, j] = complex(re, im)
    return Frame(field, a)


def _clean(obj):
    """Make an object JSON-safe: numpy scalars to Python, non-finite floats to strings."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, Frame):
        return frame_to_dict(obj)
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if math.isfinite(x) else repr(x)
    return obj


def dumps(obj, pretty: bool = False) -> str:
    return json.dumps(_clean(obj), indent=2 if pretty else None, sort_keys=False)


def write_json(obj, path, pretty: bool = False) -> None:
    Path(path).write_text(dumps(obj, pretty) + "\n")


def load_frame(path) -> Frame:
    try:
        d = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise FrameError(f"cannot read frame file {path}: {exc}") from None
    return frame_from_dict(d)


def save_frame(frame: Frame, path, pretty: bool = False) -> None:
    write_json(frame_to_dict(frame), path, pretty)
