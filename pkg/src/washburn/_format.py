"""Deterministic text serialization: 17 significant digits, LF endings.

The stdlib json encoder cannot be told to widen float output, so reports
go through this small emitter instead. Data files carry no timestamps;
identical inputs must produce byte-identical files.
"""
from __future__ import annotations

import math
from typing import Iterable

import numpy as np


def fmt17(x: float) -> str:
    """A float at 17 significant digits (scientific notation)."""
    if not math.isfinite(x):
        raise ValueError(f"non-finite value {x!r} in output")
    return format(float(x), ".16e")


def _emit(obj, indent: int, level: int) -> str:
    pad = " " * (indent * level)
    pad_in = " " * (indent * (level + 1))
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt17(float(obj))
    if isinstance(obj, str):
        out = obj.replace("\\", "\\\\").replace('"', '\\"')
        out = out.replace("\n", "\\n").replace("\r", "\\r").replace("\t", "\\t")
        return f'"{out}"'
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = (f'{pad_in}"{key}": {_emit(value, indent, level + 1)}'
                 for key, value in obj.items())
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        items = (f"{pad_in}{_emit(value, indent, level + 1)}" for value in seq)
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_json(obj, indent: int = 2) -> str:
    return _emit(obj, indent, 0) + "\n"


def write_json(path, obj):
    with open(path, "w", newline="\n") as fh:
        fh.write(dumps_json(obj))


def write_csv(path, header: str, columns: Iterable[np.ndarray]):
    cols = [np.asarray(col, dtype=float) for col in columns]
    with open(path, "w", newline="\n") as fh:
        fh.write(header + "\n")
        for row in zip(*cols):
            fh.write(",".join(fmt17(x) for x in row) + "\n")
