"""JSON frame files.

A frame file looks like::

    {
      "label": "parseval",
      "payload": {"algebra_dim": 1, "module_rank": 2, "operators": [...]},
      "schema_version": 1
    }

``payload`` may instead be ``{"algebra_dim": n, "vectors": [...]}`` (vector
form, rank 1).  A bare payload without the wrapper is also accepted.
Matrices are lists of rows; complex entries are ``[re, im]`` pairs.

Output is canonical: sorted keys, matrix rows on one line, floats in
17-significant-digit form, so save -> load -> save is byte-identical.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import FrameError, ParseError
from .frames import OperatorFrame, vector_frame
from .module import FrameContext

SCHEMA_VERSION = 1


def _fmt_float(x: float) -> str:
    x = float(x) + 0.0  # folds -0.0 into 0.0
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x!r}")
    return format(x, ".17g")


def _inline(value, depth=0) -> bool:
    if isinstance(value, dict):
        return False
    if isinstance(value, list):
        return depth < 2 and all(_inline(v, depth + 1) for v in value)
    return True


def _emit(value, indent: int) -> str:
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            return "{}"
        parts = [f'{pad}  {json.dumps(str(k))}: {_emit(value[k], indent + 1)}'
                 for k in sorted(value)]
        return "{\n" + ",\n".join(parts) + f"\n{pad}}}"
    if isinstance(value, list):
        if _inline(value):
            return "[" + ", ".join(_emit(v, indent) for v in value) + "]"
        parts = [f"{pad}  {_emit(v, indent + 1)}" for v in value]
        return "[\n" + ",\n".join(parts) + f"\n{pad}]"
    if isinstance(value, bool) or value is None:
        return json.dumps(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _fmt_float(value)
    if isinstance(value, str):
        return json.dumps(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps(obj) -> str:
    """Canonical JSON text (trailing newline included)."""
    return _emit(obj, 0) + "\n"


def matrix_to_json(mat) -> list:
    mat = np.asarray(mat, dtype=np.complex128)
    return [[[float(z.real), float(z.imag)] for z in row] for row in mat]


def _reject_constant(name):
    raise ParseError(f"non-finite number {name} is not allowed")


def loads(text: str):
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc


def _number(v, where) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ParseError(f"{where}: expected a number, got {v!r}")
    return float(v)


def matrix_from_json(obj, shape: tuple[int, int], where: str = "matrix") -> np.ndarray:
    rows, cols = shape
    if not isinstance(obj, list) or len(obj) != rows:
        raise ParseError(f"{where}: expected {rows} rows")
    out = np.empty(shape, dtype=np.complex128)
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != cols:
            raise ParseError(f"{where}: row {i} must have {cols} entries")
        for j, entry in enumerate(row):
            if isinstance(entry, list):
                if len(entry) != 2:
                    raise ParseError(f"{where}[{i}][{j}]: complex entries are [re, im]")
                re, im = (_number(e, f"{where}[{i}][{j}]") for e in entry)
            else:
                re, im = _number(entry, f"{where}[{i}][{j}]"), 0.0
            out[i, j] = complex(re, im)
    return out


def _positive_int(payload, key) -> int:
    v = payload.get(key)
    if isinstance(v, bool) or not isinstance(v, int) or v < 1:
        raise ParseError(f"{key!r} must be a positive integer, got {v!r}")
    return v


def frame_to_payload(F: OperatorFrame) -> dict:
    return {
        "algebra_dim": F.ctx.algebra_dim,
        "module_rank": F.ctx.module_rank,
        "operators": [matrix_to_json(op.mat) for op in F.ops],
    }


def frame_from_payload(payload, label: str | None = None) -> OperatorFrame:
    if not isinstance(payload, dict):
        raise ParseError("frame payload must be a JSON object")
    n = _positive_int(payload, "algebra_dim")
    try:
        if "vectors" in payload:
            if payload.get("module_rank", 1) != 1:
                raise ParseError("vector form implies module_rank 1")
            vecs = payload["vectors"]
            if not isinstance(vecs, list) or not vecs:
                raise ParseError("'vectors' must be a non-empty list")
            mats = [matrix_from_json(v, (n, n), f"vectors[{i}]") for i, v in enumerate(vecs)]
            return vector_frame(mats, FrameContext(n, 1), label)
        k = _positive_int(payload, "module_rank")
        ops = payload.get("operators")
        if not isinstance(ops, list) or not ops:
            raise ParseError("'operators' must be a non-empty list")
        nk = n * k
        mats = [matrix_from_json(m, (nk, nk), f"operators[{i}]") for i, m in enumerate(ops)]
        return OperatorFrame.from_mats(FrameContext(n, k), mats, label)
    except ParseError:
        raise
    except FrameError as exc:
        raise ParseError(str(exc)) from exc


def frame_to_file_obj(F: OperatorFrame) -> dict:
    return {"label": F.label, "payload": frame_to_payload(F), "schema_version": SCHEMA_VERSION}


def frame_from_file_obj(obj) -> OperatorFrame:
    if not isinstance(obj, dict):
        raise ParseError("frame file must be a JSON object")
    if "payload" not in obj:
        return frame_from_payload(obj, obj.get("label"))
    if obj.get("schema_version") != SCHEMA_VERSION:
        raise ParseError(f"unsupported schema_version {obj.get('schema_version')!r}")
    label = obj.get("label")
    if label is not None and not isinstance(label, str):
        raise ParseError("label must be a string or null")
    return frame_from_payload(obj["payload"], label)


def dumps_frame(F: OperatorFrame) -> str:
    return dumps(frame_to_file_obj(F))


def loads_frame(text: str) -> OperatorFrame:
    return frame_from_file_obj(loads(text))


def save_frame(F: OperatorFrame, path) -> None:
    Path(path).write_text(dumps_frame(F), encoding="utf-8")


def load_frame(path) -> OperatorFrame:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return loads_frame(text)
