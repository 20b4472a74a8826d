"""Plain-text artifact writers (CSV and JSON)."""

from __future__ import annotations

import json
from typing import TYPE_CHECKING, Any

import numpy as np

if TYPE_CHECKING:
    from collections.abc import Mapping
    from pathlib import Path

CSV_FORMAT = "%.17g"


def write_csv(path: Path, columns: Mapping[str, np.ndarray]) -> Path:
    """Write equally long columns with a header row at full double precision."""
    names = list(columns)
    data = np.column_stack([np.asarray(columns[name], dtype=float) for name in names])
    path.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(path, data, fmt=CSV_FORMAT, delimiter=",", header=",".join(names), comments="")
    return path


def write_json(path: Path, payload: Any) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(payload) + "\n", encoding="utf-8")
    return path


def dumps(payload: Any) -> str:
    """Deterministic JSON rendering (sorted keys, numpy scalars unwrapped)."""
    return json.dumps(payload, indent=2, sort_keys=True, default=_to_builtin)


def _to_builtin(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    msg = f"cannot serialise {type(value).__name__}"
    raise TypeError(msg)
