"""Experiment result records and their deterministic CSV/JSON serialization.

Numbers are written with 17 significant digits, which round-trips IEEE-754
doubles exactly; identical records therefore serialize to byte-identical
files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import IoFailure


@dataclass(frozen=True)
class ExperimentRecord:
    experiment: str
    params_echo: dict
    columns: dict[str, np.ndarray]
    provenance: str
    summary: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        lengths = {len(v) for v in self.columns.values()}
        if len(lengths) > 1:
            raise ValueError(f"columns have unequal lengths: {lengths}")


def format_number(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def _format_param(v) -> str:
    if isinstance(v, (list, tuple)):
        return ",".join(_format_param(i) for i in v)
    if isinstance(v, str):
        return v
    return format_number(v)


def _csv_text(record: ExperimentRecord) -> str:
    lines = [f"# provenance: {record.provenance}"]
    for k, v in record.params_echo.items():
        lines.append(f"# param {k} = {_format_param(v)}")
    for k, v in record.summary.items():
        lines.append(f"# summary {k} = {format_number(v)}")
    names = list(record.columns)
    lines.append(",".join(names))
    if names:
        n_rows = len(record.columns[names[0]])
        for i in range(n_rows):
            lines.append(",".join(format_number(record.columns[k][i]) for k in names))
    return "\n".join(lines) + "\n"


def _json_value(v) -> str:
    # strings through the stdlib escaper; numbers through the 17-digit format
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_json_value(i) for i in v) + "]"
    if isinstance(v, dict):
        inner = ", ".join(f"{json.dumps(str(k))}: {_json_value(x)}" for k, x in v.items())
        return "{" + inner + "}"
    return format_number(v)


def _json_text(record: ExperimentRecord) -> str:
    obj = {
        "experiment": record.experiment,
        "provenance": record.provenance,
        "params": record.params_echo,
        "summary": record.summary,
        "columns": {k: np.asarray(v) for k, v in record.columns.items()},
    }
    return _json_value(obj) + "\n"


def write_record(record: ExperimentRecord, out_dir, fmt: str, seed: int) -> Path:
    """Write <experiment>-<seed>.<fmt> under out_dir; returns the path."""
    if fmt not in ("csv", "json"):
        raise ValueError(f"format must be csv or json, got {fmt!r}")
    text = _csv_text(record) if fmt == "csv" else _json_text(record)
    path = Path(out_dir) / f"{record.experiment}-{seed}.{fmt}"
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as e:
        raise IoFailure(f"cannot write {path}: {e}") from e
    return path
