"""Reproducible CSV and JSON emitters plus decay-curve CSV ingestion.

Every file starts with comment lines recording the tool version, the
subcommand that produced it and the full parameter set, so results can
be regenerated byte for byte.  Formatting is fixed-width %g with a
``.`` decimal separator regardless of locale.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .analysis import DecayCurve
from .version import TOOL_NAME, __version__

__all__ = [
    "format_value",
    "header_lines",
    "write_csv",
    "write_json",
    "read_decay_csv",
]

FLOAT_FMT = "%.10g"


def format_value(v) -> str:
    if isinstance(v, float):
        return FLOAT_FMT % v
    if isinstance(v, (list, tuple, np.ndarray)):
        return "[" + ",".join(format_value(float(x)) for x in v) + "]"
    return str(v)


def header_lines(subcommand: str, params: dict) -> list[str]:
    items = " ".join(f"{k}={format_value(v)}" for k, v in sorted(params.items()))
    return [
        f"# {TOOL_NAME} {__version__}",
        f"# subcommand: {subcommand}",
        f"# params: {items}" if items else "# params:",
    ]


def write_csv(path, names: list[str], columns, subcommand: str,
              params: dict, fmt: str = FLOAT_FMT,
              extra_comments: list[str] | None = None) -> Path:
    """Write named columns with provenance comments, LF endings.

    Columns may be numeric or strings; ``extra_comments`` lines are
    appended to the provenance block (without the leading ``#``).
    """
    cols = [np.atleast_1d(np.asarray(c)) for c in columns]
    if len(cols) != len(names):
        raise ValueError("one name per column required")
    n = cols[0].size
    if any(c.size != n for c in cols):
        raise ValueError("columns must share a length")

    def cell(c, i):
        return str(c[i]) if c.dtype.kind in "USO" else fmt % float(c[i])

    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in header_lines(subcommand, params):
            fh.write(line + "\n")
        for line in extra_comments or ():
            fh.write(f"# {line}\n")
        fh.write(",".join(names) + "\n")
        for i in range(n):
            fh.write(",".join(cell(c, i) for c in cols) + "\n")
    return path


def write_json(path, payload: dict, subcommand: str, params: dict) -> Path:
    """Write a result object with an embedded provenance block."""
    doc = dict(payload)
    doc["meta"] = {
        "tool": TOOL_NAME,
        "version": __version__,
        "subcommand": subcommand,
        "params": {k: format_value(v) for k, v in sorted(params.items())},
    }
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def read_decay_csv(path) -> DecayCurve:
    """Read a `tau_s,signal[,sigma]` CSV, ignoring `#` comment lines."""
    rows = []
    header = None
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if header is None:
                header = [h.strip() for h in line.split(",")]
                continue
            rows.append([float(x) for x in line.split(",")])
    if header is None or header[:2] != ["tau_s", "signal"]:
        raise ValueError("expected header 'tau_s,signal[,sigma]'")
    if header not in (["tau_s", "signal"], ["tau_s", "signal", "sigma"]):
        raise ValueError(f"unexpected columns {header!r}")
    data = np.asarray(rows, dtype=float)
    if data.ndim != 2 or data.shape[1] != len(header):
        raise ValueError("ragged or empty decay table")
    sigma = data[:, 2] if len(header) == 3 else None
    return DecayCurve(tau_s=data[:, 0], signal=data[:, 1], sigma=sigma)
