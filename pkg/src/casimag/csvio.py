"""Deterministic CSV emission and generic parsing.

All floating-point output uses scientific notation with 12 significant
digits, locale-independent, so identical inputs produce byte-identical
files on every platform.
"""

from __future__ import annotations

import sys


def fmt_float(x: float) -> str:
    """Scientific notation, 12 significant digits."""
    return f"{x:.11e}"


def fmt_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return fmt_float(v)
    return str(v)


def write_csv(path: str, header: list[str], rows) -> None:
    """Write rows (sequences of values) under a header; '-' is stdout."""
    text = "\n".join([",".join(header)]
                     + [",".join(fmt_value(v) for v in row) for row in rows])
    text += "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def read_csv(path: str) -> tuple[list[str], list[list[str]]]:
    """Read (header, rows) from a CSV emitted by this package.

    Skips blank lines and '#' comments; performs no type conversion.
    """
    with open(path, encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError(f"{path}: empty CSV")
    header = lines[0].split(",")
    rows = [ln.split(",") for ln in lines[1:]]
    for i, row in enumerate(rows, start=2):
        if len(row) != len(header):
            raise ValueError(f"{path}: row {i}: expected {len(header)} columns")
    return header, rows
