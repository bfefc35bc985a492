"""Deterministic CSV output: fixed 17-significant-digit float formatting so that
identical configurations produce byte-identical files."""

from __future__ import annotations

from pathlib import Path


def format_value(v) -> str:
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def write_csv(path, header, rows, meta: list[str] | None = None) -> None:
    """Write rows with a header line; ``meta`` lines (if any) become leading
    '#' comments. No wall-clock content is ever written."""
    path = Path(path)
    with path.open("w", newline="\n") as fh:
        for line in meta or []:
            fh.write(f"# {line}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(format_value(v) for v in row) + "\n")
