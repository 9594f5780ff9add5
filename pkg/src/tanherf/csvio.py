"""CSV and plain-text output with atomic file replacement."""

from __future__ import annotations

import csv
import io
import os
import sys
import tempfile


def _fmt(v):
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        # shortest repr round-trips exactly
        return repr(v)
    return str(v)


def rows_to_csv(rows: list[dict], columns: list[str] | None = None) -> str:
    if not rows and columns is None:
        return ""
    columns = columns or list(rows[0])
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(r[c]) for c in columns])
    return buf.getvalue()


def rows_to_text(rows: list[dict], columns: list[str] | None = None) -> str:
    if not rows:
        return ""
    columns = columns or list(rows[0])
    cells = [[_fmt(r[c]) for c in columns] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(columns)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(columns, widths))]
    lines += ["  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in cells]
    return "\n".join(lines) + "\n"


def read_csv(text: str) -> list[dict]:
    """Parse CSV text back into rows of int/float/str values."""
    out = []
    for rec in csv.DictReader(io.StringIO(text)):
        row = {}
        for k, v in rec.items():
            for cast in (int, float):
                try:
                    row[k] = cast(v)
                    break
                except ValueError:
                    continue
            else:
                row[k] = v
        out.append(row)
    return out


def write_output(text: str, path: str | None) -> None:
    """Write to ``path`` via temp file + rename, or to stdout if no path."""
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    target = os.path.abspath(path)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(target), prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
