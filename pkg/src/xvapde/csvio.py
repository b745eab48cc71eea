"""CSV writing shared by the export paths.

Floats carry 17 significant digits so every float64 round-trips exactly and
repeated runs produce byte-identical files; line endings are pinned to \\n.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Iterable, Sequence


def fmt(v: float) -> str:
    return format(float(v), ".17g")


def write_rows(path: str | Path, rows: Iterable[Sequence[str]]) -> None:
    with open(path, "w", newline="") as f:
        csv.writer(f, lineterminator="\n").writerows(rows)
