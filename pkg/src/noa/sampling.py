"""Turn integer designs into point sets in the unit cube.

Each level becomes a stratum of width 1/s; points land uniformly at random
inside their stratum (default) or exactly at its midpoint.  Midpoint mode
turns the balance properties of a strength-t design into exact zeros of
low-order centered product integrands, which the tests rely on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .designs import Design
from .errors import FormatError
from .rng import STAGE_JITTER, stream


@dataclass(frozen=True, eq=False)
class PointSet:
    points: np.ndarray

    def __post_init__(self):
        pts = np.ascontiguousarray(self.points, dtype=np.float64)
        if pts.ndim != 2:
            raise ValueError("points must be 2-d")
        if pts.size and (pts.min() < 0.0 or pts.max() >= 1.0):
            raise ValueError("coordinates must lie in [0, 1)")
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]


def to_points(design: Design, mode: str = "uniform", seed: int = 0) -> PointSet:
    """Place one point per design row; floor(x * s) recovers the design."""
    if mode == "midpoint":
        offset = 0.5
    elif mode == "uniform":
        offset = stream(seed, STAGE_JITTER).random(design.matrix.shape)
    else:
        raise ValueError(f"mode must be 'uniform' or 'midpoint', got {mode!r}")
    return PointSet((design.matrix + offset) / design.s)


# --- points CSV format -------------------------------------------------------
#
# First line:  # noa-points v1 n=<n> d=<d>
# Then n lines of d floats at 17 significant digits (round-trip exact).

_MAGIC = "# noa-points v1"


def format_points(ps: PointSet) -> str:
    lines = [f"{_MAGIC} n={ps.n} d={ps.d}"]
    for row in ps.points:
        lines.append(",".join(f"{x:.17g}" for x in row))
    return "\n".join(lines) + "\n"


def save_points(ps: PointSet, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_points(ps))


def parse_points(text: str) -> PointSet:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith(_MAGIC):
        raise FormatError(f"missing '{_MAGIC}' header")
    meta = dict(tok.split("=", 1) for tok in lines[0][len(_MAGIC):].split())
    try:
        n, d = int(meta["n"]), int(meta["d"])
    except (KeyError, ValueError) as exc:
        raise FormatError(f"header must carry integer n, d: {exc}") from exc
    if len(lines) - 1 != n:
        raise FormatError(f"expected {n} rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        row = [float(v) for v in ln.split(",")]
        if len(row) != d:
            raise FormatError(f"row {ln!r} has {len(row)} entries, expected {d}")
        rows.append(row)
    return PointSet(np.array(rows, dtype=np.float64))


def load_points(path) -> PointSet:
    with open(path) as fh:
        return parse_points(fh.read())
