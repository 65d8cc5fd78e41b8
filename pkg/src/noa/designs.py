"""Design matrices, exact strength verification, and the CSV file format.

A design is an n-by-d integer matrix with a single level count s shared by
all columns.  Strength is verified by exhaustive counting: for every
t-subset of columns, every level t-tuple must occur exactly n/s^t times.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import (
    ColumnIndexError,
    FormatError,
    NotDivisorError,
    StrengthError,
)


@dataclass(frozen=True, eq=False)
class Design:
    """An n x d matrix whose entries are levels in [0, s)."""

    matrix: np.ndarray
    s: int

    def __post_init__(self):
        mat = np.ascontiguousarray(self.matrix, dtype=np.int64)
        if mat.ndim != 2 or mat.shape[0] < 1 or mat.shape[1] < 1:
            raise ValueError("matrix must be 2-d and nonempty")
        if self.s < 1:
            raise ValueError("level count s must be >= 1")
        if mat.min() < 0 or mat.max() >= self.s:
            raise ValueError(f"entries must lie in [0, {self.s})")
        mat.flags.writeable = False
        object.__setattr__(self, "matrix", mat)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def d(self) -> int:
        return self.matrix.shape[1]

    def __repr__(self) -> str:
        return f"Design(n={self.n}, d={self.d}, s={self.s})"


@dataclass(frozen=True)
class Violation:
    columns: tuple[int, ...]
    levels: tuple[int, ...]
    observed: int
    expected: float


@dataclass(frozen=True)
class StrengthReport:
    t: int
    ok: bool
    lam: int | None
    violation: Violation | None


def check_strength(design: Design, t: int) -> StrengthReport:
    """Exhaustively verify the orthogonal-array property at strength t.

    Reports the lexicographically first violating (column tuple, level tuple)
    when the design fails.
    """
    if not 1 <= t <= design.d:
        raise StrengthError(f"strength t={t} outside [1, {design.d}]")
    n, s = design.n, design.s
    cells = s**t
    expected = n / cells
    lam = n // cells if n % cells == 0 else None
    for cols in itertools.combinations(range(design.d), t):
        idx = np.zeros(n, dtype=np.int64)
        for c in cols:
            idx = idx * s + design.matrix[:, c]
        counts = np.bincount(idx, minlength=cells)
        if lam is not None and (counts == lam).all():
            continue
        bad = np.flatnonzero(counts != expected)
        first = int(bad[0]) if bad.size else 0
        levels = []
        v = first
        for _ in range(t):
            levels.append(v % s)
            v //= s
        levels.reverse()
        return StrengthReport(
            t=t,
            ok=False,
            lam=None,
            violation=Violation(cols, tuple(levels), int(counts[first]), expected),
        )
    return StrengthReport(t=t, ok=True, lam=lam, violation=None)


def collapse(design: Design, s_coarse: int) -> Design:
    """View the design at coarser resolution: level -> level // (s/s_coarse)."""
    if s_coarse < 1 or design.s % s_coarse != 0:
        raise NotDivisorError(f"{s_coarse} does not divide s={design.s}")
    step = design.s // s_coarse
    return Design(design.matrix // step, s=s_coarse)


def replicate(design: Design, k: int) -> Design:
    """Vertically stack k copies; strength is preserved with index k*lambda."""
    if k < 1:
        raise ValueError(f"replication count k={k} must be >= 1")
    return Design(np.tile(design.matrix, (k, 1)), s=design.s)


def select_columns(design: Design, indices) -> Design:
    indices = list(indices)
    if len(set(indices)) != len(indices):
        raise ColumnIndexError(f"duplicate column in {indices}")
    for i in indices:
        if not 0 <= i < design.d:
            raise ColumnIndexError(f"column {i} outside [0, {design.d})")
    return Design(design.matrix[:, indices], s=design.s)


# --- design CSV format -------------------------------------------------------
#
# First line:  # noa-design v1 n=<n> d=<d> s=<s> [key=value ...]
# Then n lines of d comma-separated integers, each in [0, s).

_MAGIC = "# noa-design v1"


def format_design(design: Design, extra: dict[str, str] | None = None) -> str:
    fields = [f"n={design.n}", f"d={design.d}", f"s={design.s}"]
    for k, v in (extra or {}).items():
        fields.append(f"{k}={v}")
    lines = [f"{_MAGIC} {' '.join(fields)}"]
    for row in design.matrix:
        lines.append(",".join(str(int(v)) for v in row))
    return "\n".join(lines) + "\n"


def save_design(design: Design, path, extra: dict[str, str] | None = None) -> None:
    with open(path, "w") as fh:
        fh.write(format_design(design, extra))


def parse_design(text: str) -> tuple[Design, dict[str, str]]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith(_MAGIC):
        raise FormatError(f"missing '{_MAGIC}' header")
    meta: dict[str, str] = {}
    for token in lines[0][len(_MAGIC):].split():
        if "=" not in token:
            raise FormatError(f"bad header token {token!r}")
        key, val = token.split("=", 1)
        meta[key] = val
    try:
        n, d, s = int(meta["n"]), int(meta["d"]), int(meta["s"])
    except (KeyError, ValueError) as exc:
        raise FormatError(f"header must carry integer n, d, s: {exc}") from exc
    if len(lines) - 1 != n:
        raise FormatError(f"expected {n} rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        try:
            row = [int(v) for v in ln.split(",")]
        except ValueError as exc:
            raise FormatError(f"bad row {ln!r}") from exc
        if len(row) != d:
            raise FormatError(f"row {ln!r} has {len(row)} entries, expected {d}")
        for v in row:
            if not 0 <= v < s:
                raise FormatError(f"entry {v} outside [0, {s})")
        rows.append(row)
    return Design(np.array(rows, dtype=np.int64), s=s), meta


def load_design(path) -> tuple[Design, dict[str, str]]:
    with open(path) as fh:
        return parse_design(fh.read())


# --- 64-run golden fixture ---------------------------------------------------
#
# A 64 x 5 design with 8 levels: strength 2 with index 1, and strength 3 with
# index 1 after collapsing to 4 levels.  Rows are listed one per 5-digit entry.

_FIXTURE_COLUMNS = """
11111 13333 15555 17777 00357 02175 04713 06531 01573 03751 05137 07315 10735 12517 14371 16153
21364 23146 25720 27502 30122 32300 34566 36744 31706 33524 35342 37160 20540 22762 24104 26326
51427 53605 55063 57241 40661 42443 44225 46007 41045 43267 45401 47623 50203 52021 54647 56465
61652 63470 65216 67034 70414 72636 74050 76272 71230 73012 75674 77456 60076 62254 64432 66610
"""


def nested64_fixture() -> Design:
    """The checked-in 64-run, 5-factor, 8-level nested design."""
    rows = []
    for block in _FIXTURE_COLUMNS.split():
        rows.append([int(ch) for ch in block])
    return Design(np.array(rows, dtype=np.int64), s=8)
