"""Plain-text point files.

One point per line, whitespace-separated: `re im` with an optional
third value column (all lines must agree on whether it is present).
`#` starts a comment.  Half-plane files carry a `mode: halfplane`
header line, in which case columns are `x y [value]` with y > 0.

One structured comment is understood by the parser:

    # declare I J LOG_RHO

declares the exact log pseudo-hyperbolic distance for the pair of
0-based point indices (I, J).  It exists for pairs whose true gap sits
below float64 coordinate resolution: the two lines carry identical
coordinates and the declaration preserves the intended geometry.  Any
other comment is ignored, so the files stay hand-editable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .blaschke import PointSequence
from .geometry import DiskPoint, HalfPlanePoint
from .harmonic import DiskMeasure

MODE_CIRCLE = "circle"
MODE_HALFPLANE = "halfplane"


class ParseError(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class SequenceFile:
    mode: str
    xs: np.ndarray
    ys: np.ndarray
    values: np.ndarray | None
    declared: dict

    def __len__(self) -> int:
        return self.xs.size

    def point_sequence(self) -> PointSequence:
        if self.mode != MODE_CIRCLE:
            raise ValueError("half-plane files do not define disk sequences")
        pts = tuple(DiskPoint(x, y) for x, y in zip(self.xs, self.ys))
        return PointSequence(pts, values=self.values,
                             declared_log_rho=self.declared or None)

    def halfplane_points(self) -> tuple:
        if self.mode != MODE_HALFPLANE:
            raise ValueError("not a half-plane file")
        return tuple(HalfPlanePoint(x, y) for x, y in zip(self.xs, self.ys))

    def measure(self) -> DiskMeasure:
        """Atoms at the points; masses from the value column, defaulting
        to 1 - |z| (the standard gap-mass assignment)."""
        if self.mode != MODE_CIRCLE:
            raise ValueError("half-plane files do not define disk measures")
        zs = self.xs + 1j * self.ys
        masses = self.values if self.values is not None else 1.0 - np.abs(zs)
        return DiskMeasure(zs, masses)


def parse_text(text: str) -> SequenceFile:
    mode = None
    xs: list = []
    ys: list = []
    values: list = []
    declares: list = []
    has_values = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].split()
            if body and body[0] == "declare":
                if len(body) != 4:
                    raise ParseError(line_no, "declare needs: # declare I J LOG_RHO")
                try:
                    i, j = int(body[1]), int(body[2])
                    lr = float(body[3])
                except ValueError:
                    raise ParseError(line_no, "malformed declare indices or value") from None
                declares.append((line_no, i, j, lr))
            continue
        if line.startswith("mode:"):
            declared_mode = line[5:].strip()
            if declared_mode not in (MODE_CIRCLE, MODE_HALFPLANE):
                raise ParseError(line_no, f"unknown mode {declared_mode!r}")
            if mode is not None and mode != declared_mode:
                raise ParseError(line_no, "conflicting mode headers")
            mode = declared_mode
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise ParseError(line_no, f"expected 2 or 3 columns, got {len(parts)}")
        try:
            nums = [float(p) for p in parts]
        except ValueError:
            raise ParseError(line_no, f"not a number row: {line!r}") from None
        if not all(np.isfinite(nums)):
            raise ParseError(line_no, "non-finite coordinate or value")
        row_has_value = len(parts) == 3
        if has_values is None:
            has_values = row_has_value
        elif has_values != row_has_value:
            raise ParseError(line_no, "mixed 2- and 3-column point rows")
        xs.append(nums[0])
        ys.append(nums[1])
        if row_has_value:
            values.append(nums[2])
    mode = mode or MODE_CIRCLE
    n = len(xs)
    xa = np.array(xs, dtype=float)
    ya = np.array(ys, dtype=float)
    if mode == MODE_CIRCLE:
        bad = np.flatnonzero(xa * xa + ya * ya >= 1.0)
        if bad.size:
            raise ParseError(0, f"point {int(bad[0])} lies outside the open disk")
    else:
        bad = np.flatnonzero(ya <= 0.0)
        if bad.size:
            raise ParseError(0, f"half-plane point {int(bad[0])} needs y > 0")
    declared = {}
    for line_no, i, j, lr in declares:
        if i == j or not (0 <= i < n) or not (0 <= j < n):
            raise ParseError(line_no, f"declare indices ({i}, {j}) out of range")
        if lr >= 0.0:
            raise ParseError(line_no, "declared log distance must be negative")
        declared[(i, j)] = lr
    return SequenceFile(mode, xa, ya,
                        np.array(values) if has_values else None, declared)


def read_path(path) -> SequenceFile:
    with open(path, encoding="utf-8") as fh:
        return parse_text(fh.read())


def format_points(xs, ys, values=None, mode: str = MODE_CIRCLE,
                  declared=None, comments=()) -> str:
    """Render rows in the file format; floats use repr so that emitted
    files round-trip bit-for-bit."""
    lines = [f"# {c}" for c in comments]
    if mode == MODE_HALFPLANE:
        lines.append("mode: halfplane")
    xs = list(xs)
    ys = list(ys)
    vals = None if values is None else list(values)
    if vals is not None and len(vals) != len(xs):
        raise ValueError("value column length mismatch")
    for idx, (x, y) in enumerate(zip(xs, ys)):
        row = f"{float(x)!r} {float(y)!r}"
        if vals is not None:
            row += f" {float(vals[idx])!r}"
        lines.append(row)
    if declared:
        seen = set()
        for (i, j), lr in sorted(declared.items()):
            key = (min(i, j), max(i, j))
            if key in seen:
                continue
            seen.add(key)
            lines.append(f"# declare {key[0]} {key[1]} {float(lr)!r}")
    return "\n".join(lines) + "\n"


def format_sequence(seq: PointSequence, comments=()) -> str:
    return format_points([p.re for p in seq], [p.im for p in seq],
                         values=seq.values, declared=seq.declared_log_rho,
                         comments=comments)


def format_measure(mu: DiskMeasure, comments=()) -> str:
    return format_points(mu.zs.real, mu.zs.imag, values=mu.masses,
                         comments=comments)
