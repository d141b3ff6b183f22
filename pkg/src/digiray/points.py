"""Bicolored point sets, staircases, and their CSV encoding."""

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .grid import SchemaError

BLUE = "blue"
RED = "red"
EXACT = "exact"
FLOAT = "float"

EXACT_FIELDS = ["color", "x_num", "x_den", "y_num", "y_den"]
FLOAT_FIELDS = ["color", "x", "y"]


@dataclass(frozen=True)
class BicoloredPointSet:
    blue: Tuple[tuple, ...]
    red: Tuple[tuple, ...]
    coordinate_kind: str = EXACT

    def __post_init__(self):
        object.__setattr__(self, "blue", tuple(tuple(p) for p in self.blue))
        object.__setattr__(self, "red", tuple(tuple(p) for p in self.red))
        if self.coordinate_kind not in (EXACT, FLOAT):
            raise ValueError("coordinate_kind must be 'exact' or 'float'")

    @property
    def m(self) -> int:
        return len(self.blue) - len(self.red)

    def in_unit_square(self) -> bool:
        return all(0 <= c <= 1 for p in self.blue + self.red for c in p)

    def as_float(self) -> "BicoloredPointSet":
        conv = lambda pts: tuple((float(x), float(y)) for x, y in pts)
        return BicoloredPointSet(conv(self.blue), conv(self.red), FLOAT)


@dataclass(frozen=True)
class Staircase:
    """Alternating blue, red, ..., blue sequence.

    Each red point shares its y with the blue before it and its x with the
    blue after it, so the points trace a step curve going right and down.
    """

    points: Tuple[Tuple[str, tuple], ...]
    index: int = 0

    def __post_init__(self):
        object.__setattr__(self, "points", tuple((c, tuple(p)) for c, p in self.points))
        problems = staircase_problems(self.points)
        if problems:
            raise ValueError("not a staircase: " + problems[0])

    @property
    def blue(self) -> List[tuple]:
        return [p for c, p in self.points if c == BLUE]

    @property
    def red(self) -> List[tuple]:
        return [p for c, p in self.points if c == RED]

    def __len__(self):
        return len(self.points)


def staircase_problems(points: Sequence[Tuple[str, tuple]]) -> List[str]:
    out = []
    if not points:
        return ["empty sequence"]
    for k, (color, _) in enumerate(points):
        want = BLUE if k % 2 == 0 else RED
        if color != want:
            out.append("point %d should be %s" % (k, want))
    if points[-1][0] != BLUE:
        out.append("last point must be blue")
    for k in range(1, len(points) - 1, 2):
        (_, a), (_, r), (_, b) = points[k - 1], points[k], points[k + 1]
        if not (a[1] == r[1] and a[0] < r[0]):
            out.append("red %d is not right of its left blue" % k)
        if not (b[0] == r[0] and b[1] < r[1]):
            out.append("red %d is not above its next blue" % k)
    return out


def dominated_by_any(p, blues) -> bool:
    return any(b[0] <= p[0] and b[1] <= p[1] for b in blues)


def region_contains(stair: Staircase, p) -> bool:
    """Whether p lies in the up-right region bounded by the staircase."""
    return dominated_by_any(p, stair.blue)


def nested(inner: Staircase, outer: Staircase, strict: bool = False) -> bool:
    """Whether the region of ``outer`` lies inside the region of ``inner``.

    Regions are unions of up-right quadrants of the blue points, so this
    holds exactly when every blue of ``outer`` is dominated by a blue of
    ``inner``; with ``strict`` the domination must be strict in both
    coordinates, so the two curves do not touch.
    """
    for b in outer.blue:
        if strict:
            ok = any(a[0] < b[0] and a[1] < b[1] for a in inner.blue)
        else:
            ok = dominated_by_any(b, inner.blue)
        if not ok:
            return False
    return True


def _fmt_float(v) -> str:
    return "%.17g" % float(v)


def pointset_to_csv(ps: BicoloredPointSet, kind: str = None) -> str:
    kind = kind or ps.coordinate_kind
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if kind == EXACT:
        if ps.coordinate_kind != EXACT:
            raise ValueError("float coordinates cannot be written in exact mode")
        writer.writerow(EXACT_FIELDS)
        for color, pts in ((BLUE, ps.blue), (RED, ps.red)):
            for x, y in pts:
                x, y = Fraction(x), Fraction(y)
                writer.writerow([color, x.numerator, x.denominator, y.numerator, y.denominator])
    else:
        writer.writerow(FLOAT_FIELDS)
        for color, pts in ((BLUE, ps.blue), (RED, ps.red)):
            for x, y in pts:
                writer.writerow([color, _fmt_float(x), _fmt_float(y)])
    return buf.getvalue()


def pointset_from_csv(text: str) -> BicoloredPointSet:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise SchemaError("empty pointset file") from None
    blue, red = [], []
    if header == EXACT_FIELDS:
        kind = EXACT
    elif header == FLOAT_FIELDS:
        kind = FLOAT
    else:
        raise SchemaError("unknown pointset header %r" % (header,))
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise SchemaError("line %d: expected %d fields" % (lineno, len(header)))
        color = row[0]
        if color not in (BLUE, RED):
            raise SchemaError("line %d: color must be blue or red" % lineno)
        try:
            if kind == EXACT:
                x = Fraction(int(row[1]), int(row[2]))
                y = Fraction(int(row[3]), int(row[4]))
            else:
                x, y = float(row[1]), float(row[2])
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError("line %d: %s" % (lineno, exc)) from None
        if not (0 <= x <= 1 and 0 <= y <= 1):
            raise SchemaError("line %d: point outside the unit square" % lineno)
        (blue if color == BLUE else red).append((x, y))
    return BicoloredPointSet(tuple(blue), tuple(red), kind)
