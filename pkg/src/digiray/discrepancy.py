"""Bichromatic discrepancy D(x, y) = m x y - (B[x, y] - R[x, y]), m = b - r.

``discrepancy_star`` returns the supremum of |D| over the closed unit
square.  Candidate coordinates split the square into cells on which the
counts are constant, so the supremum of D over a cell is the limit at its
upper-right corner and the infimum is the value at its lower-left corner.
A cell only needs to be examined when neither neighbour dominates it:
for the supremum, moving one cell right or up must raise the count, and
for the infimum, moving one cell left or down must lower it.  Those cells
are the crossings of "active" column and row intervals, found by a sweep,
and their counts come from an offline Fenwick-tree pass.  The work is
proportional to the number of points plus the number of such crossings,
which stays linear for nested staircases.
"""

from bisect import bisect_left, bisect_right, insort
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

INCLUSIVE = "inclusive"
LEFT_LIMIT = "left-limit"

Closure = Tuple[str, str]


class NonPositiveM(ValueError):
    pass


@dataclass(frozen=True)
class DiscrepancyResult:
    value: Union[Fraction, float]
    witness: Tuple[object, object, Closure]
    sign: int


def _closure(closure) -> Closure:
    if isinstance(closure, str):
        closure = (closure, closure)
    for c in closure:
        if c not in (INCLUSIVE, LEFT_LIMIT):
            raise ValueError("closure must be 'inclusive' or 'left-limit'")
    return tuple(closure)


def prefix_count(points, x, y, closure=INCLUSIVE) -> int:
    """Points in [0, x] x [0, y]; a left-limit axis uses a strict bound."""
    cx, cy = _closure(closure)
    n = 0
    for px, py in points:
        okx = px <= x if cx == INCLUSIVE else px < x
        oky = py <= y if cy == INCLUSIVE else py < y
        n += okx and oky
    return n


def _m(blue, red) -> int:
    m = len(blue) - len(red)
    if m <= 0:
        raise NonPositiveM("need more blue than red points, got b=%d r=%d" % (len(blue), len(red)))
    return m


def discrepancy_at(blue, red, x, y, closure=INCLUSIVE):
    m = _m(blue, red)
    return m * x * y - (prefix_count(blue, x, y, closure) - prefix_count(red, x, y, closure))


class _Fenwick:
    def __init__(self, n):
        self.n = n
        self.tree = [0] * (n + 1)

    def add(self, i, w):
        i += 1
        while i <= self.n:
            self.tree[i] += w
            i += i & -i

    def prefix(self, i):
        """Sum of entries 0..i."""
        i += 1
        s = 0
        while i > 0:
            s += self.tree[i]
            i -= i & -i
        return s


def _active_intervals(entries: List[Tuple[int, int]], size: int) -> List[Tuple[int, int]]:
    """Index ranges where the running sum of (position, weight) is positive."""
    merged: Dict[int, int] = {}
    for pos, w in entries:
        merged[pos] = merged.get(pos, 0) + w
    order = sorted(merged)
    out = []
    total = 0
    for k, pos in enumerate(order):
        total += merged[pos]
        end = order[k + 1] - 1 if k + 1 < len(order) else size - 1
        if total > 0 and end >= pos:
            out.append((pos, end))
    return out


def _crossings(vsegs, hsegs):
    """Pairs (i, j) where a vertical segment at i covers j and a horizontal
    segment at j covers i.  Horizontal segments of one row never overlap."""
    starts: Dict[int, List[int]] = {}
    ends: Dict[int, List[int]] = {}
    for j, lo, hi in hsegs:
        starts.setdefault(lo, []).append(j)
        ends.setdefault(hi, []).append(j)
    by_col: Dict[int, List[Tuple[int, int]]] = {}
    for i, lo, hi in vsegs:
        by_col.setdefault(i, []).append((lo, hi))
    active: List[int] = []
    out = []
    for i in sorted(set(starts) | set(ends) | set(by_col)):
        for j in starts.get(i, ()):
            insort(active, j)
        for lo, hi in by_col.get(i, ()):
            a = bisect_left(active, lo)
            b = bisect_right(active, hi)
            out.extend((i, j) for j in active[a:b])
        for j in ends.get(i, ()):
            del active[bisect_left(active, j)]
    return out


def _counts_at(cells, col_pts, ny):
    """Offline dominance sums F(i, j) for a list of cells."""
    order = sorted(range(len(cells)), key=lambda k: cells[k][0])
    fw = _Fenwick(ny)
    res = [0] * len(cells)
    col = 0
    for k in order:
        i, j = cells[k]
        while col <= i:
            for yr, w in col_pts.get(col, ()):
                fw.add(yr, w)
            col += 1
        res[k] = fw.prefix(j)
    return res


def discrepancy_star(blue: Sequence, red: Sequence) -> DiscrepancyResult:
    """Exact sup of |D| over [0,1]^2 with a witness corner and closure."""
    m = _m(blue, red)
    pts = [(p[0], p[1], 1) for p in blue] + [(p[0], p[1], -1) for p in red]
    xs = sorted(set([0, 1] + [p[0] for p in pts]))
    ys = sorted(set([0, 1] + [p[1] for p in pts]))
    nx, ny = len(xs), len(ys)
    xr = {x: k for k, x in enumerate(xs)}
    yr = {y: k for k, y in enumerate(ys)}
    col_pts: Dict[int, List[Tuple[int, int]]] = {}
    row_pts: Dict[int, List[Tuple[int, int]]] = {}
    for x, y, w in pts:
        col_pts.setdefault(xr[x], []).append((yr[y], w))
        row_pts.setdefault(yr[y], []).append((xr[x], w))
    col_act = {c: _active_intervals(e, ny) for c, e in col_pts.items()}
    row_act = {r: _active_intervals(e, nx) for r, e in row_pts.items()}

    # supremum: cell (i, j) is [x_i, x_{i+1}) x [y_j, y_{j+1}); interior
    # cells need column i+1 active at row j and row j+1 active at column i
    v_sup = [(c - 1, lo, min(hi, ny - 2)) for c, segs in col_act.items() if c >= 1 for lo, hi in segs if lo <= ny - 2]
    h_sup = [(r - 1, lo, min(hi, nx - 2)) for r, segs in row_act.items() if r >= 1 for lo, hi in segs if lo <= nx - 2]
    sup_cells = _crossings(v_sup, h_sup)
    # infimum: lower-left corners (i, j) with column i active at j and row j
    # active at i
    v_inf = [(c, lo, hi) for c, segs in col_act.items() for lo, hi in segs]
    h_inf = [(r, lo, hi) for r, segs in row_act.items() for lo, hi in segs]
    inf_cells = _crossings(v_inf, h_inf)
    # boundary cells are always examined
    sup_cells += [(nx - 1, j) for j in range(ny)] + [(i, ny - 1) for i in range(nx - 1)]
    inf_cells += [(0, j) for j in range(ny)] + [(i, 0) for i in range(1, nx)]

    counts = _counts_at(sup_cells + inf_cells, col_pts, ny)
    best = None
    for k, (i, j) in enumerate(sup_cells):
        ux, cx = (xs[i + 1], LEFT_LIMIT) if i < nx - 1 else (xs[i], INCLUSIVE)
        uy, cy = (ys[j + 1], LEFT_LIMIT) if j < ny - 1 else (ys[j], INCLUSIVE)
        val = m * ux * uy - counts[k]
        key = (val, 1)
        if best is None or key > best[0]:
            best = (key, (ux, uy, (cx, cy)))
    off = len(sup_cells)
    for k, (i, j) in enumerate(inf_cells):
        val = counts[off + k] - m * xs[i] * ys[j]
        key = (val, -1)
        if key > best[0]:
            best = (key, (xs[i], ys[j], (INCLUSIVE, INCLUSIVE)))
    (value, sign), witness = best
    if not isinstance(value, float):
        value = Fraction(value)
    return DiscrepancyResult(value, witness, sign)


def discrepancy_star_bruteforce(blue, red, resolution: int = 1000) -> float:
    """Max |D| over a grid plus the point coordinates and their neighbours.

    Every probe is a genuine point of the square, so the result never
    exceeds the true supremum.
    """
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    m = _m(blue, red)
    pts = [(float(x), float(y)) for x, y in blue] + [(float(x), float(y)) for x, y in red]
    w = np.array([1.0] * len(blue) + [-1.0] * len(red))
    grid = np.linspace(0.0, 1.0, resolution)

    def probes(coords):
        c = np.array(coords, dtype=float)
        near = np.concatenate([c, np.nextafter(c, -np.inf), np.nextafter(c, np.inf)])
        vals = np.unique(np.concatenate([grid, near]))
        return vals[(vals >= 0.0) & (vals <= 1.0)]

    px = np.array([p[0] for p in pts]) if pts else np.zeros(0)
    py = np.array([p[1] for p in pts]) if pts else np.zeros(0)
    gx = probes(px)
    gy = probes(py)
    ax = (px[:, None] <= gx[None, :]).astype(float) * w[:, None]
    ay = (py[:, None] <= gy[None, :]).astype(float)
    counts = ax.T @ ay
    d = m * gx[:, None] * gy[None, :] - counts
    return float(np.abs(d).max())


def upper_half_stats(blue, red) -> Tuple[int, int]:
    """Blue and red counts in [0, 1] x [1/2, 1]."""
    half = Fraction(1, 2)
    return (sum(1 for p in blue if p[1] >= half), sum(1 for p in red if p[1] >= half))
