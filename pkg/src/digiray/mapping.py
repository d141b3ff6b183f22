"""From a 2D weak CDR to a bicolored point set.

Every vertex gets a rational label M in [0, 1] that is sorted along each
layer.  Split vertices map to blue points and inner leaves to red points at
(M(v), layer(v)/N).  ``validate_mapping`` checks the structural facts
relating the tree to its image; all arithmetic is exact.
"""

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple

import numpy as np

from .grid import Point, RayTree, census, layer
from .points import BLUE, EXACT, RED, BicoloredPointSet, Staircase


class NotDecomposable(ValueError):
    pass


@dataclass(frozen=True)
class AuxAssignment:
    n_max: int
    M: Dict[Point, Fraction]
    gamma: Dict[Point, Point]
    preferred_child: Dict[Point, Point]
    subtree_minmax: Dict[Point, Tuple[Fraction, Fraction]]
    height: Dict[Point, int]
    split_vertices: frozenset
    inner_leaves: frozenset

    def pi(self, v: Point) -> Tuple[Fraction, Fraction]:
        return (self.M[v], Fraction(layer(v), self.n_max))


def compute_aux(tree: RayTree) -> AuxAssignment:
    """Labels M, leaf walks gamma and preferred children, bottom-up."""
    if tree.dim != 2:
        raise ValueError("the mapping is defined for 2D trees")
    n_max = tree.n_max
    cen = census(tree)
    split = cen.split_vertices
    M: Dict[Point, Fraction] = {}
    gamma: Dict[Point, Point] = {}
    pref: Dict[Point, Point] = {}
    mm: Dict[Point, Tuple[Fraction, Fraction]] = {}
    height: Dict[Point, int] = {}
    by_layer: Dict[int, List[Point]] = {}
    for v in tree.vertices:
        by_layer.setdefault(layer(v), []).append(v)
    for n in range(n_max, -1, -1):
        for v in by_layer[n]:
            kids = tree.children[v]
            if n == n_max:
                M[v] = Fraction(v[0], n_max) if n_max else Fraction(0)
                gamma[v] = v
                mm[v] = (M[v], M[v])
                height[v] = 0
            elif not kids:
                # inner leaf: halfway between the leaves above and to the right
                above = (v[0], v[1] + 1)
                right = (v[0] + 1, v[1])
                M[v] = (mm[above][1] + mm[right][0]) / 2
                gamma[v] = v
                mm[v] = (M[v], M[v])
                height[v] = 0
            else:
                height[v] = 1 + max(height[c] for c in kids)
                mm[v] = (min(mm[c][0] for c in kids), max(mm[c][1] for c in kids))
                if len(kids) == 1:
                    gamma[v] = gamma[kids[0]]
                    M[v] = M[gamma[v]]
                else:
                    cx = (v[0] + 1, v[1])
                    cy = (v[0], v[1] + 1)
                    p = cx if height[cx] >= height[cy] else cy
                    other = cy if p == cx else cx
                    pref[v] = p
                    gamma[v] = gamma[p]
                    M[v] = M[gamma[other]]
    return AuxAssignment(n_max, M, gamma, pref, mm, height, split, cen.inner_leaves)


def transform_pi(tree: RayTree, aux: AuxAssignment = None) -> BicoloredPointSet:
    """Blue points for split vertices, red points for inner leaves."""
    aux = aux or compute_aux(tree)
    blue = [aux.pi(v) for v in tree.vertices if v in aux.split_vertices]
    red = [aux.pi(v) for v in tree.vertices if v in aux.inner_leaves]
    return BicoloredPointSet(tuple(blue), tuple(red), EXACT)


class _Counter:
    """Closed lower-left counts for points on rows y = n/N."""

    def __init__(self, points, n_max, xs):
        self.xs = xs
        self.table = np.zeros((n_max + 1, len(xs) + 1), dtype=np.int64)
        for x, y in points:
            row = int(y * n_max)
            self.table[row, bisect_left(xs, x) + 1] += 1
        self.table = self.table.cumsum(axis=0).cumsum(axis=1)

    def count(self, x, row: int, x_lo=None) -> int:
        """Points with x_lo <= px <= x and row index <= row."""
        if row < 0:
            return 0
        hi = bisect_right(self.xs, x)
        lo = bisect_left(self.xs, x_lo) if x_lo is not None else 0
        if hi <= lo:
            return 0
        return int(self.table[row, hi] - self.table[row, lo])


@dataclass
class MappingReport:
    sortedness: bool = True
    bijection: bool = True
    alternation: bool = True
    empty_rectangle: bool = True
    column_claim: bool = True
    interp: bool = True
    counterexamples: Dict[str, list] = field(default_factory=dict)

    CHECKS = ("sortedness", "bijection", "alternation", "empty_rectangle", "column_claim", "interp")

    @property
    def passed(self) -> bool:
        return all(getattr(self, c) for c in self.CHECKS)

    def fail(self, check: str, payload) -> None:
        setattr(self, check, False)
        found = self.counterexamples.setdefault(check, [])
        if len(found) < 10:
            found.append(payload)


def validate_mapping(tree: RayTree, aux: AuxAssignment = None) -> MappingReport:
    aux = aux or compute_aux(tree)
    n_max = tree.n_max
    rep = MappingReport()
    M, mm = aux.M, aux.subtree_minmax
    rows: Dict[int, List[Point]] = {}
    for v in tree.vertices:
        rows.setdefault(layer(v), []).append(v)

    # (a) subtrees are sorted along every layer (rows list x ascending)
    for n, verts in rows.items():
        verts = sorted(verts)
        for u, v in zip(verts, verts[1:]):
            if not mm[u][1] < mm[v][0]:
                rep.fail("sortedness", {"u": u, "v": v, "max_u": mm[u][1], "min_v": mm[v][0]})

    # (b) split labels biject onto leaf labels other than (N, 0)
    leaves = list(aux.inner_leaves) + rows[n_max]
    leaf_labels = sorted(M[v] for v in leaves)
    split_labels = sorted(M[s] for s in aux.split_vertices)
    if len(set(leaf_labels)) != len(leaf_labels):
        rep.fail("bijection", {"reason": "two leaves share a label"})
    expected = sorted(M[v] for v in leaves if v != (n_max, 0))
    if split_labels != expected:
        rep.fail("bijection", {"reason": "split labels differ from leaf labels", "splits": len(split_labels), "leaves": len(expected)})

    ps = transform_pi(tree, aux)
    xs = sorted(set(p[0] for p in ps.blue + ps.red))
    blue = _Counter(ps.blue, n_max, xs)
    red = _Counter(ps.red, n_max, xs)

    def net(x, row, x_lo=None):
        return blue.count(x, row, x_lo) - red.count(x, row, x_lo)

    # (c) rows alternate blue/red, starting and ending blue
    for n in range(n_max):
        colored = sorted(
            [(M[v], BLUE) for v in rows[n] if v in aux.split_vertices]
            + [(M[v], RED) for v in rows[n] if v in aux.inner_leaves]
        )
        colors = [c for _, c in colored]
        want = [BLUE if k % 2 == 0 else RED for k in range(len(colors))]
        if colors != want or not colors or colors[-1] != BLUE or len(set(x for x, _ in colored)) != len(colored):
            rep.fail("alternation", {"row": n, "colors": colors})
        if net(1, n) != n + 1:
            rep.fail("alternation", {"row": n, "cumulative": net(1, n)})

    # (d) the rectangle between M(v) and M(gamma(v)) below row n is nearly empty
    for v in sorted(aux.split_vertices):
        n = layer(v)
        a, g = M[v], M[aux.gamma[v]]
        if v[0] == n:
            nb = blue.count(g, n - 1, a) if a <= g else 0
            nr = red.count(g, n - 1, a) if a <= g else 0
            if a > g or nb or nr:
                rep.fail("empty_rectangle", {"v": v, "blue": nb, "red": nr})
            continue
        lo, hi = min(a, g), max(a, g)
        nb, nr = blue.count(hi, n - 1, lo), red.count(hi, n - 1, lo)
        on_g = blue.count(g, n - 1, g)
        if a == g or nb != 1 or nr != 0 or on_g != 1:
            rep.fail("empty_rectangle", {"v": v, "blue": nb, "red": nr})

    # (e) columns: blue minus red below each row is 0 or 1, and the columns
    # at 1 are exactly the gamma labels of the next layer
    column_points: Dict[Fraction, List[Tuple[int, int]]] = {}
    for x, y in ps.blue:
        column_points.setdefault(x, []).append((int(y * n_max), 1))
    for x, y in ps.red:
        column_points.setdefault(x, []).append((int(y * n_max), -1))
    events: Dict[int, List[Tuple[Fraction, int]]] = {}
    for x, pts in column_points.items():
        total = 0
        for row, w in sorted(pts):
            total += w
            if total not in (0, 1):
                rep.fail("column_claim", {"x": x, "row": row, "difference": total})
            events.setdefault(row, []).append((x, w))
    level_one = {}
    for n in range(n_max + 1):
        if n >= 1:
            for x, w in events.get(n - 1, []):
                level_one[x] = level_one.get(x, 0) + w
        rhs = {x for x, d in level_one.items() if d == 1} | {Fraction(1)}
        lhs = {M[aux.gamma[p]] for p in rows[n]}
        if lhs != rhs:
            rep.fail("column_claim", {"layer": n, "missing": sorted(rhs - lhs)[:3], "extra": sorted(lhs - rhs)[:3]})

    # (f) the x-coordinate of every vertex is read off the rectangle counts
    for v in tree.vertices:
        n = layer(v)
        below = net(M[v], n - 1)
        if v[0] - below + 1 not in (0, 1):
            rep.fail("interp", {"v": v, "offset": v[0] - below + 1})
        here = net(M[v], n)
        if not here - 2 <= v[0] <= here:
            rep.fail("interp", {"v": v, "count": here})
    return rep


def staircase_decompose(points: BicoloredPointSet) -> List[Staircase]:
    """Split an image point set into staircases.

    Every red point is linked to the nearest point left of it in its row
    and the nearest point below it in its column; both must be blue.  The
    links form disjoint alternating chains, one per unit of b - r.
    """
    rows: Dict[object, List[tuple]] = {}
    cols: Dict[object, List[tuple]] = {}
    colored = [(p, BLUE) for p in points.blue] + [(p, RED) for p in points.red]
    if len(set(p for p, _ in colored)) != len(colored):
        raise NotDecomposable("points must be distinct")
    for p, c in colored:
        rows.setdefault(p[1], []).append((p[0], c, p))
        cols.setdefault(p[0], []).append((p[1], c, p))
    for d in (rows, cols):
        for key in d:
            d[key].sort()
    left_of: Dict[tuple, tuple] = {}
    below_of: Dict[tuple, tuple] = {}
    after: Dict[tuple, tuple] = {}
    for y, row in rows.items():
        for (_, c0, p0), (_, c1, p1) in zip(row, row[1:]):
            if c1 == RED:
                if c0 != BLUE:
                    raise NotDecomposable("red point %s has no blue to its left" % (p1,))
                left_of[p1] = p0
                after[p0] = p1
        if row[0][1] == RED:
            raise NotDecomposable("red point %s has no blue to its left" % (row[0][2],))
    for x, col in cols.items():
        for (_, c0, p0), (_, c1, p1) in zip(col, col[1:]):
            if c1 == RED:
                if c0 != BLUE:
                    raise NotDecomposable("red point %s has no blue below it" % (p1,))
                below_of[p1] = p0
        if col[0][1] == RED:
            raise NotDecomposable("red point %s has no blue below it" % (col[0][2],))
    has_red_above = set(below_of.values())
    stairs = []
    for p in sorted(points.blue):
        if p in has_red_above:
            continue
        seq = [(BLUE, p)]
        while p in after:
            r = after[p]
            seq.append((RED, r))
            p = below_of[r]
            seq.append((BLUE, p))
        stairs.append(seq)
    used = sum(len(s) for s in stairs)
    if used != len(colored):
        raise NotDecomposable("links do not cover every point exactly once")
    stairs.sort(key=lambda s: (s[0][1][0], s[0][1][1]))
    return [Staircase(tuple(s), index=k + 1) for k, s in enumerate(stairs)]
