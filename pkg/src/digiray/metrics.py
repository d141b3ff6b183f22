"""Exact Hausdorff error of digital rays and the error/leaf frontier.

Distances are L-infinity.  For a ray p of layer k and a path vertex v the
distance from v to the segment o-p is |v_x p_y - v_y p_x| / k, reached at
the segment point on v's own layer.  Two notions of digital segment are
supported:

* ``polyline``: the path drawn with its unit edges.  Its Hausdorff distance
  to the segment is the largest vertex distance above.
* ``vertices``: the path's grid points only.  Covering the segment by the
  radius-r neighbourhoods of consecutive vertices v, w additionally needs
  r >= 1/2, r >= (w_x p_y - v_y p_x)/k and r >= (w_y p_x - v_x p_y)/k.
"""

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from .grid import OutOfDomain, Point, RayTree, census, layer, origin, path_to

POLYLINE = "polyline"
VERTICES = "vertices"

FRONTIER_FIELDS = ["construction", "n", "error_num", "error_den", "kappa1", "kappa2", "bound_num", "bound_den"]


@dataclass(frozen=True)
class ErrorResult:
    value: Fraction
    witness_ray: Point
    witness_location: str


def _check_kind(kind):
    if kind not in (POLYLINE, VERTICES):
        raise ValueError("kind must be 'polyline' or 'vertices'")


def _ray_terms(xs, ys, px, py):
    """Numerators (over k = px + py) of the per-vertex and per-edge terms."""
    vert = np.abs(xs * py - ys * px)
    if len(xs) < 2:
        return vert, None
    w_x, w_y = xs[1:], ys[1:]
    v_x, v_y = xs[:-1], ys[:-1]
    pair = np.maximum(w_x * py - v_y * px, w_y * px - v_x * py)
    return vert, pair


def _ray_value(path: Sequence[Point], p: Point, kind: str):
    """Exact error of one ray with a description of where it is attained."""
    px, py = p
    k = px + py
    if k == 0:
        return Fraction(0), "vertex %s" % (tuple(p),)
    xs = np.array([v[0] for v in path], dtype=np.int64)
    ys = np.array([v[1] for v in path], dtype=np.int64)
    vert, pair = _ray_terms(xs, ys, px, py)
    i = int(np.argmax(vert))
    best = Fraction(int(vert[i]), k)
    where = "vertex %s" % (tuple(path[i]),)
    if kind == VERTICES:
        half = Fraction(1, 2)
        j = int(np.argmax(pair))
        edge = max(half, Fraction(int(pair[j]), k))
        if edge > best:
            best = edge
            v = path[j]
            # the uncovered point of the segment sits where the reach of v ends
            ends = [Fraction(v[a] + edge, p[a]) for a in (0, 1) if p[a]]
            t = min(min(ends), Fraction(1))
            where = "segment t=%s between %s and %s" % (t, tuple(v), tuple(path[j + 1]))
    return best, where


def hausdorff_ray(tree: RayTree, p: Sequence[int], kind: str = POLYLINE) -> Fraction:
    """Exact L-infinity Hausdorff distance between dig(o, p) and segment o-p."""
    _check_kind(kind)
    if tree.dim != 2:
        raise ValueError("Hausdorff error is defined here for 2D trees")
    p = tuple(p)
    path = path_to(tree, p)
    return _ray_value(path, p, kind)[0]


def hausdorff_tree(tree: RayTree, scope: str = "all", kind: str = POLYLINE) -> ErrorResult:
    """Largest ray error over all vertices (or L_N only) of a 2D tree.

    Ties are broken towards the earliest ray in canonical order.
    """
    _check_kind(kind)
    if scope not in ("all", "boundary"):
        raise ValueError("scope must be 'all' or 'boundary'")
    if tree.dim != 2:
        raise ValueError("Hausdorff error is defined here for 2D trees")
    n_max = tree.n_max
    xs = np.zeros(n_max + 1, dtype=np.int64)
    ys = np.zeros(n_max + 1, dtype=np.int64)
    # exact error of every ray in scope
    scores = {}
    stack = [origin(2)]
    while stack:
        v = stack.pop()
        n = v[0] + v[1]
        xs[n], ys[n] = v
        if n and (scope == "all" or n == n_max):
            vert, pair = _ray_terms(xs[: n + 1], ys[: n + 1], v[0], v[1])
            value = Fraction(int(vert.max()), n)
            if kind == VERTICES:
                value = max(value, Fraction(int(pair.max()), n), Fraction(1, 2))
            scores[v] = value
        stack.extend(tree.children[v])
    if not scores:
        return ErrorResult(Fraction(0), origin(2), "vertex %s" % (origin(2),))
    witness = max(scores, key=lambda q: (scores[q], -layer(q), tuple(-c for c in q)))
    value, where = _ray_value(path_to(tree, witness), witness, kind)
    assert value == scores[witness]
    return ErrorResult(value, witness, where)


def witness_bound(tree: RayTree, p: Sequence[int], n: int) -> Fraction:
    """|x' - p_x n / k| where x' is the path's x on L_n and k = layer(p)."""
    p = tuple(p)
    path = path_to(tree, p)
    k = layer(p)
    if not 0 <= n <= k:
        raise OutOfDomain("layer %d is not on the path to %s" % (n, p))
    if k == 0:
        return Fraction(0)
    return abs(path[n][0] - Fraction(p[0] * n, k))


def log2_rational(n: int) -> Fraction:
    if n >= 1 and n & (n - 1) == 0:
        return Fraction(n.bit_length() - 1)
    return Fraction(math.log2(n)).limit_denominator(10 ** 9)


def kappa2(tree: RayTree, inner: Optional[frozenset] = None) -> int:
    """Inner leaves with ceil(N/2) <= layer < N."""
    if inner is None:
        inner = census(tree).inner_leaves
    lo = -(-tree.n_max // 2)
    return sum(1 for v in inner if lo <= layer(v) < tree.n_max)


@dataclass(frozen=True)
class FrontierRecord:
    construction: str
    n_max: int
    error: Fraction
    kappa1: int
    kappa2: int
    bound_value: Fraction

    def row(self):
        return [
            self.construction,
            self.n_max,
            self.error.numerator,
            self.error.denominator,
            self.kappa1,
            self.kappa2,
            self.bound_value.numerator,
            self.bound_value.denominator,
        ]


def frontier_record(tree: RayTree, kind: str = POLYLINE) -> FrontierRecord:
    inner = census(tree).inner_leaves
    k2 = kappa2(tree, inner)
    n = tree.n_max
    bound = n * log2_rational(n) / (n + k2) if n >= 1 else Fraction(0)
    return FrontierRecord(
        construction=str(tree.meta.get("construction", "unknown")),
        n_max=n,
        error=hausdorff_tree(tree, "all", kind).value,
        kappa1=len(inner),
        kappa2=k2,
        bound_value=Fraction(bound),
    )


def frontier(trees, kind: str = POLYLINE) -> List[FrontierRecord]:
    return [frontier_record(t, kind) for t in trees]


def frontier_to_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(FRONTIER_FIELDS)
    for rec in records:
        writer.writerow(rec.row())
    return buf.getvalue()


def frontier_from_csv(text: str) -> List[FrontierRecord]:
    rows = list(csv.DictReader(io.StringIO(text)))
    out = []
    for r in rows:
        out.append(
            FrontierRecord(
                construction=r["construction"],
                n_max=int(r["n"]),
                error=Fraction(int(r["error_num"]), int(r["error_den"])),
                kappa1=int(r["kappa1"]),
                kappa2=int(r["kappa2"]),
                bound_value=Fraction(int(r["bound_num"]), int(r["bound_den"])),
            )
        )
    return out
