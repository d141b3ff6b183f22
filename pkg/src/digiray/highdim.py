"""Plane restrictions of d-dimensional trees and the packing witness.

Inner leaves of the (x1, x2)-restriction in the upper half of G+_N must
continue out of the plane.  Their boundary descendants cannot all stay
close to the plane, so some ray leaves the plane far, while its tree path
still crosses L_{N/2-1} inside the plane.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .grid import Point, RayTree, TreeError, census, layer, layer_points, path_to, restrict_to_plane


class OddN(ValueError):
    pass


@dataclass(frozen=True)
class PackingWitness:
    v: Point
    u: Point
    j: int
    u_j: int
    kappa2: int
    n_max: int
    dim: int

    @property
    def threshold(self) -> float:
        return packing_threshold(self.kappa2, self.n_max, self.dim)

    @property
    def satisfied(self) -> bool:
        return self.u_j >= self.threshold


def packing_threshold(kappa2: int, n_max: int, dim: int) -> float:
    """(kappa2 / N)^(1/(d-2)) - 1."""
    return (kappa2 / n_max) ** (1.0 / (dim - 2)) - 1


def below_threshold(value: int, kappa2: int, n_max: int, dim: int) -> bool:
    """Exact test of value < (kappa2/N)^(1/(d-2)) - 1 for integer value."""
    if value < -1:
        return True
    # value + 1 >= 0, so compare (value + 1)^(d-2) with kappa2 / N
    return (value + 1) ** (dim - 2) * n_max < kappa2


def plane_kappa2(tree: RayTree, axes: Tuple[int, int] = (0, 1)) -> int:
    """Inner leaves of the plane restriction with ceil(N/2) <= layer < N."""
    plane = restrict_to_plane(tree, axes)
    lo = -(-tree.n_max // 2)
    return sum(1 for v in census(plane).inner_leaves if lo <= layer(v) < tree.n_max)


def _embed(p2, dim, axes=(0, 1)) -> Point:
    v = [0] * dim
    v[axes[0]], v[axes[1]] = p2
    return tuple(v)


def packing_witness(tree: RayTree) -> Optional[PackingWitness]:
    """Best (v, u, j) with v in the plane's L_{N/2-1} and u a boundary
    descendant of v, maximising u_j over axes j beyond the plane.

    Returns None when the restriction has no inner leaves in the upper
    half.  Ties go to the lexicographically smallest (v, u, j).
    """
    n_max, dim = tree.n_max, tree.dim
    if dim < 3:
        raise TreeError("packing witnesses need dimension at least 3")
    if n_max % 2:
        raise OddN("N must be even, got %d" % n_max)
    k2 = plane_kappa2(tree)
    if k2 == 0:
        return None
    best = None
    for a in range(n_max // 2):
        v = _embed((a, n_max // 2 - 1 - a), dim)
        stack = [v]
        while stack:
            w = stack.pop()
            if layer(w) == n_max:
                for j in range(2, dim):
                    key = (-w[j], v, w, j)
                    if best is None or key < best:
                        best = key
            else:
                stack.extend(tree.children[w])
    neg, v, u, j = best
    return PackingWitness(v=v, u=u, j=j, u_j=-neg, kappa2=k2, n_max=n_max, dim=dim)


def crossing_plane_error(tree: Optional[RayTree], witness: PackingWitness) -> Fraction:
    """Deviation u_j (N/2 - 1)/N between dig(o, u) and segment o-u on the
    crossing layer L_{N/2-1}, where the path is at v with v_j = 0."""
    n = witness.n_max
    if n < 6:
        raise ValueError("the crossing argument needs N >= 6")
    if tree is not None:
        if witness.v not in path_to(tree, witness.u) or witness.v[witness.j] != 0:
            raise ValueError("witness path does not cross L_%d at v" % (n // 2 - 1))
    return Fraction(witness.u_j * (n // 2 - 1), n)


def b_n_count(kappa2: int, n_max: int, dim: int) -> int:
    """|{x in L_N : x1 + x2 < N, x_i below the threshold for all i >= 3}|."""
    count = 0
    for x in layer_points(n_max, dim):
        if x[0] + x[1] < n_max and all(below_threshold(c, kappa2, n_max, dim) for c in x[2:]):
            count += 1
    return count


def probe_report(tree: RayTree) -> dict:
    k2 = plane_kappa2(tree)
    w = packing_witness(tree)
    doc = {
        "kappa2": k2,
        "threshold": packing_threshold(k2, tree.n_max, tree.dim),
        "witness": None,
        "crossing_deviation": None,
    }
    if w is not None:
        doc["witness"] = {"v": list(w.v), "u": list(w.u), "j": w.j, "u_j": w.u_j}
        dev = crossing_plane_error(tree, w) if tree.n_max >= 6 else None
        doc["crossing_deviation"] = None if dev is None else str(dev)
    return doc


def probe_report_json(tree: RayTree) -> str:
    return json.dumps(probe_report(tree), indent=2, sort_keys=False) + "\n"
