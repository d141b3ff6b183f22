"""Grid points, layers and ray trees over the nonnegative orthant.

A ray tree over G+_N stores, for every non-origin vertex v, the axis j of
its parent edge, so that parent(v) = v - e_j.  Vertices are enumerated by
layer and then lexicographically, which fixes the JSON encoding.
"""

import json
import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

Point = Tuple[int, ...]

PROPER = "proper"
WEAK = "weak"


class TreeError(ValueError):
    pass


class NotATree(TreeError):
    pass


class MissingParent(NotATree):
    pass


class InvalidAxis(TreeError):
    pass


class OutOfDomain(TreeError):
    pass


class InfeasibleLayer(TreeError):
    pass


class SchemaError(ValueError):
    pass


def layer(p: Sequence[int]) -> int:
    return sum(p)


def origin(dim: int) -> Point:
    return (0,) * dim


def layer_points(n: int, dim: int) -> Iterator[Point]:
    """Points of L_n in lexicographic order."""
    if dim == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in layer_points(n - first, dim - 1):
            yield (first,) + rest


def grid_points(n_max: int, dim: int) -> Iterator[Point]:
    """All of G+_N in canonical order (layer, then lexicographic)."""
    for n in range(n_max + 1):
        yield from layer_points(n, dim)


def step(p: Sequence[int], axis: int, delta: int = 1) -> Point:
    q = list(p)
    q[axis] += delta
    return tuple(q)


def in_domain(p: Sequence[int], n_max: int, dim: int) -> bool:
    return len(p) == dim and all(c >= 0 for c in p) and sum(p) <= n_max


@dataclass(frozen=True, eq=False)
class RayTree:
    """Spanning tree of G+_N encoded by parent axes.

    Treat instances as immutable; derived tables are cached on first use.
    """

    n_max: int
    dim: int
    parent_axis: Dict[Point, int]
    meta: dict = field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, RayTree):
            return NotImplemented
        return (self.n_max, self.dim, self.parent_axis) == (
            other.n_max,
            other.dim,
            other.parent_axis,
        )

    def __hash__(self):
        return hash((self.n_max, self.dim, tuple(self.parent_axis[v] for v in self.vertices[1:])))

    @cached_property
    def vertices(self) -> Tuple[Point, ...]:
        return tuple(grid_points(self.n_max, self.dim))

    @cached_property
    def children(self) -> Dict[Point, Tuple[Point, ...]]:
        kids: Dict[Point, List[Point]] = {v: [] for v in self.vertices}
        for v in self.vertices[1:]:
            kids[self.parent(v)].append(v)
        # children listed in increasing axis of the parent edge
        return {
            v: tuple(sorted(ks, key=lambda c: self.parent_axis[c]))
            for v, ks in kids.items()
        }

    def parent(self, v: Point) -> Point:
        return step(v, self.parent_axis[v], -1)

    def child(self, v: Point, axis: int) -> Optional[Point]:
        """The child v + e_axis if it is in the tree, else None."""
        w = step(v, axis)
        if layer(w) > self.n_max or self.parent_axis.get(w) != axis:
            return None
        return w

    def contains(self, p: Sequence[int]) -> bool:
        return in_domain(p, self.n_max, self.dim)


def build_tree(n_max: int, dim: int, parent_axis, meta=None) -> RayTree:
    """Validate an axis assignment and return the tree it encodes."""
    if dim < 2:
        raise TreeError("dim must be at least 2, got %d" % dim)
    if n_max < 0:
        raise TreeError("n_max must be nonnegative, got %d" % n_max)
    assignment: Dict[Point, int] = {}
    for v in grid_points(n_max, dim):
        if not any(v):
            continue
        if v not in parent_axis:
            raise MissingParent("no parent axis for vertex %s" % (v,))
        j = parent_axis[v]
        if not isinstance(j, int) or not 0 <= j < dim or v[j] < 1:
            raise InvalidAxis("axis %r is not valid for vertex %s" % (j, v))
        assignment[v] = j
    extra = [v for v in parent_axis if tuple(v) not in assignment and any(v)]
    if extra:
        raise OutOfDomain("assignment contains vertices outside G+_N: %s" % (extra[:5],))
    tree = RayTree(n_max, dim, assignment, dict(meta or {}))
    if _reachable(tree) != len(tree.vertices):
        raise NotATree("parent links do not connect every vertex to the origin")
    return tree


def _reachable(tree: RayTree) -> int:
    seen = 1
    stack = [origin(tree.dim)]
    while stack:
        v = stack.pop()
        for c in tree.children[v]:
            seen += 1
            stack.append(c)
    return seen


@dataclass(frozen=True)
class AxiomReport:
    mode: str
    s1_ok: bool
    s2_ok: bool
    s3_ok: bool
    s4_ok: bool
    s5_ok: bool
    s4_violators: Tuple[Point, ...]
    n_vertices: int

    @property
    def n_violators(self) -> int:
        return len(self.s4_violators)

    @property
    def passed(self) -> bool:
        structural = self.s1_ok and self.s2_ok and self.s3_ok and self.s5_ok
        if self.mode == PROPER:
            return structural and self.s4_ok
        return structural


def verify_axioms(tree: RayTree, mode: str = PROPER) -> AxiomReport:
    """Check S1-S5 on a tree; S4 failures are fatal only in proper mode.

    The checks do not trust the tree's construction, so a RayTree built
    directly from a corrupted mapping is reported rather than rejected.
    """
    if mode not in (PROPER, WEAK):
        raise ValueError("mode must be 'proper' or 'weak'")
    n_max, dim = tree.n_max, tree.dim
    verts = list(grid_points(n_max, dim))
    s1 = True
    s5 = True
    has_parent = {}
    for v in verts[1:]:
        j = tree.parent_axis.get(v)
        ok = isinstance(j, int) and 0 <= j < dim and v[j] >= 1
        has_parent[v] = ok
        if not ok:
            s1 = False
            continue
        u = step(v, j, -1)
        # zero coordinates of v stay zero in its parent; with unit steps
        # this makes every root path coordinate-monotone
        if any(v[i] == 0 and u[i] != 0 for i in range(dim)):
            s5 = False
    for v in tree.parent_axis:
        if not in_domain(v, n_max, dim):
            s1 = False
    # S3: every vertex reaches the origin through tree edges
    reaches = {origin(dim): True}
    for v in verts[1:]:
        reaches[v] = has_parent[v] and reaches.get(step(v, tree.parent_axis[v], -1), False)
    s3 = all(reaches.values())

    has_child = set()
    for v in verts[1:]:
        if has_parent[v]:
            has_child.add(step(v, tree.parent_axis[v], -1))
    violators = tuple(v for v in verts if layer(v) < n_max and v not in has_child)
    return AxiomReport(
        mode=mode,
        s1_ok=s1,
        s2_ok=True,
        s3_ok=s3,
        s4_ok=not violators,
        s5_ok=s5,
        s4_violators=violators,
        n_vertices=len(verts),
    )


@dataclass(frozen=True)
class VertexCensus:
    split_vertices: frozenset
    inner_leaves: frozenset
    boundary_leaves: frozenset
    split_per_layer: Optional[Tuple[int, ...]]
    inner_per_layer: Tuple[int, ...]

    @property
    def kappa1(self) -> int:
        return len(self.inner_leaves)


def census(tree: RayTree) -> VertexCensus:
    """Classify vertices into split vertices, inner leaves and boundary leaves.

    Split vertices are only tallied in 2D.
    """
    n_max = tree.n_max
    inner = []
    boundary = []
    split = []
    inner_counts = [0] * (n_max + 1)
    split_counts = [0] * (n_max + 1)
    for v in tree.vertices:
        n = layer(v)
        k = len(tree.children[v])
        if n == n_max:
            boundary.append(v)
        elif k == 0:
            inner.append(v)
            inner_counts[n] += 1
        if tree.dim == 2 and n < n_max and (k == 2 or n == 0):
            split.append(v)
            split_counts[n] += 1
    return VertexCensus(
        split_vertices=frozenset(split) if tree.dim == 2 else frozenset(),
        inner_leaves=frozenset(inner),
        boundary_leaves=frozenset(boundary),
        split_per_layer=tuple(split_counts[:n_max]) if tree.dim == 2 else None,
        inner_per_layer=tuple(inner_counts[:n_max]),
    )


def path_to(tree: RayTree, p: Sequence[int]) -> List[Point]:
    """The tree path from the origin to p, origin first."""
    p = tuple(p)
    if not tree.contains(p):
        raise OutOfDomain("%s is not in G+_%d" % (p, tree.n_max))
    path = [p]
    while any(p):
        p = tree.parent(p)
        path.append(p)
    path.reverse()
    return path


def restrict_to_plane(tree: RayTree, axes: Tuple[int, int] = (0, 1)) -> RayTree:
    """The 2D tree induced on the coordinate plane spanned by two axes."""
    i, j = axes
    if tree.dim < 3:
        raise TreeError("restriction needs a tree of dimension at least 3")
    if i == j or not (0 <= i < tree.dim and 0 <= j < tree.dim):
        raise TreeError("axes must be two distinct valid axis indices")
    parents = {}
    for n in range(1, tree.n_max + 1):
        for a in range(n + 1):
            v = [0] * tree.dim
            v[i], v[j] = a, n - a
            axis = tree.parent_axis[tuple(v)]
            # monotone paths keep the parent inside the plane
            parents[(a, n - a)] = 0 if axis == i else 1
    meta = {"construction": "restriction", "axes": [i, j]}
    return build_tree(tree.n_max, 2, parents, meta)


def random_weak_cdr(n_max: int, seed: int = 0, leaf_rate: float = 0.5) -> RayTree:
    """Random 2D tree built layer by layer; always weakly valid.

    Walking along L_{n+1} from the x-axis side, each vertex with two
    candidate parents picks one uniformly, except that directly after a
    "left" pick it picks "down" with probability leaf_rate.  A down pick
    right after a left pick leaves a vertex of L_n childless, so
    leaf_rate = 0 gives a proper CDR and larger rates give more leaves.
    """
    if not 0 <= leaf_rate <= 1:
        raise ValueError("leaf_rate must lie in [0, 1]")
    rng = random.Random(seed)
    parents = {}
    for n in range(1, n_max + 1):
        previous = None
        for x in range(n, -1, -1):
            y = n - x
            if x == 0:
                axis = 1
            elif y == 0:
                axis = 0
            elif previous == 0:
                axis = 1 if rng.random() < leaf_rate else 0
            else:
                axis = rng.randrange(2)
            parents[(x, y)] = axis
            previous = axis
    return build_tree(n_max, 2, parents, {"construction": "random-weak", "seed": seed, "leaf_rate": leaf_rate})


def _match_layer(parents_layer: List[Point], dim: int, rng: random.Random) -> Dict[Point, Point]:
    """Match each vertex of L_n to a distinct child in L_{n+1}.

    Augmenting-path matching over a shuffled candidate order; returns a map
    child -> parent.
    """
    options = {}
    for u in parents_layer:
        cands = [step(u, a) for a in range(dim)]
        rng.shuffle(cands)
        options[u] = cands
    owner: Dict[Point, Point] = {}
    mate: Dict[Point, Point] = {}
    for root in parents_layer:
        reached_from: Dict[Point, Point] = {}
        queue = deque([root])
        free = None
        while queue and free is None:
            u = queue.popleft()
            for w in options[u]:
                if w in reached_from:
                    continue
                reached_from[w] = u
                if w not in owner:
                    free = w
                    break
                queue.append(owner[w])
        if free is None:
            raise InfeasibleLayer("no child available for %s" % (root,))
        w = free
        while w is not None:
            u = reached_from[w]
            w_next = mate.get(u)
            owner[w] = u
            mate[u] = w
            w = w_next
    return owner


def random_proper_cdr(n_max: int, dim: int = 2, seed: int = 0) -> RayTree:
    """Random tree in which every vertex below L_N has a child."""
    if dim < 2:
        raise TreeError("dim must be at least 2")
    rng = random.Random(seed)
    parents = {}
    for n in range(n_max):
        current = list(layer_points(n, dim))
        matched = _match_layer(current, dim, rng)
        for w in layer_points(n + 1, dim):
            if w in matched:
                u = matched[w]
                parents[w] = next(a for a in range(dim) if step(u, a) == w)
            else:
                parents[w] = rng.choice([a for a in range(dim) if w[a] >= 1])
    return build_tree(n_max, dim, parents, {"construction": "random-proper", "seed": seed, "dim": dim})


def tree_to_json(tree: RayTree) -> str:
    doc = {
        "n": tree.n_max,
        "dim": tree.dim,
        "parents": [tree.parent_axis[v] for v in tree.vertices[1:]],
    }
    if tree.meta:
        doc["meta"] = tree.meta
    return json.dumps(doc, sort_keys=False, separators=(",", ":")) + "\n"


def tree_from_json(text: str) -> RayTree:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("not valid JSON: %s" % exc) from None
    if not isinstance(doc, dict):
        raise SchemaError("tree document must be a JSON object")
    for key in ("n", "dim", "parents"):
        if key not in doc:
            raise SchemaError("missing key %r" % key)
    n, dim, axes = doc["n"], doc["dim"], doc["parents"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise SchemaError("'n' must be a nonnegative integer")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 2:
        raise SchemaError("'dim' must be an integer >= 2")
    if not isinstance(axes, list) or not all(isinstance(a, int) and not isinstance(a, bool) for a in axes):
        raise SchemaError("'parents' must be a list of integers")
    verts = list(grid_points(n, dim))[1:]
    if len(axes) != len(verts):
        raise SchemaError("expected %d parent entries, got %d" % (len(verts), len(axes)))
    meta = doc.get("meta", {})
    if not isinstance(meta, dict):
        raise SchemaError("'meta' must be an object")
    try:
        return build_tree(n, dim, dict(zip(verts, axes)), meta)
    except TreeError as exc:
        raise SchemaError(str(exc)) from None


def load_tree(path) -> RayTree:
    with open(path) as fh:
        return tree_from_json(fh.read())


def save_tree(tree: RayTree, path) -> None:
    with open(path, "w") as fh:
        fh.write(tree_to_json(tree))

