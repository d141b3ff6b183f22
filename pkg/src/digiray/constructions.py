"""Tree constructions: GREEDY, the scaled trade-off, axis order, pruning."""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

from .geometry import linf
from .grid import (
    Point,
    RayTree,
    build_tree,
    grid_points,
    layer,
    layer_points,
    random_proper_cdr,
    random_weak_cdr,
    step,
)


class NotPowerOfTwo(ValueError):
    pass


class BadScale(ValueError):
    pass


class SeedChoice(str, Enum):
    # which proper CDR of G+_2 starts GREEDY: (1,1) hangs off (1,0) or (0,1)
    X_FIRST = "x-first"
    Y_FIRST = "y-first"


def is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


@dataclass(frozen=True)
class GreedyConfig:
    n_max: int
    seed_cdr_choice: SeedChoice = SeedChoice.X_FIRST

    def __post_init__(self):
        if not is_power_of_two(self.n_max) or self.n_max < 2:
            raise NotPowerOfTwo("GREEDY needs N = 2^k with k >= 1, got %r" % (self.n_max,))
        object.__setattr__(self, "seed_cdr_choice", SeedChoice(self.seed_cdr_choice))

    @property
    def slices(self) -> int:
        return self.n_max.bit_length() - 1


def _axis_between(a: Point, b: Point) -> int:
    return next(i for i in range(len(a)) if b[i] == a[i] + 1)


def greedy_path(p: Sequence[int]) -> List[Point]:
    """Grid points closest to the segment p-2p, one per layer.

    For every layer j between layer(p) and 2 layer(p) this picks the point
    of L_j closest to the segment in L-infinity distance; ties go to the
    smaller y.
    """
    px, py = p
    h = px + py
    if not is_power_of_two(h) or h < 2:
        raise NotPowerOfTwo("greedy paths start on a layer 2^(i-1) with i >= 2")
    path = []
    for j in range(h, 2 * h + 1):
        # on L_j the distance to the segment is |x - j px / h|, attained at
        # the segment point of the same layer
        lo = max(0, px * j // h - 1)
        hi = min(j, -(-px * j // h) + 1)
        x = min(range(lo, hi + 1), key=lambda x: (abs(x * h - j * px), j - x))
        path.append((x, j - x))
    return path


def _fill_directional(parents: Dict[Point, int], n_max: int) -> None:
    for v in grid_points(n_max, 2):
        if any(v) and v not in parents:
            parents[v] = 0 if v[0] >= v[1] else 1


def _greedy_parents(cfg: GreedyConfig) -> Dict[Point, int]:
    parents = {(1, 0): 0, (0, 1): 1, (2, 0): 0, (0, 2): 1}
    parents[(1, 1)] = 1 if cfg.seed_cdr_choice == SeedChoice.X_FIRST else 0
    for i in range(2, cfg.slices + 1):
        h = 2 ** (i - 1)
        for p in layer_points(h, 2):
            path = greedy_path(p)
            for a, b in zip(path, path[1:]):
                axis = _axis_between(a, b)
                if parents.setdefault(b, axis) != axis:
                    raise AssertionError("greedy paths overlap at %s" % (b,))
    _fill_directional(parents, cfg.n_max)
    return parents


def greedy_weak_cdr(cfg: Union[GreedyConfig, int]) -> RayTree:
    """GREEDY weak CDR over G+_N, N a power of two."""
    if not isinstance(cfg, GreedyConfig):
        cfg = GreedyConfig(cfg)
    meta = {"construction": "greedy", "n": cfg.n_max, "seed_cdr_choice": cfg.seed_cdr_choice.value}
    return build_tree(cfg.n_max, 2, _greedy_parents(cfg), meta)


def greedy_inner_leaf_formula(n_max: int) -> int:
    """Sum over slices of 2^(i-2) (2^(i-2) - 1)."""
    k = GreedyConfig(n_max).slices
    return sum(2 ** (i - 2) * (2 ** (i - 2) - 1) for i in range(2, k + 1))


def tradeoff_weak_cdr(n_max: int, c: int) -> RayTree:
    """GREEDY on a coarse grid, scaled by c and truncated to G+_N.

    Refined vertices not covered by a scaled edge attach to their left
    neighbour when x >= y and to the one below otherwise.
    """
    if not isinstance(c, int) or c < 1 or c > n_max:
        raise BadScale("scale c must be an integer with 1 <= c <= N, got %r" % (c,))
    coarse = -(-n_max // c)
    base = 2
    while base < coarse:
        base *= 2
    g = greedy_weak_cdr(GreedyConfig(base))
    parents: Dict[Point, int] = {}
    for v in g.vertices[1:]:
        j = g.parent_axis[v]
        u = g.parent(v)
        start = (u[0] * c, u[1] * c)
        for k in range(1, c + 1):
            w = step(start, j, k)
            if layer(w) > n_max:
                break
            parents[w] = j
    _fill_directional(parents, n_max)
    meta = {"construction": "tradeoff", "n": n_max, "c": c, "coarse_n": base}
    return build_tree(n_max, 2, parents, meta)


def axis_order_cdr(n_max: int, dim: int = 2) -> RayTree:
    """Proper CDR whose rays use up x1 first, then x2, and so on."""
    parents = {}
    for v in grid_points(n_max, dim):
        if any(v):
            parents[v] = max(i for i in range(dim) if v[i] > 0)
    return build_tree(n_max, dim, parents, {"construction": "axis-order", "n": n_max, "dim": dim})


@dataclass(frozen=True)
class PrunedTree:
    source: RayTree
    kept_vertices: FrozenSet[Point]
    snap: Dict[Point, Point]

    @property
    def dropped(self) -> FrozenSet[Point]:
        return frozenset(self.source.vertices) - self.kept_vertices

    def parent_axis(self) -> Dict[Point, int]:
        return {v: self.source.parent_axis[v] for v in self.kept_vertices if any(v)}

    def snap_distance(self, p: Point) -> int:
        return linf(p, self.snap[p]) if p in self.snap else 0

    def max_snap_distance(self) -> int:
        return max((self.snap_distance(p) for p in self.snap), default=0)

    def non_extendable(self) -> List[Point]:
        """Kept vertices below L_N with no kept child (empty when S4 holds)."""
        tree = self.source
        out = []
        for v in sorted(self.kept_vertices, key=lambda q: (layer(q), q)):
            if layer(v) < tree.n_max and not any(c in self.kept_vertices for c in tree.children[v]):
                out.append(v)
        return out


def _nearest_kept(p: Point, kept, n_max: int) -> Optional[Point]:
    for r in range(1, n_max + 1):
        best = None
        for x in range(max(0, p[0] - r), p[0] + r + 1):
            for y in range(max(0, p[1] - r), p[1] + r + 1):
                q = (x, y)
                if q in kept and (best is None or (layer(q), q) < (layer(best), best)):
                    best = q
        if best is not None:
            return best
    return None


def prune_inner_branches(tree: RayTree) -> PrunedTree:
    """Repeatedly delete inner leaves until every kept vertex reaches L_N."""
    n_max = tree.n_max
    alive_children = {v: len(tree.children[v]) for v in tree.vertices}
    kept = set(tree.vertices)
    stack = [v for v in tree.vertices if layer(v) < n_max and alive_children[v] == 0]
    while stack:
        v = stack.pop()
        kept.discard(v)
        if any(v):
            u = tree.parent(v)
            alive_children[u] -= 1
            if alive_children[u] == 0:
                stack.append(u)
    kept = frozenset(kept)
    snap = {}
    for p in tree.vertices:
        if p not in kept:
            snap[p] = _nearest_kept(p, kept, n_max)
    return PrunedTree(tree, kept, snap)


def build_construction(name: str, n_max: int, dim: int = 2, c: int = 1, seed: int = 0,
                       leaf_rate: float = 0.5) -> RayTree:
    """Dispatch by construction name, as used by the command line."""
    if name == "greedy":
        return greedy_weak_cdr(GreedyConfig(n_max))
    if name == "tradeoff":
        return tradeoff_weak_cdr(n_max, c)
    if name == "axis-order":
        return axis_order_cdr(n_max, dim)
    if name == "random-weak":
        return random_weak_cdr(n_max, seed, leaf_rate)
    if name == "random-proper":
        return random_proper_cdr(n_max, dim, seed)
    raise ValueError("unknown construction %r" % name)


CONSTRUCTIONS: Tuple[str, ...] = ("greedy", "tradeoff", "axis-order", "random-weak", "random-proper")
