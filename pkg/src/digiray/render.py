"""Deterministic SVG output for trees, point sets and discrepancy heatmaps."""

from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from .grid import RayTree, census, restrict_to_plane
from .points import BicoloredPointSet, Staircase

TREE = "tree"
POINTSET = "pointset"
HEATMAP = "heatmap"
SUBJECTS = (TREE, POINTSET, HEATMAP)


@dataclass(frozen=True)
class RenderSpec:
    subject: str
    size: int = 512
    margin: int = 16
    heat_cells: int = 128

    def __post_init__(self):
        if self.subject not in SUBJECTS:
            raise ValueError("subject must be one of %s" % ", ".join(SUBJECTS))
        if self.size < 32:
            raise ValueError("size must be at least 32 pixels")
        if self.heat_cells < 1:
            raise ValueError("heat_cells must be positive")

    @property
    def inner(self) -> int:
        return self.size - 2 * self.margin


def heat_color(value: float) -> str:
    """Green brightness for D clipped to [-1, 1]; -1 is black, 1 full green."""
    v = min(1.0, max(-1.0, float(value)))
    g = int(round(255 * (v + 1) / 2))
    return "#00%02x00" % g


def _num(v: float) -> str:
    s = "%.3f" % v
    return s.rstrip("0").rstrip(".") if "." in s else s


def _header(spec: RenderSpec) -> List[str]:
    s = spec.size
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="%d" height="%d" viewBox="0 0 %d %d">' % (s, s, s, s),
        '<rect x="0" y="0" width="%d" height="%d" fill="#ffffff"/>' % (s, s),
    ]


def _to_canvas(spec: RenderSpec, x: float, y: float):
    # y grows upwards
    return spec.margin + x * spec.inner, spec.margin + (1 - y) * spec.inner


def render_tree(tree: RayTree, spec: RenderSpec = None) -> str:
    """Draw the tree edges; inner leaves are marked red.  Trees of higher
    dimension are drawn through their restriction to the first two axes."""
    spec = spec or RenderSpec(TREE)
    if tree.dim != 2:
        tree = restrict_to_plane(tree)
    n = max(tree.n_max, 1)
    out = _header(spec)
    out.append('<g stroke="#333333" stroke-width="1.5" stroke-linecap="round">')
    for v in tree.vertices[1:]:
        p = tree.parent(v)
        x0, y0 = _to_canvas(spec, p[0] / n, p[1] / n)
        x1, y1 = _to_canvas(spec, v[0] / n, v[1] / n)
        out.append('<line x1="%s" y1="%s" x2="%s" y2="%s"/>' % (_num(x0), _num(y0), _num(x1), _num(y1)))
    out.append("</g>")
    r = max(1.5, min(4.0, spec.inner / (4.0 * n)))
    out.append('<g fill="#cc2222">')
    for v in sorted(census(tree).inner_leaves):
        cx, cy = _to_canvas(spec, v[0] / n, v[1] / n)
        out.append('<circle cx="%s" cy="%s" r="%s"/>' % (_num(cx), _num(cy), _num(r)))
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_pointset(ps: BicoloredPointSet, spec: RenderSpec = None, stairs: Sequence[Staircase] = ()) -> str:
    spec = spec or RenderSpec(POINTSET)
    out = _header(spec)
    out.append('<rect x="%d" y="%d" width="%d" height="%d" fill="none" stroke="#999999"/>' % (spec.margin, spec.margin, spec.inner, spec.inner))
    if stairs:
        out.append('<g fill="none" stroke="#888888" stroke-width="1">')
        for st in stairs:
            pts = " ".join("%s,%s" % tuple(_num(c) for c in _to_canvas(spec, float(p[0]), float(p[1]))) for _, p in st.points)
            out.append('<polyline points="%s"/>' % pts)
        out.append("</g>")
    r = max(1.0, min(3.0, spec.inner / (8.0 * max(1, len(ps.blue)) ** 0.5)))
    for color, pts, fill in (("blue", ps.blue, "#2244cc"), ("red", ps.red, "#cc2222")):
        out.append('<g class="%s" fill="%s">' % (color, fill))
        for x, y in pts:
            cx, cy = _to_canvas(spec, float(x), float(y))
            out.append('<circle cx="%s" cy="%s" r="%s"/>' % (_num(cx), _num(cy), _num(r)))
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def sample_discrepancy(ps: BicoloredPointSet, cells: int) -> np.ndarray:
    """D at the centres of a cells x cells grid; row 0 is the bottom row."""
    m = ps.m
    centres = (np.arange(cells) + 0.5) / cells
    pts = ps.as_float()
    w = np.array([1.0] * len(pts.blue) + [-1.0] * len(pts.red))
    allp = np.array(pts.blue + pts.red, dtype=float).reshape(-1, 2)
    inx = (allp[:, 0][:, None] <= centres[None, :]).astype(float) * w[:, None]
    iny = (allp[:, 1][:, None] <= centres[None, :]).astype(float)
    counts = iny.T @ inx
    return m * centres[:, None] * centres[None, :] - counts


def render_heatmap(ps: BicoloredPointSet, spec: RenderSpec = None) -> str:
    spec = spec or RenderSpec(HEATMAP)
    k = spec.heat_cells
    d = sample_discrepancy(ps, k)
    cell = spec.inner / k
    out = _header(spec)
    out.append('<g shape-rendering="crispEdges">')
    for row in range(k):
        for col in range(k):
            x = spec.margin + col * cell
            y = spec.margin + (k - 1 - row) * cell
            out.append(
                '<rect x="%s" y="%s" width="%s" height="%s" fill="%s"/>'
                % (_num(x), _num(y), _num(cell), _num(cell), heat_color(d[row, col]))
            )
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
