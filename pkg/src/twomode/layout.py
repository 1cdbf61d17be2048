"""Spectral graph drawing and deterministic SVG/TSV emission.

The spectral layout places nodes by the Laplacian eigenvectors of the two
smallest nonzero eigenvalues, the relaxed solution of "every node sits at
the weighted mean of its neighbors".  The two-line layout keeps that
solution only for the x axis and pins y to +1 (left side) or -1 (right
side), making the bipartite structure explicit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DisconnectedGraphError
from .graphs import (
    BipartiteGraph,
    Graph,
    as_unipartite,
    connected_components,
    is_connected,
    subgraph,
)
from .matrices import laplacian_matrix
from .solvers import SolverConfig, smallest_nonzero_laplacian_vectors


@dataclass(frozen=True)
class LayoutCoords:
    """2-D coordinates per node, with original ids and (if bipartite) sides."""

    x: np.ndarray
    y: np.ndarray
    method: str
    node_ids: np.ndarray
    sides: np.ndarray | None = None  # 0 = left, 1 = right

    @property
    def count(self) -> int:
        return len(self.x)


def _union_view(g: Graph | BipartiteGraph) -> tuple[Graph, np.ndarray | None]:
    if isinstance(g, BipartiteGraph):
        sides = np.concatenate(
            [np.zeros(g.left_count, dtype=np.int64), np.ones(g.right_count, dtype=np.int64)]
        )
        return as_unipartite(g), sides
    return g, None


def spectral_layout(
    g: Graph | BipartiteGraph,
    config: SolverConfig | None = None,
    largest_component: bool = False,
) -> LayoutCoords:
    """Laplacian eigenvector embedding into the plane.

    Columns are the eigenvectors of the two smallest nonzero Laplacian
    eigenvalues: unit norm, orthogonal to each other and to the constant
    vector.  Disconnected graphs raise unless ``largest_component`` is
    set, in which case only the largest component is laid out.
    """
    uni, sides = _union_view(g)
    if not is_connected(uni):
        if not largest_component:
            raise DisconnectedGraphError(
                "spectral layout requires a connected graph "
                "(pass largest_component=True to lay out the largest one)"
            )
        keep = connected_components(uni)[0]
        if sides is not None:
            sides = sides[keep]
        uni = subgraph(uni, keep)
    if uni.node_count < 3:
        raise ValueError("spectral layout needs at least 3 nodes")
    spec = smallest_nonzero_laplacian_vectors(laplacian_matrix(uni), 2, config)
    return LayoutCoords(
        x=np.asarray(spec.eigenvectors[:, 0]),
        y=np.asarray(spec.eigenvectors[:, 1]),
        method="spectral",
        node_ids=uni.node_ids.copy(),
        sides=sides,
    )


def two_line_layout(bg: BipartiteGraph, config: SolverConfig | None = None) -> LayoutCoords:
    """Bipartite drawing on two horizontal lines.

    x comes from the Fiedler vector of the full Laplacian; y is +1 for
    left nodes and -1 for right nodes, exactly.
    """
    uni, sides = _union_view(bg)
    if not is_connected(uni):
        raise DisconnectedGraphError("two-line layout requires a connected graph")
    if uni.node_count < 2:
        raise ValueError("two-line layout needs at least 2 nodes")
    spec = smallest_nonzero_laplacian_vectors(laplacian_matrix(uni), 1, config)
    y = np.where(sides == 0, 1.0, -1.0)
    return LayoutCoords(
        x=np.asarray(spec.eigenvectors[:, 0]),
        y=y,
        method="two-line",
        node_ids=uni.node_ids.copy(),
        sides=sides,
    )


def _viewport_transform(x, y, width, height, margin_frac=0.05):
    """Map coordinates into the viewport, preserving the aspect ratio."""
    avail_w = width * (1 - 2 * margin_frac)
    avail_h = height * (1 - 2 * margin_frac)
    span_x = float(np.max(x) - np.min(x))
    span_y = float(np.max(y) - np.min(y))
    scale = min(
        avail_w / span_x if span_x > 0 else np.inf,
        avail_h / span_y if span_y > 0 else np.inf,
    )
    if not np.isfinite(scale):
        scale = 1.0
    cx, cy = (np.max(x) + np.min(x)) / 2, (np.max(y) + np.min(y)) / 2
    px = (x - cx) * scale + width / 2
    # SVG y grows downward; flip so positive y is up
    py = (cy - y) * scale + height / 2
    return px, py


def render_svg(
    coords: LayoutCoords,
    g: Graph | BipartiteGraph | None = None,
    width: int = 800,
    height: int = 600,
    include_edges: bool = True,
    node_radius: float = 4.0,
) -> str:
    """Deterministic SVG drawing of a layout.

    Left nodes are hollow circles, right nodes filled; unipartite nodes
    are filled.  Straight-line edges can be suppressed for large graphs.
    Output bytes depend only on the inputs.  ``g`` must be the graph the
    coordinates were computed on (same node order).
    """
    px, py = _viewport_transform(coords.x, coords.y, width, height)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">'
    ]
    if include_edges and g is not None and g.edge_count:
        uni, _ = _union_view(g)
        parts.append('<g stroke="#888888" stroke-width="0.5">')
        for u, v in zip(uni.edge_u.tolist(), uni.edge_v.tolist()):
            parts.append(
                f'<line x1="{px[u]:.4f}" y1="{py[u]:.4f}" '
                f'x2="{px[v]:.4f}" y2="{py[v]:.4f}"/>'
            )
        parts.append("</g>")
    parts.append('<g stroke="#000000" stroke-width="1">')
    for i in range(coords.count):
        hollow = coords.sides is not None and coords.sides[i] == 0
        fill = "none" if hollow else "#000000"
        parts.append(
            f'<circle cx="{px[i]:.4f}" cy="{py[i]:.4f}" r="{node_radius:g}" '
            f'fill="{fill}"/>'
        )
    parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def coords_tsv(coords: LayoutCoords) -> str:
    """Layout as TSV: original-id, x, y, side (left/right, '-' if unipartite)."""
    lines = []
    for i in range(coords.count):
        side = "-"
        if coords.sides is not None:
            side = "left" if coords.sides[i] == 0 else "right"
        lines.append(
            f"{coords.node_ids[i]}\t{coords.x[i]:.10g}\t{coords.y[i]:.10g}\t{side}"
        )
    return "\n".join(lines) + "\n"
