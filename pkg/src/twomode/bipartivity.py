"""Measures of non-bipartivity.

Four spectral measures, each zero exactly when the graph is bipartite,
plus an exhaustive frustration minimizer usable as an oracle on small
graphs.  All measures are computed on the underlying unweighted graph:
bipartivity is a property of the edge structure, not of the weights.

The measures, cheapest first:

* ``spectrum_asymmetry`` -- 1 - |lam_min/lam_max| of the adjacency
  matrix.  Range [0, 1]; needs only the two extremal eigenvalues.
* ``normalized_asymmetry`` -- smallest eigenvalue of the degree-normalized
  adjacency matrix plus one.  Range [0, 1].
* ``frustration_relaxation`` -- |V|/(8|E|) times the smallest eigenvalue
  of the signless Laplacian; the spectral relaxation of the minimum
  fraction of edges that must be removed to make the graph bipartite.
* ``odd_cycle_ratio`` -- closed odd walks over all closed walks, weighted
  by inverse factorial of the length: trace of sinh(A) over trace of
  exp(A).  Range [0, 1/2]; needs the full spectrum, so it is gated on
  ``dense_threshold``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import AnalysisError, ScaleLimitError
from .graphs import (
    BipartiteGraph,
    Graph,
    as_unipartite,
    is_connected,
    subgraph,
    unweighted,
)
from .matrices import (
    adjacency_matrix,
    normalized_adjacency_matrix,
    signless_laplacian_matrix,
)
from .solvers import SolverConfig, dense_spectrum, extremal_eigs

FRUSTRATION_EXACT_MAX_NODES = 20


@dataclass(frozen=True)
class BipartivityReport:
    """All feasible non-bipartivity measures of one graph.

    Unavailable measures are None with the reason recorded in ``notes``.
    """

    spectrum_asymmetry: float | None
    normalized_asymmetry: float | None
    frustration_relaxation: float | None
    odd_cycle_ratio: float | None
    frustration: int | None = None
    frustration_ratio: float | None = None
    notes: dict = field(default_factory=dict)


def _as_graph(g: Graph | BipartiteGraph) -> Graph:
    g = as_unipartite(g) if isinstance(g, BipartiteGraph) else g
    return unweighted(g)


def _require_edges(g: Graph) -> None:
    if g.edge_count == 0:
        raise ValueError("measure undefined on a graph with no edges")


def frustration_exact(g: Graph | BipartiteGraph) -> tuple[int, np.ndarray]:
    """Minimum number of frustrated edges over all bipartitions.

    Exhaustive scan over 2^(n-1) bipartitions; limited to
    ``FRUSTRATION_EXACT_MAX_NODES`` nodes.  Returns the minimum count and
    one witnessing 0/1 side assignment.
    """
    g = _as_graph(g)
    n = g.node_count
    if n > FRUSTRATION_EXACT_MAX_NODES:
        raise ScaleLimitError(
            f"exhaustive frustration needs <= {FRUSTRATION_EXACT_MAX_NODES} nodes; "
            "use frustration_relaxation at larger scales"
        )
    masks = np.arange(1 << max(n - 1, 0), dtype=np.int64)
    frustrated = np.zeros(len(masks), dtype=np.int32)
    # node n-1 is pinned to side 0; bit i of the mask is the side of node i
    for u, v in zip(g.edge_u.tolist(), g.edge_v.tolist()):
        su = (masks >> u) & 1 if u < n - 1 else np.zeros(len(masks), dtype=np.int64)
        sv = (masks >> v) & 1 if v < n - 1 else np.zeros(len(masks), dtype=np.int64)
        frustrated += su == sv
    best = int(np.argmin(frustrated))
    sides = np.array([(best >> i) & 1 for i in range(n - 1)] + [0], dtype=np.int64)
    return int(frustrated[best]), sides


def frustration_ratio_exact(g: Graph | BipartiteGraph) -> float:
    """Exact minimum fraction of frustrated edges (frustration / |E|)."""
    g = _as_graph(g)
    _require_edges(g)
    f, _ = frustration_exact(g)
    return f / g.edge_count


def frustration_relaxation(g: Graph | BipartiteGraph, config: SolverConfig | None = None) -> float:
    """Spectral relaxation of the frustration ratio:
    |V| / (8 |E|) times the smallest signless-Laplacian eigenvalue."""
    g = _as_graph(g)
    _require_edges(g)
    k = signless_laplacian_matrix(g)
    spec = extremal_eigs(k, which="min", config=config)
    lam_min = float(spec.eigenvalues[0])
    return g.node_count / (8.0 * g.edge_count) * lam_min


def spectrum_asymmetry(g: Graph | BipartiteGraph, config: SolverConfig | None = None) -> float:
    """1 - |lam_min / lam_max| of the adjacency matrix.

    Zero iff the adjacency spectrum is symmetric around zero, which holds
    exactly for bipartite graphs.
    """
    g = _as_graph(g)
    _require_edges(g)
    spec = extremal_eigs(adjacency_matrix(g), which="both", config=config)
    lam_min, lam_max = float(spec.eigenvalues[0]), float(spec.eigenvalues[-1])
    return 1.0 - abs(lam_min / lam_max)


def normalized_asymmetry(g: Graph | BipartiteGraph, config: SolverConfig | None = None) -> float:
    """Smallest eigenvalue of the normalized adjacency matrix, plus one.

    Isolated nodes are dropped first; they carry no structure and would
    only pad the spectrum with zeros.
    """
    g = _as_graph(g)
    _require_edges(g)
    degs = g.degrees()
    if np.any(degs == 0):
        g = subgraph(g, np.nonzero(degs > 0)[0])
    spec = extremal_eigs(normalized_adjacency_matrix(g), which="min", config=config)
    return float(spec.eigenvalues[0]) + 1.0


def odd_cycle_ratio(g: Graph | BipartiteGraph, config: SolverConfig | None = None) -> float:
    """Closed odd walks over all closed walks, weighted by 1/length!.

    Evaluates trace(sinh(A)) / trace(exp(A)) through the full adjacency
    spectrum; unavailable above ``dense_threshold``.
    """
    g = _as_graph(g)
    lam = dense_spectrum(adjacency_matrix(g), config).eigenvalues
    return float(np.sum(np.sinh(lam)) / np.sum(np.exp(lam)))


def bipartivity_report(
    g: Graph | BipartiteGraph,
    config: SolverConfig | None = None,
    exact_limit: int = FRUSTRATION_EXACT_MAX_NODES,
) -> BipartivityReport:
    """Compute every measure feasible at this graph's scale.

    The cheap extremal-eigenvalue measure runs first; per-measure failures
    are recorded in ``notes`` instead of aborting the report.
    """
    g = _as_graph(g)
    notes: dict[str, str] = {}
    values: dict[str, float | None] = {}
    measures = (
        ("spectrum_asymmetry", spectrum_asymmetry),
        ("normalized_asymmetry", normalized_asymmetry),
        ("frustration_relaxation", frustration_relaxation),
        ("odd_cycle_ratio", odd_cycle_ratio),
    )
    for name, fn in measures:
        try:
            values[name] = fn(g, config)
        except (AnalysisError, ValueError) as exc:
            values[name] = None
            notes[name] = str(exc)
    frustration = ratio = None
    if g.node_count <= exact_limit:
        frustration, _ = frustration_exact(g)
        ratio = frustration / g.edge_count if g.edge_count else None
    else:
        notes.setdefault(
            "frustration",
            f"exact frustration limited to {exact_limit} nodes",
        )
    if g.edge_count and not is_connected(g):
        notes["connectivity"] = (
            "graph is disconnected; extremal-eigenvalue measures reflect "
            "the most non-bipartite component"
        )
    return BipartivityReport(
        spectrum_asymmetry=values["spectrum_asymmetry"],
        normalized_asymmetry=values["normalized_asymmetry"],
        frustration_relaxation=values["frustration_relaxation"],
        odd_cycle_ratio=values["odd_cycle_ratio"],
        frustration=frustration,
        frustration_ratio=ratio,
        notes=notes,
    )
