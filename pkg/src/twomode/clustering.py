"""Ratio-cut evaluation and spectral 2-clustering.

Unipartite graphs are split by the sign pattern of the Fiedler vector
(the Laplacian eigenvector of smallest nonzero eigenvalue); bipartite
graphs are co-clustered through the second singular triplet of the
degree-normalized biadjacency matrix, which clusters both sides at once.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DisconnectedGraphError, SpectralTieError
from .graphs import BipartiteGraph, Graph, as_unipartite, is_connected
from .matrices import laplacian_matrix, normalized_biadjacency_matrix
from .solvers import (
    SolverConfig,
    smallest_nonzero_laplacian_vectors,
    truncated_svd,
)

SIGN_TIE_EPS = 1e-12
COCLUSTER_TIE_EPS = 1e-10


@dataclass(frozen=True)
class Partition:
    """A 2-partition of a unipartite graph's nodes (classes 0 and 1)."""

    assignment: np.ndarray


@dataclass(frozen=True)
class BipartitePartition:
    """A compatible 2-partition of both sides of a bipartite graph."""

    left_assignment: np.ndarray
    right_assignment: np.ndarray

    def combined(self) -> np.ndarray:
        return np.concatenate([self.left_assignment, self.right_assignment])


@dataclass(frozen=True)
class CutReport:
    """Cut size, ratio cut and class sizes of one partition."""

    cut: float
    ratio_cut: float
    class_sizes: tuple[int, int]


def evaluate_cut(g: Graph, assignment) -> CutReport:
    """Cut and ratio cut of a 0/1 node assignment.

    The cut is the (weighted) number of crossing edges; the ratio cut
    scales it by (1/|X| + 1/|Y|).  Both classes must be nonempty.
    """
    a = np.asarray(assignment, dtype=np.int64)
    if a.shape != (g.node_count,):
        raise ValueError("assignment must give one class per node")
    if not np.all((a == 0) | (a == 1)):
        raise ValueError("assignment classes must be 0 or 1")
    size_x = int(np.sum(a == 0))
    size_y = g.node_count - size_x
    if size_x == 0 or size_y == 0:
        raise ValueError("both classes must be nonempty")
    crossing = a[g.edge_u] != a[g.edge_v]
    cut = float(np.sum(g.weight[crossing]))
    rcut = (1.0 / size_x + 1.0 / size_y) * cut
    return CutReport(cut, rcut, (size_x, size_y))


def _sign_classes(x: np.ndarray) -> np.ndarray:
    # ties within SIGN_TIE_EPS of zero join the positive class (class 0)
    return np.where((x > 0) | (np.abs(x) < SIGN_TIE_EPS), 0, 1).astype(np.int64)


def _sweep_classes(g: Graph, x: np.ndarray) -> np.ndarray:
    """Best of the n-1 threshold cuts along the embedding order."""
    order = np.argsort(x, kind="stable")[::-1]  # positive side first
    best_assignment = None
    best_rcut = np.inf
    assignment = np.ones(g.node_count, dtype=np.int64)
    for i in range(g.node_count - 1):
        assignment[order[i]] = 0
        report = evaluate_cut(g, assignment)
        if report.ratio_cut < best_rcut - 1e-15:
            best_rcut = report.ratio_cut
            best_assignment = assignment.copy()
    return best_assignment


def spectral_bipartition(
    g: Graph, config: SolverConfig | None = None, sweep: bool = False
) -> tuple[Partition, CutReport, np.ndarray]:
    """Fiedler-vector 2-clustering of a connected unipartite graph.

    Splits by sign of the Fiedler vector (zero entries join the positive
    class); with ``sweep`` the threshold minimizing the realized ratio cut
    along the embedding order is used instead, which can only improve it.
    Returns the partition, its cut report, and the embedding vector.
    """
    if g.node_count < 2:
        raise ValueError("need at least 2 nodes to bipartition")
    if not is_connected(g):
        raise DisconnectedGraphError("spectral bipartition requires a connected graph")
    spec = smallest_nonzero_laplacian_vectors(laplacian_matrix(g), 1, config)
    x = np.asarray(spec.eigenvectors[:, 0])
    assignment = _sweep_classes(g, x) if sweep else _sign_classes(x)
    report = evaluate_cut(g, assignment)
    return Partition(assignment), report, x


def cocluster_cut(bg: BipartiteGraph, partition: BipartitePartition) -> CutReport:
    """Cut report of a bipartite co-clustering, evaluated on the
    underlying unipartite graph."""
    return evaluate_cut(as_unipartite(bg), partition.combined())


def spectral_cocluster(
    bg: BipartiteGraph, config: SolverConfig | None = None
) -> tuple[BipartitePartition, CutReport, tuple[np.ndarray, np.ndarray]]:
    """SVD co-clustering of a connected bipartite graph.

    Takes the second singular triplet (u, v) of the degree-normalized
    biadjacency matrix and splits each side by the sign of its
    degree-rescaled singular vector.  A tie between the top two singular
    values leaves the triplet undetermined and raises SpectralTieError.
    """
    if bg.left_count < 2 or bg.right_count < 2:
        raise ValueError("need at least 2 nodes per side to co-cluster")
    if not is_connected(bg):
        raise DisconnectedGraphError("spectral co-clustering requires a connected graph")
    triplets = truncated_svd(normalized_biadjacency_matrix(bg), 2, config)
    s = triplets.singular_values
    if s[0] - s[1] < COCLUSTER_TIE_EPS:
        raise SpectralTieError(
            "top two singular values coincide; the co-clustering direction "
            "is not determined"
        )
    scale_left = 1.0 / np.sqrt(bg.left_degrees())
    scale_right = 1.0 / np.sqrt(bg.right_degrees())
    x_left = triplets.left_vectors[:, 1] * scale_left
    x_right = triplets.right_vectors[:, 1] * scale_right
    partition = BipartitePartition(_sign_classes(x_left), _sign_classes(x_right))
    report = cocluster_cut(bg, partition)
    return partition, report, (x_left, x_right)
