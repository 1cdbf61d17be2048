"""Characteristic matrices of graphs as scipy.sparse CSR arrays.

All matrices use edge weights directly; degrees are weighted row sums.
Rows and columns of degree-normalized matrices that belong to isolated
nodes are all-zero (the inverse square root of a zero degree is taken
as zero).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .graphs import BipartiteGraph, Graph


@dataclass(frozen=True)
class MatrixFamily:
    """The characteristic matrices of one graph.

    ``biadjacency`` and ``normalized_biadjacency`` are None for unipartite
    graphs.
    """

    adjacency: sp.csr_matrix
    degree: sp.csr_matrix
    laplacian: sp.csr_matrix
    signless_laplacian: sp.csr_matrix
    normalized_adjacency: sp.csr_matrix
    biadjacency: sp.csr_matrix | None = None
    normalized_biadjacency: sp.csr_matrix | None = None


def adjacency_matrix(g: Graph | BipartiteGraph) -> sp.csr_matrix:
    """Adjacency matrix; for a bipartite graph, the symmetric block form
    with zero diagonal blocks and the biadjacency matrix off-diagonal."""
    if isinstance(g, BipartiteGraph):
        b = biadjacency_matrix(g)
        return sp.bmat(
            [[None, b], [b.T, None]], format="csr"
        )
    n = g.node_count
    u, v, w = g.edge_u, g.edge_v, g.weight
    if g.directed:
        return sp.csr_matrix((w, (u, v)), shape=(n, n))
    off = u != v
    rows = np.concatenate([u, v[off]])
    cols = np.concatenate([v, u[off]])
    data = np.concatenate([w, w[off]])
    return sp.csr_matrix((data, (rows, cols)), shape=(n, n))


def biadjacency_matrix(bg: BipartiteGraph) -> sp.csr_matrix:
    """Rectangular left-by-right matrix of edge weights."""
    return sp.csr_matrix(
        (bg.weight, (bg.edge_u, bg.edge_v)), shape=(bg.left_count, bg.right_count)
    )


def degree_vector(g: Graph | BipartiteGraph) -> np.ndarray:
    if isinstance(g, BipartiteGraph):
        return np.concatenate([g.left_degrees(), g.right_degrees()])
    return g.degrees()


def degree_matrix(g: Graph | BipartiteGraph) -> sp.csr_matrix:
    return sp.diags(degree_vector(g)).tocsr()


def laplacian_matrix(g: Graph | BipartiteGraph) -> sp.csr_matrix:
    """L = D - A; positive-semidefinite with zero row sums."""
    return (degree_matrix(g) - adjacency_matrix(g)).tocsr()


def signless_laplacian_matrix(g: Graph | BipartiteGraph) -> sp.csr_matrix:
    """D + A; its smallest eigenvalue is zero iff the graph is bipartite."""
    return (degree_matrix(g) + adjacency_matrix(g)).tocsr()


def _inv_sqrt(d: np.ndarray) -> np.ndarray:
    out = np.zeros_like(d)
    nz = d > 0
    out[nz] = 1.0 / np.sqrt(d[nz])
    return out


def normalized_adjacency_matrix(g: Graph | BipartiteGraph) -> sp.csr_matrix:
    """Degree-normalized adjacency; spectrum lies in [-1, 1] and touches -1
    exactly when the graph is bipartite."""
    s = _inv_sqrt(degree_vector(g))
    a = adjacency_matrix(g)
    return (sp.diags(s) @ a @ sp.diags(s)).tocsr()


def normalized_biadjacency_matrix(bg: BipartiteGraph) -> sp.csr_matrix:
    """Biadjacency matrix normalized by left and right degrees; its
    singular vectors drive bipartite co-clustering."""
    s1 = _inv_sqrt(bg.left_degrees())
    s2 = _inv_sqrt(bg.right_degrees())
    return (sp.diags(s1) @ biadjacency_matrix(bg) @ sp.diags(s2)).tocsr()


def matrix_family(g: Graph | BipartiteGraph) -> MatrixFamily:
    """All characteristic matrices of a graph in one call."""
    bipartite = isinstance(g, BipartiteGraph)
    return MatrixFamily(
        adjacency=adjacency_matrix(g),
        degree=degree_matrix(g),
        laplacian=laplacian_matrix(g),
        signless_laplacian=signless_laplacian_matrix(g),
        normalized_adjacency=normalized_adjacency_matrix(g),
        biadjacency=biadjacency_matrix(g) if bipartite else None,
        normalized_biadjacency=normalized_biadjacency_matrix(g) if bipartite else None,
    )
