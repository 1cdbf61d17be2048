"""Seeded random graph generators for benchmarks and tests."""

from __future__ import annotations

import numpy as np

from .graphs import BipartiteGraph, Graph, build_bipartite, build_graph


def _pairs_from_mask(mask: np.ndarray) -> np.ndarray:
    rows, cols = np.nonzero(mask)
    return np.column_stack([rows, cols])


def random_graph(n: int, p: float, seed=0) -> Graph:
    """Erdos-Renyi graph G(n, p); isolated nodes are kept."""
    rng = np.random.default_rng(seed)
    upper = np.triu(rng.random((n, n)) < p, k=1)
    return build_graph(_pairs_from_mask(upper).reshape(-1, 2), node_ids=range(n))


def random_bipartite(n1: int, n2: int, p: float, seed=0) -> BipartiteGraph:
    """Bipartite graph with each of the n1*n2 cross edges present w.p. p."""
    rng = np.random.default_rng(seed)
    mask = rng.random((n1, n2)) < p
    pairs = _pairs_from_mask(mask)
    return build_bipartite(pairs.reshape(-1, 2), left_ids=range(n1), right_ids=range(n2))


def random_connected_graph(n: int, p: float, seed=0, ensure_triangle: bool = False) -> Graph:
    """Connected G(n, p): a random spanning tree guarantees connectivity.

    With ``ensure_triangle`` the triangle (0, 1, 2) is forced, making the
    graph non-bipartite.
    """
    if n < (3 if ensure_triangle else 2):
        raise ValueError("graph too small")
    rng = np.random.default_rng(seed)
    upper = np.triu(rng.random((n, n)) < p, k=1)
    # random spanning tree: attach each node to a uniformly chosen earlier one
    order = rng.permutation(n)
    for i in range(1, n):
        a, b = order[i], order[rng.integers(0, i)]
        upper[min(a, b), max(a, b)] = True
    if ensure_triangle:
        upper[0, 1] = upper[1, 2] = upper[0, 2] = True
    return build_graph(_pairs_from_mask(upper), node_ids=range(n))


def two_clique_bridge(clique_size: int = 6, seed=0) -> tuple[Graph, np.ndarray]:
    """Two cliques joined by one bridge edge, with shuffled node labels.

    Returns the graph and the planted 0/1 side per node.
    """
    n = 2 * clique_size
    rng = np.random.default_rng(seed)
    labels = rng.permutation(n)
    edges = []
    for block in (0, 1):
        base = block * clique_size
        for i in range(clique_size):
            for j in range(i + 1, clique_size):
                edges.append((labels[base + i], labels[base + j]))
    edges.append((labels[0], labels[clique_size]))
    g = build_graph(edges, node_ids=range(n))
    planted = np.zeros(n, dtype=np.int64)
    planted[labels[clique_size:]] = 1
    return g, planted


def two_biclique_bridge(
    left_sizes: tuple[int, int] = (3, 3),
    right_sizes: tuple[int, int] = (3, 3),
    seed=0,
) -> tuple[BipartiteGraph, np.ndarray, np.ndarray]:
    """Two complete bicliques joined by one bridge edge, labels shuffled.

    Returns the graph plus the planted left and right block assignments.
    """
    n1, n2 = sum(left_sizes), sum(right_sizes)
    rng = np.random.default_rng(seed)
    lperm, rperm = rng.permutation(n1), rng.permutation(n2)
    edges = []
    l0, r0 = left_sizes[0], right_sizes[0]
    for i in range(n1):
        block = 0 if i < l0 else 1
        lo, hi = (0, r0) if block == 0 else (r0, n2)
        for j in range(lo, hi):
            edges.append((lperm[i], rperm[j]))
    edges.append((lperm[0], rperm[r0]))  # bridge from block 0 to block 1
    bg = build_bipartite(edges, left_ids=range(n1), right_ids=range(n2))
    left_planted = np.zeros(n1, dtype=np.int64)
    left_planted[lperm[l0:]] = 1
    right_planted = np.zeros(n2, dtype=np.int64)
    right_planted[rperm[r0:]] = 1
    return bg, left_planted, right_planted


def planted_biclique_graph(
    blocks: tuple[tuple[int, int], ...] = ((8, 8), (8, 8)),
    noise: float = 0.0,
    seed=0,
) -> BipartiteGraph:
    """Disjoint complete bicliques plus optional uniform cross-block noise.

    The standard benchmark for bipartite link prediction: edges held out
    from within blocks should outscore sampled cross-block non-edges.
    """
    rng = np.random.default_rng(seed)
    n1 = sum(b[0] for b in blocks)
    n2 = sum(b[1] for b in blocks)
    mask = np.zeros((n1, n2), dtype=bool)
    r_off = 0
    l_off = 0
    for bl, br in blocks:
        mask[l_off : l_off + bl, r_off : r_off + br] = True
        l_off += bl
        r_off += br
    if noise > 0:
        mask |= rng.random((n1, n2)) < noise
    return build_bipartite(
        _pairs_from_mask(mask), left_ids=range(n1), right_ids=range(n2)
    )


def random_sparse_graph(n: int, m: int, seed=0) -> Graph:
    """A graph with ~m distinct random edges on n nodes (duplicate draws
    and self-pairs are dropped), built quickly for large-scale runs."""
    rng = np.random.default_rng(seed)
    u = rng.integers(0, n, size=int(1.1 * m) + 16)
    v = rng.integers(0, n, size=len(u))
    keep = u != v
    pairs = np.column_stack([u[keep], v[keep]])[:m]
    return build_graph(pairs, node_ids=range(n))
