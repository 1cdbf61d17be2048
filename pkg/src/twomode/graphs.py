"""Immutable graph types, constructors, and structural operations.

Node ids supplied by the caller are arbitrary nonnegative integers; they
are compacted to a dense ``[0, n)`` range at construction and the original
ids are retained so results can be reported in the caller's namespace.
Edges of undirected graphs are stored once with ``u <= v``; duplicate input
pairs are aggregated by weight sum (parallel edges become integer weights).
"""

from __future__ import annotations

from dataclasses import dataclass
from collections import deque

import numpy as np

from .errors import ScaleLimitError

# exhaustive walk enumeration stays tractable below these bounds
WALK_ORACLE_MAX_NODES = 12
WALK_ORACLE_MAX_LENGTH = 6


@dataclass(frozen=True)
class GraphStats:
    """Size, volume and fill of a graph; left/right sizes for bipartite ones.

    ``fill`` is None when undefined (single-node unipartite graph).
    """

    size: int
    volume: int
    fill: float | None
    left_size: int | None = None
    right_size: int | None = None


@dataclass(frozen=True)
class Graph:
    """A unipartite graph with weighted, optionally timestamped edges."""

    node_count: int
    edge_u: np.ndarray
    edge_v: np.ndarray
    weight: np.ndarray
    time: np.ndarray | None
    directed: bool
    node_ids: np.ndarray  # original id of each compact node

    @property
    def edge_count(self) -> int:
        return len(self.edge_u)

    def degrees(self) -> np.ndarray:
        """Weighted degrees: row sums of the adjacency matrix.

        A self-loop contributes its weight once.  For directed graphs this
        is the weighted out-degree.
        """
        d = np.zeros(self.node_count)
        np.add.at(d, self.edge_u, self.weight)
        if not self.directed:
            off = self.edge_u != self.edge_v
            np.add.at(d, self.edge_v[off], self.weight[off])
        return d

    def edge_pairs(self) -> np.ndarray:
        """Edges as an (m, 2) array of compact ids."""
        return np.column_stack([self.edge_u, self.edge_v])


@dataclass(frozen=True)
class BipartiteGraph:
    """A bipartite graph; left and right ids live in disjoint namespaces."""

    left_count: int
    right_count: int
    edge_u: np.ndarray  # compact left ids
    edge_v: np.ndarray  # compact right ids
    weight: np.ndarray
    time: np.ndarray | None
    left_ids: np.ndarray
    right_ids: np.ndarray

    @property
    def node_count(self) -> int:
        return self.left_count + self.right_count

    @property
    def edge_count(self) -> int:
        return len(self.edge_u)

    def left_degrees(self) -> np.ndarray:
        d = np.zeros(self.left_count)
        np.add.at(d, self.edge_u, self.weight)
        return d

    def right_degrees(self) -> np.ndarray:
        d = np.zeros(self.right_count)
        np.add.at(d, self.edge_v, self.weight)
        return d

    def edge_pairs(self) -> np.ndarray:
        return np.column_stack([self.edge_u, self.edge_v])


def _freeze(*arrays) -> None:
    for a in arrays:
        if a is not None:
            a.setflags(write=False)


def _parse_edge_columns(edges):
    """Split an edge list into (u, v, weight, time) columns.

    Accepts a sequence of uniform-arity tuples ``(u, v[, weight[, time]])``
    or an (m, k) array with 2 <= k <= 4 columns.
    """
    arr = np.asarray(edges, dtype=float)
    if arr.size == 0:
        arr = arr.reshape(0, 2)
    if arr.ndim != 2:
        raise ValueError("edge list must be a sequence of (u, v[, weight[, time]]) rows")
    if arr.shape[1] < 2 or arr.shape[1] > 4:
        raise ValueError(f"edge rows must have 2 to 4 fields, got {arr.shape[1]}")
    u, v = arr[:, 0], arr[:, 1]
    for col, name in ((u, "source"), (v, "target")):
        if np.any(col < 0) or np.any(col != np.floor(col)):
            raise ValueError(f"{name} ids must be nonnegative integers")
    weight = arr[:, 2].copy() if arr.shape[1] >= 3 else np.ones(len(arr))
    time = arr[:, 3].copy() if arr.shape[1] == 4 else None
    return u.astype(np.int64), v.astype(np.int64), weight, time


def _compact(ids: np.ndarray, universe) -> tuple[np.ndarray, np.ndarray]:
    """Map original ids to a dense range; returns (original_ids, mapped)."""
    pool = ids
    if universe is not None:
        extra = np.asarray(list(universe), dtype=np.int64)
        if extra.size and np.any(extra < 0):
            raise ValueError("node ids must be nonnegative integers")
        pool = np.concatenate([ids, extra])
    originals = np.unique(pool)
    mapped = np.searchsorted(originals, ids)
    return originals, mapped


def _aggregate(u, v, weight, time, strict):
    """Merge duplicate (u, v) rows: weights sum, times keep the minimum."""
    pairs = np.column_stack([u, v])
    uniq, inverse = np.unique(pairs, axis=0, return_inverse=True)
    if len(uniq) == len(pairs):
        order = np.argsort(inverse, kind="stable")
        return uniq[:, 0], uniq[:, 1], weight[order], (None if time is None else time[order])
    if strict:
        raise ValueError("duplicate edges are not allowed in strict mode")
    w = np.zeros(len(uniq))
    np.add.at(w, inverse, weight)
    t = None
    if time is not None:
        t = np.full(len(uniq), np.inf)
        np.minimum.at(t, inverse, time)
    return uniq[:, 0], uniq[:, 1], w, t


def build_graph(edges, directed: bool = False, strict: bool = False, node_ids=None) -> Graph:
    """Build a Graph from an edge list.

    Ids are compacted to ``[0, n)`` (ascending original order); pass
    ``node_ids`` to include nodes beyond those incident to an edge.
    Duplicate pairs aggregate by weight sum unless ``strict`` is set, in
    which case they raise.  For undirected graphs, (u, v) and (v, u) are
    the same edge.
    """
    u, v, weight, time = _parse_edge_columns(edges)
    node_ids = None if node_ids is None else list(node_ids)
    if len(u) == 0 and not node_ids:
        raise ValueError("empty graph")
    originals, mapped_u = _compact(np.concatenate([u, v]), node_ids)
    mapped = mapped_u.reshape(2, -1)
    u, v = mapped[0], mapped[1]
    if not directed:
        u, v = np.minimum(u, v), np.maximum(u, v)
    u, v, weight, time = _aggregate(u, v, weight, time, strict)
    g = Graph(len(originals), u, v, weight, time, directed, originals)
    _freeze(u, v, weight, time, originals)
    return g


def build_bipartite(edges, left_ids=None, right_ids=None, strict: bool = False) -> BipartiteGraph:
    """Build a BipartiteGraph; column 1 and column 2 ids are disjoint namespaces."""
    u, v, weight, time = _parse_edge_columns(edges)
    left_ids = None if left_ids is None else list(left_ids)
    right_ids = None if right_ids is None else list(right_ids)
    if len(u) == 0 and not (left_ids and right_ids):
        raise ValueError("empty graph")
    lefts, u = _compact(u, left_ids)
    rights, v = _compact(v, right_ids)
    u, v, weight, time = _aggregate(u, v, weight, time, strict)
    bg = BipartiteGraph(len(lefts), len(rights), u, v, weight, time, lefts, rights)
    _freeze(u, v, weight, time, lefts, rights)
    return bg


def stats(g: Graph | BipartiteGraph) -> GraphStats:
    """Size, volume and fill; bipartite graphs also report per-side sizes."""
    m = g.edge_count
    if isinstance(g, BipartiteGraph):
        possible = g.left_count * g.right_count
        fill = m / possible if possible else None
        return GraphStats(g.node_count, m, fill, g.left_count, g.right_count)
    n = g.node_count
    if g.directed:
        possible = n * (n - 1)
    else:
        possible = n * (n - 1) // 2
    fill = m / possible if possible else None
    return GraphStats(n, m, fill)


def project(bg: BipartiteGraph, side: str = "left") -> Graph:
    """Project onto one side: nodes of that side, an (unweighted) edge
    between two of them iff they share at least one neighbor."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    from . import matrices  # deferred; matrices imports this module

    b = matrices.biadjacency_matrix(bg)
    if side == "right":
        b = b.T
        count, ids = bg.right_count, bg.right_ids
    else:
        count, ids = bg.left_count, bg.left_ids
    gram = (b @ b.T).tocoo()
    mask = (gram.row < gram.col) & (gram.data > 0)
    u, v = gram.row[mask].astype(np.int64), gram.col[mask].astype(np.int64)
    w = np.ones(len(u))
    g = Graph(count, u, v, w, None, False, ids.copy())
    _freeze(u, v, w, g.node_ids)
    return g


def hyperedges(bg: BipartiteGraph, side: str = "left") -> list[set[int]]:
    """Hypergraph view on the nodes of ``side``: one hyperedge per node of
    the opposite side, holding that node's neighbor set (possibly empty)."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if side == "left":
        count = bg.right_count
        anchors, members = bg.edge_v, bg.edge_u
    else:
        count = bg.left_count
        anchors, members = bg.edge_u, bg.edge_v
    out: list[set[int]] = [set() for _ in range(count)]
    for a, m in zip(anchors.tolist(), members.tolist()):
        out[a].add(m)
    return out


def double_cover(g: Graph) -> BipartiteGraph:
    """Bipartite double cover of a directed graph.

    Every node splits into a source copy (left) and a target copy (right);
    each arc (u, v) becomes the edge (left u, right v), so the biadjacency
    matrix of the result equals the adjacency matrix of the input.
    """
    if not g.directed:
        raise ValueError("double cover requires a directed graph")
    bg = BipartiteGraph(
        g.node_count,
        g.node_count,
        g.edge_u.copy(),
        g.edge_v.copy(),
        g.weight.copy(),
        None if g.time is None else g.time.copy(),
        g.node_ids.copy(),
        g.node_ids.copy(),
    )
    _freeze(bg.edge_u, bg.edge_v, bg.weight, bg.time, bg.left_ids, bg.right_ids)
    return bg


def as_unipartite(bg: BipartiteGraph) -> Graph:
    """The underlying unipartite graph: left nodes first, right nodes
    shifted by ``left_count``.  Its adjacency matrix has the two-block form."""
    u = bg.edge_u.copy()
    v = bg.edge_v + bg.left_count
    w = bg.weight.copy()
    t = None if bg.time is None else bg.time.copy()
    ids = np.concatenate([bg.left_ids, bg.right_ids])
    g = Graph(bg.node_count, u, v, w, t, False, ids)
    _freeze(u, v, w, t, ids)
    return g


def unweighted(g: Graph | BipartiteGraph):
    """The same graph with every edge weight replaced by 1."""
    w = np.ones(g.edge_count)
    if isinstance(g, BipartiteGraph):
        out = BipartiteGraph(g.left_count, g.right_count, g.edge_u, g.edge_v,
                             w, g.time, g.left_ids, g.right_ids)
    else:
        out = Graph(g.node_count, g.edge_u, g.edge_v, w, g.time, g.directed, g.node_ids)
    _freeze(w)
    return out


def adjacency_lists(g: Graph) -> list[list[tuple[int, float]]]:
    """Neighbor lists with weights; arcs only for directed graphs."""
    adj: list[list[tuple[int, float]]] = [[] for _ in range(g.node_count)]
    for u, v, w in zip(g.edge_u.tolist(), g.edge_v.tolist(), g.weight.tolist()):
        adj[u].append((v, w))
        if not g.directed and u != v:
            adj[v].append((u, w))
    return adj


def connected_components(g: Graph | BipartiteGraph) -> list[np.ndarray]:
    """Connected components (ignoring direction), largest first.

    For bipartite graphs, components are over the combined node range with
    right nodes shifted by ``left_count``.
    """
    if isinstance(g, BipartiteGraph):
        g = as_unipartite(g)
    adj = adjacency_lists(
        g if not g.directed
        else Graph(g.node_count, g.edge_u, g.edge_v, g.weight, g.time, False, g.node_ids)
    )
    seen = np.zeros(g.node_count, dtype=bool)
    comps = []
    for start in range(g.node_count):
        if seen[start]:
            continue
        queue = deque([start])
        seen[start] = True
        comp = [start]
        while queue:
            node = queue.popleft()
            for nbr, _ in adj[node]:
                if not seen[nbr]:
                    seen[nbr] = True
                    comp.append(nbr)
                    queue.append(nbr)
        comps.append(np.array(sorted(comp), dtype=np.int64))
    comps.sort(key=len, reverse=True)
    return comps


def is_connected(g: Graph | BipartiteGraph) -> bool:
    return len(connected_components(g)) == 1


def subgraph(g: Graph, nodes: np.ndarray) -> Graph:
    """Induced subgraph on ``nodes`` (compact ids); original ids retained."""
    nodes = np.asarray(sorted(set(int(n) for n in nodes)), dtype=np.int64)
    keep = np.isin(g.edge_u, nodes) & np.isin(g.edge_v, nodes)
    u = np.searchsorted(nodes, g.edge_u[keep])
    v = np.searchsorted(nodes, g.edge_v[keep])
    w = g.weight[keep].copy()
    t = None if g.time is None else g.time[keep].copy()
    ids = g.node_ids[nodes].copy()
    out = Graph(len(nodes), u, v, w, t, g.directed, ids)
    _freeze(u, v, w, t, ids)
    return out


def count_paths_from(g: Graph, u: int, length: int) -> np.ndarray:
    """Walk counts from ``u`` to every node, by exhaustive enumeration.

    Walks may repeat nodes; for weighted graphs each walk contributes the
    product of its edge weights.  Bounded to small graphs: this is the
    test oracle for matrix-power path counting, kept independent of any
    matrix code.
    """
    if g.node_count > WALK_ORACLE_MAX_NODES or length > WALK_ORACLE_MAX_LENGTH:
        raise ScaleLimitError(
            f"walk enumeration is limited to {WALK_ORACLE_MAX_NODES} nodes "
            f"and length {WALK_ORACLE_MAX_LENGTH}"
        )
    if length < 0:
        raise ValueError("walk length must be nonnegative")
    adj = adjacency_lists(g)
    integral = bool(np.all(g.weight == np.floor(g.weight)))
    wcast = int if integral else float
    counts = [0] * g.node_count

    def visit(node: int, remaining: int, acc) -> None:
        if remaining == 0:
            counts[node] += acc
            return
        for nbr, w in adj[node]:
            visit(nbr, remaining - 1, acc * wcast(w))

    visit(int(u), int(length), 1 if integral else 1.0)
    return np.array(counts)


def count_paths_bruteforce(g: Graph, u: int, v: int, length: int):
    """Number of walks of length ``length`` from u to v (enumeration oracle)."""
    return count_paths_from(g, u, length)[int(v)]
