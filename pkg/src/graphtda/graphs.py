"""Weighted simple graphs and their geodesic-distance machinery.

A graph here is a finite metric space: vertices with the shortest-path
(geodesic) distance induced by positive edge weights.  Everything else in the
package is built over this metric -- landmark selection marks geodesic balls,
complexes are measured in the induced landmark metric, and certificates
re-check their claims against the same distances.

Distances are 64-bit floats and are exact sums of input weights; comparisons
throughout use plain ``<=`` / ``<`` with no epsilon fudging.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "WeightedGraph",
    "DistanceMap",
    "ShortestPathTree",
    "EdgeListError",
    "DisconnectedGraphError",
    "load_edge_list",
    "eps_ball",
    "sssp",
    "diameter",
    "shortest_path_tree",
    "nearest_landmark_distances",
    "is_connected",
]


class EdgeListError(ValueError):
    """Raised for malformed or invalid edge-list input.

    ``line_no`` is the 1-based line number of the offending line, when known.
    """

    def __init__(self, message: str, line_no: int | None = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class DisconnectedGraphError(ValueError):
    """Raised when an operation needs a connected graph but the input is not.

    Carries one representative vertex from each of two distinct components.
    """

    def __init__(self, u: int, v: int):
        super().__init__(
            f"graph is disconnected: no path between vertex {u} and vertex {v}"
        )
        self.representatives = (u, v)


class WeightedGraph:
    """Immutable undirected simple graph with strictly positive edge weights.

    Vertices are ``0 .. vertex_count - 1``.  The adjacency of each vertex is a
    sorted tuple of ``(neighbor, weight)`` pairs; sorting makes every traversal
    in the package deterministic.  Instances are never mutated after
    construction and are safe to share across threads.

    Parameters
    ----------
    vertex_count : int
        Number of vertices.
    edges : iterable of (u, v, w)
        Undirected edges, each given once.  Self-loops, duplicate edges
        (in either orientation) and non-positive weights are rejected.
    labels : sequence of int, optional
        Original vertex ids when the graph was compacted from a sparse
        id space (see :func:`load_edge_list`); ``labels[i]`` is the original
        id of vertex ``i``.
    """

    __slots__ = ("vertex_count", "adjacency", "edge_count", "is_unit_weight", "labels")

    def __init__(
        self,
        vertex_count: int,
        edges: Iterable[tuple[int, int, float]],
        labels: Sequence[int] | None = None,
    ):
        if vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        adj: list[list[tuple[int, float]]] = [[] for _ in range(vertex_count)]
        seen: set[tuple[int, int]] = set()
        unit = True
        count = 0
        for u, v, w in edges:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError(f"edge ({u},{v}) has a vertex id out of range")
            if u == v:
                raise ValueError(f"self-loop at vertex {u} is not allowed")
            w = float(w)
            if not (w > 0.0) or math.isinf(w):
                raise ValueError(f"edge ({u},{v}) has non-positive weight {w}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge ({key[0]},{key[1]})")
            seen.add(key)
            adj[u].append((v, w))
            adj[v].append((u, w))
            if w != 1.0:
                unit = False
            count += 1
        self.vertex_count = vertex_count
        self.adjacency: tuple[tuple[tuple[int, float], ...], ...] = tuple(
            tuple(sorted(nbrs)) for nbrs in adj
        )
        self.edge_count = count
        self.is_unit_weight = unit
        self.labels = tuple(labels) if labels is not None else None

    def neighbors(self, u: int) -> tuple[tuple[int, float], ...]:
        """Sorted ``(neighbor, weight)`` pairs of ``u``."""
        return self.adjacency[u]

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    def has_edge(self, u: int, v: int) -> bool:
        return any(w == v for w, _ in self.adjacency[u])

    def edges(self) -> Iterator[tuple[int, int, float]]:
        """Iterate each undirected edge once, as ``(u, v, w)`` with ``u < v``."""
        for u in range(self.vertex_count):
            for v, w in self.adjacency[u]:
                if u < v:
                    yield u, v, w

    def __repr__(self) -> str:
        return (
            f"WeightedGraph(n={self.vertex_count}, m={self.edge_count}, "
            f"unit={self.is_unit_weight})"
        )


@dataclass(frozen=True)
class DistanceMap:
    """Exact geodesic distances from a single source vertex.

    ``dist`` maps each reachable vertex to its distance; unreachable vertices
    are simply absent.  The source itself is present at distance 0.
    """

    source: int
    dist: dict[int, float]

    def __getitem__(self, v: int) -> float:
        return self.dist[v]

    def __contains__(self, v: int) -> bool:
        return v in self.dist

    def __len__(self) -> int:
        return len(self.dist)

    def items(self):
        return self.dist.items()


@dataclass(frozen=True)
class ShortestPathTree:
    """Shortest-path tree rooted at ``root``.

    ``parent[v]`` is ``None`` exactly for the root; ``depth[v]`` equals the
    geodesic distance from the root, so the weight of the tree edge
    ``(parent[v], v)`` is ``depth[v] - depth[parent[v]]``.  ``children[v]``
    lists tree children in ascending id order.
    """

    root: int
    parent: tuple[int | None, ...]
    children: tuple[tuple[int, ...], ...]
    depth: tuple[float, ...]


def _check_vertex(g: WeightedGraph, u: int) -> None:
    if not (0 <= u < g.vertex_count):
        raise ValueError(f"vertex id {u} out of range for graph with {g.vertex_count} vertices")


def _sssp_limited(g: WeightedGraph, source: int, limit: float) -> dict[int, float]:
    """Exact distances from ``source`` to every vertex within ``limit``.

    Unit-weight graphs use a FIFO breadth-first sweep (hop counts are exact
    distances); weighted graphs use a truncated priority-first (Dijkstra)
    search.  Truncation is sound: any shortest path to a vertex within the
    limit stays within the limit.
    """
    adj = g.adjacency
    if g.is_unit_weight:
        dist = {source: 0.0}
        queue = deque([source])
        while queue:
            v = queue.popleft()
            nd = dist[v] + 1.0
            if nd > limit:
                continue
            for w, _ in adj[v]:
                if w not in dist:
                    dist[w] = nd
                    queue.append(w)
        return dist
    dist: dict[int, float] = {}
    heap: list[tuple[float, int]] = [(0.0, source)]
    while heap:
        d, v = heapq.heappop(heap)
        if v in dist:
            continue  # stale heap entry
        dist[v] = d
        for w, wt in adj[v]:
            nd = d + wt
            if nd <= limit and w not in dist:
                heapq.heappush(heap, (nd, w))
    return dist


def eps_ball(g: WeightedGraph, u: int, eps: float) -> DistanceMap:
    """All vertices within geodesic distance ``eps`` of ``u``, with distances.

    Returns exactly ``{v : d_G(u, v) <= eps}``; ``u`` itself is included at
    distance 0.  ``eps`` may be 0, giving the singleton ball.
    """
    _check_vertex(g, u)
    if eps < 0:
        raise ValueError(f"eps must be non-negative, got {eps}")
    return DistanceMap(u, _sssp_limited(g, u, eps))


def sssp(g: WeightedGraph, u: int) -> DistanceMap:
    """Single-source shortest paths from ``u`` to every reachable vertex."""
    _check_vertex(g, u)
    return DistanceMap(u, _sssp_limited(g, u, math.inf))


def _first_disconnect(g: WeightedGraph) -> tuple[int, int] | None:
    """Return representatives of two components, or None if connected."""
    if g.vertex_count == 0:
        return None
    reached = _sssp_limited(g, 0, math.inf)
    if len(reached) == g.vertex_count:
        return None
    missing = next(v for v in range(g.vertex_count) if v not in reached)
    return (0, missing)


def is_connected(g: WeightedGraph) -> bool:
    return g.vertex_count > 0 and _first_disconnect(g) is None


def diameter(g: WeightedGraph) -> float:
    """Largest geodesic distance between any vertex pair.

    Computed by a full single-source sweep from every vertex.  Raises
    :class:`DisconnectedGraphError` (naming one vertex per component) if the
    graph is disconnected, and ``ValueError`` on the empty graph.
    """
    if g.vertex_count == 0:
        raise ValueError("diameter of an empty graph is undefined")
    bad = _first_disconnect(g)
    if bad is not None:
        raise DisconnectedGraphError(*bad)
    best = 0.0
    for u in range(g.vertex_count):
        dist = _sssp_limited(g, u, math.inf)
        ecc = max(dist.values())
        if ecc > best:
            best = ecc
    return best


def shortest_path_tree(g: WeightedGraph, u: int) -> ShortestPathTree:
    """Shortest-path tree rooted at ``u`` with deterministic parents.

    Among equal-distance predecessors the smallest vertex id becomes the
    parent.  Requires a connected graph.
    """
    _check_vertex(g, u)
    n = g.vertex_count
    dist = [math.inf] * n
    parent: list[int | None] = [None] * n
    settled = [False] * n
    dist[u] = 0.0
    heap: list[tuple[float, int]] = [(0.0, u)]
    adj = g.adjacency
    while heap:
        d, v = heapq.heappop(heap)
        if settled[v]:
            continue
        settled[v] = True
        for w, wt in adj[v]:
            if settled[w]:
                continue
            nd = d + wt
            if nd < dist[w]:
                dist[w] = nd
                parent[w] = v
                heapq.heappush(heap, (nd, w))
            elif nd == dist[w] and parent[w] is not None and v < parent[w]:
                parent[w] = v  # tie: prefer the smaller predecessor id
    if not all(settled):
        missing = settled.index(False)
        raise DisconnectedGraphError(u, missing)
    children: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        p = parent[v]
        if p is not None:
            children[p].append(v)
    return ShortestPathTree(
        root=u,
        parent=tuple(parent),
        children=tuple(tuple(sorted(c)) for c in children),
        depth=tuple(dist),
    )


def nearest_landmark_distances(
    g: WeightedGraph, landmarks: Sequence[int], nu: int = 1
) -> list[float]:
    """Distance from every vertex to its ``nu``-th nearest landmark.

    A landmark's own distance 0 participates, so the result is 0 at every
    landmark when ``nu = 1``.  Vertices unreachable from enough landmarks get
    ``inf``.
    """
    ids = list(landmarks)
    if not ids:
        raise ValueError("landmark set is empty")
    if not (1 <= nu <= len(ids)):
        raise ValueError(f"nu must be in [1, {len(ids)}], got {nu}")
    for l in ids:
        _check_vertex(g, l)
    rows = landmark_distance_rows(g, ids)
    kth = np.partition(rows, nu - 1, axis=0)[nu - 1]
    return [float(x) for x in kth]


def landmark_distance_rows(g: WeightedGraph, landmarks: Sequence[int]) -> np.ndarray:
    """Matrix of distances from each landmark (rows) to every vertex.

    One full single-source search per landmark; unreachable entries are
    ``inf``.  Shared by the witness machinery, which needs the same rows.
    """
    rows = np.full((len(landmarks), g.vertex_count), np.inf)
    for i, l in enumerate(landmarks):
        for v, d in _sssp_limited(g, l, math.inf).items():
            rows[i, v] = d
    return rows


def _tokenize(source) -> Iterator[tuple[int, list[str]]]:
    """Yield (line_no, tokens) for non-comment, non-blank lines."""
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            yield from _tokenize(fh)
        return
    for line_no, raw in enumerate(source, start=1):
        if isinstance(raw, bytes):
            raw = raw.decode("utf-8")
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield line_no, line.split()


def load_edge_list(source, weighted: bool = False) -> WeightedGraph:
    """Parse the ``u v [w]`` edge-list format into a :class:`WeightedGraph`.

    ``source`` may be a path or any iterable of text/byte lines.  Lines
    starting with ``#`` and blank lines are ignored.  Unweighted input has two
    integer tokens per line (weight 1); weighted input has three, with a
    strictly positive weight.  Duplicate undirected edges are collapsed
    keeping the minimum weight; self-loops are rejected.

    Vertex ids are arbitrary non-negative integers.  Gaps are compacted to
    ``0 .. n-1`` in ascending id order, and the original ids are kept on the
    returned graph as ``labels``.
    """
    want = 3 if weighted else 2
    collapsed: dict[tuple[int, int], float] = {}
    ids: set[int] = set()
    for line_no, tokens in _tokenize(source):
        if len(tokens) != want:
            raise EdgeListError(
                f"expected {want} fields, got {len(tokens)}: {' '.join(tokens)}",
                line_no,
            )
        try:
            u = int(tokens[0])
            v = int(tokens[1])
        except ValueError:
            raise EdgeListError(f"non-integer vertex id in: {' '.join(tokens)}", line_no)
        if u < 0 or v < 0:
            raise EdgeListError(f"negative vertex id in: {' '.join(tokens)}", line_no)
        if u == v:
            raise EdgeListError(f"self-loop at vertex {u}", line_no)
        if weighted:
            try:
                w = float(tokens[2])
            except ValueError:
                raise EdgeListError(f"non-numeric weight {tokens[2]!r}", line_no)
            if not (w > 0.0) or math.isinf(w) or math.isnan(w):
                raise EdgeListError(f"non-positive weight {tokens[2]}", line_no)
        else:
            w = 1.0
        key = (u, v) if u < v else (v, u)
        ids.add(u)
        ids.add(v)
        prev = collapsed.get(key)
        if prev is None or w < prev:
            collapsed[key] = w
    labels = sorted(ids)
    index = {orig: i for i, orig in enumerate(labels)}
    edges = [(index[a], index[b], w) for (a, b), w in collapsed.items()]
    return WeightedGraph(len(labels), edges, labels=labels)
