"""Small synthetic graph builders used by experiments and tests."""

from __future__ import annotations

import random
from typing import Sequence

from .graphs import WeightedGraph

__all__ = [
    "path_graph",
    "cycle_graph",
    "star_graph",
    "complete_graph",
    "random_connected_graph",
]


def path_graph(n: int, weights: Sequence[float] | None = None) -> WeightedGraph:
    """Path 0-1-...-(n-1); unit weights unless ``weights`` gives n-1 values."""
    if weights is None:
        weights = [1.0] * (n - 1)
    return WeightedGraph(n, [(i, i + 1, w) for i, w in enumerate(weights)])


def cycle_graph(n: int, weight: float = 1.0) -> WeightedGraph:
    edges = [(i, (i + 1) % n, weight) for i in range(n)]
    return WeightedGraph(n, edges)


def star_graph(leaves: int, weight: float = 1.0) -> WeightedGraph:
    """Star with the center at vertex 0 and ``leaves`` outer vertices."""
    return WeightedGraph(leaves + 1, [(0, i, weight) for i in range(1, leaves + 1)])


def complete_graph(n: int, weight: float = 1.0) -> WeightedGraph:
    edges = [(i, j, weight) for i in range(n) for j in range(i + 1, n)]
    return WeightedGraph(n, edges)


def _dyadic_weight(rng: random.Random) -> float:
    # Uniform over multiples of 1/1024 in [0.1005.., 2.0]: dyadic weights keep
    # every geodesic sum exactly representable, so distance comparisons in
    # certificates and inclusion checks are free of rounding noise.
    return rng.randrange(103, 2049) / 1024.0


def random_connected_graph(
    n: int,
    extra_edges: int = 0,
    weighted: bool = False,
    seed: int = 0,
    window: int | None = None,
) -> WeightedGraph:
    """Random connected graph: a random-attachment tree plus extra edges.

    Vertex ``i > 0`` attaches to a uniform earlier vertex, guaranteeing
    connectivity; ``extra_edges`` additional distinct non-tree edges are then
    sampled (fewer if the graph saturates).  With ``window`` set, attachment
    and extra edges only reach back ``window`` vertices, which yields stringy
    large-diameter graphs in the manner of infrastructure networks instead of
    the bushy small-diameter trees of global attachment.  Weights are 1, or
    -- when ``weighted`` -- uniform dyadic values in roughly ``[0.1, 2.0]``.
    """
    if n < 1:
        raise ValueError("need at least one vertex")
    rng = random.Random(seed)
    edges: dict[tuple[int, int], float] = {}
    for v in range(1, n):
        lo = 0 if window is None else max(0, v - window)
        u = rng.randrange(lo, v)
        edges[(u, v)] = _dyadic_weight(rng) if weighted else 1.0
    max_edges = n * (n - 1) // 2
    budget = min(extra_edges, max_edges - len(edges))
    attempts = 0
    added = 0
    while added < budget and attempts < 50 * budget + 100:
        attempts += 1
        u = rng.randrange(n)
        if window is None:
            v = rng.randrange(n)
        else:
            v = u + rng.randrange(1, window + 1)
            if v >= n:
                continue
        if u == v:
            continue
        key = (u, v) if u < v else (v, u)
        if key in edges:
            continue
        edges[key] = _dyadic_weight(rng) if weighted else 1.0
        added += 1
    return WeightedGraph(n, [(u, v, w) for (u, v), w in edges.items()])
