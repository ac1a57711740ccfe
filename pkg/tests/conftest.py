"""Shared test oracles and helpers.

The oracles here are deliberately naive and independent of the library's
algorithms: all-pairs distances by Floyd-Warshall, greedy landmark selection
by full rescans, and bottleneck distance by enumerating every matching.
"""

from __future__ import annotations

import math
import random

from graphtda.diagrams import PartialDiagram
from graphtda.graphs import WeightedGraph, eps_ball


def floyd_warshall(g: WeightedGraph) -> list[list[float]]:
    """All-pairs shortest-path matrix; inf marks unreachable pairs."""
    n = g.vertex_count
    dist = [[math.inf] * n for _ in range(n)]
    for i in range(n):
        dist[i][i] = 0.0
    for u, v, w in g.edges():
        if w < dist[u][v]:
            dist[u][v] = dist[v][u] = w
    for k in range(n):
        dk = dist[k]
        for i in range(n):
            dik = dist[i][k]
            if math.isinf(dik):
                continue
            di = dist[i]
            for j in range(n):
                alt = dik + dk[j]
                if alt < di[j]:
                    di[j] = alt
    return dist


def naive_greedy(g: WeightedGraph, eps: float) -> list[int]:
    """Reference greedy net: recompute every cover count from scratch each
    round, pick the unmarked vertex covering the most unmarked vertices,
    smallest id on ties."""
    n = g.vertex_count
    balls = [set(eps_ball(g, u, eps).dist) for u in range(n)]
    marked: set[int] = set()
    chosen: list[int] = []
    while len(marked) < n:
        best, best_count = -1, -1
        for u in range(n):
            if u in marked:
                continue
            c = len(balls[u] - marked)
            if c > best_count:
                best, best_count = u, c
        chosen.append(best)
        marked |= balls[best]
    return chosen


def bottleneck_bruteforce(points_a, points_b) -> float:
    """Bottleneck distance by enumerating all partial matchings.

    Every point either matches a distinct point of the other diagram or its
    own diagonal projection; the cost of a matching is its max displacement.
    Exponential, only for tiny diagrams.
    """
    a, b = list(points_a), list(points_b)

    def gap(p):
        return (p[1] - p[0]) / 2.0

    def linf(p, q):
        return max(abs(p[0] - q[0]), abs(p[1] - q[1]))

    best = math.inf

    def recurse(i: int, used: frozenset, current: float) -> None:
        nonlocal best
        if current >= best:
            return
        if i == len(a):
            rest = max((gap(q) for j, q in enumerate(b) if j not in used), default=0.0)
            cost = max(current, rest)
            if cost < best:
                best = cost
            return
        recurse(i + 1, used, max(current, gap(a[i])))
        for j, q in enumerate(b):
            if j not in used:
                recurse(i + 1, used | {j}, max(current, linf(a[i], q)))

    recurse(0, frozenset(), 0.0)
    return best


def random_partial_diagram(rng: random.Random, max_points: int = 6, dim: int = 1) -> PartialDiagram:
    points = []
    for _ in range(rng.randrange(max_points + 1)):
        birth = round(rng.uniform(0.0, 5.0), 3)
        death = birth + round(rng.uniform(0.001, 4.0), 3)
        points.append((birth, death))
    return PartialDiagram(tuple(sorted(points)), dim, 0.0)


def seed_with_first_pick(n: int, target: int, limit: int = 10000) -> int:
    """A seed whose first uniform draw over range(n) lands on ``target``."""
    for seed in range(limit):
        if random.Random(seed).randrange(n) == target:
            return seed
    raise AssertionError(f"no seed below {limit} starts at {target} of {n}")


def count_sandwich_violations(g, landmarks, eps_eff, diam, n_alphas=8):
    """Violations of R(alpha/3) <= LW(alpha) <= R(3*alpha) over an alpha grid.

    The grid spans [2 * eps_eff, diam]; ``eps_eff`` should be the certified
    coverage radius (== eps for a genuine net).  Returns (violations, checks).
    Containment is brute-force comparison of simplex sets.
    """
    from graphtda.complexes import (
        complex_at,
        landmark_metric,
        lazy_witness_filtration,
        rips_filtration,
    )

    lo = 2.0 * eps_eff
    if lo > diam:
        return 0, 0
    metric = landmark_metric(g, landmarks)
    rips_wide = rips_filtration(metric, alpha_max=3.0 * diam + 1.0)
    witness = lazy_witness_filtration(g, landmarks, alpha_max=diam, nu=1)
    if n_alphas == 1 or lo == diam:
        alphas = [lo]
    else:
        alphas = [lo + (diam - lo) * i / (n_alphas - 1) for i in range(n_alphas)]
    violations = 0
    for alpha in alphas:
        inner = complex_at(rips_wide, alpha / 3.0)
        middle = complex_at(witness, alpha)
        outer = complex_at(rips_wide, 3.0 * alpha)
        if not (inner <= middle <= outer):
            violations += 1
    return violations, len(alphas)
