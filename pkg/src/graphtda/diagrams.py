"""Partial persistence diagrams and the bottleneck distance between them.

The comparison pipeline used by the experiment harness: cap infinite deaths
at the filtration ceiling, keep only points born after a threshold, move to
natural-log coordinates, and measure the bottleneck distance -- the smallest
max L-infinity displacement over partial matchings, with unmatched points
paired to their diagonal projections.  The bottleneck computation is exact:
a binary search over the finite set of candidate distances, each tested with
a bipartite perfect-matching feasibility check.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

from .persistence import PersistenceDiagram

__all__ = [
    "PartialDiagram",
    "filter_after",
    "to_log_scale",
    "bottleneck",
    "LOG3_INTERLEAVING_BOUND",
]

#: Log-scale bottleneck ceiling implied by a multiplicative 3-interleaving
#: of two filtrations (natural logarithm).
LOG3_INTERLEAVING_BOUND = 3.0 * math.log(3.0)


@dataclass(frozen=True)
class PartialDiagram:
    """Finite ``(birth, death)`` points of one homology dimension.

    ``threshold`` records the birth cutoff that produced the diagram (always
    in linear coordinates); ``scale`` is ``"linear"`` or ``"log"``.  Deaths
    are finite and strictly larger than births.
    """

    points: tuple[tuple[float, float], ...]
    dim: int
    threshold: float
    scale: str = "linear"

    def __len__(self) -> int:
        return len(self.points)


def filter_after(
    diagram: PersistenceDiagram,
    dim: int,
    threshold: float,
    alpha_max: float | None = None,
) -> PartialDiagram:
    """Keep dimension-``dim`` points born strictly after ``threshold``.

    Infinite deaths are replaced by the filtration ceiling before any metric
    computation; the ceiling is taken from the diagram itself unless
    ``alpha_max`` overrides it.  Points whose capped death does not exceed
    their birth vanish (they carry no persistence at the ceiling).
    """
    if threshold < 0:
        raise ValueError(f"threshold must be non-negative, got {threshold}")
    cap = alpha_max if alpha_max is not None else diagram.alpha_max
    points = []
    for d, birth, death in diagram.points:
        if d != dim or birth <= threshold:
            continue
        if math.isinf(death):
            if cap is None:
                raise ValueError(
                    "diagram has infinite deaths but no filtration ceiling to cap them"
                )
            death = cap
        if death > birth:
            points.append((birth, death))
    return PartialDiagram(tuple(sorted(points)), dim, threshold, "linear")


def to_log_scale(pd: PartialDiagram) -> PartialDiagram:
    """Map every ``(birth, death)`` to ``(ln birth, ln death)``.

    Requires strictly positive coordinates, which the experiment pipeline
    guarantees by filtering births above a positive threshold and capping
    infinite deaths first.
    """
    if pd.scale == "log":
        raise ValueError("diagram is already in log scale")
    for birth, death in pd.points:
        if birth <= 0 or death <= 0:
            raise ValueError(
                f"log scale requires positive coordinates, got ({birth}, {death})"
            )
    points = tuple(sorted((math.log(b), math.log(d)) for b, d in pd.points))
    return PartialDiagram(points, pd.dim, pd.threshold, "log")


def _diagonal_gap(point: tuple[float, float]) -> float:
    """L-infinity distance from a point to its diagonal projection."""
    birth, death = point
    return (death - birth) / 2.0


def _linf(p: tuple[float, float], q: tuple[float, float]) -> float:
    return max(abs(p[0] - q[0]), abs(p[1] - q[1]))


def _feasible(
    a: list[tuple[float, float]],
    b: list[tuple[float, float]],
    gaps_a: list[float],
    gaps_b: list[float],
    t: float,
) -> bool:
    """Is there a perfect matching realizing bottleneck distance <= t?

    Augmented bipartite construction: left = points of A plus one diagonal
    slot per point of B; right = points of B plus one diagonal slot per point
    of A.  A point may pair with its own diagonal slot when its gap is within
    ``t``; diagonal slots pair with each other freely.
    """
    m, n = len(a), len(b)
    left_total = m + n
    right_total = n + m

    def neighbors(u: int) -> list[int]:
        if u < m:  # a real point of A
            out = [j for j in range(n) if _linf(a[u], b[j]) <= t]
            if gaps_a[u] <= t:
                out.append(n + u)
            return out
        j = u - m  # the diagonal slot owned by b[j]
        out = list(range(n, right_total))  # any diagonal slot on the right
        if gaps_b[j] <= t:
            out.append(j)
        return out

    match_right: list[int] = [-1] * right_total

    def try_augment(u: int, seen: list[bool]) -> bool:
        for v in neighbors(u):
            if seen[v]:
                continue
            seen[v] = True
            if match_right[v] == -1 or try_augment(match_right[v], seen):
                match_right[v] = u
                return True
        return False

    matched = 0
    for u in range(left_total):
        seen = [False] * right_total
        if try_augment(u, seen):
            matched += 1
        else:
            return False
    return matched == left_total


def bottleneck(p1: PartialDiagram, p2: PartialDiagram) -> float:
    """Exact bottleneck distance between two partial diagrams.

    Both diagrams must share dimension and scale.  The optimum is always one
    of finitely many candidates -- a cross pairwise L-infinity distance or a
    diagonal gap -- so a binary search over the sorted candidate set with a
    matching feasibility test returns the exact value.
    """
    if p1.scale != p2.scale:
        raise ValueError(f"mixed scales: {p1.scale} vs {p2.scale}")
    if p1.dim != p2.dim:
        raise ValueError(f"mixed dimensions: {p1.dim} vs {p2.dim}")
    a, b = list(p1.points), list(p2.points)
    for birth, death in a + b:
        if math.isinf(birth) or math.isinf(death):
            raise ValueError("bottleneck requires finite coordinates; cap deaths first")
    if not a and not b:
        return 0.0
    gaps_a = [_diagonal_gap(p) for p in a]
    gaps_b = [_diagonal_gap(p) for p in b]
    # Augmenting paths recurse once per matched node in the worst case.
    needed = 4 * (len(a) + len(b)) + 100
    if sys.getrecursionlimit() < needed:
        sys.setrecursionlimit(needed)
    candidates = {0.0}
    candidates.update(gaps_a)
    candidates.update(gaps_b)
    candidates.update(_linf(p, q) for p in a for q in b)
    levels = sorted(candidates)
    lo, hi = 0, len(levels) - 1  # levels[hi] is always feasible
    while lo < hi:
        mid = (lo + hi) // 2
        if _feasible(a, b, gaps_a, gaps_b, levels[mid]):
            hi = mid
        else:
            lo = mid + 1
    return levels[lo]
