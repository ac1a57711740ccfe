"""Persistent homology over Z/2 of a filtration, dimensions 0 and 1.

The main path is the standard boundary-matrix column reduction with the
clearing shortcut (triangle columns first; edges paired there are skipped as
known creators).  Columns are sparse sorted index lists combined by symmetric
difference.  Two independent oracles back the tests: a Kruskal/union-find
oracle for dimension-0 Rips diagrams, and a GF(2) rank oracle for Betti
numbers of a fixed complex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .complexes import DistanceMatrix, Filtration, complex_at

__all__ = [
    "PersistenceDiagram",
    "ReductionState",
    "compute_persistence",
    "dim0_mst_oracle",
    "betti_rank_oracle",
]


@dataclass(frozen=True)
class PersistenceDiagram:
    """Multiset of ``(dim, birth, death)`` intervals; death may be ``inf``.

    Zero-length intervals are never stored.  ``alpha_max`` records the
    filtration ceiling the diagram was computed at (used downstream to cap
    infinite deaths); it is ``None`` for diagrams without a ceiling, such as
    the MST oracle's output.
    """

    points: tuple[tuple[int, float, float], ...]
    alpha_max: float | None = None

    def __len__(self) -> int:
        return len(self.points)

    def in_dim(self, dim: int) -> list[tuple[float, float]]:
        return [(b, d) for dd, b, d in self.points if dd == dim]

    def betti_at(self, alpha: float, dim: int) -> int:
        """Number of classes alive at ``alpha``: born at or before, dead after."""
        return sum(1 for dd, b, d in self.points if dd == dim and b <= alpha < d)

    def to_csv(self) -> str:
        lines = ["dim,birth,death"]
        for dim, birth, death in self.points:
            death_s = "inf" if math.isinf(death) else repr(death)
            lines.append(f"{dim},{repr(birth)},{death_s}")
        return "\n".join(lines) + "\n"

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_csv(), encoding="utf-8")

    @classmethod
    def from_csv(cls, text: str, alpha_max: float | None = None) -> "PersistenceDiagram":
        points = []
        for i, raw in enumerate(text.splitlines()):
            line = raw.strip()
            if not line or (i == 0 and line.lower().startswith("dim")):
                continue
            dim_s, birth_s, death_s = line.split(",")
            death = math.inf if death_s == "inf" else float(death_s)
            points.append((int(dim_s), float(birth_s), death))
        return cls(tuple(sorted(points)), alpha_max)


@dataclass
class ReductionState:
    """Working state of one reduction block: sparse columns and the pivot map.

    ``pivots`` maps the lowest row index of each reduced non-zero column to
    that column; after reduction every non-empty column has a unique low.
    """

    pivots: dict[int, list[int]] = field(default_factory=dict)

    def reduce_column(self, col: list[int]) -> list[int]:
        """Reduce ``col`` (sorted row indices) against the stored pivots."""
        while col:
            low = col[-1]
            other = self.pivots.get(low)
            if other is None:
                self.pivots[low] = col
                return col
            col = _symmetric_difference(col, other)
        return col


def _symmetric_difference(a: list[int], b: list[int]) -> list[int]:
    """Symmetric difference of two sorted index lists (Z/2 column addition)."""
    out: list[int] = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        x, y = a[i], b[j]
        if x == y:
            i += 1
            j += 1
        elif x < y:
            out.append(x)
            i += 1
        else:
            out.append(y)
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return out


def compute_persistence(filtration: Filtration, max_dim: int = 1) -> PersistenceDiagram:
    """Persistence diagram of a filtration, dimensions 0 to ``max_dim``.

    Pairs ``(creator, destroyer)`` of the reduced boundary matrix map to
    intervals ``[value(creator), value(destroyer))``; unpaired creators map to
    ``[value, inf)``.  Intervals with zero length are dropped.  The filtration
    is validated first; unordered or non-face-closed input raises
    ``ValueError``.
    """
    if not (0 <= max_dim <= 1):
        raise ValueError("max_dim must be 0 or 1")
    filtration.validate()

    vert_pos: dict[int, int] = {}
    vert_val: list[float] = []
    edge_pos: dict[tuple[int, int], int] = {}
    edge_val: list[float] = []
    edge_verts: list[tuple[int, int]] = []
    triangles: list[tuple[tuple[int, int, int], float]] = []
    for verts, value in filtration.simplices:
        if len(verts) == 1:
            vert_pos[verts[0]] = len(vert_val)
            vert_val.append(value)
        elif len(verts) == 2:
            edge_pos[verts] = len(edge_val)
            edge_val.append(value)
            edge_verts.append(verts)
        else:
            triangles.append((verts, value))

    points: list[tuple[int, float, float]] = []

    # Triangle columns pair a creator edge with the triangle killing its cycle.
    paired_edges: set[int] = set()
    if max_dim >= 1 or triangles:
        state2 = ReductionState()
        for tverts, tval in triangles:
            col = sorted(
                [
                    edge_pos[(tverts[0], tverts[1])],
                    edge_pos[(tverts[0], tverts[2])],
                    edge_pos[(tverts[1], tverts[2])],
                ]
            )
            col = state2.reduce_column(col)
            if col:
                low = col[-1]
                paired_edges.add(low)
                birth = edge_val[low]
                if max_dim >= 1 and tval > birth:
                    points.append((1, birth, tval))

    # Edge columns: cleared creators are skipped, the rest pair with vertices
    # (finite dim-0 intervals) or reduce to zero (essential dim-1 classes).
    state1 = ReductionState()
    for e_idx, (u, v) in enumerate(edge_verts):
        if e_idx in paired_edges:
            continue
        col = sorted([vert_pos[u], vert_pos[v]])
        col = state1.reduce_column(col)
        if col:
            low = col[-1]
            value = edge_val[e_idx]
            birth = vert_val[low]
            if value > birth:
                points.append((0, birth, value))
        elif max_dim >= 1:
            points.append((1, edge_val[e_idx], math.inf))

    # Unpaired vertices carry one essential dim-0 class per component.
    for pos in range(len(vert_val)):
        if pos not in state1.pivots:
            points.append((0, vert_val[pos], math.inf))

    return PersistenceDiagram(tuple(sorted(points)), filtration.alpha_max)


class _UnionFind:
    """Disjoint sets over 0..n-1 with path compression and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


def dim0_mst_oracle(M: DistanceMatrix) -> PersistenceDiagram:
    """Dimension-0 Rips diagram of a metric, straight from Kruskal merges.

    Components all appear at 0; each minimum-spanning-tree edge weight is the
    death of one component, and a single class survives forever.  Independent
    of the boundary-reduction path, so the two can cross-check each other.
    """
    n = M.size
    edges = sorted(
        (float(M.entries[i, j]), i, j) for i in range(n) for j in range(i + 1, n)
    )
    uf = _UnionFind(n)
    points: list[tuple[int, float, float]] = []
    for w, i, j in edges:
        if uf.union(i, j):
            if w > 0.0:
                points.append((0, 0.0, w))
    points.append((0, 0.0, math.inf))
    return PersistenceDiagram(tuple(sorted(points)), None)


def _gf2_rank(mat: np.ndarray) -> int:
    """Rank of a 0/1 matrix over GF(2) by Gaussian elimination."""
    m = mat.copy().astype(np.uint8)
    rows, cols = m.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        pivots = np.nonzero(m[rank:, c])[0]
        if pivots.size == 0:
            continue
        p = rank + int(pivots[0])
        if p != rank:
            m[[rank, p]] = m[[p, rank]]
        others = np.nonzero(m[:, c])[0]
        others = others[others != rank]
        if others.size:
            m[others] ^= m[rank]
        rank += 1
    return rank


#: Scale guard for the rank oracle; large complexes belong to the main path.
BETTI_ORACLE_MAX_SIMPLICES = 1000


def betti_rank_oracle(filtration: Filtration, alpha: float, dim: int) -> int:
    """Betti number of ``complex_at(filtration, alpha)`` by GF(2) ranks.

    beta_0 = #vertices - rank(d1); beta_1 = #edges - rank(d1) - rank(d2).
    A deliberate scale guard (``ValueError``) keeps this test oracle away
    from complexes it was never meant for.
    """
    if dim not in (0, 1):
        raise ValueError("dim must be 0 or 1")
    simplices = complex_at(filtration, alpha)
    if len(simplices) > BETTI_ORACLE_MAX_SIMPLICES:
        raise ValueError(
            f"complex has {len(simplices)} simplices, above the oracle guard "
            f"of {BETTI_ORACLE_MAX_SIMPLICES}"
        )
    verts = sorted(s for s in simplices if len(s) == 1)
    edges = sorted(s for s in simplices if len(s) == 2)
    tris = sorted(s for s in simplices if len(s) == 3)
    vpos = {s[0]: i for i, s in enumerate(verts)}
    epos = {s: i for i, s in enumerate(edges)}
    d1 = np.zeros((len(verts), len(edges)), dtype=np.uint8)
    for j, (u, v) in enumerate(edges):
        d1[vpos[u], j] = 1
        d1[vpos[v], j] = 1
    d2 = np.zeros((len(edges), len(tris)), dtype=np.uint8)
    for j, (u, v, w) in enumerate(tris):
        d2[epos[(u, v)], j] = 1
        d2[epos[(u, w)], j] = 1
        d2[epos[(v, w)], j] = 1
    rank1 = _gf2_rank(d1) if edges else 0
    if dim == 0:
        return len(verts) - rank1
    rank2 = _gf2_rank(d2) if tris else 0
    return len(edges) - rank1 - rank2
