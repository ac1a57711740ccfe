"""Filtered simplicial complexes (dimension <= 2) over a landmark set.

Two constructions share one :class:`Filtration` container: the Vietoris-Rips
filtration on the metric induced on the landmarks by graph geodesics, and the
lazy witness filtration in which every graph vertex may act as a witness for
edges between landmarks.  Both realize higher simplices by the clique (flag)
rule: a triangle enters when its three edges are present, at the max of their
values.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .graphs import (
    DisconnectedGraphError,
    WeightedGraph,
    landmark_distance_rows,
)

__all__ = [
    "DistanceMatrix",
    "Filtration",
    "landmark_metric",
    "rips_filtration",
    "lazy_witness_filtration",
    "complex_at",
]

Simplex = tuple[int, ...]


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric distance matrix with zero diagonal (the landmark metric)."""

    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("distance matrix must be square")
        if np.any(np.diagonal(m) != 0.0):
            raise ValueError("distance matrix diagonal must be zero")
        if not np.array_equal(m, m.T):
            raise ValueError("distance matrix must be symmetric")
        if np.any(m < 0):
            raise ValueError("distances must be non-negative")
        object.__setattr__(self, "entries", m)

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    def __getitem__(self, ij):
        i, j = ij
        return float(self.entries[i, j])


@dataclass(frozen=True)
class Filtration:
    """Ordered, face-closed multiset of filtered simplices (dim <= 2).

    ``simplices`` is sorted by ``(value, dimension, vertex tuple)``; vertex
    simplices all carry value 0 and every simplex value is at most
    ``alpha_max``.  The container is immutable; construction code sorts and
    the :meth:`validate` method re-checks the invariants.
    """

    simplices: tuple[tuple[Simplex, float], ...]
    alpha_max: float

    def validate(self) -> None:
        """Raise ``ValueError`` if ordering, face-closure or monotonicity fail."""
        values: dict[Simplex, float] = {}
        prev_key = None
        for verts, value in self.simplices:
            if len(verts) < 1 or len(verts) > 3:
                raise ValueError(f"simplex {verts} has unsupported dimension")
            if tuple(sorted(verts)) != verts:
                raise ValueError(f"simplex {verts} is not sorted")
            if value < 0 or value > self.alpha_max:
                raise ValueError(f"simplex {verts} value {value} outside [0, alpha_max]")
            if len(verts) == 1 and value != 0.0:
                raise ValueError(f"vertex simplex {verts} must have value 0")
            key = (value, len(verts), verts)
            if prev_key is not None and key <= prev_key:
                raise ValueError("simplices out of filtration order")
            prev_key = key
            if verts in values:
                raise ValueError(f"duplicate simplex {verts}")
            values[verts] = value
            if len(verts) > 1:
                for f in _facets(verts):
                    if f not in values:
                        raise ValueError(f"face {f} of {verts} missing or later")
                    if values[f] > value:
                        raise ValueError(f"face {f} of {verts} has larger value")

    def __len__(self) -> int:
        return len(self.simplices)

    def values(self) -> list[float]:
        return [value for _, value in self.simplices]

    def to_text(self) -> str:
        """One line per simplex: ``value v0 [v1 [v2]]``, in filtration order."""
        lines = [
            " ".join([repr(value)] + [str(v) for v in verts])
            for verts, value in self.simplices
        ]
        return "\n".join(lines) + ("\n" if lines else "")

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_text(), encoding="utf-8")

    @classmethod
    def from_text(cls, text: str, alpha_max: float | None = None) -> "Filtration":
        simplices = []
        top = 0.0
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            value = float(parts[0])
            verts = tuple(int(v) for v in parts[1:])
            top = max(top, value)
            simplices.append((verts, value))
        f = cls(tuple(simplices), alpha_max if alpha_max is not None else top)
        f.validate()
        return f


def _facets(verts: Simplex) -> list[Simplex]:
    return [verts[:i] + verts[i + 1 :] for i in range(len(verts))]


def _sort_key(item: tuple[Simplex, float]):
    verts, value = item
    return (value, len(verts), verts)


def landmark_metric(g: WeightedGraph, landmarks: Sequence[int]) -> DistanceMatrix:
    """Geodesic distances restricted to the landmark set.

    One single-source search per landmark; the matrix is mirrored from the
    upper triangle so it is exactly symmetric.  Raises
    :class:`DisconnectedGraphError` if any landmark cannot reach another.
    """
    ids = list(landmarks)
    if not ids:
        raise ValueError("landmark set is empty")
    m = len(ids)
    rows = landmark_distance_rows(g, ids)
    entries = np.zeros((m, m))
    for i in range(m):
        for j in range(i + 1, m):
            d = rows[i, ids[j]]
            if math.isinf(d):
                raise DisconnectedGraphError(ids[i], ids[j])
            entries[i, j] = entries[j, i] = d
    return DistanceMatrix(entries)


def _clique_triangles(
    present: np.ndarray, values: np.ndarray
) -> list[tuple[Simplex, float]]:
    """Triangles of the edge graph ``present``, valued at max edge value."""
    out: list[tuple[Simplex, float]] = []
    m = present.shape[0]
    for i in range(m):
        row_i = present[i]
        for j in range(i + 1, m):
            if not row_i[j]:
                continue
            ks = np.nonzero(row_i & present[j])[0]
            vij = values[i, j]
            for k in ks[ks > j]:
                k = int(k)
                value = max(vij, values[i, k], values[j, k])
                out.append(((i, j, k), float(value)))
    return out


def rips_filtration(
    M: DistanceMatrix, alpha_max: float, max_dim: int = 2
) -> Filtration:
    """Vietoris-Rips filtration of a distance matrix, up to triangles.

    Vertices enter at 0; the edge ``{i, j}`` at ``M[i, j]`` when that is at
    most ``alpha_max``; a triangle at the max of its three edge values.
    """
    if alpha_max < 0:
        raise ValueError(f"alpha_max must be non-negative, got {alpha_max}")
    if not (0 <= max_dim <= 2):
        raise ValueError("max_dim must be 0, 1 or 2")
    m = M.size
    entries = M.entries
    simplices: list[tuple[Simplex, float]] = [((i,), 0.0) for i in range(m)]
    if max_dim >= 1:
        present = (entries <= alpha_max) & ~np.eye(m, dtype=bool)
        for i in range(m):
            for j in range(i + 1, m):
                if present[i, j]:
                    simplices.append(((i, j), float(entries[i, j])))
        if max_dim >= 2:
            simplices.extend(_clique_triangles(present, entries))
    simplices.sort(key=_sort_key)
    return Filtration(tuple(simplices), float(alpha_max))


def witness_edge_births(
    g: WeightedGraph, landmarks: Sequence[int], nu: int = 1
) -> np.ndarray:
    """Birth value of every landmark pair in the lazy witness construction.

    Entry ``(a, b)`` is ``max(0, min over witnesses w of
    (max(d(w, a), d(w, b)) - d_nu(w)))`` where ``d_nu(w)`` is the distance
    from ``w`` to its ``nu``-th nearest landmark and the witnesses range over
    all graph vertices.  Witnesses with no reachable landmark are ignored.
    """
    if nu != 1:
        raise NotImplementedError(f"only nu=1 is supported, got nu={nu}")
    ids = list(landmarks)
    if not ids:
        raise ValueError("landmark set is empty")
    m = len(ids)
    rows = landmark_distance_rows(g, ids)  # (m, n) landmark-to-vertex distances
    dnu = rows.min(axis=0)
    births = np.zeros((m, m))
    with np.errstate(invalid="ignore"):
        for i in range(m - 1):
            contrib = np.maximum(rows[i + 1 :], rows[i]) - dnu
            contrib = np.where(np.isnan(contrib), np.inf, contrib)
            b = contrib.min(axis=1)
            births[i, i + 1 :] = b
            births[i + 1 :, i] = b
    return np.maximum(births, 0.0)


def lazy_witness_filtration(
    g: WeightedGraph,
    landmarks: Sequence[int],
    alpha_max: float,
    nu: int = 1,
    max_dim: int = 2,
) -> Filtration:
    """Lazy witness filtration of a landmark set over all graph vertices.

    Every landmark enters at 0 (it witnesses itself); the edge ``{a, b}``
    enters at its witness birth value (see :func:`witness_edge_births`) when
    that is at most ``alpha_max``; triangles follow the clique rule at the max
    of their edge births.
    """
    if alpha_max < 0:
        raise ValueError(f"alpha_max must be non-negative, got {alpha_max}")
    if not (0 <= max_dim <= 2):
        raise ValueError("max_dim must be 0, 1 or 2")
    births = witness_edge_births(g, landmarks, nu)
    m = births.shape[0]
    simplices: list[tuple[Simplex, float]] = [((i,), 0.0) for i in range(m)]
    if max_dim >= 1:
        present = (births <= alpha_max) & ~np.eye(m, dtype=bool)
        for i in range(m):
            for j in range(i + 1, m):
                if present[i, j]:
                    simplices.append(((i, j), float(births[i, j])))
        if max_dim >= 2:
            simplices.extend(_clique_triangles(present, births))
    simplices.sort(key=_sort_key)
    return Filtration(tuple(simplices), float(alpha_max))


def complex_at(filtration: Filtration, alpha: float) -> set[Simplex]:
    """The simplicial complex at filtration value ``alpha``, as a simplex set."""
    if alpha < 0 or alpha > filtration.alpha_max:
        raise ValueError(
            f"alpha must lie in [0, {filtration.alpha_max}], got {alpha}"
        )
    values = filtration.values()
    cut = bisect_right(values, alpha)
    return {verts for verts, _ in filtration.simplices[:cut]}
