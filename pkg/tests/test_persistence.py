import math
import random

import numpy as np
import pytest

from graphtda.complexes import (
    DistanceMatrix,
    Filtration,
    landmark_metric,
    lazy_witness_filtration,
    rips_filtration,
)
from graphtda.generators import cycle_graph, random_connected_graph
from graphtda.graphs import diameter
from graphtda.persistence import (
    BETTI_ORACLE_MAX_SIMPLICES,
    PersistenceDiagram,
    betti_rank_oracle,
    compute_persistence,
    dim0_mst_oracle,
)


def random_metric(rng: random.Random, n: int) -> DistanceMatrix:
    """Euclidean distances of random planar points: a genuine metric."""
    pts = [(rng.uniform(0, 10), rng.uniform(0, 10)) for _ in range(n)]
    m = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            d = math.hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1])
            m[i, j] = m[j, i] = d
    return DistanceMatrix(m)


def four_cycle_filtration() -> Filtration:
    return rips_filtration(landmark_metric(cycle_graph(4), [0, 1, 2, 3]), 1.0)


class TestComputePersistence:
    def test_single_vertex(self):
        f = Filtration((((0,), 0.0),), 1.0)
        assert compute_persistence(f).points == ((0, 0.0, math.inf),)

    def test_edge_merges_components(self):
        f = Filtration((((0,), 0.0), ((1,), 0.0), ((0, 1), 1.0)), 2.0)
        assert compute_persistence(f).points == ((0, 0.0, 1.0), (0, 0.0, math.inf))

    def test_four_cycle(self):
        dgm = compute_persistence(four_cycle_filtration())
        assert dgm.points == (
            (0, 0.0, 1.0),
            (0, 0.0, 1.0),
            (0, 0.0, 1.0),
            (0, 0.0, math.inf),
            (1, 1.0, math.inf),
        )

    def test_filled_triangle_kills_cycle(self):
        f = rips_filtration(
            DistanceMatrix(np.array([[0.0, 1.0, 2.0], [1.0, 0.0, 1.5], [2.0, 1.5, 0.0]])),
            3.0,
        )
        dgm = compute_persistence(f)
        assert dgm.in_dim(1) == []  # triangle at 2.0 kills the cycle born at 2.0

    def test_zero_length_intervals_dropped(self):
        f = lazy_witness_filtration(cycle_graph(6), [0, 2, 4], alpha_max=3.0)
        dgm = compute_persistence(f)
        assert all(d > b for _, b, d in dgm.points)

    def test_invalid_filtration_rejected(self):
        bad = Filtration((((0,), 0.0), ((0, 1), 1.0)), 2.0)
        with pytest.raises(ValueError):
            compute_persistence(bad)

    def test_max_dim_zero_omits_cycles(self):
        dgm = compute_persistence(four_cycle_filtration(), max_dim=0)
        assert dgm.in_dim(1) == []
        assert len(dgm.in_dim(0)) == 4

    def test_determinism(self):
        f = four_cycle_filtration()
        assert compute_persistence(f) == compute_persistence(f)

    def test_infinite_dim0_count_matches_components(self):
        # Two separate edges never merge below the ceiling.
        m = np.array(
            [
                [0.0, 1.0, 9.0, 9.0],
                [1.0, 0.0, 9.0, 9.0],
                [9.0, 9.0, 0.0, 1.0],
                [9.0, 9.0, 1.0, 0.0],
            ]
        )
        dgm = compute_persistence(rips_filtration(DistanceMatrix(m), 2.0))
        assert sum(1 for d, b, dd in dgm.points if d == 0 and math.isinf(dd)) == 2


class TestMstOracle:
    def test_three_point_chain(self):
        M = DistanceMatrix(np.array([[0.0, 1.0, 3.0], [1.0, 0.0, 2.0], [3.0, 2.0, 0.0]]))
        assert dim0_mst_oracle(M).points == (
            (0, 0.0, 1.0),
            (0, 0.0, 2.0),
            (0, 0.0, math.inf),
        )

    def test_single_point(self):
        assert dim0_mst_oracle(DistanceMatrix(np.zeros((1, 1)))).points == (
            (0, 0.0, math.inf),
        )

    def test_equilateral(self):
        M = DistanceMatrix(np.ones((3, 3)) - np.eye(3))
        assert dim0_mst_oracle(M).points == (
            (0, 0.0, 1.0),
            (0, 0.0, 1.0),
            (0, 0.0, math.inf),
        )

    def test_agrees_with_reduction_on_random_metrics(self):
        rng = random.Random(7)
        for _ in range(30):
            M = random_metric(rng, rng.randrange(2, 12))
            ceiling = float(M.entries.max()) + 1.0
            dgm = compute_persistence(rips_filtration(M, ceiling, max_dim=1))
            reduced = sorted((b, d) for b, d in dgm.in_dim(0))
            oracle = sorted((b, d) for b, d in dim0_mst_oracle(M).in_dim(0))
            assert reduced == oracle


class TestBettiOracle:
    def test_four_cycle(self):
        f = four_cycle_filtration()
        assert betti_rank_oracle(f, 1.0, 0) == 1
        assert betti_rank_oracle(f, 1.0, 1) == 1

    def test_vertices_only(self):
        f = four_cycle_filtration()
        assert betti_rank_oracle(f, 0.0, 0) == 4
        assert betti_rank_oracle(f, 0.0, 1) == 0

    def test_filled_triangle(self):
        M = DistanceMatrix(np.ones((3, 3)) - np.eye(3))
        f = rips_filtration(M, 2.0)
        assert betti_rank_oracle(f, 1.5, 0) == 1
        assert betti_rank_oracle(f, 1.5, 1) == 0

    def test_scale_guard(self):
        rng = random.Random(1)
        M = random_metric(rng, 20)
        f = rips_filtration(M, float(M.entries.max()) + 1)
        assert len(f) > BETTI_ORACLE_MAX_SIMPLICES
        with pytest.raises(ValueError, match="guard"):
            betti_rank_oracle(f, f.alpha_max, 1)

    def test_bad_dim(self):
        with pytest.raises(ValueError, match="dim"):
            betti_rank_oracle(four_cycle_filtration(), 1.0, 2)

    def test_diagram_counts_match_oracle_on_random_filtrations(self):
        rng = random.Random(42)
        for trial in range(12):
            if trial % 2 == 0:
                M = random_metric(rng, rng.randrange(3, 10))
                ceiling = float(np.quantile(M.entries, 0.6))
                f = rips_filtration(M, ceiling)
            else:
                g = random_connected_graph(
                    rng.randrange(8, 20), extra_edges=rng.randrange(4, 15), seed=trial
                )
                landmarks = sorted(
                    rng.sample(range(g.vertex_count), rng.randrange(2, 9))
                )
                f = lazy_witness_filtration(g, landmarks, alpha_max=diameter(g))
            dgm = compute_persistence(f)
            values = sorted({v for _, v in f.simplices})
            probes = values + [
                (a + b) / 2 for a, b in zip(values, values[1:])
            ]
            for alpha in probes:
                for dim in (0, 1):
                    assert dgm.betti_at(alpha, dim) == betti_rank_oracle(f, alpha, dim)


class TestDiagramSerialization:
    def test_csv_roundtrip_with_inf(self):
        dgm = PersistenceDiagram(((0, 0.0, 1.5), (0, 0.0, math.inf), (1, 2.0, 3.0)), 4.0)
        text = dgm.to_csv()
        assert text.splitlines()[0] == "dim,birth,death"
        assert "inf" in text
        again = PersistenceDiagram.from_csv(text, alpha_max=4.0)
        assert again.points == dgm.points

    def test_save(self, tmp_path):
        dgm = PersistenceDiagram(((0, 0.0, math.inf),), 1.0)
        path = tmp_path / "dgm.csv"
        dgm.save(path)
        assert PersistenceDiagram.from_csv(path.read_text()).points == dgm.points
