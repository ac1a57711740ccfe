import math

import numpy as np
import pytest

from conftest import count_sandwich_violations, floyd_warshall
from graphtda.complexes import (
    DistanceMatrix,
    Filtration,
    complex_at,
    landmark_metric,
    lazy_witness_filtration,
    rips_filtration,
)
from graphtda.epsnet import certify, greedy_eps_net, iterative_eps_net, spt_pruning_eps_net
from graphtda.generators import path_graph, random_connected_graph
from graphtda.graphs import DisconnectedGraphError, WeightedGraph, diameter
from graphtda.harness import suggest_eps_grid


def three_point_metric():
    return DistanceMatrix(
        np.array([[0.0, 1.0, 2.5], [1.0, 0.0, 2.0], [2.5, 2.0, 0.0]])
    )


class TestDistanceMatrix:
    def test_rejects_asymmetry(self):
        with pytest.raises(ValueError, match="symmetric"):
            DistanceMatrix(np.array([[0.0, 1.0], [2.0, 0.0]]))

    def test_rejects_nonzero_diagonal(self):
        with pytest.raises(ValueError, match="diagonal"):
            DistanceMatrix(np.array([[1.0]]))

    def test_rejects_negative(self):
        with pytest.raises(ValueError, match="non-negative"):
            DistanceMatrix(np.array([[0.0, -1.0], [-1.0, 0.0]]))


class TestLandmarkMetric:
    def test_path_landmarks(self):
        M = landmark_metric(path_graph(5), [0, 2, 4])
        assert M.entries.tolist() == [[0, 2, 4], [2, 0, 2], [4, 2, 0]]

    def test_single_landmark(self):
        assert landmark_metric(path_graph(3), [1]).entries.tolist() == [[0.0]]

    def test_small_weight_edge(self):
        g = WeightedGraph(2, [(0, 1, 0.3)])
        assert landmark_metric(g, [0, 1]).entries.tolist() == [[0.0, 0.3], [0.3, 0.0]]

    def test_disconnected_rejected(self):
        g = WeightedGraph(4, [(0, 1, 1.0), (2, 3, 1.0)])
        with pytest.raises(DisconnectedGraphError):
            landmark_metric(g, [0, 2])

    def test_empty_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            landmark_metric(path_graph(3), [])

    def test_matches_floyd_warshall(self):
        for seed in range(4):
            g = random_connected_graph(20, extra_edges=12, weighted=True, seed=seed)
            oracle = floyd_warshall(g)
            landmarks = [0, 4, 9, 13]
            M = landmark_metric(g, landmarks)
            for i, a in enumerate(landmarks):
                for j, b in enumerate(landmarks):
                    assert M[i, j] == oracle[a][b]


class TestRipsFiltration:
    def test_three_points_full(self):
        f = rips_filtration(three_point_metric(), 3)
        assert f.simplices == (
            ((0,), 0.0),
            ((1,), 0.0),
            ((2,), 0.0),
            ((0, 1), 1.0),
            ((1, 2), 2.0),
            ((0, 2), 2.5),
            ((0, 1, 2), 2.5),
        )

    def test_threshold_cuts_triangle(self):
        f = rips_filtration(three_point_metric(), 2)
        assert [s for s, _ in f.simplices if len(s) == 2] == [(0, 1), (1, 2)]
        assert all(len(s) < 3 for s, _ in f.simplices)

    def test_single_point(self):
        f = rips_filtration(DistanceMatrix(np.zeros((1, 1))), 1)
        assert f.simplices == (((0,), 0.0),)

    def test_max_dim_zero_and_one(self):
        f0 = rips_filtration(three_point_metric(), 3, max_dim=0)
        assert all(len(s) == 1 for s, _ in f0.simplices)
        f1 = rips_filtration(three_point_metric(), 3, max_dim=1)
        assert all(len(s) <= 2 for s, _ in f1.simplices)

    def test_validates(self):
        for seed in range(3):
            g = random_connected_graph(15, extra_edges=10, weighted=True, seed=seed)
            M = landmark_metric(g, list(range(0, 15, 2)))
            rips_filtration(M, diameter(g)).validate()


class TestLazyWitnessFiltration:
    def test_midpoint_witness_births_edge_at_zero(self):
        f = lazy_witness_filtration(path_graph(3), [0, 2], alpha_max=2)
        assert (((0, 1), 0.0)) in f.simplices

    def test_single_landmark(self):
        f = lazy_witness_filtration(path_graph(3), [1], alpha_max=2)
        assert f.simplices == (((0,), 0.0),)

    def test_two_vertex_graph_all_landmarks(self):
        f = lazy_witness_filtration(path_graph(2), [0, 1], alpha_max=1)
        assert f.simplices == (((0,), 0.0), ((1,), 0.0), ((0, 1), 1.0))

    def test_rejects_other_nu(self):
        with pytest.raises(NotImplementedError, match="nu=1"):
            lazy_witness_filtration(path_graph(3), [0, 2], alpha_max=2, nu=2)

    def test_births_clamped_non_negative(self):
        for seed in range(4):
            g = random_connected_graph(20, extra_edges=10, weighted=True, seed=seed)
            f = lazy_witness_filtration(g, [0, 5, 10, 15], alpha_max=diameter(g))
            assert all(value >= 0.0 for _, value in f.simplices)
            f.validate()

    def test_full_landmarks_bounded_by_rips_on_unit_graphs(self):
        # With every vertex a landmark, a witness sitting at an endpoint
        # realizes the Rips value, so witness births can only be lower.
        for seed in range(4):
            g = random_connected_graph(14, extra_edges=8, seed=seed)
            all_v = list(range(g.vertex_count))
            diam = diameter(g)
            M = landmark_metric(g, all_v)
            lw = lazy_witness_filtration(g, all_v, alpha_max=diam)
            lw_births = {s: v for s, v in lw.simplices if len(s) == 2}
            for (i, j), birth in lw_births.items():
                assert birth <= M[i, j]


class TestComplexAt:
    def test_slice_between_edges(self):
        f = rips_filtration(three_point_metric(), 3)
        assert complex_at(f, 1.5) == {(0,), (1,), (2,), (0, 1)}

    def test_alpha_zero_vertices_only(self):
        f = rips_filtration(three_point_metric(), 3)
        assert complex_at(f, 0) == {(0,), (1,), (2,)}

    def test_alpha_max_gives_everything(self):
        f = rips_filtration(three_point_metric(), 3)
        assert len(complex_at(f, 3)) == len(f.simplices)

    def test_out_of_range(self):
        f = rips_filtration(three_point_metric(), 3)
        with pytest.raises(ValueError):
            complex_at(f, 3.5)
        with pytest.raises(ValueError):
            complex_at(f, -0.1)


class TestFiltrationContainer:
    def test_validate_rejects_disorder(self):
        bad = Filtration((((0, 1), 1.0), ((0,), 0.0), ((1,), 0.0)), 2.0)
        with pytest.raises(ValueError, match="missing or later"):
            bad.validate()
        swapped = Filtration((((1,), 0.0), ((0,), 0.0)), 2.0)
        with pytest.raises(ValueError, match="order"):
            swapped.validate()

    def test_validate_rejects_missing_face(self):
        bad = Filtration((((0,), 0.0), ((0, 1), 1.0)), 2.0)
        with pytest.raises(ValueError, match="face"):
            bad.validate()

    def test_validate_rejects_vertex_with_value(self):
        bad = Filtration((((0,), 0.5),), 2.0)
        with pytest.raises(ValueError, match="value 0"):
            bad.validate()

    def test_text_roundtrip(self):
        f = rips_filtration(three_point_metric(), 3)
        again = Filtration.from_text(f.to_text(), alpha_max=f.alpha_max)
        assert again == f

    def test_save(self, tmp_path):
        f = rips_filtration(three_point_metric(), 3)
        path = tmp_path / "filtration.txt"
        f.save(path)
        assert Filtration.from_text(path.read_text(), f.alpha_max) == f


class TestSandwich:
    def test_inclusions_on_random_nets(self):
        checks = 0
        for seed in range(8):
            g = random_connected_graph(
                10 + (3 * seed) % 30,
                extra_edges=6 + seed,
                weighted=seed % 2 == 1,
                seed=seed,
            )
            diam = diameter(g)
            grid = suggest_eps_grid(g, quantiles=(0.35,), seed=seed)
            if not grid:
                continue
            eps = grid[0]
            nets = [
                greedy_eps_net(g, eps),
                iterative_eps_net(g, eps, seed),
                spt_pruning_eps_net(g, diam, eps, seed),
            ]
            for ls in nets:
                cert = certify(g, ls)
                eps_eff = eps if cert.is_net else cert.coverage_radius
                bad, done = count_sandwich_violations(
                    g, ls.landmarks, eps_eff, diam, n_alphas=5
                )
                assert bad == 0
                checks += done
        assert checks > 0
