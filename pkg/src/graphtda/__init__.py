"""Epsilon-net landmarks and persistent homology on weighted graphs.

The pipeline: load a weighted simple graph, choose landmarks that form an
epsilon-net of its geodesic metric, build Vietoris-Rips and lazy witness
filtrations over the landmarks, compute persistence in dimensions 0 and 1,
and compare the two diagrams under the log-scale bottleneck distance.
"""

from .graphs import (
    DisconnectedGraphError,
    DistanceMap,
    EdgeListError,
    ShortestPathTree,
    WeightedGraph,
    diameter,
    eps_ball,
    is_connected,
    load_edge_list,
    nearest_landmark_distances,
    shortest_path_tree,
    sssp,
)
from .epsnet import (
    ALGORITHMS,
    LandmarkSet,
    NetCertificate,
    certify,
    greedy_eps_net,
    iterative_eps_net,
    maxmin_landmarks,
    random_landmarks,
    select_landmarks,
    spt_pruning_eps_net,
)
from .complexes import (
    DistanceMatrix,
    Filtration,
    complex_at,
    landmark_metric,
    lazy_witness_filtration,
    rips_filtration,
)
from .persistence import (
    PersistenceDiagram,
    betti_rank_oracle,
    compute_persistence,
    dim0_mst_oracle,
)
from .diagrams import (
    LOG3_INTERLEAVING_BOUND,
    PartialDiagram,
    bottleneck,
    filter_after,
    to_log_scale,
)
from .harness import (
    ExperimentConfig,
    ExperimentReport,
    dataset_stats,
    run_experiment,
    suggest_eps_grid,
)

__version__ = "0.1.0"
