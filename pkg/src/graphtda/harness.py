"""Experiment runner: landmark selection, filtrations, persistence, reports.

One experiment cell is a ``(algorithm, eps, seed)`` triple: select landmarks,
certify them, build the Vietoris-Rips filtration on the landmark metric and
the lazy witness filtration over the whole graph, compute persistence in
dimensions 0 and 1, and compare the partial diagrams born after ``2 * eps``
in log scale against the 3 ln 3 interleaving bound.  Results land in a CSV
report with JSON/CSV sidecars per cell, and (optionally) rendered figures.
"""

from __future__ import annotations

import logging
import math
import random
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import epsnet
from .complexes import lazy_witness_filtration, landmark_metric, rips_filtration
from .diagrams import LOG3_INTERLEAVING_BOUND, bottleneck, filter_after, to_log_scale
from .epsnet import EPS_NET_ALGORITHMS, LandmarkSet, NetCertificate, certify
from .graphs import WeightedGraph, diameter as graph_diameter, load_edge_list, sssp
from .persistence import PersistenceDiagram, compute_persistence

__all__ = [
    "ExperimentConfig",
    "ReportRow",
    "ExperimentReport",
    "DatasetStats",
    "dataset_stats",
    "suggest_eps_grid",
    "run_experiment",
    "CSV_HEADER",
    "BOUND_TOLERANCE",
]

log = logging.getLogger(__name__)

CSV_HEADER = (
    "algo,eps,seed,n_landmarks,landmark_ms,ph_ms,total_ms,sparse_ok,sample_ok,"
    "coverage_radius,hausdorff,bottleneck_d0,bottleneck_d1,bound_ok"
)

#: Slack added to the 3 ln 3 bound to absorb logarithm rounding.
BOUND_TOLERANCE = 1e-9


@dataclass
class ExperimentConfig:
    """Parameters of one experiment grid.

    ``graph_path`` is an edge-list file, or an already-built
    :class:`WeightedGraph` for programmatic use (edge lists cannot express
    isolated vertices).  ``eps_values`` empty means "use distance-quantile
    defaults".  ``alpha_max`` empty means "use the graph diameter" (the
    filtration ceiling).  ``max_dim`` is fixed at 1 (intervals in dimensions
    0 and 1).
    """

    graph_path: str | Path | WeightedGraph
    weighted: bool = False
    algorithms: Sequence[str] = EPS_NET_ALGORITHMS
    eps_values: Sequence[float] = ()
    seeds: Sequence[int] = (0,)
    alpha_max: float | None = None
    max_dim: int = 1
    output_dir: str | Path = "graphtda_out"
    figures: bool = True

    def __post_init__(self):
        self.algorithms = tuple(self.algorithms)
        if not self.algorithms:
            raise ValueError("need at least one algorithm")
        for a in self.algorithms:
            if a not in epsnet.ALGORITHMS:
                raise ValueError(f"unknown algorithm {a!r}")
        self.seeds = tuple(self.seeds)
        if not self.seeds:
            raise ValueError("need at least one seed")
        self.eps_values = tuple(sorted(self.eps_values))
        if self.max_dim != 1:
            raise ValueError("max_dim is fixed at 1")


@dataclass(frozen=True)
class ReportRow:
    """One experiment cell of the report CSV."""

    algo: str
    eps: float
    seed: int
    n_landmarks: int
    landmark_ms: float
    ph_ms: float
    total_ms: float
    sparse_ok: bool
    sample_ok: bool
    coverage_radius: float
    hausdorff: float
    bottleneck_d0: float
    bottleneck_d1: float
    bound_ok: bool

    def to_csv_line(self) -> str:
        def num(x: float) -> str:
            return "inf" if math.isinf(x) else repr(x)

        def boolean(x: bool) -> str:
            return "true" if x else "false"

        return ",".join(
            [
                self.algo,
                num(self.eps),
                str(self.seed),
                str(self.n_landmarks),
                repr(self.landmark_ms),
                repr(self.ph_ms),
                repr(self.total_ms),
                boolean(self.sparse_ok),
                boolean(self.sample_ok),
                num(self.coverage_radius),
                num(self.hausdorff),
                num(self.bottleneck_d0),
                num(self.bottleneck_d1),
                boolean(self.bound_ok),
            ]
        )


@dataclass
class ExperimentReport:
    """All rows of an experiment run plus grid metadata."""

    rows: list[ReportRow]
    diameter: float
    eps_values: tuple[float, ...]
    output_dir: Path | None = None

    def to_csv(self) -> str:
        return "\n".join([CSV_HEADER] + [r.to_csv_line() for r in self.rows]) + "\n"


@dataclass(frozen=True)
class DatasetStats:
    vertices: int
    edges: int
    diameter: float
    is_unit_weight: bool


def dataset_stats(graph_path: str | Path, weighted: bool = False) -> DatasetStats:
    """Vertex/edge counts, diameter and the unit-weight flag of a dataset."""
    g = load_edge_list(graph_path, weighted=weighted)
    return DatasetStats(
        vertices=g.vertex_count,
        edges=g.edge_count,
        diameter=graph_diameter(g),
        is_unit_weight=g.is_unit_weight,
    )


def suggest_eps_grid(
    g: WeightedGraph,
    quantiles: Sequence[float] = (0.25, 0.5, 0.75),
    sample_sources: int = 8,
    seed: int = 0,
) -> list[float]:
    """Eps values at quantiles of the (sampled) pairwise-distance distribution.

    Distances are pooled from full single-source searches out of a few
    deterministic random sources, so each suggested eps is an actual geodesic
    distance of the graph.
    """
    rng = random.Random(seed)
    n = g.vertex_count
    if n == 0:
        return []
    sources = sorted(rng.sample(range(n), min(sample_sources, n)))
    pool: list[float] = []
    for s in sources:
        pool.extend(d for d in sssp(g, s).dist.values() if d > 0)
    if not pool:
        return []
    pool.sort()
    grid: list[float] = []
    for q in quantiles:
        idx = min(int(q * (len(pool) - 1)), len(pool) - 1)
        value = pool[idx]
        if value not in grid:
            grid.append(value)
    return sorted(grid)


def _build_landmarks(
    g: WeightedGraph,
    algo: str,
    eps: float,
    seed: int,
    diam: float,
    net_size_cache: dict[tuple[float, int], int],
) -> LandmarkSet:
    """Select landmarks for one cell; baselines are sized by a net's count.

    maxmin/random have no radius of their own, so their ``k`` matches the
    landmark count the iterative construction produces for the same
    ``(eps, seed)`` -- the usual matched-size baseline comparison.
    """
    if algo == "greedy":
        return epsnet.greedy_eps_net(g, eps)
    if algo == "iterative":
        ls = epsnet.iterative_eps_net(g, eps, seed)
        net_size_cache[(eps, seed)] = len(ls)
        return ls
    if algo == "spt_pruning":
        return epsnet.spt_pruning_eps_net(g, diam, eps, seed)
    key = (eps, seed)
    if key not in net_size_cache:
        net_size_cache[key] = len(epsnet.iterative_eps_net(g, eps, seed))
    k = net_size_cache[key]
    if algo == "maxmin":
        return epsnet.maxmin_landmarks(g, k, seed)
    return epsnet.random_landmarks(g, k, seed)


def _run_cell(
    g: WeightedGraph,
    algo: str,
    eps: float,
    seed: int,
    diam: float,
    alpha_max: float,
    net_size_cache: dict[tuple[float, int], int],
) -> tuple[ReportRow, dict]:
    t_cell = time.perf_counter()

    t0 = time.perf_counter()
    landmarks = _build_landmarks(g, algo, eps, seed, diam, net_size_cache)
    landmark_ms = (time.perf_counter() - t0) * 1000.0

    cert = certify(g, landmarks, eps=eps)

    t0 = time.perf_counter()
    metric = landmark_metric(g, landmarks.landmarks)
    rips = rips_filtration(metric, alpha_max)
    lw = lazy_witness_filtration(g, landmarks.landmarks, alpha_max, nu=1)
    dgm_rips = compute_persistence(rips, max_dim=1)
    dgm_lw = compute_persistence(lw, max_dim=1)
    ph_ms = (time.perf_counter() - t0) * 1000.0

    threshold = 2.0 * eps
    bottlenecks = {}
    for dim in (0, 1):
        part_rips = filter_after(dgm_rips, dim, threshold, alpha_max)
        part_lw = filter_after(dgm_lw, dim, threshold, alpha_max)
        if len(part_rips) == 0 and len(part_lw) == 0:
            bottlenecks[dim] = 0.0
        else:
            bottlenecks[dim] = bottleneck(to_log_scale(part_lw), to_log_scale(part_rips))
    bound_ok = all(
        b <= LOG3_INTERLEAVING_BOUND + BOUND_TOLERANCE for b in bottlenecks.values()
    )

    total_ms = (time.perf_counter() - t_cell) * 1000.0
    row = ReportRow(
        algo=algo,
        eps=eps,
        seed=seed,
        n_landmarks=len(landmarks),
        landmark_ms=landmark_ms,
        ph_ms=ph_ms,
        total_ms=total_ms,
        sparse_ok=cert.sparse_ok,
        sample_ok=cert.sample_ok,
        coverage_radius=cert.coverage_radius,
        hausdorff=cert.hausdorff,
        bottleneck_d0=bottlenecks[0],
        bottleneck_d1=bottlenecks[1],
        bound_ok=bound_ok,
    )
    artifacts = {
        "landmarks": landmarks,
        "certificate": cert,
        "dgm_rips": dgm_rips,
        "dgm_lw": dgm_lw,
    }
    return row, artifacts


def _cell_dirname(algo: str, eps: float, seed: int) -> str:
    return f"{algo}_eps{eps:g}_seed{seed}"


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    """Run the full experiment grid and write the report and its sidecars.

    Per cell: ``landmarks.json``, ``certificate.json``, ``dgm_rips.csv`` and
    ``dgm_lw.csv`` under ``<output_dir>/runs/<algo>_eps<eps>_seed<seed>/``;
    a top-level ``report.csv``; and, unless disabled, figures rendered from
    the report.  Eps values that are non-positive or exceed the diameter are
    skipped with a warning.
    """
    if isinstance(cfg.graph_path, WeightedGraph):
        g = cfg.graph_path
    else:
        g = load_edge_list(cfg.graph_path, weighted=cfg.weighted)
    diam = graph_diameter(g)  # also rejects disconnected graphs
    alpha_max = cfg.alpha_max if cfg.alpha_max is not None else diam

    eps_values = list(cfg.eps_values) or suggest_eps_grid(g)
    valid_eps = []
    for eps in eps_values:
        # A diameter-0 graph (single vertex) accepts any positive eps.
        if eps <= 0 or (diam > 0 and eps > diam):
            log.warning("skipping eps=%g (outside (0, diameter=%g])", eps, diam)
            continue
        valid_eps.append(eps)

    out_dir = Path(cfg.output_dir)
    runs_dir = out_dir / "runs"
    runs_dir.mkdir(parents=True, exist_ok=True)

    rows: list[ReportRow] = []
    net_size_cache: dict[tuple[float, int], int] = {}
    for algo in cfg.algorithms:
        for eps in valid_eps:
            for seed in cfg.seeds:
                row, artifacts = _run_cell(
                    g, algo, eps, seed, diam, alpha_max, net_size_cache
                )
                rows.append(row)
                cell_dir = runs_dir / _cell_dirname(algo, eps, seed)
                cell_dir.mkdir(parents=True, exist_ok=True)
                (cell_dir / "landmarks.json").write_text(
                    artifacts["landmarks"].to_json() + "\n", encoding="utf-8"
                )
                (cell_dir / "certificate.json").write_text(
                    artifacts["certificate"].to_json() + "\n", encoding="utf-8"
                )
                artifacts["dgm_rips"].save(cell_dir / "dgm_rips.csv")
                artifacts["dgm_lw"].save(cell_dir / "dgm_lw.csv")

    report = ExperimentReport(
        rows=rows,
        diameter=diam,
        eps_values=tuple(valid_eps),
        output_dir=out_dir,
    )
    (out_dir / "report.csv").write_text(report.to_csv(), encoding="utf-8")
    if cfg.figures and rows:
        from .plots import render_report_figures

        render_report_figures(out_dir / "report.csv", out_dir)
    return report
