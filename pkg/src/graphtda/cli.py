"""Command-line interface.

Subcommands: ``stats`` (dataset summary), ``net`` (select + certify one
landmark set), ``ph`` (filtrations and persistence diagrams for one cell),
``experiment`` (the full grid with report and figures) and ``plot``
(re-render figures from an existing report).  Exit code 0 on success, 1 on
any hard error.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path

from . import epsnet
from .epsnet import ALGORITHMS, EPS_NET_ALGORITHMS, certify, select_landmarks
from .graphs import diameter as graph_diameter, load_edge_list
from .harness import ExperimentConfig, dataset_stats, run_experiment, suggest_eps_grid


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", required=True, help="edge-list file (u v [w])")
    p.add_argument(
        "--weighted",
        action="store_true",
        help="parse a third column as edge weight (default: unit weights)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphtda",
        description="Epsilon-net landmarks and persistent homology on graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="vertex/edge counts, diameter, weight flag")
    _add_graph_args(p)

    p = sub.add_parser("net", help="select one landmark set and certify it")
    _add_graph_args(p)
    p.add_argument("--algo", required=True, choices=ALGORITHMS)
    p.add_argument("--eps", type=float, help="net radius (net algorithms)")
    p.add_argument("--k", type=int, help="landmark count (maxmin/random)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="directory for landmarks.json / certificate.json")

    p = sub.add_parser("ph", help="filtrations + persistence diagrams for one cell")
    _add_graph_args(p)
    p.add_argument("--algo", required=True, choices=ALGORITHMS)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--k", type=int, help="landmark count (maxmin/random)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alpha-max", type=float, help="filtration ceiling (default: diameter)")
    p.add_argument("--out", default=".", help="directory for diagram CSVs")

    p = sub.add_parser("experiment", help="full grid: report.csv, sidecars, figures")
    _add_graph_args(p)
    p.add_argument(
        "--algo",
        nargs="+",
        choices=ALGORITHMS,
        default=list(EPS_NET_ALGORITHMS),
        help="algorithms to run (default: the three net constructions)",
    )
    p.add_argument(
        "--eps",
        nargs="+",
        type=float,
        default=[],
        help="eps grid (default: distance quantiles)",
    )
    p.add_argument("--seed", nargs="+", type=int, default=[0])
    p.add_argument("--alpha-max", type=float)
    p.add_argument("--out", default="graphtda_out")
    p.add_argument("--no-figures", action="store_true", help="skip figure rendering")

    p = sub.add_parser("plot", help="render figures from an existing report.csv")
    p.add_argument("--report", required=True, help="path to report.csv")
    p.add_argument("--out", help="figure directory (default: next to the report)")
    return parser


def _cmd_stats(args) -> int:
    s = dataset_stats(args.graph, weighted=args.weighted)
    print(f"vertices: {s.vertices}")
    print(f"edges: {s.edges}")
    print(f"diameter: {s.diameter:g}")
    print(f"unit_weight: {str(s.is_unit_weight).lower()}")
    return 0


def _select(args, g, diam):
    return select_landmarks(
        g,
        args.algo,
        eps=args.eps,
        k=args.k,
        seed=args.seed,
        diameter=diam,
    )


def _cmd_net(args) -> int:
    g = load_edge_list(args.graph, weighted=args.weighted)
    diam = graph_diameter(g) if args.algo == "spt_pruning" else None
    landmarks = _select(args, g, diam)
    print(f"selected {len(landmarks)} landmarks with {args.algo}")
    cert = None
    if args.eps is not None:
        cert = certify(g, landmarks, eps=args.eps)
        print(
            f"certificate: sparse_ok={str(cert.sparse_ok).lower()} "
            f"sample_ok={str(cert.sample_ok).lower()} "
            f"coverage_radius={cert.coverage_radius:g} hausdorff={cert.hausdorff:g}"
        )
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "landmarks.json").write_text(landmarks.to_json() + "\n", encoding="utf-8")
        if cert is not None:
            (out / "certificate.json").write_text(cert.to_json() + "\n", encoding="utf-8")
        print(f"wrote {out / 'landmarks.json'}")
    else:
        print(landmarks.to_json())
    return 0


def _cmd_ph(args) -> int:
    from .complexes import landmark_metric, lazy_witness_filtration, rips_filtration
    from .persistence import compute_persistence

    g = load_edge_list(args.graph, weighted=args.weighted)
    diam = graph_diameter(g)
    alpha_max = args.alpha_max if args.alpha_max is not None else diam
    landmarks = _select(args, g, diam)
    metric = landmark_metric(g, landmarks.landmarks)
    dgm_rips = compute_persistence(rips_filtration(metric, alpha_max))
    dgm_lw = compute_persistence(
        lazy_witness_filtration(g, landmarks.landmarks, alpha_max, nu=1)
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    dgm_rips.save(out / "dgm_rips.csv")
    dgm_lw.save(out / "dgm_lw.csv")
    print(f"landmarks: {len(landmarks)}")
    print(f"rips diagram: {len(dgm_rips)} intervals -> {out / 'dgm_rips.csv'}")
    print(f"lazy witness diagram: {len(dgm_lw)} intervals -> {out / 'dgm_lw.csv'}")
    return 0


def _cmd_experiment(args) -> int:
    cfg = ExperimentConfig(
        graph_path=args.graph,
        weighted=args.weighted,
        algorithms=args.algo,
        eps_values=args.eps,
        seeds=args.seed,
        alpha_max=args.alpha_max,
        output_dir=args.out,
        figures=not args.no_figures,
    )
    report = run_experiment(cfg)
    print(f"graph diameter: {report.diameter:g}")
    print(f"eps grid: {[f'{e:g}' for e in report.eps_values]}")
    print(f"{len(report.rows)} cells -> {Path(args.out) / 'report.csv'}")
    bad = [r for r in report.rows if not r.bound_ok]
    if bad:
        print(f"WARNING: {len(bad)} cells exceeded the 3 ln 3 bound")
    return 0


def _cmd_plot(args) -> int:
    from .plots import render_report_figures

    out = args.out if args.out else Path(args.report).parent
    written = render_report_figures(args.report, out)
    for path in written:
        print(f"wrote {path}")
    return 0


_COMMANDS = {
    "stats": _cmd_stats,
    "net": _cmd_net,
    "ph": _cmd_ph,
    "experiment": _cmd_experiment,
    "plot": _cmd_plot,
}


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError, NotImplementedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
