"""Command-line surface: color / maxflow / lp / centrality / gen / perturb / bench.

Outputs are JSON lines on stdout; files go through --out.  Exit codes:
0 success, 1 input error, 2 capacity error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from . import coloring as col
from . import flow as flowmod
from . import generators, kernels
from . import lp as lpmod
from .centrality import approx_centrality, brandes_exact, spearman
from .errors import CapacityError, InputError, ParameterError, UndefinedCorrelation
from .graph import dump_edge_list, load_edge_list
from .reduce import BipartiteColoring, ExtendedMatrix, bipartite_q_error, color_lp, reduce_lp


def relative_error(v: float, v_hat: float) -> float:
    """max(v / v_hat, v_hat / v); >= 1, symmetric, defined for positive values."""
    if v <= 0 or v_hat <= 0:
        raise ParameterError("relative error is defined for positive values")
    return max(v / v_hat, v_hat / v)


def _emit(doc):
    print(json.dumps(doc), flush=True)


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    return int(os.environ.get("QSC_SEED", "0"))


def _load_graph(path, directed):
    try:
        with open(path) as fh:
            return load_edge_list(fh, directed=directed)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _coloring_params(args, g, pins=frozenset()):
    if args.colors is None and args.q_error is None:
        raise InputError("need a stopping rule: --colors and/or --q-error")
    return col.RothkoParams(
        max_colors=args.colors if args.colors is not None else g.n,
        eps=args.q_error if args.q_error is not None else 0.0,
        alpha=args.alpha,
        beta=args.beta,
        mean_kind=args.mean,
        seed=_seed(args),
        pinned_singletons=frozenset(pins),
    )


def _run_rothko(g, params, progressive=False):
    t0 = time.perf_counter()
    state = {"round": 0}

    def observer(c, report):
        state["round"] += 1
        if progressive:
            _emit(
                {
                    "round": state["round"],
                    "k": c.k,
                    "max_q": report.max_q,
                    "elapsed_ms": (time.perf_counter() - t0) * 1000,
                }
            )

    coloring, report = col.rothko(g, params, observer=observer)
    return coloring, report, (time.perf_counter() - t0) * 1000


def cmd_color(args):
    g = _load_graph(args.graph, directed=args.directed)
    pins = set()
    for lab in args.pin:
        if lab not in g.label_to_id:
            raise InputError(f"pinned node {lab!r} not in graph")
        pins.add(g.label_to_id[lab])
    params = _coloring_params(args, g, pins)
    coloring, _, ms = _run_rothko(g, params, progressive=args.progressive)
    report = col.q_error(g, coloring)  # final recomputation
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(col.coloring_to_json(coloring, report) + "\n")
    _emit(
        {
            "task": "color",
            "colors": coloring.k,
            "max_q": report.max_q,
            "mean_q": report.mean_q,
            "seed": params.seed,
            "timings": {"coloring_ms": ms},
        }
    )


def cmd_maxflow(args):
    try:
        with open(args.network) as fh:
            net = flowmod.load_network(fh)
    except OSError as exc:
        raise InputError(f"cannot read {args.network}: {exc}") from exc
    if len(net.sources) != 1 or len(net.targets) != 1:
        raise InputError("maxflow command expects a single s and a single t")
    (s,) = net.sources
    (t,) = net.targets
    g = net.graph
    params = _coloring_params(args, g, pins={s, t})
    coloring, _, color_ms = _run_rothko(g, params, progressive=args.progressive)
    t0 = time.perf_counter()
    bounds = flowmod.flow_bounds(net, coloring)
    solve_ms = (time.perf_counter() - t0) * 1000
    doc = {
        "task": "maxflow",
        "colors": coloring.k,
        "upper": bounds.upper,
        "seed": params.seed,
        "timings": {"coloring_ms": color_ms, "solve_ms": solve_ms},
    }
    if args.lower:
        doc["lower"] = bounds.lower
    if args.exact:
        exact, _ = flowmod.max_flow(net)
        doc["exact"] = exact
        try:
            doc["metric"] = relative_error(exact, bounds.upper)
        except ParameterError:
            doc["metric_status"] = "undefined"
    _emit(doc)


def _load_lp(path):
    try:
        if str(path).endswith(".mps"):
            return lpmod.read_mps(path)
        with open(path) as fh:
            return lpmod.lp_from_json(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def cmd_lp(args):
    lp = _load_lp(args.lp)
    ext = ExtendedMatrix(lp)
    t0 = time.perf_counter()
    if args.coloring_file:
        with open(args.coloring_file) as fh:
            doc = json.load(fh)
        bc = BipartiteColoring(np.array(doc["row_color_of"]), np.array(doc["col_color_of"]))
    else:
        params = col.RothkoParams(
            max_colors=args.colors if args.colors is not None else (lp.m + lp.n + 2),
            eps=args.q_error if args.q_error is not None else 0.0,
            alpha=args.alpha,
            beta=args.beta,
            seed=_seed(args),
        )
        bc = color_lp(ext, params)
    color_ms = (time.perf_counter() - t0) * 1000
    t0 = time.perf_counter()
    reduced = reduce_lp(ext, bc, normalization=args.norm)
    reduce_ms = (time.perf_counter() - t0) * 1000
    if args.export_mps:
        lpmod.export_mps(reduced, args.export_mps)
    t0 = time.perf_counter()
    sol = lpmod.solve_lp(reduced)
    solve_ms = (time.perf_counter() - t0) * 1000
    doc = {
        "task": "lp",
        "colors": bc.k + bc.ell + 2,
        "max_q": bipartite_q_error(ext, bc),
        "status": sol.status,
        "objective": sol.objective,
        "timings": {"coloring_ms": color_ms, "reduce_ms": reduce_ms, "solve_ms": solve_ms},
    }
    if args.exact:
        exact = lpmod.solve_lp(lp)
        doc["exact_status"] = exact.status
        doc["exact"] = exact.objective
        try:
            doc["metric"] = relative_error(exact.objective, sol.objective)
        except ParameterError:
            doc["metric_status"] = "undefined"
    _emit(doc)


def cmd_centrality(args):
    g = _load_graph(args.graph, directed=args.directed)
    params = _coloring_params(args, g)
    coloring, _, color_ms = _run_rothko(g, params, progressive=args.progressive)
    t0 = time.perf_counter()
    scores = approx_centrality(g, coloring)
    solve_ms = (time.perf_counter() - t0) * 1000
    if args.out:
        with open(args.out, "w") as fh:
            json.dump({"scores": [float(v) for v in scores], "convention": "ordered-pairs"}, fh)
    doc = {
        "task": "centrality",
        "colors": coloring.k,
        "seed": params.seed,
        "timings": {"coloring_ms": color_ms, "solve_ms": solve_ms},
    }
    if args.exact:
        exact = brandes_exact(g)
        try:
            doc["metric"] = spearman(scores, exact)
        except UndefinedCorrelation:
            doc["metric_status"] = "undefined"
    _emit(doc)


def cmd_gen(args):
    seed = _seed(args)
    if args.kind == "blowup":
        g = generators.gen_blowup(args.groups, args.group_size, args.inter_degree, seed)
    else:
        g = generators.barabasi_albert(args.n, args.m, seed)
    _write_graph(g, args.out)
    _emit({"task": "gen", "kind": args.kind, "nodes": g.n, "directed_edges": g.m, "seed": seed})


def cmd_perturb(args):
    g = _load_graph(args.graph, directed=True)
    g2 = generators.perturb(g, args.fraction, _seed(args))
    _write_graph(g2, args.out)
    _emit({"task": "perturb", "added_directed_edges": g2.m - g.m, "seed": _seed(args)})


def _write_graph(g, out):
    text = dump_edge_list(g)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_bench(args):
    g = generators.gen_blowup(args.groups, args.group_size, args.inter_degree, _seed(args))
    coloring = col.refine_stable(g)
    color = np.ascontiguousarray(coloring.color_of, dtype=np.int64)
    results = {}
    for name, impl in kernels.backends().items():
        t0 = time.perf_counter()
        for _ in range(args.repeat):
            D = impl.degree_matrix(g.n, coloring.k, g.edge_src, g.edge_dst, g.edge_w, color)
            impl.group_minmax(np.ascontiguousarray(D), color, coloring.k)
        results[name] = (time.perf_counter() - t0) * 1000 / args.repeat
    _emit(
        {
            "task": "bench",
            "active_backend": kernels.backend_name(),
            "nodes": g.n,
            "edges": g.m,
            "colors": coloring.k,
            "kernel_ms": results,
        }
    )


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qsc", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common_coloring(sp, alpha, beta):
        sp.add_argument("--colors", type=int, default=None, help="color budget")
        sp.add_argument("--q-error", type=float, default=None, help="target max q error")
        sp.add_argument("--alpha", type=float, default=alpha)
        sp.add_argument("--beta", type=float, default=beta)
        sp.add_argument("--mean", choices=["arithmetic", "geometric"], default="arithmetic")
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--progressive", action="store_true", help="stream one JSON line per split")

    sp = sub.add_parser("color", help="compute a quasi-stable coloring")
    sp.add_argument("graph")
    sp.add_argument("--directed", action="store_true")
    sp.add_argument("--pin", action="append", default=[], help="node label to pin in its own color")
    sp.add_argument("--out", default=None)
    common_coloring(sp, alpha=1.0, beta=1.0)
    sp.set_defaults(func=cmd_color)

    sp = sub.add_parser("maxflow", help="approximate max flow on a colored network")
    sp.add_argument("network")
    sp.add_argument("--exact", action="store_true")
    sp.add_argument("--lower", action="store_true", help="also compute the uniform-flow lower bound")
    common_coloring(sp, alpha=0.0, beta=0.0)
    sp.set_defaults(func=cmd_maxflow)

    sp = sub.add_parser("lp", help="approximate an LP via matrix coloring")
    sp.add_argument("lp", help="LP as JSON, or fixed MPS if the path ends in .mps")
    sp.add_argument("--norm", choices=["sqrt", "count"], default="sqrt")
    sp.add_argument("--exact", action="store_true")
    sp.add_argument("--export-mps", default=None)
    sp.add_argument("--coloring-file", default=None)
    common_coloring(sp, alpha=1.0, beta=0.0)
    sp.set_defaults(func=cmd_lp)

    sp = sub.add_parser("centrality", help="approximate betweenness centrality")
    sp.add_argument("graph")
    sp.add_argument("--directed", action="store_true")
    sp.add_argument("--exact", action="store_true")
    sp.add_argument("--out", default=None)
    common_coloring(sp, alpha=1.0, beta=1.0)
    sp.set_defaults(func=cmd_centrality)

    sp = sub.add_parser("gen", help="generate a synthetic graph")
    sp.add_argument("kind", choices=["blowup", "ba"])
    sp.add_argument("--groups", type=int, default=100)
    sp.add_argument("--group-size", type=int, default=10)
    sp.add_argument("--inter-degree", type=float, default=43.0)
    sp.add_argument("--n", type=int, default=500)
    sp.add_argument("--m", type=int, default=3)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("perturb", help="add random edges to a graph")
    sp.add_argument("graph")
    sp.add_argument("--fraction", type=float, required=True)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_perturb)

    sp = sub.add_parser("bench", help="compare kernel backends")
    sp.add_argument("--groups", type=int, default=100)
    sp.add_argument("--group-size", type=int, default=10)
    sp.add_argument("--inter-degree", type=float, default=43.0)
    sp.add_argument("--repeat", type=int, default=20)
    sp.add_argument("--seed", type=int, default=None)
    sp.set_defaults(func=cmd_bench)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
