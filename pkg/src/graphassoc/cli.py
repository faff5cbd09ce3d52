"""Command-line front end: classify graphs, build fans, run cross-checks,
and enumerate moduli data.

Exit codes: 0 computed (whatever the answer), 1 usage or parse error,
2 internal invariant failure (a cross-check that should always pass failed).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import __version__
from .epsrational import default_eps
from .fans import FanError, build_graph_fan, f_vector, fan_to_json, is_complete, is_smooth
from .graphs import (
    Graph,
    GraphError,
    bits_of,
    classify_iterated_cone,
    connected_graphs_up_to_iso,
    parse_edge_list,
    parse_graph,
)
from .moduli import (
    divisor_tube_correspondence,
    enumerate_stable_trees,
    max_components,
    nodal_divisors,
)
from .obstructions import feasible, obstruction_a, obstruction_b, w1w2_system
from .tubings import verify_fan_tubing_bijection
from .weights import (
    check_w1_w2,
    is_valid,
    mark_of_vertex,
    parse_weight_vector,
    remark_weights,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVARIANT = 2


def load_graph(spec: str) -> Graph:
    if spec.startswith("@"):
        with open(spec[1:]) as fh:
            return parse_edge_list(fh.read())
    return parse_graph(spec)


def graph_echo(spec: str, g: Graph) -> dict:
    return {
        "spec": spec,
        "num_vertices": g.num_vertices,
        "edges": [list(e) for e in g.edges()],
    }


def emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, indent=2))
        return
    print(f"{report['command']}: {report['input'].get('spec', '')}  [{report['status']}]")
    _emit_text(report["results"], indent="  ")


def _emit_text(obj, indent=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _is_flat(v):
                print(f"{indent}{k}:")
                _emit_text(v, indent + "  ")
            else:
                print(f"{indent}{k}: {_flat(v)}")
    elif isinstance(obj, list):
        for item in obj:
            print(f"{indent}- {_flat(item)}")


def _is_flat(v):
    if isinstance(v, list):
        return all(not isinstance(x, (dict, list)) for x in v)
    return False


def _flat(v):
    if isinstance(v, list):
        return "[" + ", ".join(str(x) for x in v) + "]"
    return v


def cmd_classify(args) -> int:
    g = load_graph(args.graph)
    cs = classify_iterated_cone(g)
    results: dict = {}
    if cs is not None:
        w = remark_weights(cs, g)
        eps = Fraction(args.eps) if args.eps else default_eps(w.n, cs.k)
        results.update(
            {
                "is_hassett": True,
                "k": cs.k,
                "cone_vertices": bits_of(cs.cone_vertices),
                "independent_vertices": bits_of(cs.independent),
                "weights": str(w),
                "weights_json": w.to_json(),
                "eps": str(eps),
                "weights_at_eps": [
                    str(e.instantiate(eps)) for e in w.entries()
                ],
            }
        )
        status = "pass"
    else:
        results["is_hassett"] = False
        witness = obstruction_a(g)
        if witness is None:
            witness = obstruction_b(g)
        if witness is not None:
            results["obstruction"] = witness.to_json()
        status = "none"
    report = {
        "command": "classify",
        "input": graph_echo(args.graph, g),
        "results": results,
        "status": status,
    }
    emit(report, args.format)
    return EXIT_OK


def cmd_fan(args) -> int:
    g = load_graph(args.graph)
    rng = random.Random(args.seed_order) if args.seed_order is not None else None
    f = build_graph_fan(g, rng=rng)
    results = {
        "num_rays": len(f.rays),
        "num_max_cones": len(f.max_cones),
        "smooth": is_smooth(f),
        "complete": is_complete(f),
    }
    if args.f_vector:
        results["f_vector"] = list(f_vector(f))
    if args.json_fan:
        results["fan"] = fan_to_json(f)
    report = {
        "command": "fan",
        "input": graph_echo(args.graph, g),
        "results": results,
        "status": "pass",
    }
    emit(report, args.format)
    return EXIT_OK


def _verify_one(g: Graph) -> dict:
    """All cross-checks for a single connected graph; 'ok' is the verdict."""
    out: dict = {}
    fan = build_graph_fan(g)
    out["smooth"] = is_smooth(fan)
    out["complete"] = is_complete(fan)
    bij = verify_fan_tubing_bijection(g, fan)
    out["fan_tubing_bijection"] = bij.passed
    if not bij.passed:
        out["bijection_failure"] = bij.failure

    cs = classify_iterated_cone(g)
    point = feasible(w1w2_system(g))
    out["is_iterated_cone"] = cs is not None
    out["w1w2_feasible"] = point is not None
    out["oracle_agreement"] = (cs is not None) == (point is not None)
    witness = obstruction_a(g) or obstruction_b(g)
    out["obstructed"] = witness is not None
    out["obstruction_agreement"] = (witness is not None) == (point is None)

    if cs is not None:
        w = remark_weights(cs, g)
        out["weights_valid"] = is_valid(w).valid
        out["w1w2_check"] = check_w1_w2(g, w, marks=mark_of_vertex(cs)).passed
        corr = divisor_tube_correspondence(g, w)
        out["divisor_correspondence"] = corr.passed
        out["rays_vs_divisors"] = f"{corr.num_rays} = {corr.num_divisors} + {corr.k}"

    out["ok"] = all(
        out.get(key, True)
        for key in (
            "smooth",
            "complete",
            "fan_tubing_bijection",
            "oracle_agreement",
            "obstruction_agreement",
            "weights_valid",
            "w1w2_check",
            "divisor_correspondence",
        )
    )
    return out


def cmd_verify(args) -> int:
    if args.all_up_to is not None:
        if args.all_up_to > 7:
            print("error: --all-up-to is capped at 7", file=sys.stderr)
            return EXIT_USAGE
        failures = []
        total = 0
        for n in range(2, args.all_up_to + 1):
            for g in connected_graphs_up_to_iso(n):
                total += 1
                res = _verify_one(g)
                if not res["ok"]:
                    failures.append({"edges": [list(e) for e in g.edges()], "result": res})
        results = {"graphs_checked": total, "failures": failures}
        status = "pass" if not failures else "fail"
        report = {
            "command": "verify",
            "input": {"spec": f"--all-up-to {args.all_up_to}"},
            "results": results,
            "status": status,
        }
        emit(report, args.format)
        return EXIT_OK if not failures else EXIT_INVARIANT

    g = load_graph(args.graph)
    results = _verify_one(g)
    report = {
        "command": "verify",
        "input": graph_echo(args.graph, g),
        "results": results,
        "status": "pass" if results["ok"] else "fail",
    }
    emit(report, args.format)
    return EXIT_OK if results["ok"] else EXIT_INVARIANT


def cmd_moduli(args) -> int:
    if args.weights:
        w = parse_weight_vector(args.weights)
        echo = {"spec": f"--weights {args.weights}"}
    else:
        g = load_graph(args.graph)
        cs = classify_iterated_cone(g)
        if cs is None:
            print(
                f"error: {args.graph} is not an iterated cone; pass --weights instead",
                file=sys.stderr,
            )
            return EXIT_USAGE
        w = remark_weights(cs, g)
        echo = graph_echo(args.graph, g)
    cap = args.max_vertices if args.max_vertices else w.n - 2
    results: dict = {"weights": str(w), "n": w.n}
    if args.divisors:
        divisors = nodal_divisors(w)
        results["num_nodal_divisors"] = len(divisors)
        results["nodal_divisors"] = [d.to_json() for d in divisors]
    else:
        trees = enumerate_stable_trees(w, cap)
        by_size: dict[int, int] = {}
        for t in trees:
            by_size[t.num_vertices] = by_size.get(t.num_vertices, 0) + 1
        results["max_components"] = max_components(w, cap)
        results["tree_counts_by_components"] = {str(k): v for k, v in sorted(by_size.items())}
        results["num_nodal_divisors"] = len(nodal_divisors(w))
    report = {
        "command": "moduli",
        "input": echo,
        "results": results,
        "status": "pass",
    }
    emit(report, args.format)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphassoc",
        description=(
            "Decide whether the toric variety of a graph associahedron is a "
            "moduli space of weighted pointed stable rational curves."
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("classify", help="iterated-cone test, weights or obstruction")
    p.add_argument("graph", help="graph DSL expression or @edge-list-file")
    p.add_argument("--eps", help="rational value of eps for numeric display")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("fan", help="build the graph associahedral fan")
    p.add_argument("graph")
    p.add_argument("--f-vector", action="store_true", dest="f_vector")
    p.add_argument("--json-fan", action="store_true", dest="json_fan",
                   help="include the full fan in the report")
    p.add_argument("--seed-order", type=int, dest="seed_order",
                   help="shuffle same-size subdivision order with this seed")
    common(p)
    p.set_defaults(func=cmd_fan)

    p = sub.add_parser("verify", help="run all cross-checks")
    p.add_argument("graph", nargs="?")
    p.add_argument("--all-up-to", type=int, dest="all_up_to", metavar="M",
                   help="sweep all connected graphs on up to M vertices (M <= 7)")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("moduli", help="stable trees and nodal divisors")
    p.add_argument("graph", nargs="?")
    p.add_argument("--weights", help="explicit weight vector, e.g. 1,1-3e,4e,4e,e,e")
    p.add_argument("--max-vertices", type=int, dest="max_vertices")
    p.add_argument("--divisors", action="store_true")
    common(p)
    p.set_defaults(func=cmd_moduli)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and args.graph is None and args.all_up_to is None:
        parser.error("verify needs a graph or --all-up-to")
    if args.command == "moduli" and args.graph is None and not args.weights:
        parser.error("moduli needs a graph or --weights")
    try:
        return args.func(args)
    except (GraphError, FanError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RuntimeError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
