"""Batch command-line front end.

Subcommands: ``solve`` dispatches a JSON instance file to a named solver,
``oracle`` runs the matching brute-force reference, ``check`` runs both and
reports agreement, ``bench-jeep`` times the two equal-subdivision jeep
evaluators against each other.  Exit codes: 0 ok, 2 infeasible, 1 error.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import math
import os
import sys
import time

from . import fuel, hampath, jeep, oracles, ovrp
from .errors import BudgetUnreachableError, InfeasibleError, TransoptError
from .tree import build_rooted_tree

INSTANCE_SCHEMA = "transopt-instance/1"
RESULT_SCHEMA = "transopt-result/1"

OVRP_ALGOS = ("ovrp-greedy", "ovrp-dp1", "ovrp-dp2", "ovrp-interval")
JEEP_GRAPH_ALGOS = ("jeep-graph-backward", "jeep-graph-binary",
                    "jeep-graph-free", "jeep-graph-vertex")
ALGOS = OVRP_ALGOS + ("fuel", "jeep-exact", "jeep-fast", "jeep-threshold") + \
    JEEP_GRAPH_ALGOS + ("hampath-fixed", "hampath-free", "curve", "curve-weighted")

DEFAULT_ALGO = {
    "ovrp": "ovrp-interval",
    "fuel": "fuel",
    "jeep": "jeep-exact",
    "jeep-graph": "jeep-graph-backward",
    "hampath": "hampath-free",
    "curve": "curve-weighted",
}


class SchemaError(TransoptError):
    """Instance file does not match its schema."""


def _default_algo(payload):
    problem = payload["problem"]
    if problem == "hampath" and "start" in payload:
        return "hampath-fixed"  # the oracle honors the start; stay comparable
    return DEFAULT_ALGO[problem]


def default_eps():
    return float(os.environ.get("TRANSOPT_EPS", "1e-6"))


_REQUIRED = object()


def _field(payload, name, types, default=_REQUIRED):
    if name not in payload:
        if default is not _REQUIRED:
            return default
        raise SchemaError(f"missing field '{name}'")
    v = payload[name]
    if not isinstance(v, types) or isinstance(v, bool):
        raise SchemaError(f"field '{name}' has wrong type {type(v).__name__}")
    return v


def load_instance(path):
    try:
        with open(path) as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read instance file: {exc}")
    except json.JSONDecodeError as exc:
        raise SchemaError(f"field '<root>' is not valid JSON: {exc}")
    if not isinstance(payload, dict):
        raise SchemaError("field '<root>' must be a JSON object")
    schema = _field(payload, "schema", str, INSTANCE_SCHEMA)
    if schema != INSTANCE_SCHEMA:
        raise SchemaError(f"field 'schema' must be {INSTANCE_SCHEMA!r}, got {schema!r}")
    problem = _field(payload, "problem", str)
    if problem not in DEFAULT_ALGO:
        raise SchemaError(f"field 'problem' has unknown tag {problem!r}")
    return payload


def _edges_field(payload):
    raw = _field(payload, "edges", list)
    edges = []
    for t, e in enumerate(raw):
        if not (isinstance(e, list) and len(e) == 3):
            raise SchemaError(f"field 'edges[{t}]' must be [u, v, length]")
        edges.append((int(e[0]), int(e[1]), float(e[2])))
    return edges


def _tree_from(payload):
    n = _field(payload, "n", int)
    root = _field(payload, "root", int, 1)
    return build_rooted_tree(n, _edges_field(payload), root)


def _jeep_params(payload):
    return jeep.JeepParams(float(_field(payload, "m", (int, float))),
                           float(_field(payload, "g", (int, float))))


def _subdivision_from(payload):
    if "points" in payload:
        pts = _field(payload, "points", list)
        return jeep.Subdivision(tuple(float(p) for p in pts))
    x = float(_field(payload, "x", (int, float)))
    k = _field(payload, "k", int)
    return jeep.equal_subdivision(x, k)


def _fmt_floats(obj):
    """Clamp every float to 17 significant digits (round-trip exact)."""
    if isinstance(obj, float):
        return float(format(obj, ".17g"))
    if isinstance(obj, dict):
        return {k: _fmt_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_fmt_floats(v) for v in obj]
    return obj


def _envelope(solver, status, objective=None, solution=None, diagnostics=None,
              wall_time=0.0):
    env = {"schema": RESULT_SCHEMA, "status": status, "solver": solver,
           "wall_time": wall_time}
    if status == "ok":
        env["objective"] = objective
        if solution is not None:
            env["solution"] = solution
    if diagnostics:
        env["diagnostics"] = diagnostics
    return _fmt_floats(env)


def _dispatch_solve(payload, algo):
    """Returns (objective, solution, diagnostics); raises Infeasible/etc."""
    problem = payload["problem"]
    expected = "jeep-graph" if algo in JEEP_GRAPH_ALGOS else algo.split("-")[0]
    if expected == "hampath":
        expected = "hampath"
    if algo in ("curve", "curve-weighted"):
        expected = "curve"
    if problem != expected:
        raise SchemaError(f"field 'problem' is {problem!r} but algo {algo!r} "
                          f"expects {expected!r}")

    if algo in OVRP_ALGOS:
        inst = ovrp.OvrpInstance(_tree_from(payload), _field(payload, "p", int))
        if algo == "ovrp-dp1":
            return ovrp.solve_knapsack_v1(inst), None, None
        if algo == "ovrp-dp2":
            return ovrp.solve_knapsack_v2(inst), None, None
        sol = ovrp.solve_greedy(inst) if algo == "ovrp-greedy" else \
            ovrp.solve_leaf_interval(inst)
        return sol.total_cost, {"routes": sol.routes}, \
            {"vehicles_used": sol.vehicles_used}

    if algo == "fuel":
        tree = _tree_from(payload)
        gas = _field(payload, "gas", list)
        if len(gas) != tree.n:
            raise SchemaError(f"field 'gas' must list {tree.n} values")
        inst = fuel.make_fuel_instance(
            tree, gas,
            _field(payload, "value_mode", str, "integer"),
            float(_field(payload, "epsilon", (int, float), default_eps())))
        c, walk = fuel.min_initial_fuel(inst)
        return c, {"walk": walk}, None

    if algo in ("jeep-exact", "jeep-fast", "jeep-threshold"):
        params = _jeep_params(payload)
        mode = _field(payload, "mode", str, "faithful")
        if algo == "jeep-exact":
            d = _subdivision_from(payload)
            f0, plans = jeep.eval_subdivision_exact(d, params, mode=mode)
            return f0, {"plans": [[p.rt, p.q] for p in plans]}, None
        if algo == "jeep-fast":
            x = float(_field(payload, "x", (int, float)))
            k = _field(payload, "k", int)
            g0, touched = jeep.eval_equal_fast(x, k, params)
            return g0, None, {"points_touched": touched}
        x = float(_field(payload, "x", (int, float)))
        budget = float(_field(payload, "budget", (int, float)))
        k, val = jeep.threshold_search(
            x, params, budget,
            schedule=_field(payload, "schedule", str, "multiplicative"),
            ct=_field(payload, "ct", int, 2),
            k1=_field(payload, "k1", int, 0),
            method=_field(payload, "method", str, "exact"))
        return val, {"k": k}, None

    if algo in JEEP_GRAPH_ALGOS:
        graph = jeep.JeepGraph(
            _field(payload, "n", int), tuple(_edges_field(payload)),
            _field(payload, "source", int, 1), _field(payload, "target", int, -1))
        params = _jeep_params(payload)
        if algo == "jeep-graph-backward":
            h = jeep.graph_min_gas_backward(graph, params)
            val = h[graph.source]
        elif algo == "jeep-graph-binary":
            val = jeep.graph_min_gas_binary_forward(graph, params,
                                                    eps=default_eps())
        elif algo == "jeep-graph-free":
            val = jeep.graph_free_depots(graph, params)
        else:
            h = jeep.graph_vertex_depots_continuous(
                graph, params, _field(payload, "k_per_edge", int, 0))
            val = h[graph.source]
        if val == math.inf:
            raise InfeasibleError("target unreachable with any amount of gas")
        return val, None, None

    if algo in ("hampath-fixed", "hampath-free"):
        verts = _field(payload, "vertices", list)
        poly = hampath.SimplePolygon(tuple((float(p[0]), float(p[1]))
                                           for p in verts))
        if algo == "hampath-fixed":
            start = _field(payload, "start", int)
            length, path = hampath.shortest_ham_path_fixed_start(poly, start)
        else:
            length, path = hampath.shortest_ham_path_free_start(poly)
        if length == math.inf:
            raise InfeasibleError("no Hamiltonian path stays inside the polygon")
        return length, {"path": path}, None

    if algo in ("curve", "curve-weighted"):
        inst = hampath.CurveInstance(
            tuple(_field(payload, "gaps", list)),
            tuple(payload["weights"]) if "weights" in payload else None,
            _field(payload, "start", int, None))
        if algo == "curve":
            return hampath.curve_ham_path(inst), None, None
        cost, path = hampath.curve_weighted_ham_path(inst)
        return cost, {"path": path}, None

    raise SchemaError(f"unknown algo {algo!r}")


def _dispatch_oracle(payload):
    problem = payload["problem"]
    if problem == "ovrp":
        inst = ovrp.OvrpInstance(_tree_from(payload), _field(payload, "p", int))
        return oracles.ovrp_brute(inst), None
    if problem == "fuel":
        tree = _tree_from(payload)
        inst = fuel.make_fuel_instance(tree, _field(payload, "gas", list))
        return oracles.fuel_brute(inst), None
    if problem == "jeep":
        params = _jeep_params(payload)
        d = _subdivision_from(payload)
        mode = _field(payload, "mode", str, "faithful")
        _, plans = jeep.eval_subdivision_exact(d, params, mode=mode)
        return oracles.jeep_simulate_plan(d, params, plans), None
    if problem == "hampath":
        verts = _field(payload, "vertices", list)
        poly = hampath.SimplePolygon(tuple((float(p[0]), float(p[1]))
                                           for p in verts))
        length, path = oracles.ham_brute(poly, _field(payload, "start", int, None))
        return length, {"path": path}
    if problem == "curve":
        inst = hampath.CurveInstance(
            tuple(_field(payload, "gaps", list)),
            tuple(payload["weights"]) if "weights" in payload else None,
            _field(payload, "start", int, None))
        cost, path = oracles.curve_zigzag_brute(inst)
        return cost, {"path": path}
    raise SchemaError(f"no oracle for problem {problem!r}")


def _run_one(path, algo):
    """Solve one instance file; returns (envelope, exit code)."""
    t0 = time.perf_counter()
    try:
        payload = load_instance(path)
        if algo is None:
            algo = DEFAULT_ALGO[payload["problem"]]
        objective, solution, diagnostics = _dispatch_solve(payload, algo)
    except (InfeasibleError, BudgetUnreachableError) as exc:
        env = _envelope(algo or "?", "infeasible",
                        diagnostics={"reason": str(exc)},
                        wall_time=time.perf_counter() - t0)
        return env, 2
    except (TransoptError, ValueError) as exc:
        env = {"schema": RESULT_SCHEMA, "status": "error",
               "solver": algo or "?", "diagnostics": {"reason": str(exc)}}
        return env, 1
    env = _envelope(algo, "ok", objective, solution, diagnostics,
                    time.perf_counter() - t0)
    return env, 0


def _cmd_solve(args):
    files = args.files
    if args.jobs > 1 and len(files) > 1:
        with concurrent.futures.ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_run_one, files,
                                    [args.algo] * len(files)))
    else:
        results = [_run_one(f, args.algo) for f in files]
    code = 0
    for env, c in results:
        print(json.dumps(env))
        code = max(code, c)
    return code


def _cmd_oracle(args):
    t0 = time.perf_counter()
    try:
        payload = load_instance(args.file)
        objective, solution = _dispatch_oracle(payload)
    except (TransoptError, ValueError) as exc:
        print(json.dumps({"schema": RESULT_SCHEMA, "status": "error",
                          "solver": "oracle",
                          "diagnostics": {"reason": str(exc)}}))
        return 1
    print(json.dumps(_envelope("oracle", "ok", objective, solution,
                               wall_time=time.perf_counter() - t0)))
    return 0


def _cmd_check(args):
    try:
        payload = load_instance(args.file)
        algo = _default_algo(payload)
        s_obj, _, _ = _dispatch_solve(payload, algo)
        o_obj, _ = _dispatch_oracle(payload)
    except (TransoptError, ValueError) as exc:
        print(json.dumps({"status": "error", "diagnostics": {"reason": str(exc)}}))
        return 1
    eps = default_eps()
    agree = abs(s_obj - o_obj) <= eps * max(1.0, abs(s_obj), abs(o_obj))
    print(json.dumps(_fmt_floats({
        "schema": RESULT_SCHEMA, "status": "ok", "solver": algo,
        "agreement": agree, "solver_objective": s_obj,
        "oracle_objective": o_obj})))
    return 0 if agree else 1


def bench_jeep(x, m, g, k_list, repeats_budget=20000):
    """Time Method 1 vs Method 2 on equal subdivisions; rows of
    (k, f, g_val, r1, r2, ratio, points_touched)."""
    params = jeep.JeepParams(m, g)
    rows = []
    for k in k_list:
        reps = max(1, repeats_budget // (k + 1))
        r1 = math.inf
        for _ in range(reps):
            d = jeep.equal_subdivision(x, k)
            t0 = time.perf_counter()
            f_val, _ = jeep.eval_subdivision_exact(d, params, collect_plans=False)
            r1 = min(r1, time.perf_counter() - t0)
        r2 = math.inf
        for _ in range(reps):
            t0 = time.perf_counter()
            g_val, touched = jeep.eval_equal_fast(x, k, params)
            r2 = min(r2, time.perf_counter() - t0)
        rows.append({"k": k, "f": f_val, "g": g_val, "r1": r1, "r2": r2,
                     "ratio": r2 / r1, "points_touched": touched})
    return rows


def _cmd_bench(args):
    k_list = [int(s) for s in args.k_list.split(",") if s]
    if not k_list:
        print("bench-jeep: empty --k-list", file=sys.stderr)
        return 1
    try:
        rows = bench_jeep(args.x, args.m, args.g, k_list)
    except (TransoptError, ValueError) as exc:
        print(f"bench-jeep: {exc}", file=sys.stderr)
        return 1
    for row in rows:
        print(json.dumps(_fmt_floats(row)))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="transopt",
        description="Tree routing, fuel caching and polygon path solvers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="run a solver on instance files")
    p_solve.add_argument("files", nargs="+")
    p_solve.add_argument("--algo", choices=ALGOS, default=None,
                         help="solver (defaults per problem tag)")
    p_solve.add_argument("--jobs", type=int, default=1,
                         help="parallel workers for multiple files")
    p_solve.set_defaults(func=_cmd_solve)

    p_oracle = sub.add_parser("oracle", help="run the brute-force reference")
    p_oracle.add_argument("file")
    p_oracle.set_defaults(func=_cmd_oracle)

    p_check = sub.add_parser("check", help="compare solver against oracle")
    p_check.add_argument("file")
    p_check.set_defaults(func=_cmd_check)

    p_bench = sub.add_parser("bench-jeep",
                             help="time the two equal-subdivision evaluators")
    p_bench.add_argument("--x", type=float, required=True)
    p_bench.add_argument("--m", type=float, default=1.0)
    p_bench.add_argument("--g", type=float, default=1.0)
    p_bench.add_argument("--k-list", required=True,
                         help="comma-separated subdivision sizes")
    p_bench.set_defaults(func=_cmd_bench)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
