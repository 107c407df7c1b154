"""Command-line surface: generate, run, check, reduce, experiment.

All randomness flows through a single integer seed (flag or the
REBEL_SCHED_SEED environment variable); repeated invocations with the same
seed produce identical artifacts, except for wall-clock timing fields.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from pathlib import Path

from . import cuts, equilibrium, oracle, reductions
from .dynamics import Schedule, is_regret_proof, load_schedule, outcome_csv, simulate, write_schedule
from .errors import GraphFormatError, InstanceTooLargeError, IterationLimitError
from .graph import (
    Graph,
    LoadedGraph,
    generate,
    load_edge_list,
    random_connected,
    validate,
    write_edge_list,
)
from .mirror import schedule_y
from .peeling import schedule_n

ALGORITHMS = ("alg1", "alg2", "alg4", "alg5", "brute")


def _default_seed() -> int:
    return int(os.environ.get("REBEL_SCHED_SEED", "0"))


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _load_valid_graph(path: str) -> LoadedGraph:
    loaded = load_edge_list(path)
    report = validate(loaded.graph.n, list(loaded.graph.edges()))
    if not report.ok:
        raise GraphFormatError("; ".join(report.issues))
    return loaded


def _run_algorithm(name: str, graph: Graph) -> tuple[Schedule | None, dict]:
    """Returns (schedule, summary fields); guarantee failure is flagged in the fields."""
    start = time.perf_counter()
    if name == "brute":
        result = oracle.brute_force(graph)
        elapsed = (time.perf_counter() - start) * 1000.0
        return result.opt_y_schedule, {
            "count_y": result.opt_y,
            "count_n": result.opt_n,
            "regret_proof": result.regret_proof_exists,
            "bound_required": 1,
            "bound_met": True,
            "runtime_ms": elapsed,
        }
    if name == "alg1":
        sched = schedule_y(graph)
    elif name == "alg2":
        sched = schedule_n(graph)
    elif name == "alg4":
        sched = equilibrium.equilibrium_schedule_y(graph)
    elif name == "alg5":
        sched = equilibrium.equilibrium_schedule_n(graph)
    else:
        raise ValueError(f"unknown algorithm {name!r}")
    elapsed = (time.perf_counter() - start) * 1000.0
    outcome = simulate(graph, sched)
    stable, _ = is_regret_proof(graph, sched)
    n = graph.n
    if name == "alg1":
        required = (n + 1) // 2
        met = 2 * outcome.count_y >= n
    elif name == "alg2":
        required = (n + 2) // 3
        met = 3 * outcome.count_n >= n
    elif name == "alg4":
        required = (n + 1) // 2
        met = stable and 2 * outcome.count_y >= n
    else:
        required = equilibrium.n_count_requirement_for(graph)
        met = stable and outcome.count_n >= required
    return sched, {
        "count_y": outcome.count_y,
        "count_n": outcome.count_n,
        "regret_proof": stable,
        "bound_required": required,
        "bound_met": met,
        "runtime_ms": elapsed,
    }


def cmd_gen(args: argparse.Namespace) -> int:
    kind = args.kind.replace("-", "_")
    if kind == "random":
        graph = random_connected(args.params[0] if False else int(args.params[0]),
                                 float(args.params[1]), args.seed)
    else:
        if len(args.params) != 1:
            raise ValueError(f"generator {args.kind} takes exactly one parameter")
        value = int(args.params[0])
        graph = generate(kind, n=value) if kind != "triangle_chain" else generate(kind, k=value)
    _emit("".join(_edge_list_text(graph)), args.out)
    return 0


def _edge_list_text(graph: Graph) -> list[str]:
    from .graph import format_edge_list

    return [format_edge_list(graph)]


def cmd_run(args: argparse.Namespace) -> int:
    loaded = _load_valid_graph(args.graph)
    graph = loaded.graph
    if args.algorithm == "brute" and graph.n > 9:
        raise InstanceTooLargeError("brute requires at most 9 nodes")
    trace: list[equilibrium.TraceRecord] | None = [] if args.trace else None
    if args.algorithm in ("alg4", "alg5") and trace is not None:
        fn = equilibrium.equilibrium_schedule_y if args.algorithm == "alg4" else equilibrium.equilibrium_schedule_n
        start = time.perf_counter()
        sched = fn(graph, trace=trace)
        elapsed = (time.perf_counter() - start) * 1000.0
        outcome = simulate(graph, sched)
        stable, _ = is_regret_proof(graph, sched)
        if args.algorithm == "alg4":
            required = (graph.n + 1) // 2
            met = stable and 2 * outcome.count_y >= graph.n
        else:
            required = equilibrium.n_count_requirement_for(graph)
            met = stable and outcome.count_n >= required
        fields = {
            "count_y": outcome.count_y,
            "count_n": outcome.count_n,
            "regret_proof": stable,
            "bound_required": required,
            "bound_met": met,
            "runtime_ms": elapsed,
        }
    else:
        sched, fields = _run_algorithm(args.algorithm, graph)
    if args.trace:
        Path(args.trace).write_text(equilibrium.trace_csv(trace or []))
    if args.out and sched is not None:
        write_schedule(args.out, sched, loaded.labels)
    print("n,m,algorithm,countY,countN,regret_proof,runtime_ms")
    print(
        f"{graph.n},{graph.m},{args.algorithm},{fields['count_y']},{fields['count_n']},"
        f"{str(fields['regret_proof']).lower()},{fields['runtime_ms']:.3f}"
    )
    if not fields["bound_met"]:
        print(f"guarantee failed: required {fields['bound_required']}", file=sys.stderr)
        return 1
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    loaded = _load_valid_graph(args.graph)
    sched = load_schedule(args.schedule, loaded.graph.n, loaded.label_to_id)
    outcome = simulate(loaded.graph, sched)
    stable, violators = is_regret_proof(loaded.graph, sched)
    _emit(outcome_csv(sched, outcome, loaded.labels), args.out)
    print(f"count_y={outcome.count_y} count_n={outcome.count_n}")
    print(f"regret_proof={str(stable).lower()}"
          + ("" if stable else f" violators={sorted(violators)}"))
    return 0


def cmd_reduce(args: argparse.Namespace) -> int:
    if args.kind == "mis":
        source = _load_valid_graph(args.input)
        instance = reductions.independent_set_reduction(source.graph)
    else:
        sat = reductions.load_cnf(args.input)
        instance = reductions.max_two_sat_reduction(sat)
    _emit("".join(_edge_list_text(instance.graph)), args.out)
    if args.cert:
        reductions.write_certificate(args.cert, instance)
    params = " ".join(f"{k}={v}" for k, v in sorted(instance.params.items()))
    print(f"n={instance.graph.n} m={instance.graph.m} {params}")
    return 0


def cmd_experiment(args: argparse.Namespace) -> int:
    spec_path = Path(args.spec)
    if not spec_path.exists():
        raise GraphFormatError(f"experiment file not found: {args.spec}")
    spec = json.loads(spec_path.read_text())
    algorithms = spec.get("algorithms", [])
    repetitions = int(spec.get("repetitions", 1))
    rows: list[dict] = []
    for entry in spec.get("graphs", []):
        if "file" in entry:
            path = entry["file"]
            if not Path(path).exists():
                raise GraphFormatError(f"graph file not found: {path}")
            graph = _load_valid_graph(path).graph
            name = path
            seed = ""
        else:
            kind = entry["generator"]
            params = {k: v for k, v in entry.items() if k not in ("generator", "seed")}
            seed = entry.get("seed", "")
            if kind in ("random", "random_connected"):
                graph = random_connected(int(entry["n"]), float(entry["p"]),
                                         int(entry.get("seed", _default_seed())))
                name = f"random(n={entry['n']},p={entry['p']})"
            else:
                graph = generate(kind.replace("-", "_"), **params)
                name = f"{kind}({','.join(f'{k}={v}' for k, v in sorted(params.items()))})"
        for alg in algorithms:
            for rep in range(repetitions):
                sched, fields = _run_algorithm(alg, graph)
                rows.append(
                    {
                        "graph": name,
                        "n": graph.n,
                        "m": graph.m,
                        "seed": seed,
                        "alg": alg,
                        "rep": rep,
                        **fields,
                    }
                )
    rows.sort(key=lambda r: (r["graph"], r["alg"], r["rep"]))
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(
        ["graph", "n", "m", "seed", "alg", "countY", "countN",
         "bound_required", "bound_met", "regret_proof", "runtime_ms"]
    )
    for r in rows:
        writer.writerow(
            [r["graph"], r["n"], r["m"], r["seed"], r["alg"], r["count_y"], r["count_n"],
             r["bound_required"], str(r["bound_met"]).lower(),
             str(r["regret_proof"]).lower(), f"{r['runtime_ms']:.3f}"]
        )
    out = args.out or spec.get("output")
    _emit(buf.getvalue(), out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rebel-sched",
        description="Schedules for marketing two competing products on rebel social networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a graph and write it as an edge list")
    p_gen.add_argument("kind", choices=["star", "complete", "wheel", "triangle-chain", "random"])
    p_gen.add_argument("params", nargs="+", help="n (or k; random takes n and p)")
    p_gen.add_argument("--seed", type=int, default=_default_seed())
    p_gen.add_argument("--out", help="output file (default stdout)")
    p_gen.set_defaults(fn=cmd_gen)

    p_run = sub.add_parser("run", help="run a scheduler and print a summary line")
    p_run.add_argument("algorithm", choices=ALGORITHMS)
    p_run.add_argument("graph")
    p_run.add_argument("--out", help="write the schedule here")
    p_run.add_argument("--trace", help="write per-iteration trace CSV here (alg4/alg5)")
    p_run.set_defaults(fn=cmd_run)

    p_check = sub.add_parser("check", help="simulate a schedule file against a graph")
    p_check.add_argument("graph")
    p_check.add_argument("schedule")
    p_check.add_argument("--out", help="decisions CSV (default stdout)")
    p_check.set_defaults(fn=cmd_check)

    p_reduce = sub.add_parser("reduce", help="build a hardness-reduction instance")
    p_reduce.add_argument("kind", choices=["mis", "sat"])
    p_reduce.add_argument("input")
    p_reduce.add_argument("--out", help="edge list of the reduced graph (default stdout)")
    p_reduce.add_argument("--cert", help="JSON-lines certificate of node roles")
    p_reduce.set_defaults(fn=cmd_reduce)

    p_exp = sub.add_parser("experiment", help="run a JSON experiment over graphs x algorithms")
    p_exp.add_argument("spec")
    p_exp.add_argument("--out", help="results CSV (default: spec's output field, else stdout)")
    p_exp.set_defaults(fn=cmd_experiment)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (GraphFormatError, InstanceTooLargeError, IterationLimitError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
