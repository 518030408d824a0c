"""Command-line front end: ``trycolor {gen,run,sweep,oneround,rulingset,verify}``.

Exit status: 0 when every verifier passes, 1 when a verifier fails, 2 on
usage or parameter errors. JSON goes to stdout with sorted keys, so repeated
runs with the same seed are byte-identical.
"""
from __future__ import annotations

import csv
import json
import random
import sys
from fractions import Fraction

import click

from . import graph as gc
from .engine import report
from .errors import BudgetExceeded, GraphFormatError, ParameterError, SizeCapExceeded, StructuralError
from .graph import Coloring, Graph
from .mother import MotherParams, derive_bounds, max_k, run_mother
from .oneround import k_max, reduce_one_round, table_from_reduction, tightness_check
from .palette import (
    DerivedResult, chop_to_deltaplus1, epsilon_coloring, greedy_to_target, linial_fixed_point,
    run_corollary,
)
from .ruling import ruling_from_coloring, ruling_set_theorem
from .verify import verify_bandwidth, verify_coloring, verify_ruling

ALGOS = ("mother", "linial", "kdelta", "defective1", "defectiveR", "outdegree", "epscolor", "chop", "greedy")
SWEEP_COLUMNS = ("k", "q", "iterations", "engine_rounds", "colors", "max_message_bits", "verifier_pass")


def emit(obj) -> None:
    click.echo(json.dumps(obj, sort_keys=True, indent=2))


def finish(ok: bool):
    sys.exit(0 if ok else 1)


def graph_options(f):
    f = click.option("--graph", "graph_path", type=click.Path(exists=True, dir_okay=False),
                     help="Graph file; otherwise one is generated.")(f)
    f = click.option("--kind", type=click.Choice(gc.GRAPH_KINDS), default="random_bounded_degree",
                     show_default=True)(f)
    f = click.option("--n", type=int, default=200, show_default=True)(f)
    f = click.option("--delta", type=int, default=8, show_default=True)(f)
    f = click.option("--seed", type=int, default=0, show_default=True)(f)
    f = click.option("--input", "input_mode", type=click.Choice(["identity", "greedy"]),
                     default="identity", show_default=True,
                     help="Input coloring: node IDs (m = n) or sequential greedy.")(f)
    f = click.option("--coloring", "coloring_path", type=click.Path(exists=True, dir_okay=False),
                     help="Input coloring file; overrides --input.")(f)
    return f


def load_instance(graph_path, kind, n, delta, seed, input_mode, coloring_path) -> tuple[Graph, Coloring]:
    g = gc.load(graph_path) if graph_path else gc.generate(kind, n, delta, seed)
    if coloring_path:
        phi = gc.load_coloring(coloring_path)
    else:
        phi = gc.greedy_input_coloring(g, identity=input_mode == "identity")
    return g, phi


def derived_report(res: DerivedResult) -> dict:
    return {
        "palette": res.coloring.palette_size,
        "colors_used": res.colors_used,
        "rounds_used": res.rounds_used,
        "stage_log": [
            {"stage": s.name, "palette_before": s.palette_before, "palette_after": s.palette_after,
             "rounds": s.rounds}
            for s in res.stage_log
        ],
        "checks": {k: v.as_dict() for k, v in sorted(res.checks.items())},
        "engine": report(res.trace, res.audit),
        "info": res.info,
    }


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"not a rational number: {text!r}") from None


class Main(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except (ParameterError, StructuralError, GraphFormatError, SizeCapExceeded) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)
        except BudgetExceeded as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)


@click.group(cls=Main)
def main():
    """Distributed coloring via polynomial trial sequences: simulate, sweep, verify."""


@main.command()
@click.option("--kind", type=click.Choice(gc.GRAPH_KINDS), required=True)
@click.option("--n", type=int, required=True)
@click.option("--delta", type=int, required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), help="Write the graph here instead of stdout.")
@click.option("--coloring-out", type=click.Path(dir_okay=False), help="Also write an input coloring.")
@click.option("--input", "input_mode", type=click.Choice(["identity", "greedy"]), default="greedy",
              show_default=True)
def gen(kind, n, delta, seed, out, coloring_out, input_mode):
    """Generate a graph instance in the edge-list format."""
    g = gc.generate(kind, n, delta, seed)
    if out:
        gc.save(g, out)
    else:
        click.echo(gc.dumps_graph(g), nl=False)
    if coloring_out:
        gc.save_coloring(gc.greedy_input_coloring(g, identity=input_mode == "identity"), coloring_out)


@main.command()
@click.option("--algo", type=click.Choice(ALGOS), required=True)
@graph_options
@click.option("--d", type=int, default=0, show_default=True, help="Defect parameter.")
@click.option("--k", type=int, help="Batch size (default: a single batch where applicable).")
@click.option("--beta", type=int, help="Outdegree bound for --algo outdegree.")
@click.option("--eps", default="1/2", show_default=True, help="Rational epsilon for epscolor/chop.")
@click.option("--target", type=int, help="Target palette for --algo greedy (default delta+1).")
@click.option("--format", "fmt", type=click.Choice(["json"]), default="json", show_default=True)
def run(algo, graph_path, kind, n, delta, seed, input_mode, coloring_path, d, k, beta, eps, target, fmt):
    """Run one algorithm, verify its guarantee and print a JSON report."""
    g, phi = load_instance(graph_path, kind, n, delta, seed, input_mode, coloring_path)
    head = {"algo": algo, "n": g.n, "delta": g.delta, "m": phi.palette_size, "seed": seed}
    if algo == "mother":
        kk = k if k is not None else max_k(phi.palette_size, g.delta, d)
        p = MotherParams(phi.palette_size, g.delta, d, kk)
        out = run_mother(g, phi, p)
        b = derive_bounds(p)
        checks = {
            "defect": verify_coloring(g, out.psi, "defect", d=d),
            "outdegree": verify_coloring(g, out.psi, "outdegree", beta=d, orientation=out.orientation),
            "partition": verify_coloring(g, out.psi, "partition", d=d, partition=out.partition),
            "bandwidth": verify_bandwidth(out.audit),
        }
        body = {
            "d": d, "k": kk, "f": b.f, "q": b.q, "X": str(b.X),
            "iterations": out.iterations, "iterations_active": out.iterations_active,
            "palette": out.psi.palette_size, "colors_used": out.psi.distinct(),
            "checks": {k_: v.as_dict() for k_, v in checks.items()},
            "engine": report(out.trace, out.audit),
        }
        ok = all(c.passed for c in checks.values())
    else:
        if algo == "linial":
            res = linial_fixed_point(g, phi)
        elif algo == "kdelta":
            res = run_corollary(g, phi, 2, k=k if k is not None else 1)
        elif algo == "defective1":
            res = run_corollary(g, phi, 5, d=d)
        elif algo == "defectiveR":
            res = run_corollary(g, phi, 6, d=d)
        elif algo == "outdegree":
            res = run_corollary(g, phi, 4, d=beta if beta is not None else d)
        elif algo == "epscolor":
            res = epsilon_coloring(g, phi, parse_fraction(eps))
        elif algo == "chop":
            res = chop_to_deltaplus1(g, phi, parse_fraction(eps))
        else:
            res = greedy_to_target(g, phi, target if target is not None else g.delta + 1)
        res.checks.setdefault("bandwidth", verify_bandwidth(res.audit))
        body = derived_report(res)
        ok = res.passed
    emit({**head, **body, "pass": ok})
    finish(ok)


def parse_ks(text: str) -> list[int]:
    try:
        ks = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {text!r}") from None
    if not ks:
        raise click.BadParameter("empty k list")
    return ks


@main.command()
@click.option("--algo", type=click.Choice(["kdelta", "mother"]), default="kdelta", show_default=True)
@graph_options
@click.option("--k", "ks", default="1,2,4,8", show_default=True,
              help="Comma-separated batch sizes; 'X' is not accepted, use --include-x.")
@click.option("--include-x", is_flag=True, help="Append k = floor(X) to the sweep.")
@click.option("--d", type=int, default=0, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
def sweep(algo, graph_path, kind, n, delta, seed, input_mode, coloring_path, ks, include_x, d, fmt):
    """Sweep the batch size k.

    CSV columns, in order: k, q, iterations, engine_rounds, colors,
    max_message_bits, verifier_pass.
    """
    g, phi = load_instance(graph_path, kind, n, delta, seed, input_mode, coloring_path)
    dd = 0 if algo == "kdelta" else d
    klist = parse_ks(ks)
    if include_x:
        klist.append(max_k(phi.palette_size, g.delta, dd))
    rows = []
    for k in klist:
        if algo == "kdelta":
            res = run_corollary(g, phi, 2, k=k)
            out = res.mother
            ok = res.passed
        else:
            out = run_mother(g, phi, MotherParams(phi.palette_size, g.delta, dd, k))
            ok = all(r.passed for r in (
                verify_coloring(g, out.psi, "defect", d=dd),
                verify_coloring(g, out.psi, "outdegree", beta=dd, orientation=out.orientation),
                verify_coloring(g, out.psi, "partition", d=dd, partition=out.partition),
                verify_bandwidth(out.audit),
            ))
        rows.append({
            "k": k, "q": out.q, "iterations": out.iterations, "engine_rounds": out.trace.rounds_used,
            "colors": out.psi.distinct(), "max_message_bits": out.trace.max_message_bits,
            "verifier_pass": int(ok),
        })
    if fmt == "csv":
        w = csv.DictWriter(sys.stdout, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    else:
        emit(rows)
    finish(all(r["verifier_pass"] for r in rows))


@main.group()
def oneround():
    """One-round color reduction and its exact tightness oracle."""


def random_proper_coloring(g: Graph, m: int, seed: int) -> Coloring:
    """A proper coloring using colors from [0, m), random but seeded; needs m > delta."""
    rng = random.Random(seed)
    cols = [-1] * g.n
    for v in range(g.n):
        used = {cols[u] for u in g.adjacency[v]}
        free = [c for c in range(m) if c not in used]
        cols[v] = rng.choice(free)
    return Coloring(m, tuple(cols))


@oneround.command("reduce")
@click.option("--delta", type=int, required=True)
@click.option("--m", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--n", type=int, default=60, show_default=True)
@click.option("--graphs", type=int, default=10, show_default=True, help="Random instances to run.")
@click.option("--seed", type=int, default=0, show_default=True)
def oneround_reduce(delta, m, k, n, graphs, seed):
    """Run the one-round reduction on seeded random graphs and on its config-graph table."""
    runs = []
    ok = True
    for i in range(graphs):
        g = gc.generate("random_bounded_degree", n, delta, seed + i)
        phi = random_proper_coloring(g, m, seed + i)
        res = reduce_one_round(g, phi, k)
        rep = verify_coloring(g, res.coloring, "proper")
        good = rep.passed and res.trace.rounds_used == 1 and res.coloring.palette_size == m - k
        ok &= good
        runs.append({"seed": seed + i, "rounds": res.trace.rounds_used,
                     "palette": res.coloring.palette_size, "proper": rep.passed})
    body = {"delta": delta, "m": m, "k": k, "out_palette": m - k, "runs": runs}
    try:
        table = table_from_reduction(delta, m, k)
    except SizeCapExceeded:
        body["table"] = None
    else:
        from .oneround import build_config_graph

        cg = build_config_graph(delta, m)
        body["table"] = {"config_vertices": cg.n, "proper": table.is_proper(cg)}
        ok &= body["table"]["proper"]
    body["pass"] = ok
    emit(body)
    finish(ok)


@oneround.command("tight")
@click.option("--delta", type=int, required=True)
@click.option("--m", type=int, required=True)
@click.option("--method", type=click.Choice(["mask", "dsatur"]), default="mask", show_default=True)
@click.option("--budget", type=int, default=10**10, show_default=True, help="Node-expansion budget.")
@click.option("--timings", is_flag=True, help="Include wall-clock seconds (breaks byte-identity).")
def oneround_tight(delta, m, method, budget, timings):
    """Check that m - k_max colors are reachable in one round and m - k_max - 1 are not."""
    rep = tightness_check(delta, m, method=method, budget=budget)
    emit(rep.as_dict(timings=timings))
    finish(rep.passed)


@main.command()
@click.option("--r", "r", type=int, required=True, help="Domination radius.")
@click.option("--B", "B", type=int, help="Base; the radius becomes ceil(log_B C).")
@graph_options
def rulingset(r, B, graph_path, kind, n, delta, seed, input_mode, coloring_path):
    """Compute and verify a (2, r)-ruling set."""
    g, phi = load_instance(graph_path, kind, n, delta, seed, input_mode, coloring_path)
    rs = ruling_set_theorem(g, phi, r)
    if B is not None:
        from .ruling import deltaplus1_coloring

        col = deltaplus1_coloring(g, phi)
        rs = ruling_from_coloring(g, col.coloring, B)
    rep = verify_ruling(g, rs.members, rs.r)
    emit({"n": g.n, "delta": g.delta, "seed": seed, **rs.as_dict(), "check": rep.as_dict(),
          "pass": rep.passed})
    finish(rep.passed)


@main.command()
@click.option("--graph", "graph_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--coloring", "coloring_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--mode", type=click.Choice(["proper", "defect"]), default="proper", show_default=True)
@click.option("--d", type=int, default=0, show_default=True)
@click.option("--members", "members_path", type=click.Path(exists=True, dir_okay=False),
              help="Ruling-set members, one node per line.")
@click.option("--r", "r", type=int, default=1, show_default=True)
def verify(graph_path, coloring_path, mode, d, members_path, r):
    """Verify a coloring file or a ruling set against a graph file."""
    g = gc.load(graph_path)
    if members_path:
        with open(members_path) as fh:
            members = [int(x) for x in fh.read().split()]
        rep = verify_ruling(g, members, r)
    elif coloring_path:
        rep = verify_coloring(g, gc.load_coloring(coloring_path), mode, d=d)
    else:
        raise click.UsageError("give --coloring or --members")
    emit(rep.as_dict())
    finish(rep.passed)


def cli_main(argv=None) -> int:
    """Entry point returning the exit status instead of exiting."""
    try:
        main.main(args=argv, prog_name="trycolor", standalone_mode=True)
    except SystemExit as exc:
        return int(exc.code or 0)
    return 0


if __name__ == "__main__":
    main()
