"""Command line interface.

Every subcommand accepts the common flags ``--seed``, ``--out``, ``--trace``
and ``--threads``; their defaults can be set with the environment variables
``BOWTIE_RAMSEY_SEED``, ``BOWTIE_RAMSEY_OUT``, ``BOWTIE_RAMSEY_TRACE`` (any
of 1/true/yes) and ``BOWTIE_RAMSEY_THREADS``.  Explicit flags win.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .bowtie import BowtieGraph, bowtie_summary, build_bowtie_graph, check_bowtie_invariants, classify_b_triangles
from .colouring import (
    STRATEGIES,
    Colouring,
    colour,
    format_colour_file,
    read_colour_file,
    select_class,
    stats_report,
)
from .components import components, select_anchor
from .errors import BowtieRamseyError, BudgetExceeded, InsufficientAnchors, NoLongPath, Stuck
from .experiment import METHODS, ExperimentSpec, run_experiment
from .extraction import pathwalk_extract, run_induction, target_span
from .generators import GeneratorSpec, generate, random_partial, validate_complete
from .hypergraph import LinearRGraph, format_lhg, read_lhg
from .oracle import DEFAULT_BUDGET, MODES, OracleQuery, oracle_search, verify_configuration

ENV_PREFIX = "BOWTIE_RAMSEY_"


def _env(name: str, default: Any = None) -> Any:
    return os.environ.get(ENV_PREFIX + name, default)


def _env_bool(name: str) -> bool:
    return str(_env(name, "")).lower() in ("1", "true", "yes")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=int(_env("SEED", 0)), help="root random seed")
    p.add_argument("--out", default=_env("OUT"), help="output file (directory for 'experiment')")
    p.add_argument("--trace", action="store_true", default=_env_bool("TRACE"), help="include state traces")
    p.add_argument("--threads", type=int, default=int(_env("THREADS", 1)), help="worker processes")
    return p


def _emit(obj: Any, out: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_colouring(g: LinearRGraph, path: str | None) -> Colouring:
    if path is None:
        return Colouring(1, (0,) * g.m)
    return read_colour_file(path, g.m)


def _class_graph(g: LinearRGraph, col: Colouring, which: int | None) -> tuple[int, LinearRGraph]:
    c_index = select_class(g, col).colour if which is None else which
    if not 0 <= c_index < col.c:
        raise ValueError(f"colour {c_index} not in [0, {col.c})")
    return c_index, col.class_graph(g, c_index)


# --- subcommands -------------------------------------------------------------------


def cmd_gen(args: argparse.Namespace) -> int:
    spec = GeneratorSpec(args.kind, n=args.n, q=args.q, r=args.r, edges=args.edges, seed=args.seed)
    stalled = False
    if args.kind == "random":
        if None in (args.r, args.n, args.edges):
            raise ValueError("random generator needs --r, --n and --edges")
        g, stalled = random_partial(args.r, args.n, args.edges, args.seed)
    else:
        g = generate(spec)
    text = format_lhg(g)
    if args.out:
        Path(args.out).write_text(text)
        rep = validate_complete(g)
        info = {"r": g.r, "n": g.n, "m": g.m, "complete": rep.complete, "stalled": stalled, "out": args.out}
        _emit(info, None)
    else:
        sys.stdout.write(text)
    if stalled:
        print(f"warning: random generation stalled at {g.m} edges", file=sys.stderr)
    return 0


def cmd_colour(args: argparse.Namespace) -> int:
    g = read_lhg(args.input)
    col = colour(g, args.c, args.strategy, args.seed, path=args.colour_file)
    text = format_colour_file(col)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    g = read_lhg(args.input)
    col = read_colour_file(args.colour_file, g.m, args.c) if args.colour_file else Colouring(1, (0,) * g.m)
    _emit(stats_report(g, col), args.out)
    return 0


def cmd_bowtie(args: argparse.Namespace) -> int:
    g = read_lhg(args.input)
    col = _load_colouring(g, args.colour_file)
    c_index, gc = _class_graph(g, col, args.colour)
    bg = build_bowtie_graph(gc)
    prop = check_bowtie_invariants(bg, raise_on_failure=False)
    out = bowtie_summary(bg, prop)
    out["colour"] = c_index
    out["b_triangles"] = classify_b_triangles(bg).to_dict()
    out["graph"] = bg.to_dict()
    _emit(out, args.out)
    return 0 if prop.passed else 2


def _load_bowtie(path: str, r: int | None) -> BowtieGraph:
    data = json.loads(Path(path).read_text())
    graph = data.get("graph", data)
    if r is not None:
        graph = {**graph, "r": r}
    return BowtieGraph.from_dict(graph)


def cmd_components(args: argparse.Namespace) -> int:
    bg = _load_bowtie(args.input, args.r)
    rep = components(bg)
    _emit(rep.to_dict(k=args.k), args.out)
    return 0


def cmd_anchor(args: argparse.Namespace) -> int:
    bg = _load_bowtie(args.input, args.r)
    rep = components(bg)
    try:
        anchor = select_anchor(bg, rep, args.required, args.size_cap)
    except InsufficientAnchors as exc:
        _emit({"status": "insufficient", "found": exc.found, "required": exc.required}, args.out)
        return 1
    _emit({"status": "ok", **anchor.to_dict()}, args.out)
    return 0


def cmd_extract(args: argparse.Namespace) -> int:
    g = read_lhg(args.input)
    col = _load_colouring(g, args.colour_file)
    c_index, gc = _class_graph(g, col, args.colour)
    bg = build_bowtie_graph(gc)
    v = target_span(g.r, args.k)
    out: dict[str, Any] = {"method": args.method, "k": args.k, "v": v, "colour": c_index}
    try:
        if args.method == "pathwalk":
            pw = pathwalk_extract(bg, args.k, seed=args.seed)
            cfg = pw.config
            if args.trace:
                out["trace"] = [s.to_dict() for s in pw.steps]
        else:
            rep = components(bg)
            anchor = select_anchor(bg, rep, args.required)
            out["anchor"] = anchor.to_dict(gc.parent_ids)
            res = run_induction(gc, bg, rep, anchor, args.k)
            cfg = res.config
            out["cases"] = res.counts
            if args.trace:
                out["trace"] = [s.to_dict(gc) for s in res.states]
    except (Stuck, NoLongPath, InsufficientAnchors) as exc:
        out.update(status="stuck", error=type(exc).__name__, message=str(exc))
        if isinstance(exc, Stuck) and args.trace:
            out["trace"] = [s.to_dict(gc) for s in getattr(exc, "trace", [])]
        _emit(out, args.out)
        return 1
    edge_ids = gc.to_parent(cfg.edge_ids)
    ver = verify_configuration(g, col, edge_ids, v, args.k)
    out.update(status="success", edge_ids=edge_ids, span=cfg.span, verification=ver.to_dict())
    _emit(out, args.out)
    return 0 if ver.passed else 2


def cmd_oracle(args: argparse.Namespace) -> int:
    g = read_lhg(args.input)
    col = read_colour_file(args.colour_file, g.m) if args.colour_file else None
    q = OracleQuery(args.v, args.k, args.colour, args.mode, args.budget)
    try:
        res = oracle_search(g, col, q, workers=args.threads)
    except BudgetExceeded as exc:
        _emit({"status": "budget_exceeded", "examined": exc.examined}, args.out)
        return 1
    _emit(res.to_dict(args.mode), args.out)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    g = read_lhg(args.input)
    col = read_colour_file(args.colour_file, g.m) if args.colour_file else None
    if args.config:
        cfg = json.loads(Path(args.config).read_text())
        edge_ids, k = cfg["edge_ids"], cfg.get("k", len(cfg["edge_ids"]))
        v = cfg.get("v", target_span(g.r, k))
    else:
        if args.edges is None:
            raise ValueError("verify needs --config or --edges")
        edge_ids = [int(x) for x in args.edges.split(",") if x.strip()]
        k = args.k if args.k is not None else len(edge_ids)
        v = args.v if args.v is not None else target_span(g.r, k)
    if args.k is not None:
        k = args.k
    if args.v is not None:
        v = args.v
    rep = verify_configuration(g, col, edge_ids, v, k)
    _emit(rep.to_dict(), args.out)
    return 0 if rep.passed else 2


def cmd_experiment(args: argparse.Namespace) -> int:
    if args.spec:
        spec = ExperimentSpec.from_dict(json.loads(Path(args.spec).read_text()))
    else:
        gen = GeneratorSpec(args.kind, n=args.n, q=args.q, r=args.r, edges=args.edges)
        spec = ExperimentSpec(
            generator=gen,
            c=args.c,
            strategy=args.strategy,
            k=args.k,
            method=args.method,
            repetitions=args.reps,
            seed=args.seed,
            required=args.required,
            trace=args.trace,
            colour_file=args.colour_file,
        )
    report = run_experiment(spec, threads=args.threads)
    if args.out:
        path = report.write(args.out)
        print(json.dumps({"report": str(path), **report.summary}, sort_keys=True))
    else:
        sys.stdout.write(report.to_jsonl())
    return report.exit_code


def _add_generator_args(p: argparse.ArgumentParser, required: bool) -> None:
    p.add_argument("--kind", choices=["fano", "bose", "skolem", "affine", "projective", "random"], required=required)
    p.add_argument("--n", type=int, help="order (bose, skolem, random)")
    p.add_argument("--q", type=int, help="prime order (affine, projective)")
    p.add_argument("--r", type=int, help="uniformity (random)")
    p.add_argument("--edges", type=int, help="target edge count (random)")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="bowtie-ramsey",
        description="Coloured linear r-graphs, bowtie graphs and ((r-2)k+3, k)-configurations.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate a linear r-graph (.lhg)")
    _add_generator_args(p, required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("colour", parents=[common], help="colour hyperedges")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--strategy", choices=STRATEGIES, default="uniform_random")
    p.add_argument("--colour-file", help="input colour file for strategy by_file")
    p.set_defaults(func=cmd_colour)

    p = sub.add_parser("stats", parents=[common], help="per-colour triangle/cherry statistics")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--colour-file")
    p.add_argument("--c", type=int, help="number of colours (default: max index + 1)")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("bowtie", parents=[common], help="build and check the bowtie graph of a colour class")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--colour-file")
    p.add_argument("--colour", type=int, help="colour class (default: selected class)")
    p.set_defaults(func=cmd_bowtie)

    p = sub.add_parser("components", parents=[common], help="component report from bowtie.json")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_components)

    p = sub.add_parser("anchor", parents=[common], help="select an anchor from bowtie.json")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--required", type=int, default=1)
    p.add_argument("--size-cap", type=int)
    p.set_defaults(func=cmd_anchor)

    p = sub.add_parser("extract", parents=[common], help="extract a monochromatic configuration")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--colour-file")
    p.add_argument("--colour", type=int)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", choices=METHODS, default="pathwalk")
    p.add_argument("--required", type=int, default=1, help="anchor partners required (induction)")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("oracle", parents=[common], help="brute-force (v, k)-configuration search")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--colour-file")
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", choices=MODES, default="count")
    p.add_argument("--colour", type=int)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", parents=[common], help="verify a configuration")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--colour-file")
    p.add_argument("--config", help="config.json written by 'extract'")
    p.add_argument("--edges", help="comma-separated edge ids")
    p.add_argument("--v", type=int)
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("experiment", parents=[common], help="run the full pipeline")
    p.add_argument("--spec", help="experiment spec as JSON")
    _add_generator_args(p, required=False)
    p.add_argument("--c", type=int, default=1)
    p.add_argument("--strategy", choices=STRATEGIES, default="uniform_random")
    p.add_argument("--colour-file")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--method", choices=METHODS, default="pathwalk")
    p.add_argument("--reps", type=int, default=1)
    p.add_argument("--required", type=int, default=1)
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "experiment" and not args.spec and not args.kind:
        parser.error("experiment needs --spec or --kind")
    try:
        return args.func(args)
    except (BowtieRamseyError, ValueError, OSError) as exc:
        print(f"error [{args.command}]: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
