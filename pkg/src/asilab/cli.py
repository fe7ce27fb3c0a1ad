"""Command line interface: ``asilab gen|witness|layers|run|verify|oracle|replay``.

Exit codes: 0 success, 1 hypothesis violated or verification failed,
2 fuel or time budget exhausted, 3 malformed input.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import io
from .exceptions import (
    AlgorithmFailure,
    BudgetExceeded,
    FuelExhausted,
    HypothesisViolation,
    InvalidWitness,
    InvariantViolation,
    MalformedInput,
    ScaleTooSmall,
)
from .graph import DEFAULT_FUEL
from .search import DEFAULT_TIME_BUDGET

EXIT_OK, EXIT_HYPOTHESIS, EXIT_BUDGET, EXIT_MALFORMED = 0, 1, 2, 3


class _Failed(Exception):
    """A completed command whose verdict is negative (exit 1, document still emitted)."""

    def __init__(self, doc):
        self.doc = doc


# -- running a manifest -----------------------------------------------------------


def _bound(name: str, k: int, s: int, p: int) -> int:
    return {
        "blockwise": k * (s + 1),
        "overlap": k * (s + 1) - s,
        "perfect": k + s,
        "edge": k + p * s,
    }[name]


def execute(m: io.RunManifest) -> dict:
    """Run a manifest and return its result document."""
    from .oracles import clique_number, verify
    from .runtime import get_algorithm, run_asi
    from .witness import build_witness_parity

    G = io.resolve_graph(m.graph, m.seed, m.fuel)
    budget = m.time_budget if m.time_budget is not None else DEFAULT_TIME_BUDGET
    params = dict(m.params)
    if m.algorithm == "match-acyclic":
        from .matching import matching_stream

        upto = int(params.get("upto", 100))
        edges = matching_stream(G, upto, m.fuel)
        rep = verify("matching", G, edges, cover=range(upto + 1))
        doc = io.matching_doc(edges, {"upto": upto, "verified": rep.ok})
        if not rep.ok:
            doc["defects"] = rep.defects
        return doc

    if m.algorithm in ("perfect", "edge") and "k" not in params:
        if not G.is_finite:
            raise MalformedInput(f"{m.algorithm} on a lazy graph needs an explicit k")
    if m.algorithm == "edge":
        params.setdefault("p", G.max_multiplicity if G.is_finite else 1)
        if "k" not in params:
            params["k"] = G.max_degree + params["p"]
    if m.algorithm == "perfect":
        params.setdefault("k", clique_number(G).value)
    params.setdefault("k", 2)
    alg = get_algorithm(m.algorithm, time_budget=budget, **params)
    if m.witness is not None:
        W = io.parse_witness(m.witness, G)
    else:
        W = build_witness_parity(G, m.scale or alg.min_scale(), m.s)
    if W.scale < alg.min_scale():
        raise ScaleTooSmall(f"{m.algorithm} needs scale >= {alg.min_scale()}, got {W.scale}")

    if G.is_finite and m.stages is None and m.target is None:
        from .validation import check_witness

        check_witness(G, W)
        result = alg.solve(G, W)
        mode = "global"
    else:
        if not G.is_finite and m.target is None:
            raise MalformedInput("runs on lazy graphs need a target (--target or --upto)")
        result = run_asi(alg, G, W, m.stages, m.target, fuel=m.fuel)
        mode = "local"
    kind = getattr(alg, "output", "vertex")
    extra = {
        "algorithm": m.algorithm,
        "bound": _bound(m.algorithm, params["k"], W.s, params.get("p", 1)),
        "mode": mode,
    }
    if G.is_finite and mode == "global":
        rep = verify(kind, G, result)
        extra["verified"] = rep.ok
        if not rep.ok:
            extra["defects"] = rep.defects
    return io.coloring_doc(result, kind, extra)


# -- argument parsing ----------------------------------------------------------------


def _graph_source(args):
    if getattr(args, "family", None):
        fam = args.family
        return fam if fam.startswith("family:") else f"family:{fam}"
    if getattr(args, "graph", None):
        return args.graph
    raise MalformedInput("give --graph or --family")


def _emit(doc, out: str | None):
    text = io.dumps(doc) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _target(args):
    if getattr(args, "target", None):
        return [int(x) for x in args.target.split(",") if x]
    if getattr(args, "upto", None) is not None:
        return list(range(args.upto + 1))
    return None


def _parse_params(pairs):
    out = {}
    for p in pairs or ():
        if "=" not in p:
            raise MalformedInput(f"parameter {p!r} must look like key=value")
        k, v = p.split("=", 1)
        try:
            out[k] = int(v)
        except ValueError:
            try:
                out[k] = float(v)
            except ValueError:
                out[k] = v
    return out


def cmd_gen(args):
    from .generators import generate

    params = _parse_params(args.param)
    if args.n is not None:
        params["n"] = args.n
    G = generate(args.kind, params, args.seed)
    _emit(G.to_dict(), args.out)


def cmd_witness(args):
    from .witness import build_witness_parity, validate_witness

    G = io.parse_graph(_graph_source(args), args.fuel)
    W = build_witness_parity(G, args.scale, args.s)
    if G.is_finite:
        validate_witness(G, W)
        _emit(W.to_dict(), args.out)
        return
    upto = args.upto if args.upto is not None else 99
    probe = range(upto + 1)
    rep = validate_witness(G, W, probe=probe, fuel=args.fuel)
    doc = W.to_dict()
    doc["labels"] = {str(v): W.part_of(v) for v in probe}
    doc["components"] = {str(v): sorted(rep.components[v].vertices) for v in probe}
    _emit(doc, args.out)


def cmd_layers(args):
    from .subordinate import layers
    from .witness import build_witness_parity

    G = io.parse_graph(_graph_source(args), args.fuel)
    W = io.parse_witness(args.witness, G) if args.witness else build_witness_parity(G, args.scale, args.s)
    region = _target(args)
    fam = layers(G, W, args.k, args.l1, args.l2, verify=G.is_finite, region=region)
    doc = fam.to_dict()
    if fam.checks:
        doc["checks"] = fam.checks
    _emit(doc, args.out)


def _manifest_from_args(args) -> io.RunManifest:
    params = _parse_params(args.param)
    for name in ("k", "p", "separation"):
        v = getattr(args, name, None)
        if v is not None:
            params[name] = v
    target = _target(args)
    if args.algorithm == "match-acyclic":
        params["upto"] = args.upto if args.upto is not None else 100
        target = None
    witness = None
    if args.witness:
        witness = io._load(args.witness)
    return io.RunManifest(
        graph=_graph_source(args),
        algorithm=args.algorithm,
        params=params,
        witness=witness,
        scale=args.scale,
        s=args.s,
        stages=args.stages,
        target=target,
        seed=args.seed,
        fuel=args.fuel,
        time_budget=args.time_budget,
        out=args.out,
    )


def _finish_run(m: io.RunManifest, args):
    doc = execute(m)
    fmt = getattr(args, "format", "json")
    if fmt != "json":
        G = io.resolve_graph(m.graph, m.seed, m.fuel)
        if not G.is_finite:
            raise MalformedInput("graph dumps need a finite graph")
        colors = io.parse_solution(doc, "edge" if isinstance(doc["colors"], list) else "vertex")
        text = io.to_gml(G, colors) if fmt == "gml" else io.to_dot(G, colors)
        if m.out:
            Path(m.out).write_text(text)
        else:
            sys.stdout.write(text)
    else:
        _emit(doc, m.out)
    summary = f"count={doc['count']}"
    if "bound" in doc:
        summary += f" bound={doc['bound']}"
    if "verified" in doc:
        summary += f" verified={'yes' if doc['verified'] else 'no'}"
    print(summary, file=sys.stderr)
    if doc.get("verified") is False:
        raise _Failed(None)


def cmd_run(args):
    m = _manifest_from_args(args)
    if args.manifest_out:
        Path(args.manifest_out).write_text(io.dumps(m.to_dict()) + "\n")
    _finish_run(m, args)


def cmd_replay(args):
    m = io.RunManifest.load(args.manifest)
    if args.out:
        m.out = args.out
    _finish_run(m, args)


def cmd_verify(args):
    from .oracles import verify

    G = io.parse_graph(_graph_source(args), args.fuel)
    sol = io.parse_solution(args.solution, args.kind)
    cover = _target(args)
    rep = verify(args.kind, G, sol, cover)
    _emit(rep.to_dict(), args.out)
    if not rep.ok:
        raise _Failed(rep.to_dict())


def cmd_oracle(args):
    from . import oracles

    G = io.parse_graph(_graph_source(args), args.fuel)
    if not G.is_finite:
        raise MalformedInput("oracles need a finite graph")
    fn = {
        "chi": oracles.chromatic_number,
        "chi-prime": oracles.chromatic_index,
        "omega": oracles.clique_number,
        "perfect": oracles.is_perfect,
        "max-degree": oracles.max_degree,
    }[args.quantity]
    _emit(fn(G).to_dict(), args.out)


def _add_graph_args(p, fuel=True):
    p.add_argument("--graph", help="graph JSON file, or a family: URI")
    p.add_argument("--family", help="lazy family, e.g. tree?d=3")
    if fuel:
        p.add_argument("--fuel", type=int, default=int(os.environ.get("ASILAB_FUEL", DEFAULT_FUEL)))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="asilab", description="Witness-based local algorithms on finite and lazy graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a seeded instance")
    p.add_argument("kind")
    p.add_argument("--n", type=int)
    p.add_argument("--param", action="append", metavar="KEY=VALUE")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("witness", help="build and check the parity witness")
    _add_graph_args(p)
    p.add_argument("--scale", type=int, required=True)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--upto", type=int, help="probe vertices 0..UPTO on lazy graphs")
    p.add_argument("--out")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("layers", help="distance layers around witness parts")
    _add_graph_args(p)
    p.add_argument("--witness")
    p.add_argument("--scale", type=int)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l1", type=int, default=1)
    p.add_argument("--l2", type=int, default=4)
    p.add_argument("--upto", type=int)
    p.add_argument("--target")
    p.add_argument("--out")
    p.set_defaults(func=cmd_layers)

    p = sub.add_parser("run", help="run an algorithm")
    p.add_argument("algorithm", choices=["blockwise", "overlap", "perfect", "edge", "match-acyclic"])
    _add_graph_args(p)
    p.add_argument("--witness")
    p.add_argument("--scale", type=int)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--k", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--separation", type=int)
    p.add_argument("--stages", type=int, help="evaluate component by component with this many stages")
    p.add_argument("--target", help="comma-separated vertices whose components to color")
    p.add_argument("--upto", type=int, help="target vertices 0..UPTO")
    p.add_argument("--param", action="append", metavar="KEY=VALUE")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--time-budget", type=float, default=float(os.environ.get("ASILAB_TIME_BUDGET", DEFAULT_TIME_BUDGET)))
    p.add_argument("--format", choices=["json", "gml", "dot"], default="json")
    p.add_argument("--manifest-out")
    p.add_argument("--out")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("verify", help="check a solution document")
    p.add_argument("kind", choices=["vertex", "edge", "matching"])
    _add_graph_args(p)
    p.add_argument("--solution", required=True)
    p.add_argument("--upto", type=int, help="require vertices 0..UPTO covered (matchings)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exact small-graph quantities")
    p.add_argument("quantity", choices=["chi", "chi-prime", "omega", "perfect", "max-degree"])
    _add_graph_args(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("replay", help="re-run a manifest")
    p.add_argument("manifest")
    p.add_argument("--format", choices=["json", "gml", "dot"], default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_replay)
    return ap


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, AlgorithmFailure) and exc.__cause__ is not None:
        return _exit_code(exc.__cause__)
    if isinstance(exc, (FuelExhausted, BudgetExceeded)):
        return EXIT_BUDGET
    if isinstance(exc, (HypothesisViolation, InvariantViolation, AlgorithmFailure)):
        return EXIT_HYPOTHESIS
    if isinstance(exc, (MalformedInput, InvalidWitness, ScaleTooSmall, ValueError, KeyError, TypeError)):
        return EXIT_MALFORMED
    raise exc


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_MALFORMED if exc.code else EXIT_OK
    try:
        args.func(args)
    except _Failed:
        return EXIT_HYPOTHESIS
    except Exception as exc:  # mapped to exit codes below
        code = _exit_code(exc)
        print(f"asilab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return code
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
