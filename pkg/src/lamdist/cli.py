"""Command-line front end.

Pure terms may mention the combinators ``I``, ``K`` and ``S`` (disable with
``--no-prelude``) and further definitions given with ``--let NAME=TERM``.
Derivations are comma-separated redex positions such as ``root,0.1``; steps of
the distributive calculus may also be written by label, as in ``#3``.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import dist_core as dc
from . import lambda_core as lc
from .emit import show_term, graph_to_data, graph_to_dot, grothendieck_to_data, space_to_dot, to_json
from .errors import LamDistError, ParseError
from .factor import (build_grothendieck, check_factorization_iso, coarse_steps,
                     factorize, is_garbage, is_garbage_free, sieve)
from .parsing import parse_dist, parse_lambda
from .refine import DEFAULT_FUEL, check_refines, synthesize_refinement
from .simulate import sim_residual_derivation
from .spaces import (DEFAULT_LENGTH_CAP, build_space, enumerate_graph_dist,
                     enumerate_graph_lambda)
from .verify import verify_instance

PRELUDE = {
    "I": r"\x. x",
    "K": r"\x y. x",
    "S": r"\x y z. x z (y z)",
}

ROOT_NAMES = {"root", "ε", "e"}


class UsageError(Exception):
    pass


class RefinementFailed(LamDistError):
    pass


def parse_position(text: str) -> lc.Position:
    text = text.strip()
    if text in ROOT_NAMES:
        return ()
    try:
        return tuple(int(part) for part in text.split("."))
    except ValueError:
        raise UsageError(f"bad position {text!r}; use dotted digits such as 0.1, or 'root'") from None


def _split_steps(text: str) -> list[str]:
    text = text.strip()
    if text in ("", "-", "empty"):
        return []
    return [part.strip() for part in text.split(",")]


def parse_lam_derivation(source: lc.Term, text: str) -> lc.LamDerivation:
    return lc.LamDerivation.from_positions(source, [parse_position(p) for p in _split_steps(text)])


def parse_dist_derivation(source: dc.DistTerm, text: str) -> dc.DistDerivation:
    steps = []
    cur = source
    for part in _split_steps(text):
        if part.startswith("#"):
            try:
                step = dc.DistStep.by_label(cur, int(part[1:]))
            except ValueError as e:
                if isinstance(e, LamDistError):
                    raise
                raise UsageError(f"bad step label {part!r}") from None
        else:
            step = dc.DistStep(cur, parse_position(part))
        steps.append(step)
        cur = step.target
    return dc.DistDerivation(source, tuple(steps))


def _definitions(args) -> dict[str, lc.Term]:
    defs: dict[str, lc.Term] = {}
    if not args.no_prelude:
        for name, text in PRELUDE.items():
            defs[name] = parse_lambda(text)
    for item in args.let or []:
        name, sep, text = item.partition("=")
        if not sep or not name.strip():
            raise UsageError(f"--let expects NAME=TERM, got {item!r}")
        defs[name.strip()] = parse_lambda(text, defs)
    return defs


def _lam(args, text: str) -> lc.Term:
    return parse_lambda(text, _definitions(args))


def _witness(args):
    t = _lam(args, args.lam_term)
    t_prime = parse_dist(args.dist_term)
    w = check_refines(t_prime, t)
    if not w:
        raise RefinementFailed(str(w))
    return t, w


# ---------------------------------------------------------------------------
# Commands


def cmd_check(args, out):
    report = dc.check_correct(parse_dist(args.dist_term))
    print(report, file=out)
    return 0 if report else 1


def cmd_type(args, out):
    ctx, ty = dc.infer_type(parse_dist(args.dist_term))
    entries = ", ".join(f"{name} : [{', '.join(map(dc.show_type, ms))}]" for name, ms in ctx.items())
    print(f"{entries} ⊢ {dc.show_type(ty)}" if entries else f"⊢ {dc.show_type(ty)}", file=out)
    return 0


def cmd_graph(args, out):
    if args.dist:
        graph = enumerate_graph_dist(parse_dist(args.term))
    else:
        graph = enumerate_graph_lambda(_lam(args, args.term), args.fuel)
    if args.dot:
        out.write(graph_to_dot(graph))
        return 0
    space = build_space(graph) if (args.json or args.classes) and (args.dist or graph.is_acyclic()) else None
    if args.json:
        out.write(to_json(graph_to_data(graph, space)))
        return 0
    if args.classes:
        out.write(space_to_dot(space) if space is not None else "")
        if space is None:
            print("the derivation space is infinite", file=sys.stderr)
            return 1
        return 0
    print(f"{len(graph.nodes)} nodes, {len(graph.edges)} edges", file=out)
    for i, t in enumerate(graph.nodes):
        print(f"  [{i}] {show_term(t)}", file=out)
    for e in graph.edges:
        label = f"#{e.label} " if e.label is not None else ""
        print(f"  {e.src} -> {e.dst}  {label}at {lc.format_position(e.position)}", file=out)
    return 0


def cmd_normalize(args, out):
    nf, d = dc.normalize(parse_dist(args.dist_term))
    print(dc.show(nf), file=out)
    print(f"length {len(d)}: {d}", file=out)
    return 0


def cmd_refine(args, out):
    t = _lam(args, args.lam_term)
    report = synthesize_refinement(t, args.fuel)
    if not report:
        print(f"no refinement ({report.status}): {report.message}", file=out)
        return 1
    print(dc.show(report.term), file=out)
    return 0


def cmd_simulate(args, out):
    t, w = _witness(args)
    rho = parse_lam_derivation(t, args.steps)
    d, final = sim_residual_derivation(rho, w)
    print(f"simulation: {d}", file=out)
    print(f"refinement: {dc.show(final.dist_term)}", file=out)
    print(f"refines:    {lc.show(final.lam_term)}", file=out)
    return 0


def cmd_sieve(args, out):
    t, w = _witness(args)
    rho = parse_lam_derivation(t, args.steps)
    print(sieve(rho, w), file=out)
    if args.verbose:
        print(f"coarse steps: {', '.join(lc.format_position(s.redex) for s in coarse_steps(rho, w)) or 'none'}", file=out)
        print(f"garbage: {is_garbage(rho, w)}, garbage-free: {is_garbage_free(rho, w)}", file=out)
    return 0


def cmd_factorize(args, out):
    t, w = _witness(args)
    result = factorize(parse_lam_derivation(t, args.steps), w)
    print(f"garbage-free: {result.garbage_free}", file=out)
    print(f"garbage:      {result.garbage}", file=out)
    print(f"refinement:   {dc.show(result.witness.dist_term)}", file=out)
    return 0


def cmd_groth(args, out):
    t, w = _witness(args)
    space = build_space(enumerate_graph_lambda(t, args.fuel))
    groth = build_grothendieck(space, w)
    report = check_factorization_iso(space, groth)
    if args.json:
        out.write(to_json(grothendieck_to_data(groth, report)))
        return 0 if report.ok else 1
    print(f"{len(space)} classes, {len(groth.base)} garbage-free, {len(groth.pairs)} pairs", file=out)
    for a, fiber in enumerate(groth.fibers):
        garbage = ", ".join(str(fiber.representative(x)) for x in range(len(fiber.elements)))
        print(f"  {groth.base_representative(a)}  over which: {garbage}", file=out)
    print(f"isomorphism: {'ok' if report.ok else 'FAILED'}", file=out)
    for f in report.failures:
        print(f"  {f}", file=out)
    return 0 if report.ok else 1


def cmd_verify(args, out):
    t = _lam(args, args.lam_term)
    t_prime = parse_dist(args.dist_term) if args.dist_term else None
    results = verify_instance(t, t_prime, seed=args.seed, fuel=args.fuel)
    width = max(len(r.name) for r in results)
    for r in results:
        print(f"{r.name:<{width}}  {'pass' if r.ok else 'FAIL'}", file=out)
        for f in r.failures[:5]:
            print(f"    {f}", file=out)
    return 0 if all(r.ok for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--let", action="append", metavar="NAME=TERM",
                        help="define an abbreviation usable in pure terms")
    common.add_argument("--no-prelude", action="store_true", help="do not predefine I, K and S")

    parser = argparse.ArgumentParser(prog="lamdist",
                                     description="Pure and distributive lambda-calculus toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="correctness report for a distributive term")
    p.add_argument("dist_term")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("type", parents=[common], help="typing judgment of a distributive term")
    p.add_argument("dist_term")
    p.set_defaults(func=cmd_type)

    p = sub.add_parser("graph", parents=[common], help="reduction graph of a term")
    p.add_argument("term")
    p.add_argument("--dist", action="store_true", help="the term is distributive")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--dot", action="store_true", help="emit Graphviz DOT")
    fmt.add_argument("--json", action="store_true", help="emit JSON with classes")
    fmt.add_argument("--classes", action="store_true", help="emit the Hasse diagram of classes as DOT")
    p.add_argument("--fuel", type=int, default=DEFAULT_LENGTH_CAP, help="maximum depth for pure terms")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("normalize", parents=[common], help="normal form of a distributive term")
    p.add_argument("dist_term")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("refine", parents=[common], help="synthesize a refinement of a pure term")
    p.add_argument("lam_term")
    p.add_argument("--fuel", type=int, default=DEFAULT_FUEL, help="head reduction budget")
    p.set_defaults(func=cmd_refine)

    for name, func, helptext in [
            ("simulate", cmd_simulate, "simulate a derivation inside a refinement"),
            ("sieve", cmd_sieve, "garbage-free part of a derivation"),
            ("factorize", cmd_factorize, "split a derivation into garbage-free part and garbage")]:
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("lam_term")
        p.add_argument("dist_term")
        p.add_argument("steps", help="comma-separated redex positions, e.g. root,0.1")
        if name == "sieve":
            p.add_argument("-v", "--verbose", action="store_true")
        p.set_defaults(func=func)

    p = sub.add_parser("groth", parents=[common], help="factorize the whole derivation space")
    p.add_argument("lam_term")
    p.add_argument("dist_term")
    p.add_argument("--json", action="store_true")
    p.add_argument("--fuel", type=int, default=DEFAULT_LENGTH_CAP)
    p.set_defaults(func=cmd_groth)

    p = sub.add_parser("verify", parents=[common], help="check every law on a term")
    p.add_argument("lam_term")
    p.add_argument("dist_term", nargs="?")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    p.add_argument("--fuel", type=int, default=DEFAULT_LENGTH_CAP)
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args, out)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 2
    except LamDistError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
