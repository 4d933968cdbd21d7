"""Command-line entry point.

Exit codes: 0 pass/covered/holds, 1 definite negative verdict, 2 usage or
input error, 3 engine disagreement, 4 counterexample to the neighbourhood
theorem.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import criterion, extremal, factor, neighborhood
from .errors import FraccoverError
from .graph import DEFAULT_CAP
from .graphio import FORMATS, read_graph, write_graph
from .harness import (
    EXIT_DISAGREEMENT,
    EXIT_NEGATIVE,
    EXIT_OK,
    EXIT_USAGE,
    ExperimentConfig,
    config_from_mapping,
    load_config,
    run_experiment,
)

log = logging.getLogger("fraccover")


def _print(doc) -> None:
    print(json.dumps(doc, indent=2, sort_keys=False))


def _apply_presets(args) -> None:
    """--corollary1: k=0; --corollary2: b=a; --corollary3: both."""
    preset = getattr(args, "corollary", None)
    if preset in (1, 3) and getattr(args, "k", 0):
        log.warning("corollary preset forces k=0 (was %s)", args.k)
    if preset in (1, 3):
        args.k = 0
    if preset in (2, 3):
        if args.b is not None and args.b != args.a:
            log.warning("corollary preset forces b=a=%s (was b=%s)", args.a, args.b)
        args.b = args.a
    if args.b is None:
        raise FraccoverError("-b is required unless a corollary preset sets it")


def _add_params(p: argparse.ArgumentParser, with_k: bool = True, presets: bool = True) -> None:
    p.add_argument("-a", type=int, required=True)
    p.add_argument("-b", type=int, default=None)
    if with_k:
        p.add_argument("-k", type=int, default=0)
    if presets:
        g = p.add_mutually_exclusive_group()
        g.add_argument("--corollary1", dest="corollary", action="store_const", const=1,
                       help="k = 0 (plain [a,b]-covered)")
        g.add_argument("--corollary2", dest="corollary", action="store_const", const=2,
                       help="a = b = r ((r,k)-critical covered)")
        g.add_argument("--corollary3", dest="corollary", action="store_const", const=3,
                       help="a = b = r and k = 0 (r-covered)")


def _add_graph(p: argparse.ArgumentParser) -> None:
    p.add_argument("graph", help="graph file (edge list, or graph6 for .g6)")
    p.add_argument("--format", choices=FORMATS, default=None)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration cap on n")


def cmd_check_covered(args) -> int:
    _apply_presets(args)
    G = read_graph(args.graph, args.format)
    verdict = criterion.is_critical_covered(G, args.a, args.b, args.k, cap=args.cap)
    doc = verdict.to_json()
    code = EXIT_OK if verdict.covered else EXIT_NEGATIVE
    if args.oracle:
        ov = factor.is_critical_covered_constructive(G, args.a, args.b, args.k)
        doc["oracle_covered"] = ov.covered
        if ov.covered != verdict.covered:
            code = EXIT_DISAGREEMENT
    _print(doc)
    return code


def cmd_check_hypothesis(args) -> int:
    _apply_presets(args)
    G = read_graph(args.graph, args.format)
    rep = neighborhood.check_hypothesis(
        G, args.a, args.b, args.k, mode=args.mode, cap=args.cap, with_profile=args.profile
    )
    doc = rep.to_json()
    doc["degree_consequence_ok"] = neighborhood.degree_consequence_ok(G, args.a, args.b, args.k)
    _print(doc)
    return EXIT_OK if rep.holds else EXIT_NEGATIVE


def cmd_profile(args) -> int:
    G = read_graph(args.graph, args.format)
    prof = neighborhood.min_neighborhood_profile(G, cap=args.cap)
    _print({str(s): v for s, v in prof.items()})
    return EXIT_OK


def cmd_find_factor(args) -> int:
    G = read_graph(args.graph, args.format)
    pins = [tuple(p) for p in args.pin or []]
    h = factor.find_factor(G, args.a, args.b, pins)
    if h is None:
        _print({"feasible": False})
        return EXIT_NEGATIVE
    _print({"feasible": True} | h.to_json())
    return EXIT_OK


def cmd_gen_extremal(args) -> int:
    inst = extremal.build_extremal(args.a, args.b, args.k, args.t)
    write_graph(inst.graph, args.out, args.format)
    _print({"n": inst.n, "A": sorted(inst.A), "B": sorted(inst.B), "out": args.out})
    return EXIT_OK


def cmd_sharpness(args) -> int:
    _apply_presets(args)
    t = args.t if args.t is not None else extremal.default_t(args.a, args.b)
    if t is None:
        raise FraccoverError(f"no valid t exists for a={args.a}, b={args.b}")
    rep = extremal.demonstrate_sharpness(args.a, args.b, args.k, t, cap=args.cap)
    _print(rep.to_json())
    if rep.criterion_covered is not None and rep.oracle_covered is not None:
        if rep.criterion_covered != rep.oracle_covered:
            return EXIT_DISAGREEMENT
    return EXIT_OK if rep.consistent and rep.hypothesis_holds is not False else EXIT_NEGATIVE


def _experiment(args, mode: str | None) -> int:
    overrides = dict(kv.split("=", 1) for kv in args.set or [])
    overrides = {k.strip().replace("-", "_"): v.strip() for k, v in overrides.items()}
    if mode:
        overrides["mode"] = mode
    if args.seed is not None:
        overrides["seed"] = str(args.seed)
    if args.output:
        overrides["output"] = args.output
    if args.config:
        cfg = load_config(args.config, overrides)
    else:
        base = ExperimentConfig()
        if mode == "oracle-exhaustive":
            base.n_min, base.n_max = 1, 5
            base.params = config_from_mapping({"params": "1,1;1,2;2,2"}, ExperimentConfig()).params
        cfg = config_from_mapping(overrides, base)
    summary, _ = run_experiment(cfg)
    _print(summary.as_dict())
    return summary.exit_code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fraccover", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-covered", help="decide (a,b,k)-critical coveredness")
    _add_graph(p)
    _add_params(p)
    p.add_argument("--oracle", action="store_true", help="also run the flow engine and compare")
    p.set_defaults(func=cmd_check_covered)

    p = sub.add_parser("check-hypothesis", help="test the neighbourhood condition")
    _add_graph(p)
    _add_params(p)
    p.add_argument("--mode", choices=neighborhood.MODES, default="threshold")
    p.add_argument("--profile", action="store_true", help="include min |N(X)| per size")
    p.set_defaults(func=cmd_check_hypothesis)

    p = sub.add_parser("profile", help="min |N(X)| for each |X|")
    _add_graph(p)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("find-factor", help="build a half-integral fractional [a,b]-factor")
    _add_graph(p)
    p.add_argument("-a", type=int, required=True)
    p.add_argument("-b", type=int, required=True)
    p.add_argument("--pin", nargs=2, type=int, action="append", metavar=("U", "V"))
    p.set_defaults(func=cmd_find_factor)

    p = sub.add_parser("gen-extremal", help="write the sharpness graph to a file")
    for name in ("a", "b", "k", "t"):
        p.add_argument(name, type=int)
    p.add_argument("out")
    p.add_argument("--format", choices=FORMATS, default=None)
    p.set_defaults(func=cmd_gen_extremal)

    p = sub.add_parser("sharpness", help="run the sharpness demonstration")
    _add_params(p)
    p.add_argument("-t", type=int, default=None, help="default: smallest usable t")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_sharpness)

    for name, mode, helptext in [
        ("run", None, "run an experiment from a config file"),
        ("verify-theorem2", "theorem2-random", "random dense graphs vs the neighbourhood theorem"),
        ("oracle-crosscheck", "oracle-exhaustive", "criterion vs flow engine on all small graphs"),
        ("sharpness-sweep", "sharpness-sweep", "extremal family over admissible t"),
    ]:
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--config", help="key=value config file")
        p.add_argument("--set", action="append", metavar="KEY=VALUE", help="override a config key")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--output", default=None, help="ledger directory (default $RESULT_DIR or ./results)")
        p.set_defaults(func=lambda args, mode=mode: _experiment(args, mode))
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except (FraccoverError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
