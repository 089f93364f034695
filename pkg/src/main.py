# src/main.py
"""grpgeo: algebraic geometry over finite groups from the command line."""
import argparse
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence

from .config import Config
from .coordinate import (coordinate_group, find_embedding_point, gamma_zero_divisor,
                         theorem1_crosscheck)
from .corpus import SUITES, CorpusSpec, SuiteSettings, corpus_verify, resolve_corpus
from .errors import (BadParameter, CapExceeded, CharacterizationDisagreement, GrpGeoError,
                     ModeMismatch)
from .families import parse_family_spec
from .fileio import export_gtab, ingest_group
from .groups import FiniteGroup, subgroup_generate
from .lattice import invariants
from .parser import parse_points, parse_system
from .properties import (DomainMethod, NilpotencyFamily, PropertyVerdict, ZeroDivisorRoute,
                         has_NTk, is_commutative_transitive, is_conjugately_separated,
                         is_domain, is_malnormal, is_zero_divisor,
                         malnormality_witness)
from .report import FORMATS, SubjectResult, build_report, emit_report, emit_result
from .utils import configure_logging, stopwatch
from .zariski import (AlgebraicSet, Mode, algebraic_closure, generic_point, irreducible_components,
                      is_algebraic, make_set, reducibility_oracle, solution_set,
                      topological_closure)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

CHECKS = ("domain", "csa", "csnk", "ct", "ntk", "malnormal", "zero-divisor")


class _UsageExit(Exception):
    def __init__(self, code: int) -> None:
        self.code = code


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage errors as exit code 2 instead of exiting."""

    def exit(self, status: int = 0, message: Optional[str] = None) -> None:
        if message:
            self._print_message(message, sys.stderr)
        raise _UsageExit(status)


def _common(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--group", metavar="PATH", help=".gtab or .gperm file")
    source.add_argument("--family", metavar="SPEC", help="e.g. cyclic:4, dihedral:8, cyclic:2*symmetric:3")
    parser.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    parser.add_argument("--format", choices=FORMATS, default="json")
    parser.add_argument("--timing", action="store_true", help="record elapsed microseconds")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    parser.add_argument("--max-order", type=int)
    parser.add_argument("--max-lattice", type=int)
    parser.add_argument("--max-width", type=int)
    parser.add_argument("--budget", type=int)
    parser.add_argument("--seed", type=int)


def _space(parser: argparse.ArgumentParser, points: bool = True) -> None:
    parser.add_argument("-n", type=int, default=1, help="number of variables")
    parser.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.COEFFICIENT.value)
    if points:
        parser.add_argument("--points", required=True,
                            help="points separated by ';', coordinates by ','")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="grpgeo", description=__doc__)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("group", help="build a group, print its invariants, optionally export")
    _common(p)
    p.add_argument("--export", metavar="PATH", help="write the group as .gtab")

    p = sub.add_parser("check", help="decide one structural property")
    p.add_argument("property", choices=CHECKS)
    _common(p)
    p.add_argument("-k", type=int,
                   help="nilpotency class bound; csnk defaults to 1, ntk without -k tests "
                        "nilpotent transitivity with no class bound")
    p.add_argument("--method", choices=[m.value for m in DomainMethod], default="all")
    p.add_argument("--subgroup", help="generators of H for malnormal, separated by ';'")
    p.add_argument("--element", help="element for zero-divisor")

    p = sub.add_parser("variety", help="solution set of a system of equations")
    _common(p)
    _space(p, points=False)
    p.add_argument("--system", required=True, help="words or equations separated by ';'")

    for name, text in (("closure", "algebraic and topological closure of a point set"),
                       ("irreducible", "irreducibility via a generic point"),
                       ("components", "irreducible components"),
                       ("coord", "coordinate group of a point set")):
        p = sub.add_parser(name, help=text)
        _common(p)
        _space(p)

    p = sub.add_parser("theorem1", help="irreducible / G-domain / G-embeddable crosscheck")
    _common(p)
    _space(p)

    p = sub.add_parser("verify", help="run verification suites over a corpus")
    _common(p)
    p.add_argument("--suite", action="append", dest="suites", metavar="SUITE",
                   help=f"one of {', '.join(SUITES)}; theorem2 and csnk-ntk take ':k'")
    p.add_argument("--corpus", action="append", dest="sources", metavar="SOURCE",
                   help="'builtin', a family spec, or a group file (repeatable)")
    p.add_argument("--sweep-order", type=int, default=24)
    p.add_argument("--min-order", type=int, default=1)
    p.add_argument("--max-subject-order", type=int)
    kind = p.add_mutually_exclusive_group()
    kind.add_argument("--abelian", dest="abelian", action="store_true", default=None)
    kind.add_argument("--non-abelian", dest="abelian", action="store_false")
    p.set_defaults(abelian=None)
    p.add_argument("--laws-cases", type=int, default=SuiteSettings.laws_cases)
    p.add_argument("--union-samples", type=int, default=SuiteSettings.union_samples)
    p.add_argument("--theorem1-samples", type=int, default=SuiteSettings.theorem1_samples)
    p.add_argument("--jobs", type=int)
    return parser


# helpers ----------------------------------------------------------------------

def _config(args: argparse.Namespace) -> Config:
    return Config.from_env().replace(
        max_order=args.max_order, max_lattice=args.max_lattice, max_width=args.max_width,
        budget=args.budget, seed=args.seed, jobs=getattr(args, "jobs", None),
        timing=args.timing or None)


def _load_group(args: argparse.Namespace, config: Config) -> FiniteGroup:
    if args.group:
        return ingest_group(args.group, config)
    if args.family:
        return parse_family_spec(args.family, config)
    raise BadParameter("one of --group or --family is required")


def _points(args: argparse.Namespace, G: FiniteGroup) -> AlgebraicSet:
    rows = parse_points(args.points, args.n, G)
    return make_set(G, args.n, rows.tolist(), Mode(args.mode))


def _timed(config: Config, verdict_fn: Callable[[], PropertyVerdict]) -> PropertyVerdict:
    costs: Dict[str, int] = {}
    with stopwatch(costs):
        verdict = verdict_fn()
    if config.timing:
        verdict.cost["micros"] = costs["micros"]
    return verdict


def _set_result(Y: AlgebraicSet) -> Dict[str, Any]:
    return {"size": len(Y), "points": Y.labels()}


# commands ---------------------------------------------------------------------

def cmd_group(args, G: FiniteGroup, config: Config) -> bytes:
    result = invariants(G)
    result.update(name=G.name, labels=list(G.labels), provenance=G.provenance.kind,
                  generators=[G.label(g) for g in G.generators()])
    if args.export:
        export_gtab(G, args.export)
        result["exported"] = args.export
    return emit_result("group", result, config, args.format)


def _check_verdict(args, G: FiniteGroup, config: Config) -> PropertyVerdict:
    prop = args.property
    if prop == "domain":
        return is_domain(G, DomainMethod(args.method), config)
    if prop == "csa":
        return is_conjugately_separated(G, NilpotencyFamily.ABELIAN, None, config)
    if prop == "csnk":
        return is_conjugately_separated(G, NilpotencyFamily.CLASS,
                                        1 if args.k is None else args.k, config)
    if prop == "ct":
        return is_commutative_transitive(G)
    if prop == "ntk":
        return has_NTk(G, args.k, config)
    if prop == "malnormal":
        if not args.subgroup:
            raise BadParameter("malnormal needs --subgroup")
        seeds = parse_points(args.subgroup, 1, G)[:, 0].tolist()
        H = subgroup_generate(G, seeds)
        verdict = PropertyVerdict(G.name, "malnormal", {"subgroup": H.labels()})
        ok, x = is_malnormal(G, H)
        if not ok:
            verdict.holds = False
            verdict.witnesses.append(malnormality_witness(G, H, x))
        return verdict
    # zero-divisor
    if not args.element:
        raise BadParameter("zero-divisor needs --element")
    x = int(parse_points(args.element, 1, G)[0, 0])
    routes = {route.value: is_zero_divisor(G, x, route) for route in ZeroDivisorRoute}
    outcomes = {found for found, _ in routes.values()}
    if len(outcomes) > 1:
        raise CharacterizationDisagreement(G.name, {k: v[0] for k, v in routes.items()})
    found, y = routes[ZeroDivisorRoute.CONJUGATES.value]
    verdict = PropertyVerdict(G.name, "zero-divisor", {"element": G.label(x)}, holds=found,
                              facts={"routes": {k: v[0] for k, v in routes.items()}})
    if found:
        verdict.witnesses.append({"kind": "zero-divisor", "x": G.label(x), "y": G.label(y)})
    return verdict


def cmd_check(args, G: FiniteGroup, config: Config) -> bytes:
    verdict = _timed(config, lambda: _check_verdict(args, G, config))
    subject = SubjectResult(G.name, G.order)
    subject.add(verdict)
    return emit_report(build_report(config, [subject]), args.format)


def cmd_variety(args, G: FiniteGroup, config: Config) -> bytes:
    mode = Mode(args.mode)
    system = parse_system(args.system, args.n, G, mode.coefficients)
    V = solution_set(G, args.n, system, config)
    result = dict(_set_result(V), mode=mode.value, system=system.format())
    return emit_result("variety", result, config, args.format)


def cmd_closure(args, G: FiniteGroup, config: Config) -> bytes:
    U = _points(args, G)
    closure = algebraic_closure(U, config)
    result = {"mode": U.mode.value, "input": U.labels(), "closure": closure.labels(),
              "algebraic": is_algebraic(U, config),
              "topological_closure": topological_closure(U, config).labels()}
    return emit_result("closure", result, config, args.format)


def cmd_irreducible(args, G: FiniteGroup, config: Config) -> bytes:
    Y = _points(args, G)
    z = generic_point(Y, config)
    result = {"mode": Y.mode.value, "points": Y.labels(), "algebraic": is_algebraic(Y, config),
              "irreducible": z is not None,
              "generic_point": None if z is None else [G.label(c) for c in z]}
    if len(Y) <= 4:
        result["oracle_reducible"] = reducibility_oracle(Y, config)
    return emit_result("irreducible", result, config, args.format)


def cmd_components(args, G: FiniteGroup, config: Config) -> bytes:
    Y = _points(args, G)
    components = irreducible_components(Y, config)
    result = {"mode": Y.mode.value, "points": Y.labels(),
              "components": [C.labels() for C in components]}
    return emit_result("components", result, config, args.format)


def cmd_coord(args, G: FiniteGroup, config: Config) -> bytes:
    Y = _points(args, G)
    gamma = coordinate_group(Y, config)
    result = {"mode": Y.mode.value, "points": Y.labels(), "order": gamma.order,
              "width": gamma.width,
              "variables": {f"x{i}": [G.label(c) for c in gamma.tuples[j]]
                            for i, j in gamma.var_images.items()}}
    if Y.mode.coefficients:
        witness = gamma_zero_divisor(gamma)
        point = find_embedding_point(Y, gamma, config)
        result["G_domain"] = witness is None
        result["embedding_point"] = None if point is None else [G.label(c) for c in point]
    return emit_result("coord", result, config, args.format)


def cmd_theorem1(args, G: FiniteGroup, config: Config) -> bytes:
    Y = _points(args, G)
    if not Y.mode.coefficients:
        raise ModeMismatch("theorem1 runs in coefficient mode")
    verdict = _timed(config, lambda: theorem1_crosscheck(G, Y, config).to_verdict())
    subject = SubjectResult(G.name, G.order)
    subject.add(verdict)
    args.failed = not verdict.holds
    return emit_report(build_report(config, [subject]), args.format)


def cmd_verify(args, config: Config) -> bytes:
    spec = CorpusSpec(tuple(args.sources or ("builtin",)), sweep_order=args.sweep_order,
                      min_order=args.min_order, max_order=args.max_subject_order,
                      abelian=args.abelian)
    settings = SuiteSettings(laws_cases=args.laws_cases, union_samples=args.union_samples,
                             theorem1_samples=args.theorem1_samples)
    corpus = resolve_corpus(spec, config)
    report = corpus_verify(corpus, args.suites or ["domain-equivalence"], config, settings)
    args.failed = report.failures > 0
    return emit_report(report, args.format)


_COMMANDS = {
    "group": cmd_group,
    "check": cmd_check,
    "variety": cmd_variety,
    "closure": cmd_closure,
    "irreducible": cmd_irreducible,
    "components": cmd_components,
    "coord": cmd_coord,
    "theorem1": cmd_theorem1,
}


def _write(payload: bytes, out: Optional[str]) -> None:
    if out:
        with open(out, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()


def cmd_dispatch(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except _UsageExit as exc:
        return exc.code
    configure_logging(args.verbose)
    args.failed = False
    try:
        config = _config(args)
        if args.command == "verify":
            payload = cmd_verify(args, config)
        else:
            G = _load_group(args, config)
            payload = _COMMANDS[args.command](args, G, config)
        _write(payload, args.out)
    except CapExceeded as exc:
        logger.error("%s", exc)
        return EXIT_BUDGET
    except CharacterizationDisagreement as exc:
        logger.error("%s", exc)
        return EXIT_FAILED
    except GrpGeoError as exc:
        logger.error("%s", exc)
        return EXIT_USAGE
    except OSError as exc:
        logger.error("%s", exc)
        return EXIT_USAGE
    return EXIT_FAILED if args.failed else EXIT_OK


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(cmd_dispatch(argv))


if __name__ == "__main__":
    main()
