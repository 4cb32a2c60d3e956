"""Command-line front end: one subcommand per workbench operation."""

import argparse
import logging
from collections.abc import Callable, Sequence

from . import __version__
from .appmap import apply_map, compose, validate_map
from .classic import (
    ais_from_isw,
    ais_points,
    cis_from_isw,
    cis_points,
    isw_from_ais,
    isw_from_cis,
    validate_ais,
    validate_cis,
)
from .config import STRICT_PRINTED_AXIOMS
from .constructions import product
from .domconv import isw_from_poset, roundtrip_check
from .errors import KindMismatch, WorkbenchError
from .finposet import FinPoset, analyze, find_iso
from .formats import Document, document_for, parse, parse_state_text, serialize
from .frames import check_declared_accessibility, frame_to_isw, isw_to_frame, validate_frame
from .isw import CONDITIONS, Condition, Isw, check_condition, validate_isw
from .reports import condition_lines, dot_lines, iso_lines, poset_lines, state_lines, validation_lines, yes_no
from .states import enumerate_states, state_poset
from .ui import display_error, display_status, emit

logger = logging.getLogger(__name__)


def _system(doc: Document) -> Isw:
    """The system a document stands for."""
    match doc.kind:
        case "isw":
            return doc.body
        case "frame":
            return frame_to_isw(doc.body)
        case "poset":
            return isw_from_poset(doc.body)
        case "cis":
            return isw_from_cis(doc.body)
        case "ais":
            return isw_from_ais(doc.body)
    raise KindMismatch(f"{doc.source_path}: a {doc.kind} file does not describe a system")


def _poset(doc: Document) -> FinPoset:
    if doc.kind == "poset":
        return doc.body
    return state_poset(_system(doc)).poset


def cmd_validate(args: argparse.Namespace) -> int:
    doc = parse(args.file)
    strict = args.strict_printed_axioms or STRICT_PRINTED_AXIOMS
    match doc.kind:
        case "isw":
            report = validate_isw(doc.body)
        case "frame":
            report = validate_frame(doc.body)
        case "cis":
            report = validate_cis(doc.body)
        case "ais":
            report = validate_ais(doc.body, strict=strict)
        case "map":
            report = validate_map(doc.body)
        case _:
            raise KindMismatch(f"{args.file}: nothing to validate in a {doc.kind} file")
    lines = validation_lines(report)
    ok = report.valid
    if doc.kind == "frame" and doc.relation is not None:
        mismatch = check_declared_accessibility(doc.body, doc.relation)
        lines += [f"declared R differs at {i} {j}" for i, j in mismatch]
        ok = ok and not mismatch
    emit(lines)
    return 0 if ok else 1


def cmd_check(args: argparse.Namespace) -> int:
    S = _system(parse(args.file))
    chosen: list[Condition] = [c for c, flag in zip(CONDITIONS, (args.bc, args.alg, args.salg, args.algplus)) if flag]
    reports = [check_condition(S, c) for c in chosen or CONDITIONS]
    emit(condition_lines(reports))
    return 0 if all(r.holds for r in reports) else 1


def cmd_states(args: argparse.Namespace) -> int:
    doc = parse(args.file)
    if doc.kind == "cis":
        points = cis_points(doc.body)
        emit(state_lines(doc.body.show(x) for x in points))
        return 0
    if doc.kind == "ais":
        points = ais_points(doc.body)
        emit(state_lines(doc.body.show(x) for x in points))
        return 0
    S = _system(doc)
    if args.oracle:
        display_status(f"testing all {2 ** len(S.tokens)} subsets of the tokens")
    emit(state_lines(S.show(x) for x in enumerate_states(S, oracle=args.oracle)))
    return 0


def cmd_domain(args: argparse.Namespace) -> int:
    P = _poset(parse(args.file))
    emit(poset_lines(P, analyze(P)))
    return 0


def cmd_iso(args: argparse.Namespace) -> int:
    P = _poset(parse(args.first))
    Q = _poset(parse(args.second))
    iso = find_iso(P, Q)
    emit(iso_lines(P, iso))
    return 0 if iso is not None else 1


CONVERSIONS: dict[tuple[str, str], Callable] = {
    ("poset", "isw"): lambda d: isw_from_poset(d.body),
    ("isw", "frame"): lambda d: isw_to_frame(d.body),
    ("frame", "isw"): lambda d: frame_to_isw(d.body),
    ("isw", "cis"): lambda d: cis_from_isw(d.body),
    ("cis", "isw"): lambda d: isw_from_cis(d.body),
    ("isw", "ais"): lambda d: ais_from_isw(d.body),
    ("ais", "isw"): lambda d: isw_from_ais(d.body),
}


def cmd_convert(args: argparse.Namespace) -> int:
    doc = parse(args.file)
    convert = CONVERSIONS.get((doc.kind, args.to))
    if convert is None:
        raise KindMismatch(f"no conversion from {doc.kind} to {args.to}")
    emit(serialize(document_for(convert(doc))).splitlines())
    return 0


def cmd_product(args: argparse.Namespace) -> int:
    left = _system(parse(args.first))
    right = _system(parse(args.second))
    emit(serialize(document_for(product(left, right).product)).splitlines())
    return 0


def cmd_compose(args: argparse.Namespace) -> int:
    first = parse(args.first, expect="map")
    second = parse(args.second, expect="map")
    H = compose(first.body, second.body)
    links = {"source": first.links["source"], "target": second.links["target"]}
    emit(serialize(Document("map", H, None, links)).splitlines())
    return 0


def cmd_apply(args: argparse.Namespace) -> int:
    doc = parse(args.file, expect="map")
    y = apply_map(doc.body, parse_state_text(args.state))
    emit([doc.body.target.show(y)])
    return 0


def cmd_roundtrip(args: argparse.Namespace) -> int:
    D = parse(args.file, expect="poset").body
    result = roundtrip_check(D)
    S = isw_from_poset(D)
    lines = ["iso:"]
    lines += [f"{alpha} -> {S.show(result.iso[alpha])}" for alpha in D.elems]
    lines += [
        f"bounded-complete(D): {yes_no(result.bc_source)}",
        f"BC(I(D)): {'holds' if result.bc_system else 'fails'}",
        f"ALG(I(D)): {'holds' if result.alg_system else 'fails'}",
    ]
    emit(lines)
    return 0


def cmd_export_dot(args: argparse.Namespace) -> int:
    doc = parse(args.file)
    emit(dot_lines(_poset(doc), args.name))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="infosys", description="Finite-model workbench for information systems with witnesses.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the axioms of a system, frame, cis, ais or map")
    p.add_argument("file")
    p.add_argument("--strict-printed-axioms", action="store_true", help="also report the printed form of ais axiom 5")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("check", help="evaluate the side conditions BC, ALG, SALG, ALG+")
    p.add_argument("file")
    p.add_argument("--bc", action="store_true")
    p.add_argument("--alg", action="store_true")
    p.add_argument("--salg", action="store_true")
    p.add_argument("--algplus", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("states", help="list the states (or points) in canonical order")
    p.add_argument("file")
    p.add_argument("--oracle", action="store_true", help="filter every subset instead of collecting principal states")
    p.set_defaults(func=cmd_states)

    p = sub.add_parser("domain", help="analyze a poset or the state poset of a system")
    p.add_argument("file")
    p.set_defaults(func=cmd_domain)

    p = sub.add_parser("iso", help="search an order isomorphism between two posets or state posets")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("convert", help="convert between posets, systems, frames, cis and ais")
    p.add_argument("file")
    p.add_argument("--to", required=True, choices=("isw", "frame", "cis", "ais"))
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("product", help="product of two systems")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("compose", help="first map then second map")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("apply", help="apply a map to a state")
    p.add_argument("file")
    p.add_argument("--state", required=True, help='state written as "{a,b}"')
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("roundtrip", help="poset to system to state poset, checked isomorphic")
    p.add_argument("file")
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("export-dot", help="Hasse diagram of a poset or state poset")
    p.add_argument("file")
    p.add_argument("--name", default="poset")
    p.set_defaults(func=cmd_export_dot)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    """Run one subcommand and return its exit code."""
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except WorkbenchError as e:
        logger.debug(f"{type(e).__name__} from {args.command}")
        display_error(f"error: {e}")
        return e.exit_code
