"""Plain-text rendering of verdicts, state listings and posets.

Everything here returns lists of lines; printing is left to the ui module.
"""

from collections.abc import Iterable, Mapping

import networkx as nx
from networkx.drawing.nx_pydot import to_pydot

from .finposet import FinPoset, PosetReport, hasse_edges
from .isw import ConditionReport, ValidationReport


def yes_no(flag: bool) -> str:
    return "yes" if flag else "no"


def validation_lines(report: ValidationReport) -> list[str]:
    lines = []
    for v in report.verdicts:
        lines.append(f"axiom {v.axiom}: holds" if v.holds else f"axiom {v.axiom}: fails {v.detail}")
    for v in report.extras:
        status = "holds" if v.holds else f"fails {v.detail}"
        lines.append(f"extra {v.axiom}: {status}")
    held = sum(v.holds for v in report.verdicts)
    lines.append(f"{held}/{len(report.verdicts)} axioms hold")
    return lines


def condition_lines(reports: Iterable[ConditionReport]) -> list[str]:
    lines = []
    for r in reports:
        if r.holds:
            lines.append(f"{r.condition}: holds")
        else:
            lines.append(f"{r.condition}: fails {r.counterexample}")
    return lines


def state_lines(names: Iterable[str]) -> list[str]:
    names = list(names)
    return [f"states: {len(names)}", *names]


def poset_lines(P: FinPoset, report: PosetReport) -> list[str]:
    lines = [f"elements: {len(P.elems)}"]
    lines += [f"le {x} {y}" for x, y in hasse_edges(P)]
    lines.append(f"bottom: {report.bottom if report.pointed else 'none'}")
    if report.bounded_complete:
        lines.append("bounded-complete: yes")
    else:
        x, y = report.bc_counterexample
        lines.append(f"bounded-complete: no, {x} and {y} have no least upper bound")
    gap = report.l_domain_counterexample
    if gap is None:
        lines.append("L-domain: yes")
    elif gap.z is None:
        lines.append("L-domain: no, no least element")
    else:
        x, y = gap.pair
        lines.append(f"L-domain: no, {x} and {y} have no least upper bound below {gap.z}")
    compacts = [x for x in P.elems if x in report.compacts]
    lines.append(f"compact: {len(compacts)}/{len(P.elems)}")
    lines.append(f"algebraic: {yes_no(report.algebraic)}")
    return lines


def mapping_lines(pairs: Iterable[tuple[str, str]], arrow: str = "->") -> list[str]:
    return [f"{x} {arrow} {y}" for x, y in pairs]


def iso_lines(P: FinPoset, iso: Mapping[str, str] | None) -> list[str]:
    if iso is None:
        return ["iso: none"]
    return ["iso:", *mapping_lines((x, iso[x]) for x in P.elems)]


def dot_lines(P: FinPoset, name: str = "poset") -> list[str]:
    """Hasse diagram in graph-description text, bottom at the bottom."""
    G = nx.DiGraph(name=name)
    G.graph["graph"] = {"rankdir": "BT"}
    G.add_nodes_from(_dot_id(x) for x in P.elems)
    G.add_edges_from((_dot_id(x), _dot_id(y)) for x, y in hasse_edges(P))
    return to_pydot(G).to_string().splitlines()


def _dot_id(x: str) -> str:
    # pydot rejects bare ids with a colon
    return f'"{x}"' if ":" in x else x
