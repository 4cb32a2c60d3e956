"""Finite partial orders and the order-theoretic predicates used on the domain side."""

import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import networkx as nx

from .config import MAX_DIRECTED_SCAN_ELEMS, MAX_ISO_ELEMS
from .errors import (
    CycleDetected,
    DuplicateElem,
    NoLocalLub,
    NotAnOrder,
    NotBelowZ,
    SizeLimitExceeded,
    UnknownElem,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FinPoset:
    """A finite poset; ``leq`` holds the full reflexive-transitive relation."""

    elems: tuple[str, ...]
    leq: frozenset[tuple[str, str]]

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for x in self.elems:
            if x in seen:
                raise DuplicateElem(f"duplicate element {x!r}")
            seen.add(x)
        for x, y in self.leq:
            for e in (x, y):
                if e not in seen:
                    raise UnknownElem(f"unknown element {e!r}")
        for x in self.elems:
            if (x, x) not in self.leq:
                raise NotAnOrder(f"order is not reflexive at {x!r}")
        for x, y in self.leq:
            if x != y and (y, x) in self.leq:
                raise CycleDetected([x, y])
        for x, y in self.leq:
            for z in self._up[y]:
                if (x, z) not in self.leq:
                    raise NotAnOrder(f"order is not transitive: {x!r} <= {y!r} <= {z!r}")

    @cached_property
    def index(self) -> dict[str, int]:
        return {x: n for n, x in enumerate(self.elems)}

    @cached_property
    def _down(self) -> dict[str, frozenset[str]]:
        below: dict[str, set[str]] = {x: set() for x in self.elems}
        for x, y in self.leq:
            below[y].add(x)
        return {x: frozenset(s) for x, s in below.items()}

    @cached_property
    def _up(self) -> dict[str, frozenset[str]]:
        above: dict[str, set[str]] = {x: set() for x in self.elems}
        for x, y in self.leq:
            above[x].add(y)
        return {x: frozenset(s) for x, s in above.items()}

    def le(self, x: str, y: str) -> bool:
        return (x, y) in self.leq

    def down(self, x: str) -> frozenset[str]:
        """The principal ideal of x."""
        self._require(x)
        return self._down[x]

    def up(self, x: str) -> frozenset[str]:
        self._require(x)
        return self._up[x]

    def ordered(self, xs: Iterable[str]) -> list[str]:
        return sorted(xs, key=self.index.__getitem__)

    def least(self, xs: Iterable[str]) -> str | None:
        """The least member of xs, if xs has one."""
        pool = self.ordered(xs)
        for x in pool:
            if all(self.le(x, y) for y in pool):
                return x
        return None

    def upper_bounds(self, xs: Iterable[str], within: Iterable[str] | None = None) -> list[str]:
        pool = self.elems if within is None else self.ordered(within)
        xs = list(xs)
        return [u for u in pool if all(self.le(x, u) for x in xs)]

    @cached_property
    def bottom(self) -> str | None:
        return self.least(self.elems)

    def _require(self, x: str) -> None:
        if x not in self.index:
            raise UnknownElem(f"unknown element {x!r}")


def poset_from_pairs(names: Sequence[str], pairs: Iterable[tuple[str, str]]) -> FinPoset:
    """Build a poset from an arbitrary generating relation.

    Args:
        names: Element names in canonical order.
        pairs: (x, y) meaning x <= y; closed reflexively and transitively.

    Returns:
        The generated FinPoset.
    """
    seen: set[str] = set()
    for name in names:
        if name in seen:
            raise DuplicateElem(f"duplicate element {name!r}")
        seen.add(name)

    graph = nx.DiGraph()
    graph.add_nodes_from(names)
    for x, y in pairs:
        for e in (x, y):
            if e not in seen:
                raise UnknownElem(f"unknown element {e!r}")
        if x != y:
            graph.add_edge(x, y)

    try:
        cycle = nx.find_cycle(graph)
    except nx.NetworkXNoCycle:
        cycle = None
    if cycle:
        raise CycleDetected([edge[0] for edge in cycle])

    leq = {(x, x) for x in names}
    for x in names:
        leq.update((x, y) for y in nx.descendants(graph, x))
    return FinPoset(tuple(names), frozenset(leq))


def way_below(P: FinPoset, exhaustive: bool = False) -> frozenset[tuple[str, str]]:
    """The approximation relation of P.

    The default scan quantifies over directed sets through their maxima, which
    loses nothing on a finite poset. ``exhaustive`` walks every directed subset
    instead and is capped by MAX_DIRECTED_SCAN_ELEMS. Either way the result
    must coincide with the order itself.
    """
    if exhaustive:
        rel = _way_below_by_directed_subsets(P)
    else:
        rel = frozenset(
            (x, y)
            for y in P.elems
            for x in P.elems
            if all(P.le(x, m) for m in P.up(y))
        )
    if rel != P.leq:
        logger.error("way-below differs from the order on a finite poset")
        raise AssertionError("way-below must equal the order on a finite poset")
    return rel


def _way_below_by_directed_subsets(P: FinPoset) -> frozenset[tuple[str, str]]:
    if len(P.elems) > MAX_DIRECTED_SCAN_ELEMS:
        raise SizeLimitExceeded("directed-subset scan", len(P.elems), MAX_DIRECTED_SCAN_ELEMS)
    directed: list[tuple[frozenset[str], str]] = []
    for size in range(1, len(P.elems) + 1):
        for combo in combinations(P.elems, size):
            if not all(
                any(P.le(u, w) and P.le(v, w) for w in combo) for u, v in combinations(combo, 2)
            ):
                continue
            lub = P.least(P.upper_bounds(combo))
            if lub is not None:
                covered = frozenset().union(*(P.down(u) for u in combo))
                directed.append((covered, lub))
    logger.debug(f"directed-subset scan: {len(directed)} directed sets")
    rel = set()
    for y in P.elems:
        for x in P.elems:
            if all(x in covered for covered, lub in directed if P.le(y, lub)):
                rel.add((x, y))
    return frozenset(rel)


@dataclass(frozen=True)
class LDomainGap:
    """A bound z and a pair below it with no least upper bound inside the ideal of z.

    ``z`` is None when the poset already fails for lack of a least element.
    """

    z: str | None
    pair: tuple[str, ...]


@dataclass(frozen=True)
class PosetReport:
    pointed: bool
    bottom: str | None
    bounded_complete: bool
    bc_counterexample: tuple[str, str] | None
    l_domain: bool
    l_domain_counterexample: LDomainGap | None
    compacts: frozenset[str]
    algebraic: bool


def analyze(P: FinPoset) -> PosetReport:
    bottom = P.bottom

    bc_gap = None
    for x, y in combinations(P.elems, 2):
        ubs = P.upper_bounds((x, y))
        if ubs and P.least(ubs) is None:
            bc_gap = (x, y)
            break

    l_gap = None if bottom is not None else LDomainGap(None, ())
    if l_gap is None:
        for z in P.elems:
            ideal = P.ordered(P.down(z))
            for x, y in combinations(ideal, 2):
                if P.least(P.upper_bounds((x, y), within=ideal)) is None:
                    l_gap = LDomainGap(z, (x, y))
                    break
            if l_gap is not None:
                break

    rel = way_below(P)
    compacts = frozenset(x for x in P.elems if (x, x) in rel)
    algebraic = all(
        P.least(P.upper_bounds(compacts & P.down(x))) == x for x in P.elems
    )
    return PosetReport(
        pointed=bottom is not None,
        bottom=bottom,
        bounded_complete=bc_gap is None,
        bc_counterexample=bc_gap,
        l_domain=l_gap is None,
        l_domain_counterexample=l_gap,
        compacts=compacts,
        algebraic=algebraic,
    )


def local_lub(P: FinPoset, z: str, F: Iterable[str]) -> str:
    """Least upper bound of F inside the ideal of z."""
    ideal = P.down(z)
    F = list(F)
    for f in F:
        P._require(f)
        if f not in ideal:
            raise NotBelowZ(f"{f!r} is not below {z!r}")
    lub = P.least(P.upper_bounds(F, within=ideal))
    if lub is None:
        raise NoLocalLub(f"no least upper bound of {P.ordered(set(F))} below {z!r}")
    return lub


def approximation_laws(P: FinPoset) -> str | None:
    """Name of the first basic law of approximation that fails on P, or None."""
    rel = way_below(P)
    for x, y in rel:
        for w, z in rel:
            if y == w and (x, z) not in rel:
                return "transitivity"
    if not rel <= P.leq:
        return "approximation implies order"
    for x, y in rel:
        for z in P.up(y):
            if (x, z) not in rel:
                return "approximation absorbs the order on the right"
    if P.bottom is not None and any((P.bottom, x) not in rel for x in P.elems):
        return "bottom approximates everything"
    for x in P.elems:
        approximants = P.ordered(y for y in P.elems if (y, x) in rel)
        for size in (1, 2):
            for M in combinations(approximants, size):
                if not any(
                    (v, x) in rel and all((m, v) in rel for m in M) for v in P.elems
                ):
                    return "interpolation"
    return None


def monotone(P: FinPoset, Q: FinPoset, f: Mapping[str, str]) -> bool:
    return all(Q.le(f[x], f[y]) for x, y in P.leq)


def is_order_iso(P: FinPoset, Q: FinPoset, f: Mapping[str, str]) -> bool:
    """f is a bijection P -> Q preserving and reflecting the order."""
    if set(f) != set(P.elems) or set(f.values()) != set(Q.elems) or len(P.elems) != len(Q.elems):
        return False
    return all(P.le(x, y) == Q.le(f[x], f[y]) for x in P.elems for y in P.elems)


def _levels(P: FinPoset) -> dict[str, int]:
    level: dict[str, int] = {}
    for x in sorted(P.elems, key=lambda e: len(P.down(e))):
        below = [level[y] for y in P.down(x) if y != x]
        level[x] = 1 + max(below) if below else 0
    return level


def find_iso(P: FinPoset, Q: FinPoset) -> dict[str, str] | None:
    """First order-isomorphism P -> Q in candidate order, or None.

    Candidates are pruned by the sizes of principal ideals and filters and by
    the height of each element.
    """
    if len(P.elems) != len(Q.elems):
        return None
    if len(P.elems) > MAX_ISO_ELEMS:
        raise SizeLimitExceeded("isomorphism search", len(P.elems), MAX_ISO_ELEMS)

    p_level, q_level = _levels(P), _levels(Q)

    def signature(R: FinPoset, levels: dict[str, int], x: str) -> tuple[int, int, int]:
        return len(R.down(x)), len(R.up(x)), levels[x]

    candidates = {
        x: [y for y in Q.elems if signature(Q, q_level, y) == signature(P, p_level, x)]
        for x in P.elems
    }
    if any(not ys for ys in candidates.values()):
        return None

    mapping: dict[str, str] = {}
    used: set[str] = set()

    def extend(pos: int) -> bool:
        if pos == len(P.elems):
            return True
        x = P.elems[pos]
        for y in candidates[x]:
            if y in used:
                continue
            if all(
                P.le(x, a) == Q.le(y, b) and P.le(a, x) == Q.le(b, y)
                for a, b in mapping.items()
            ):
                mapping[x] = y
                used.add(y)
                if extend(pos + 1):
                    return True
                del mapping[x]
                used.discard(y)
        return False

    if not extend(0):
        logger.debug("isomorphism search exhausted")
        return None
    if not is_order_iso(P, Q, mapping):
        raise AssertionError("isomorphism search returned a non-isomorphism")
    return dict(mapping)


def hasse_edges(P: FinPoset) -> list[tuple[str, str]]:
    """Covering pairs of P in canonical order."""
    graph = nx.DiGraph()
    graph.add_nodes_from(P.elems)
    graph.add_edges_from((x, y) for x, y in P.leq if x != y)
    reduced = nx.transitive_reduction(graph)
    return sorted(reduced.edges(), key=lambda e: (P.index[e[0]], P.index[e[1]]))


def relabel(P: FinPoset, names: Mapping[str, str]) -> FinPoset:
    """Copy of P with every element renamed through names."""
    return FinPoset(
        tuple(names[x] for x in P.elems),
        frozenset((names[x], names[y]) for x, y in P.leq),
    )


def product_poset(P: FinPoset, Q: FinPoset, sep: str = ",") -> FinPoset:
    """Cartesian product ordered coordinatewise, elements named "(p,q)"."""
    def name(x: str, y: str) -> str:
        return f"({x}{sep}{y})"

    elems = tuple(name(x, y) for x in P.elems for y in Q.elems)
    leq = frozenset(
        (name(x1, y1), name(x2, y2))
        for x1, x2 in P.leq
        for y1, y2 in Q.leq
    )
    return FinPoset(elems, leq)
