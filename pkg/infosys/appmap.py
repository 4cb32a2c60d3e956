"""Approximable mappings between systems and the state functions they induce.

Composition is diagrammatic: ``compose(H, G)`` applies H first, then G.
"""

import logging
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product as cartesian

from .config import MAX_FUNCTION_TABLES, MAX_RELATION_ENUM
from .errors import MalformedMap, NotAState, NotMonotone, SizeLimitExceeded, SystemMismatch
from .isw import AxiomVerdict, Isw, ValidationReport, WitnessedSet, require_valid
from .states import State, enumerate_states, is_state

logger = logging.getLogger(__name__)

MapReport = ValidationReport


@dataclass(frozen=True)
class ApproxMap:
    source: Isw
    target: Isw
    rel: frozenset[tuple[WitnessedSet, str]]

    def __post_init__(self) -> None:
        known = set(self.target.tokens)
        for p, b in self.rel:
            if p not in self.source.con:
                raise MalformedMap(f"{self.source.show_pair(p)} is not consistent in the source")
            if b not in known:
                raise MalformedMap(f"{b!r} is not a target token")

    @cached_property
    def image(self) -> dict[WitnessedSet, frozenset[str]]:
        """The tokens each source set is related to."""
        related: dict[WitnessedSet, set[str]] = {p: set() for p in self.source.con}
        for p, b in self.rel:
            related[p].add(b)
        return {p: frozenset(s) for p, s in related.items()}

    def img(self, i: str, X: Iterable[str]) -> frozenset[str]:
        return self.image.get(WitnessedSet(i, frozenset(X)), frozenset())


def _ordered_target_sets(H: ApproxMap) -> list[WitnessedSet]:
    return list(H.target.sorted_con)


def _check_target_closure(H: ApproxMap) -> AxiomVerdict:
    S, T = H.source, H.target
    for p in S.sorted_con:
        img = H.image[p]
        for q in _ordered_target_sets(H):
            if q.witness in img and q.body <= img:
                extra = T.closure[q] - img
                if extra:
                    b = T.order.ordered(extra)[0]
                    return AxiomVerdict(
                        "1", False,
                        f"{S.show_pair(p)} reaches {T.show_pair(q)} which entails {b}, but not {b} itself",
                    )
    return AxiomVerdict("1", True)


def _check_source_monotone(H: ApproxMap) -> AxiomVerdict:
    S = H.source
    for i in S.tokens:
        for X, Y in S.order.inclusion_pairs(S.con_of[i]):
            lost = H.img(i, X) - H.img(i, Y)
            if lost:
                b = H.target.order.ordered(lost)[0]
                return AxiomVerdict("2", False, f"at i={i}: {S.show(X)} reaches {b} but {S.show(Y)} does not")
    return AxiomVerdict("2", True)


def _check_source_cut(H: ApproxMap) -> AxiomVerdict:
    S = H.source
    for p in S.sorted_con:
        i, F = p.witness, S.closure[p]
        for Y in S.bodies(i):
            if Y <= F:
                extra = H.img(i, Y) - H.image[p]
                if extra:
                    b = H.target.order.ordered(extra)[0]
                    return AxiomVerdict(
                        "3", False,
                        f"{S.show_pair(p)} entails {S.show(Y)} and ({i},{S.show(Y)}) reaches {b}, "
                        f"but {S.show_pair(p)} does not",
                    )
    return AxiomVerdict("3", True)


def _check_witness_move(H: ApproxMap) -> AxiomVerdict:
    S = H.source
    for i in S.tokens:
        for j in S.tokens:
            if not S.has(j, {i}):
                continue
            for X in S.bodies(i):
                lost = H.img(i, X) - H.img(j, X)
                if lost:
                    b = H.target.order.ordered(lost)[0]
                    return AxiomVerdict("4", False, f"at i={i} j={j} X={S.show(X)}: {b} is lost")
    return AxiomVerdict("4", True)


def _covering_sets(H: ApproxMap, p: WitnessedSet) -> list[frozenset[str]]:
    """Target closures reachable through an interpolant (c, U) entailed by p."""
    S, T = H.source, H.target
    F = S.closure[p]
    covers = []
    for c in S.order.ordered(F):
        for U in S.bodies(c):
            if not U <= F:
                continue
            img = H.img(c, U)
            covers.extend(
                T.closure[q] for q in T.sorted_con if q.witness in img and q.body <= img
            )
    return covers


def _first_uncovered(T: Isw, F: frozenset[str], covers: list[frozenset[str]]) -> frozenset[str]:
    for Y in T.order.subsets(F, "map interpolation counterexample"):
        if not any(Y <= c for c in covers):
            return Y
    return F


def _check_interpolation(H: ApproxMap) -> AxiomVerdict:
    S, T = H.source, H.target
    for p in S.sorted_con:
        F = H.image[p]
        covers = _covering_sets(H, p)
        if not any(F <= c for c in covers):
            Y = _first_uncovered(T, F, covers)
            return AxiomVerdict("5", False, f"{S.show_pair(p)} reaches {T.show(Y)} without an interpolant")
    return AxiomVerdict("5", True)


def _check_split_interpolation(H: ApproxMap) -> AxiomVerdict:
    """Source-side and target-side interpolation checked separately."""
    name = "5 (split form)"
    S, T = H.source, H.target
    for p in S.sorted_con:
        F, E = H.image[p], S.closure[p]
        if not any(F <= H.img(c, U) for c in E for U in S.con_of[c] if U <= E):
            return AxiomVerdict(name, False, f"{S.show_pair(p)}: no source interpolant")
        if not any(q.witness in F and q.body <= F and F <= T.closure[q] for q in T.con):
            return AxiomVerdict(name, False, f"{S.show_pair(p)}: no target interpolant")
    return AxiomVerdict(name, True)


def _check_delta(H: ApproxMap) -> AxiomVerdict:
    S, T = H.source, H.target
    if T.delta in H.img(S.delta, ()):
        return AxiomVerdict("6", True)
    return AxiomVerdict("6", False, f"({S.delta},{{}}) does not reach {T.delta}")


def validate_map(H: ApproxMap) -> MapReport:
    """Check the six mapping axioms and the split form of interpolation."""
    verdicts = (
        _check_target_closure(H),
        _check_source_monotone(H),
        _check_source_cut(H),
        _check_witness_move(H),
        _check_interpolation(H),
        _check_delta(H),
    )
    split = _check_split_interpolation(H)
    if all(v.holds for v in (verdicts[0], verdicts[2], verdicts[3])) and split.holds != verdicts[4].holds:
        logger.warning("map interpolation and its split form disagree")
    return ValidationReport(verdicts, (split,))


def strong_source_cut_holds(H: ApproxMap) -> bool:
    """(i,X) entails (j,Y) and (j,Y) reaches b, so (i,X) reaches b."""
    S = H.source
    for p in S.sorted_con:
        F = S.closure[p]
        for j in F:
            for Y in S.con_of[j]:
                if Y <= F and not H.img(j, Y) <= H.image[p]:
                    return False
    return True


def identity_map(S: Isw) -> ApproxMap:
    require_valid(S)
    return ApproxMap(S, S, S.ent)


def compose(H: ApproxMap, G: ApproxMap) -> ApproxMap:
    """H then G."""
    if H.target != G.source:
        raise SystemMismatch("the first map's target is not the second map's source")
    mid = H.target
    rel = set()
    for p in H.source.con:
        img = H.image[p]
        for q in mid.con:
            if q.witness in img and q.body <= img:
                rel.update((p, c) for c in G.image[q])
    return ApproxMap(H.source, G.target, frozenset(rel))


def apply_map(H: ApproxMap, x: Iterable[str]) -> State:
    """The induced state function at x."""
    x = frozenset(x)
    verdict = is_state(H.source, x)
    if not verdict.holds:
        raise NotAState(f"{H.source.show(x)} is not a state of the source")
    y = frozenset().union(
        *(H.image[p] for p in H.source.con if p.witness in x and p.body <= x)
    )
    if not is_state(H.target, y).holds:
        raise NotAState(f"image {H.target.show(y)} is not a state of the target")
    return y


@dataclass(frozen=True)
class StateFn:
    """A finite table from the states of one system to the states of another."""

    source: Isw
    target: Isw
    table: Mapping[State, State] = field(hash=False)

    def __call__(self, x: Iterable[str]) -> State:
        return self.table[frozenset(x)]

    def is_monotone(self) -> bool:
        return all(
            self.table[x] <= self.table[y]
            for x in self.table
            for y in self.table
            if x <= y
        )


def identity_fn(S: Isw) -> StateFn:
    return StateFn(S, S, {x: x for x in enumerate_states(S)})


def then(f: StateFn, g: StateFn) -> StateFn:
    """f then g, as tables."""
    return StateFn(f.source, g.target, {x: g.table[y] for x, y in f.table.items()})


def fn_from_map(H: ApproxMap) -> StateFn:
    return StateFn(H.source, H.target, {x: apply_map(H, x) for x in enumerate_states(H.source)})


def map_from_fn(S: Isw, T: Isw, f: StateFn | Mapping[State, State]) -> ApproxMap:
    """H^f: (i, X) reaches a iff a lies in f([X]_i)."""
    table = f.table if isinstance(f, StateFn) else f
    table = {frozenset(x): frozenset(y) for x, y in table.items()}
    states = set(enumerate_states(S))
    if set(table) != states:
        raise NotAState("the table must be defined on exactly the source states")
    target_states = set(enumerate_states(T))
    for x, y in table.items():
        if y not in target_states:
            raise NotAState(f"{T.show(y)} is not a state of the target")
    if not StateFn(S, T, table).is_monotone():
        raise NotMonotone("state function is not monotone")
    rel = frozenset((p, a) for p in S.con for a in table[S.closure[p]])
    return ApproxMap(S, T, rel)


def monotone_functions(S: Isw, T: Isw) -> Iterator[StateFn]:
    """Every monotone table between the state posets, by backtracking."""
    sources = enumerate_states(S)
    targets = enumerate_states(T)
    count = len(targets) ** len(sources)
    if count > MAX_FUNCTION_TABLES:
        raise SizeLimitExceeded("monotone function enumeration", count, MAX_FUNCTION_TABLES)

    # sources come sorted by size, so every earlier state that is comparable is below
    chosen: list[State] = []

    def extend(pos: int) -> Iterator[StateFn]:
        if pos == len(sources):
            yield StateFn(S, T, dict(zip(sources, chosen)))
            return
        x = sources[pos]
        for y in targets:
            if all(chosen[m] <= y for m in range(pos) if sources[m] <= x):
                chosen.append(y)
                yield from extend(pos + 1)
                chosen.pop()

    yield from extend(0)


def enumerate_maps(S: Isw, T: Isw) -> list[ApproxMap]:
    """Every valid approximable mapping S -> T, by filtering all relations."""
    cells = [(p, b) for p in S.sorted_con for b in T.tokens]
    if len(cells) > MAX_RELATION_ENUM:
        raise SizeLimitExceeded("relation enumeration", len(cells), MAX_RELATION_ENUM)
    found = []
    for bits in cartesian((False, True), repeat=len(cells)):
        rel = frozenset(cell for cell, keep in zip(cells, bits) if keep)
        H = ApproxMap(S, T, rel)
        if validate_map(H).valid:
            found.append(H)
    logger.debug(f"relation enumeration kept {len(found)} of {2 ** len(cells)}")
    return found
