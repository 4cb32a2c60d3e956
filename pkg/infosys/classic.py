"""Witness-free systems: continuous (cis) and algebraic (ais) information systems.

Both keep a single consistency predicate and a single entailment relation.
Their models are called points. The conversions to and from systems with
witnesses check the promised domain equalities on every call.
"""

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property

from .config import FRESH_TOKEN, STRICT_PRINTED_AXIOMS
from .errors import (
    AlgPlusViolated,
    BcViolated,
    FreshTokenClash,
    InvalidSystem,
    IsoCheckFailed,
    MalformedSystem,
)
from .finposet import FinPoset, find_iso
from .isw import (
    AxiomVerdict,
    Isw,
    ValidationReport,
    WitnessedSet,
    check_condition,
    reflexive_pairs,
    reflexive_tokens,
    require_valid,
)
from .states import State, enumerate_states, state_poset
from .tokens import TokenOrder

logger = logging.getLogger(__name__)

Point = frozenset[str]


class _Plain:
    """Shared lookups for a system with one consistency predicate."""

    tokens: tuple[str, ...]
    con: frozenset[frozenset[str]]
    ent: frozenset[tuple[frozenset[str], str]]

    def _check_structure(self) -> None:
        known = set(self.tokens)
        if len(known) != len(self.tokens):
            raise MalformedSystem("duplicate token")
        for X in self.con:
            if not X <= known:
                raise MalformedSystem(f"consistent set mentions an unknown token: {sorted(X - known)}")
        for X, a in self.ent:
            if X not in self.con:
                raise MalformedSystem(f"entailment from an inconsistent set {sorted(X)}")
            if a not in known:
                raise MalformedSystem(f"entailment of unknown token {a!r}")

    @cached_property
    def order(self) -> TokenOrder:
        return TokenOrder(self.tokens)

    @cached_property
    def closure(self) -> dict[frozenset[str], frozenset[str]]:
        entailed: dict[frozenset[str], set[str]] = {X: set() for X in self.con}
        for X, a in self.ent:
            entailed[X].add(a)
        return {X: frozenset(s) for X, s in entailed.items()}

    @cached_property
    def sorted_con(self) -> list[frozenset[str]]:
        return self.order.sort_sets(self.con)

    def cl(self, X: Iterable[str]) -> frozenset[str]:
        return self.closure.get(frozenset(X), frozenset())

    def show(self, X: Iterable[str]) -> str:
        return self.order.show(X)


@dataclass(frozen=True)
class Cis(_Plain):
    tokens: tuple[str, ...]
    con: frozenset[frozenset[str]]
    ent: frozenset[tuple[frozenset[str], str]]

    def __post_init__(self) -> None:
        self._check_structure()


@dataclass(frozen=True)
class Ais(_Plain):
    tokens: tuple[str, ...]
    delta: str
    con: frozenset[frozenset[str]]
    ent: frozenset[tuple[frozenset[str], str]]

    def __post_init__(self) -> None:
        self._check_structure()
        if self.delta not in self.tokens:
            raise MalformedSystem(f"delta {self.delta!r} is not a token")


def _fails(axiom: str, detail: str) -> AxiomVerdict:
    return AxiomVerdict(axiom, False, detail)


def _downward_closed(C: _Plain, axiom: str) -> AxiomVerdict:
    for X in C.sorted_con:
        for b in C.order.ordered(X):
            if X - {b} not in C.con:
                return _fails(axiom, f"{C.show(X - {b})} is below {C.show(X)} but not consistent")
    return AxiomVerdict(axiom, True)


def _singletons(C: _Plain, axiom: str) -> AxiomVerdict:
    for a in C.tokens:
        if frozenset({a}) not in C.con:
            return _fails(axiom, f"{{{a}}} is not consistent")
    return AxiomVerdict(axiom, True)


def _entailed_consistent(C: _Plain, axiom: str) -> AxiomVerdict:
    for X in C.sorted_con:
        F = C.closure[X]
        if sum(1 for B in C.con if B <= F) == 2 ** len(F):
            continue
        for Y in C.order.subsets(F, "consistency of entailed sets"):
            if Y not in C.con:
                return _fails(axiom, f"{C.show(X)} entails {C.show(Y)} which is not consistent")
    return AxiomVerdict(axiom, True)


def _monotone(C: _Plain, axiom: str) -> AxiomVerdict:
    for X, Y in C.order.inclusion_pairs(C.con):
        lost = C.cl(X) - C.cl(Y)
        if lost:
            a = C.order.ordered(lost)[0]
            return _fails(axiom, f"{C.show(X)} entails {a} but the larger {C.show(Y)} does not")
    return AxiomVerdict(axiom, True)


def _cut(C: _Plain, axiom: str) -> AxiomVerdict:
    for X in C.sorted_con:
        F = C.closure[X]
        for Y in C.sorted_con:
            if Y <= F:
                extra = C.cl(Y) - F
                if extra:
                    a = C.order.ordered(extra)[0]
                    return _fails(axiom, f"{C.show(X)} entails {C.show(Y)} which entails {a}, {C.show(X)} does not")
    return AxiomVerdict(axiom, True)


def _interpolation(C: _Plain, axiom: str) -> AxiomVerdict:
    for X in C.sorted_con:
        F = C.closure[X]
        for a in C.order.ordered(F):
            if not any(Z <= F and a in C.cl(Z) for Z in C.con):
                return _fails(axiom, f"{C.show(X)} entails {a} with no consistent Z in between")
    return AxiomVerdict(axiom, True)


def validate_cis(C: Cis) -> ValidationReport:
    """Six cis axioms; the interpolation axiom is checked in both directions."""
    has_empty = (
        AxiomVerdict("1", True) if frozenset() in C.con else _fails("1", "{} is not consistent")
    )
    cut = _cut(C, "6")
    interpolation = _interpolation(C, "6")
    sixth = cut if not cut.holds else interpolation
    return ValidationReport(
        (
            has_empty,
            _downward_closed(C, "2"),
            _singletons(C, "3"),
            _entailed_consistent(C, "4"),
            _monotone(C, "5"),
            sixth,
        ),
        (
            AxiomVerdict("6 (cut direction)", cut.holds, cut.detail),
            AxiomVerdict("6 (interpolation direction)", interpolation.holds, interpolation.detail),
        ),
    )


def _printed_fifth(A: Ais) -> AxiomVerdict:
    """X and Y consistent, X entails Y and a, so Y entails a."""
    name = "5 (printed form)"
    for X in A.sorted_con:
        F = A.closure[X]
        for Y in A.sorted_con:
            if Y <= F and not F <= A.cl(Y):
                a = A.order.ordered(F - A.cl(Y))[0]
                return _fails(name, f"{A.show(X)} entails {A.show(Y)} and {a}, {A.show(Y)} does not entail {a}")
    return AxiomVerdict(name, True)


def validate_ais(A: Ais, strict: bool | None = None) -> ValidationReport:
    """Six ais axioms, reading the fifth as the cut rule.

    With ``strict`` the printed form of the fifth axiom is reported as an extra
    verdict; it never affects validity.
    """
    if strict is None:
        strict = STRICT_PRINTED_AXIOMS

    v3 = AxiomVerdict("3", True)
    for X in A.sorted_con:
        for a in A.order.ordered(A.closure[X]):
            if X | {a} not in A.con:
                v3 = _fails("3", f"{A.show(X)} entails {a} but {A.show(X | {a})} is not consistent")
                break
        if not v3.holds:
            break

    v4 = AxiomVerdict("4", True)
    for X in A.sorted_con:
        if A.delta not in A.closure[X]:
            v4 = _fails("4", f"{A.show(X)} does not entail {A.delta}")
            break

    v6 = AxiomVerdict("6", True)
    for X in A.sorted_con:
        missing = X - A.closure[X]
        if missing:
            v6 = _fails("6", f"{A.show(X)} does not entail its member {A.order.ordered(missing)[0]}")
            break

    verdicts = (
        _downward_closed(A, "1"),
        _singletons(A, "2"),
        v3,
        v4,
        _cut(A, "5"),
        v6,
    )
    extras = (_printed_fifth(A),) if strict else ()
    return ValidationReport(verdicts, extras)


def _require(report: ValidationReport, what: str) -> None:
    if not report.valid:
        first = report.failures[0]
        raise InvalidSystem(f"{what} axiom {first.axiom} fails {first.detail}")


def cis_points(C: Cis) -> list[Point]:
    """Subsets that are finitely consistent, closed and derivable."""
    _require(validate_cis(C), "cis")
    points = []
    for x in C.order.subsets(C.tokens, "cis points"):
        inside = [X for X in C.con if X <= x]
        if len(inside) != 2 ** len(x):
            continue
        derived = frozenset().union(*(C.closure[X] for X in inside))
        if derived <= x and x <= derived:
            points.append(x)
    return points


def ais_points(A: Ais) -> list[Point]:
    """Subsets that are finitely consistent and closed."""
    _require(validate_ais(A, strict=False), "ais")
    points = []
    for x in A.order.subsets(A.tokens, "ais points"):
        inside = [X for X in A.con if X <= x]
        if len(inside) != 2 ** len(x):
            continue
        if all(A.closure[X] <= x for X in inside):
            points.append(x)
    return points


def point_poset(order: TokenOrder, points: Iterable[Point]) -> FinPoset:
    """Points ordered by inclusion, named by their canonical printing."""
    points = order.sort_sets(points)
    names = tuple(order.show(x) for x in points)
    leq = frozenset(
        (names[m], names[n])
        for m, x in enumerate(points)
        for n, y in enumerate(points)
        if x <= y
    )
    return FinPoset(names, leq)


def isw_from_cis(C: Cis) -> Isw:
    """Adjoin a fresh bottom token that every set may carry and every set entails."""
    if FRESH_TOKEN in C.tokens:
        raise FreshTokenClash(f"token {FRESH_TOKEN!r} already occurs in the cis")
    _require(validate_cis(C), "cis")
    eps = FRESH_TOKEN
    tokens = (eps,) + C.tokens
    con = set()
    ent = set()
    for i in tokens:
        for Y in C.con:
            entailed = C.closure[Y] | {eps}
            for body in (Y, Y | {eps}):
                p = WitnessedSet(i, body)
                con.add(p)
                ent.update((p, a) for a in entailed)
    S = Isw(tokens, eps, frozenset(con), frozenset(ent))
    require_valid(S)
    return S


def cis_state_iso(C: Cis) -> dict[Point, State]:
    """x -> x plus the fresh token, checked to be an order isomorphism."""
    S = isw_from_cis(C)
    points = cis_points(C)
    iso = {x: x | {FRESH_TOKEN} for x in points}
    if set(iso.values()) != set(enumerate_states(S)):
        raise IsoCheckFailed("points and states do not correspond")
    for x in points:
        for y in points:
            if (x <= y) != (iso[x] <= iso[y]):
                raise IsoCheckFailed("correspondence is not an order isomorphism")
    return iso


def cis_from_isw(S: Isw) -> Cis:
    """Forget witnesses: X entails a when some witness makes it so."""
    require_valid(S)
    bc = check_condition(S, "BC")
    if not bc.holds:
        raise BcViolated(f"BC fails {bc.counterexample}")
    con = frozenset(p.body for p in S.con)
    ent = frozenset((p.body, a) for p, a in S.ent)
    return Cis(S.tokens, con, ent)


def isw_from_ais(A: Ais) -> Isw:
    """Every token witnesses every consistent set, with entailment unchanged."""
    _require(validate_ais(A, strict=False), "ais")
    con = frozenset(WitnessedSet(i, X) for i in A.tokens for X in A.con)
    ent = frozenset((WitnessedSet(i, X), a) for i in A.tokens for X, a in A.ent)
    S = Isw(A.tokens, A.delta, con, ent)
    require_valid(S)
    return S


def ais_from_isw(S: Isw) -> Ais:
    """Restrict to the reflexive tokens and forget witnesses among them."""
    require_valid(S)
    bc = check_condition(S, "BC")
    if not bc.holds:
        raise BcViolated(f"BC fails {bc.counterexample}")
    alg_plus = check_condition(S, "ALG+")
    if not alg_plus.holds:
        raise AlgPlusViolated(f"ALG+ fails {alg_plus.counterexample}")

    refl = reflexive_tokens(S)
    tokens = tuple(S.order.ordered(refl))
    con = set()
    ent = set()
    for p in S.con:
        if p.witness in refl and p.body <= refl:
            con.add(p.body)
            ent.update((p.body, a) for a in S.closure[p] & refl)
    A = Ais(tokens, S.delta, frozenset(con), frozenset(ent))
    _require(validate_ais(A, strict=False), "reflexive restriction")

    if find_iso(state_poset(S).poset, point_poset(A.order, ais_points(A))) is None:
        raise IsoCheckFailed("states and points of the reflexive restriction are not isomorphic")
    return A


def refl_lemma_holds(S: Isw) -> bool:
    """Every consistent set built from reflexive tokens is itself reflexive."""
    refl_tokens = reflexive_tokens(S)
    refl = reflexive_pairs(S)
    return all(
        p in refl for p in S.con if p.witness in refl_tokens and p.body <= refl_tokens
    )
