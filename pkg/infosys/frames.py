"""Information frames: one consistency predicate and one entailment relation per token.

The accessibility relation is never stored; ``i R j`` holds exactly when
``{i}`` is consistent at ``j``.
"""

import logging
from collections.abc import Mapping
from dataclasses import dataclass
from functools import cached_property

from .errors import InvalidFrame, MalformedFrame
from .isw import (
    AxiomVerdict,
    Isw,
    ValidationReport,
    WitnessedSet,
    check_cut,
    check_delta,
    check_downward_closure,
    check_entailed_consistent,
    check_monotone,
    check_self_consistency,
    require_valid,
)
from .tokens import TokenOrder

logger = logging.getLogger(__name__)

FRAME_AXIOMS = ("1", "2", "3", "4", "5", "6", "6+", "7", "8", "9", "10", "11")

FrameReport = ValidationReport


@dataclass(frozen=True)
class Frame:
    tokens: tuple[str, ...]
    delta: str
    con_of: Mapping[str, frozenset[frozenset[str]]]
    ent_of: Mapping[str, frozenset[tuple[frozenset[str], str]]]

    def __post_init__(self) -> None:
        known = set(self.tokens)
        if len(known) != len(self.tokens):
            raise MalformedFrame("duplicate token")
        if self.delta not in known:
            raise MalformedFrame(f"delta {self.delta!r} is not a token")
        if set(self.con_of) != known or set(self.ent_of) != known:
            raise MalformedFrame("every token needs a consistency family and an entailment relation")
        for i in self.tokens:
            for X in self.con_of[i]:
                if not X <= known:
                    raise MalformedFrame(f"con@{i} mentions an unknown token")
            for X, a in self.ent_of[i]:
                if X not in self.con_of[i]:
                    raise MalformedFrame(f"ent@{i} starts from a set outside con@{i}")
                if a not in known:
                    raise MalformedFrame(f"ent@{i} entails unknown token {a!r}")

    @cached_property
    def order(self) -> TokenOrder:
        return TokenOrder(self.tokens)

    def cl(self, i: str, X: frozenset[str]) -> frozenset[str]:
        return frozenset(a for Y, a in self.ent_of[i] if Y == X)

    def related(self, i: str, j: str) -> bool:
        return frozenset({i}) in self.con_of[j]


def accessibility(F: Frame) -> frozenset[tuple[str, str]]:
    """The derived relation ``i R j``; it is a preorder on a valid frame."""
    rel = frozenset((i, j) for i in F.tokens for j in F.tokens if F.related(i, j))
    reflexive = all((i, i) in rel for i in F.tokens)
    transitive = all((i, k) in rel for i, j in rel for j2, k in rel if j == j2)
    if not (reflexive and transitive):
        raise InvalidFrame("accessibility is not a preorder")
    return rel


def _as_system(F: Frame) -> Isw:
    """The same data read as one global relation, with no validation."""
    con = frozenset(WitnessedSet(i, X) for i in F.tokens for X in F.con_of[i])
    ent = frozenset((WitnessedSet(i, X), a) for i in F.tokens for X, a in F.ent_of[i])
    return Isw(F.tokens, F.delta, con, ent)


def _check_local_interpolation(S: Isw) -> AxiomVerdict:
    for p in S.sorted_con:
        i, F = p.witness, S.closure[p]
        for a in S.order.ordered(F):
            if not any(Z <= F and a in S.cl(i, Z) for Z in S.con_of[i]):
                return AxiomVerdict("6+", False, f"at {S.show_pair(p)}: no Z in con@{i} interpolates {a}")
    return AxiomVerdict("6+", True)


def _check_access_extension(F: Frame) -> AxiomVerdict:
    for i in F.tokens:
        for j in F.tokens:
            if F.related(i, j) and not F.con_of[i] <= F.con_of[j]:
                X = F.order.sort_sets(F.con_of[i] - F.con_of[j])[0]
                return AxiomVerdict("7", False, f"at i={i} j={j}: {F.order.show(X)} in con@{i} but not con@{j}")
    return AxiomVerdict("7", True)


def _check_access_transfer(F: Frame) -> tuple[AxiomVerdict, AxiomVerdict]:
    forward = backward = None
    for i in F.tokens:
        for j in F.tokens:
            if not F.related(i, j):
                continue
            for X in F.order.sort_sets(F.con_of[i]):
                here, there = F.cl(i, X), F.cl(j, X)
                if forward is None and here - there:
                    a = F.order.ordered(here - there)[0]
                    forward = AxiomVerdict("9", False, f"at i={i} j={j} X={F.order.show(X)}: lost {a} moving to {j}")
                if backward is None and there - here:
                    a = F.order.ordered(there - here)[0]
                    backward = AxiomVerdict("10", False, f"at i={i} j={j} X={F.order.show(X)}: {j} adds {a}")
    return forward or AxiomVerdict("9", True), backward or AxiomVerdict("10", True)


def _check_witness_interpolation(S: Isw) -> AxiomVerdict:
    for p in S.sorted_con:
        F = S.closure[p]
        if any(S.has(e, F) for e in F):
            continue
        for Y in S.order.subsets(F, "frame axiom 11"):
            if not any(S.has(e, Y) for e in F):
                return AxiomVerdict("11", False, f"at {S.show_pair(p)}: no entailed e has {S.show(Y)} in con@e")
    return AxiomVerdict("11", True)


def validate_frame(F: Frame) -> FrameReport:
    """Check all twelve frame axioms with the accessibility relation derived."""
    S = _as_system(F)
    v4 = check_entailed_consistent(S, "4")
    v5 = check_monotone(S, "5")
    v9, v10 = _check_access_transfer(F)
    verdicts = (
        check_self_consistency(S, "1"),
        check_downward_closure(S, "2"),
        check_delta(S, "3"),
        v4,
        v5,
        check_cut(S, "6", shortcut=v4.holds and v5.holds),
        _check_local_interpolation(S),
        _check_access_extension(F),
        AxiomVerdict("8", True, "accessibility is derived from consistency"),
        v9,
        v10,
        _check_witness_interpolation(S),
    )
    return ValidationReport(verdicts)


def frame_to_isw(F: Frame) -> Isw:
    report = validate_frame(F)
    if not report.valid:
        first = report.failures[0]
        raise InvalidFrame(f"frame axiom {first.axiom} fails {first.detail}")
    return _as_system(F)


def isw_to_frame(S: Isw) -> Frame:
    require_valid(S)
    ent_of: dict[str, set[tuple[frozenset[str], str]]] = {t: set() for t in S.tokens}
    for p, a in S.ent:
        ent_of[p.witness].add((p.body, a))
    return Frame(
        S.tokens,
        S.delta,
        dict(S.con_of),
        {t: frozenset(e) for t, e in ent_of.items()},
    )


def lemma_eq4(F: Frame) -> tuple[bool, bool]:
    """Both statements relating entailed witnesses to accessibility.

    The first: under axiom 4, whatever a node entails can reach it. The
    second: that property together with axiom 11 gives back axiom 4.
    Both assume axioms 7 and 8; without axiom 7 they claim nothing and
    ``(True, True)`` is returned. Axiom 8 holds by construction.
    """
    report = validate_frame(F)
    if not report.verdict("7").holds:
        return True, True
    ax4 = report.verdict("4").holds
    ax11 = report.verdict("11").holds
    reaches = all(
        F.related(j, i)
        for i in F.tokens
        for X in F.con_of[i]
        for j in F.cl(i, X)
    )
    return (not ax4 or reaches), (not (reaches and ax11) or ax4)


def global_interpolation(F: Frame) -> tuple[bool, bool]:
    """Axioms 6+ and 11 together, and the combined interpolation form.

    The combined form: whenever X entails F at i there are j and Y in con@j
    such that X entails j and Y at i, and Y entails F at j. The two sides
    agree on frames satisfying axioms 4, 5, 7, 9 and 10.
    """
    report = validate_frame(F)
    local = report.verdict("6+").holds and report.verdict("11").holds
    S = _as_system(F)
    combined = all(
        any(
            S.cl(j, Y) >= target
            for j in target
            for Y in S.con_of[j]
            if Y <= target
        )
        for target in (S.closure[p] for p in S.sorted_con)
    )
    return local, combined


def check_declared_accessibility(F: Frame, declared: frozenset[tuple[str, str]]) -> list[tuple[str, str]]:
    """Pairs where a declared relation and the derived one disagree."""
    derived = frozenset((i, j) for i in F.tokens for j in F.tokens if F.related(i, j))
    mismatch = declared ^ derived
    return sorted(mismatch, key=lambda e: (F.order.index[e[0]], F.order.index[e[1]]))
