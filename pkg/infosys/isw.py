"""Information systems with witnesses: the data type, its axiom validator and side conditions.

A system is stored extensionally. ``con`` lists the witnessed consistent sets
(i, X) and ``ent`` the entailments ((i, X), a). The validator checks a given
relation; it never completes one. :func:`entailment_closure` is the authoring
helper for the closure axioms.
"""

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Literal, NamedTuple

from .errors import InvalidSystem, MalformedSystem, NotConsistent
from .tokens import TokenOrder

logger = logging.getLogger(__name__)

Condition = Literal["BC", "ALG", "SALG", "ALG+"]
CONDITIONS: tuple[Condition, ...] = ("BC", "ALG", "SALG", "ALG+")


class WitnessedSet(NamedTuple):
    witness: str
    body: frozenset[str]


def ws(witness: str, *body: str) -> WitnessedSet:
    """Shorthand constructor: ``ws("t1", "a", "b")``."""
    return WitnessedSet(witness, frozenset(body))


@dataclass(frozen=True)
class Isw:
    tokens: tuple[str, ...]
    delta: str
    con: frozenset[WitnessedSet]
    ent: frozenset[tuple[WitnessedSet, str]]

    def __post_init__(self) -> None:
        if len(set(self.tokens)) != len(self.tokens):
            raise MalformedSystem("duplicate token")
        known = set(self.tokens)
        if self.delta not in known:
            raise MalformedSystem(f"delta {self.delta!r} is not a token")
        for p in self.con:
            if p.witness not in known or not p.body <= known:
                raise MalformedSystem(f"consistent set mentions an unknown token: {p}")
        for p, a in self.ent:
            if p not in self.con:
                raise MalformedSystem(f"entailment from a set outside con: {p}")
            if a not in known:
                raise MalformedSystem(f"entailment of unknown token {a!r}")

    @cached_property
    def order(self) -> TokenOrder:
        return TokenOrder(self.tokens)

    @cached_property
    def con_of(self) -> dict[str, frozenset[frozenset[str]]]:
        """Con(i) for every token i."""
        bodies: dict[str, set[frozenset[str]]] = {t: set() for t in self.tokens}
        for p in self.con:
            bodies[p.witness].add(p.body)
        return {t: frozenset(b) for t, b in bodies.items()}

    @cached_property
    def closure(self) -> dict[WitnessedSet, frozenset[str]]:
        """[X]_i for every (i, X) in con."""
        entailed: dict[WitnessedSet, set[str]] = {p: set() for p in self.con}
        for p, a in self.ent:
            entailed[p].add(a)
        return {p: frozenset(s) for p, s in entailed.items()}

    @cached_property
    def sorted_con(self) -> tuple[WitnessedSet, ...]:
        return tuple(sorted(self.con, key=self.pair_key))

    def pair_key(self, p: WitnessedSet) -> tuple:
        return (self.order.index[p.witness],) + self.order.set_key(p.body)

    def bodies(self, i: str) -> list[frozenset[str]]:
        return self.order.sort_sets(self.con_of[i])

    def has(self, i: str, X: Iterable[str]) -> bool:
        return frozenset(X) in self.con_of[i]

    def cl(self, i: str, X: Iterable[str]) -> frozenset[str]:
        """[X]_i, empty when (i, X) is not consistent."""
        return self.closure.get(WitnessedSet(i, frozenset(X)), frozenset())

    def show(self, X: Iterable[str]) -> str:
        return self.order.show(X)

    def show_pair(self, p: WitnessedSet) -> str:
        return f"({p.witness},{self.show(p.body)})"


@dataclass(frozen=True)
class AxiomVerdict:
    axiom: str
    holds: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    verdicts: tuple[AxiomVerdict, ...]
    extras: tuple[AxiomVerdict, ...] = ()

    @property
    def valid(self) -> bool:
        return all(v.holds for v in self.verdicts)

    @property
    def failures(self) -> list[AxiomVerdict]:
        return [v for v in self.verdicts if not v.holds]

    def verdict(self, axiom: str) -> AxiomVerdict:
        for v in self.verdicts + self.extras:
            if v.axiom == axiom:
                return v
        raise KeyError(axiom)


def _holds(axiom: str) -> AxiomVerdict:
    return AxiomVerdict(axiom, True)


def _fails(axiom: str, detail: str) -> AxiomVerdict:
    return AxiomVerdict(axiom, False, detail)


# Axiom checks shared with the frame validator. Each takes the per-witness
# consistency families and a closure lookup.

def check_self_consistency(S: Isw, axiom: str = "1") -> AxiomVerdict:
    for i in S.tokens:
        if not S.has(i, {i}):
            return _fails(axiom, f"at i={i}: {{{i}}} is not consistent at {i}")
    return _holds(axiom)


def check_downward_closure(S: Isw, axiom: str = "2") -> AxiomVerdict:
    # closure under dropping one member is equivalent and linear in |con|
    for p in S.sorted_con:
        for b in S.order.ordered(p.body):
            Y = p.body - {b}
            if not S.has(p.witness, Y):
                return _fails(
                    axiom,
                    f"at i={p.witness}: {S.show(Y)} is below {S.show(p.body)} but not consistent",
                )
    return _holds(axiom)


def check_delta(S: Isw, axiom: str = "3") -> AxiomVerdict:
    for i in S.tokens:
        if S.delta not in S.cl(i, ()):
            return _fails(axiom, f"at ({i},{{}}): {S.delta} is not entailed")
    return _holds(axiom)


def _missing_subset(S: Isw, i: str, F: frozenset[str]) -> frozenset[str] | None:
    """First subset of F outside Con(i), or None."""
    inside = sum(1 for B in S.con_of[i] if B <= F)
    if inside == 2 ** len(F):
        return None
    for Y in S.order.subsets(F, "consistency of entailed sets"):
        if not S.has(i, Y):
            return Y
    return None


def check_entailed_consistent(S: Isw, axiom: str = "4") -> AxiomVerdict:
    for p in S.sorted_con:
        missing = _missing_subset(S, p.witness, S.closure[p])
        if missing is not None:
            return _fails(
                axiom,
                f"at {S.show_pair(p)}: entails {S.show(missing)} which is not consistent at {p.witness}",
            )
    return _holds(axiom)


def check_monotone(S: Isw, axiom: str = "5") -> AxiomVerdict:
    for i in S.tokens:
        for X, Y in S.order.inclusion_pairs(S.con_of[i]):
            lost = S.cl(i, X) - S.cl(i, Y)
            if lost:
                a = S.order.ordered(lost)[0]
                return _fails(
                    axiom,
                    f"at i={i}: {S.show(X)} entails {a} but the larger {S.show(Y)} does not",
                )
    return _holds(axiom)


def check_cut(S: Isw, axiom: str = "6", shortcut: bool = False) -> AxiomVerdict:
    """(i, X) entails Y and (i, Y) entails a, so (i, X) entails a.

    With ``shortcut`` only the largest entailed Y is examined, which suffices
    once axioms 4 and 5 hold.
    """
    for p in S.sorted_con:
        i, F = p.witness, S.closure[p]
        if shortcut and S.has(i, F):
            candidates = [F]
        else:
            candidates = [Y for Y in S.bodies(i) if Y <= F]
        for Y in candidates:
            extra = S.cl(i, Y) - F
            if extra:
                a = S.order.ordered(extra)[0]
                return _fails(
                    axiom,
                    f"at {S.show_pair(p)}: entails {S.show(Y)} and ({i},{S.show(Y)}) entails {a}, "
                    f"but {S.show_pair(p)} does not",
                )
    return _holds(axiom)


def _interpolants(S: Isw, F: frozenset[str]) -> list[frozenset[str]]:
    """Closures of the consistent sets (e, Z) with e and Z inside F."""
    return [S.cl(e, Z) for e in S.order.ordered(F) for Z in S.bodies(e) if Z <= F]


def _first_uncovered(S: Isw, F: frozenset[str], covers: list[frozenset[str]]) -> frozenset[str]:
    for Y in S.order.subsets(F, "interpolation counterexample"):
        if not any(Y <= c for c in covers):
            return Y
    return F


def _check_interpolation(S: Isw) -> AxiomVerdict:
    for p in S.sorted_con:
        F = S.closure[p]
        covers = _interpolants(S, F)
        if not any(F <= c for c in covers):
            Y = _first_uncovered(S, F, covers)
            return _fails(
                "10",
                f"at {S.show_pair(p)}: no (e,Z) entailed by it entails {S.show(Y)}",
            )
    return _holds("10")


def _check_split_interpolation(S: Isw) -> AxiomVerdict:
    """Local interpolation plus witness interpolation, the split form of axiom 10."""
    name = "10 (split form)"
    for p in S.sorted_con:
        i, F = p.witness, S.closure[p]
        for a in S.order.ordered(F):
            if not any(Z <= F and a in S.cl(i, Z) for Z in S.con_of[i]):
                return _fails(name, f"at {S.show_pair(p)}: no Z in Con({i}) interpolates {a}")
        if not any(S.has(j, F) for j in F):
            return _fails(name, f"at {S.show_pair(p)}: no entailed witness for {S.show(F)}")
    return _holds(name)


def _check_witness_extension(S: Isw) -> AxiomVerdict:
    for i in S.tokens:
        for j in S.tokens:
            if S.has(j, {i}) and not S.con_of[i] <= S.con_of[j]:
                X = S.order.sort_sets(S.con_of[i] - S.con_of[j])[0]
                return _fails("7", f"at i={i} j={j}: {S.show(X)} is consistent at {i} but not at {j}")
    return _holds("7")


def _check_witness_transfer(S: Isw) -> tuple[AxiomVerdict, AxiomVerdict]:
    forward: AxiomVerdict | None = None
    backward: AxiomVerdict | None = None
    for i in S.tokens:
        for j in S.tokens:
            if not S.has(j, {i}):
                continue
            for X in S.bodies(i):
                here, there = S.cl(i, X), S.cl(j, X)
                if forward is None and here - there:
                    a = S.order.ordered(here - there)[0]
                    forward = _fails("8", f"at i={i} j={j} X={S.show(X)}: ({i},X) entails {a}, ({j},X) does not")
                if backward is None and there - here:
                    a = S.order.ordered(there - here)[0]
                    backward = _fails("9", f"at i={i} j={j} X={S.show(X)}: ({j},X) entails {a}, ({i},X) does not")
    return forward or _holds("8"), backward or _holds("9")


@lru_cache(maxsize=256)
def validate_isw(S: Isw) -> ValidationReport:
    """Check the ten axioms; each failure carries its first counterexample."""
    logger.debug(f"validating system over {len(S.tokens)} tokens, {len(S.con)} consistent sets")
    v1 = check_self_consistency(S)
    v2 = check_downward_closure(S)
    v3 = check_delta(S)
    v4 = check_entailed_consistent(S)
    v5 = check_monotone(S)
    v6 = check_cut(S, shortcut=v4.holds and v5.holds)
    v7 = _check_witness_extension(S)
    v8, v9 = _check_witness_transfer(S)
    v10 = _check_interpolation(S)
    split = _check_split_interpolation(S)
    transfer_axioms = (v2, v4, v5, v7, v8, v9)
    if all(v.holds for v in transfer_axioms) and split.holds != v10.holds:
        logger.warning("axiom 10 and its split form disagree")
    return ValidationReport((v1, v2, v3, v4, v5, v6, v7, v8, v9, v10), (split,))


def require_valid(S: Isw) -> None:
    report = validate_isw(S)
    if not report.valid:
        first = report.failures[0]
        raise InvalidSystem(f"axiom {first.axiom} fails {first.detail}")


def entails(S: Isw, p: WitnessedSet, a: str) -> bool:
    if p not in S.con:
        raise NotConsistent(f"{S.show_pair(p)} is not consistent")
    return a in S.closure[p]


def entails_all(S: Isw, p: WitnessedSet, Y: Iterable[str]) -> bool:
    """(i, X) entails every member of Y."""
    if p not in S.con:
        raise NotConsistent(f"{S.show_pair(p)} is not consistent")
    return frozenset(Y) <= S.closure[p]


def entails_pair(S: Isw, p: WitnessedSet, q: WitnessedSet) -> bool:
    """(i, X) entails the witness and the body of q."""
    return entails_all(S, p, q.body | {q.witness})


def strong_cut_holds(S: Isw) -> bool:
    """(i,X) entails (j,Y) and (j,Y) entails a, so (i,X) entails a."""
    for p in S.sorted_con:
        F = S.closure[p]
        for j in F:
            for Y in S.con_of[j]:
                if Y <= F and not S.cl(j, Y) <= F:
                    return False
    return True


def reflexive_pairs(S: Isw) -> frozenset[WitnessedSet]:
    return frozenset(
        p for p in S.con if p.body | {p.witness} <= S.closure[p]
    )


def reflexive_tokens(S: Isw) -> frozenset[str]:
    return frozenset(j for j in S.tokens if j in S.cl(j, {j}))


@dataclass(frozen=True)
class ConditionReport:
    condition: Condition
    holds: bool
    counterexample: str | None = None
    refl_pairs: frozenset[WitnessedSet] | None = None


def _check_bc(S: Isw) -> ConditionReport:
    by_body: dict[frozenset[str], list[str]] = {}
    for p in S.con:
        by_body.setdefault(p.body, []).append(p.witness)
    for X in S.order.sort_sets(by_body):
        witnesses = S.order.ordered(by_body[X])
        for n, i in enumerate(witnesses):
            for j in witnesses[n + 1:]:
                diff = S.cl(i, X) ^ S.cl(j, X)
                if diff:
                    a = S.order.ordered(diff)[0]
                    return ConditionReport(
                        "BC", False, f"i={i} j={j} X={S.show(X)} a={a}"
                    )
    return ConditionReport("BC", True)


def _check_alg(S: Isw, refl: frozenset[WitnessedSet]) -> ConditionReport:
    refl_sorted = sorted(refl, key=S.pair_key)
    for p in S.sorted_con:
        F = S.closure[p]
        covers = [
            S.closure[q] for q in refl_sorted if q.witness in F and q.body <= F
        ]
        if not any(F <= c for c in covers):
            Y = _first_uncovered(S, F, covers)
            return ConditionReport(
                "ALG", False, f"{S.show_pair(p)} entails {S.show(Y)} without a reflexive interpolant", refl
            )
    return ConditionReport("ALG", True, None, refl)


def _check_salg(S: Isw) -> ConditionReport:
    for p in S.sorted_con:
        i, F = p.witness, S.closure[p]
        for a in S.order.ordered(F):
            if not any(
                Z <= F and Z <= S.cl(i, Z) and a in S.cl(i, Z) for Z in S.con_of[i]
            ):
                return ConditionReport(
                    "SALG", False, f"{S.show_pair(p)} entails {a} without a self-entailing Z in Con({i})"
                )
    return ConditionReport("SALG", True)


def _check_alg_plus(S: Isw) -> ConditionReport:
    refl_tokens = reflexive_tokens(S)
    for p in S.sorted_con:
        F = S.closure[p]
        covers = [S.cl(j, {j}) for j in S.order.ordered(F & refl_tokens)]
        if not any(F <= c for c in covers):
            Y = _first_uncovered(S, F, covers)
            return ConditionReport(
                "ALG+", False, f"{S.show_pair(p)} entails {S.show(Y)} without a reflexive token covering it"
            )
    return ConditionReport("ALG+", True)


def check_condition(S: Isw, which: Condition) -> ConditionReport:
    """Evaluate one of the side conditions BC, ALG, SALG, ALG+ on a valid system."""
    require_valid(S)
    match which:
        case "BC":
            return _check_bc(S)
        case "ALG":
            return _check_alg(S, reflexive_pairs(S))
        case "SALG":
            return _check_salg(S)
        case "ALG+":
            return _check_alg_plus(S)
    raise ValueError(f"unknown condition {which!r}")


def classify(S: Isw) -> list[str]:
    """The categories among ISW, aISW, bcISW, abcISW the system belongs to."""
    require_valid(S)
    alg = check_condition(S, "ALG").holds
    bc = check_condition(S, "BC").holds
    kinds = ["ISW"]
    if alg:
        kinds.append("aISW")
    if bc:
        kinds.append("bcISW")
    if alg and bc:
        kinds.append("abcISW")
    return kinds


def entailment_closure(
    tokens: Iterable[str],
    delta: str,
    con: Iterable[WitnessedSet],
    seed: Iterable[tuple[WitnessedSet, str]] = (),
) -> Isw:
    """Least entailment over con containing seed and closed under axioms 3, 5 and 6.

    Axiom 10 cannot be completed this way; validate the result.
    """
    tokens = tuple(tokens)
    con = frozenset(con)
    entailed: dict[WitnessedSet, set[str]] = {p: set() for p in con}
    for p, a in seed:
        entailed[p].add(a)
    for p in con:
        if not p.body:
            entailed[p].add(delta)
    order = TokenOrder(tokens)
    by_witness: dict[str, list[frozenset[str]]] = {}
    for p in con:
        by_witness.setdefault(p.witness, []).append(p.body)

    changed = True
    rounds = 0
    while changed:
        changed = False
        rounds += 1
        for i, family in by_witness.items():
            for X, Y in order.inclusion_pairs(family):
                small, big = entailed[WitnessedSet(i, X)], entailed[WitnessedSet(i, Y)]
                if not small <= big:
                    big |= small
                    changed = True
            for X in family:
                here = entailed[WitnessedSet(i, X)]
                for Y in family:
                    if Y <= here:
                        there = entailed[WitnessedSet(i, Y)]
                        if not there <= here:
                            here |= there
                            changed = True
    logger.debug(f"entailment closure settled after {rounds} rounds")
    ent = frozenset((p, a) for p, targets in entailed.items() for a in targets)
    return Isw(tokens, delta, con, ent)
