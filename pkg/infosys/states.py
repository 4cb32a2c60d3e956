"""States of a system, the state poset and its approximation structure."""

import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from typing import TypeAlias

from .errors import NotAState, NotBounded, NotConsistent, NotLDomain, SizeLimitExceeded, UnknownElem
from .config import MAX_SUBSET_TOKENS
from .finposet import FinPoset, analyze
from .isw import Isw, WitnessedSet, reflexive_pairs, require_valid

logger = logging.getLogger(__name__)

State: TypeAlias = frozenset[str]


@dataclass(frozen=True)
class StateVerdict:
    holds: bool
    condition: str | None = None
    detail: str = ""


def _inside(S: Isw, x: frozenset[str]) -> list[WitnessedSet]:
    """Consistent sets whose witness and body both lie in x."""
    return [p for p in S.sorted_con if p.witness in x and p.body <= x]


def is_state(S: Isw, x: Iterable[str]) -> StateVerdict:
    """Test the three state conditions and name the first that fails."""
    x = frozenset(x)
    unknown = x - set(S.tokens)
    if unknown:
        raise UnknownElem(f"unknown tokens {sorted(unknown)}")
    inside = _inside(S, x)

    # (1) every finite subset has a witness in x
    bodies = {p.body for p in inside}
    if len(bodies) != 2 ** len(x):
        for F in S.order.subsets(x, "state condition 1"):
            if F not in bodies:
                return StateVerdict(False, "1", f"{S.show(F)} has no witness in {S.show(x)}")

    # (2) closed under entailment
    for p in inside:
        outside = S.closure[p] - x
        if outside:
            a = S.order.ordered(outside)[0]
            return StateVerdict(False, "2", f"{S.show_pair(p)} entails {a} outside the set")

    # (3) every member is derivable
    derived = frozenset().union(*(S.closure[p] for p in inside))
    if not x <= derived:
        a = S.order.ordered(x - derived)[0]
        return StateVerdict(False, "3", f"{a} is not derivable inside the set")
    return StateVerdict(True)


def st_condition_combined(S: Isw, x: Iterable[str]) -> bool:
    """The single condition replacing state conditions 1 and 3.

    x is finite, so covering x itself by one closure covers all its subsets.
    """
    x = frozenset(x)
    return any(x <= S.closure[p] for p in _inside(S, x))


def principal_state(S: Isw, p: WitnessedSet) -> State:
    """[X]_i, the set of tokens entailed by (i, X)."""
    if p not in S.con:
        raise NotConsistent(f"{S.show_pair(p)} is not consistent")
    x = S.closure[p]
    verdict = is_state(S, x)
    if not verdict.holds:
        raise NotAState(f"[{S.show(p.body)}]_{p.witness} violates condition {verdict.condition}: {verdict.detail}")
    return x


def enumerate_states(S: Isw, oracle: bool = False) -> tuple[State, ...]:
    """All states of S in canonical order.

    The default path collects the distinct principal states, which is complete
    for a finite system. ``oracle`` filters every subset of the tokens instead.
    """
    require_valid(S)
    if oracle:
        if len(S.tokens) > MAX_SUBSET_TOKENS:
            raise SizeLimitExceeded("state oracle", len(S.tokens), MAX_SUBSET_TOKENS)
        logger.debug(f"state oracle over {2 ** len(S.tokens)} subsets")
        found = {x for x in S.order.subsets(S.tokens, "state oracle") if is_state(S, x).holds}
    else:
        found = set(S.closure.values())
    return tuple(sorted(found, key=S.order.set_key))


def canonical_basis(S: Isw) -> tuple[State, ...]:
    """The distinct principal states."""
    require_valid(S)
    return tuple(sorted(set(S.closure.values()), key=S.order.set_key))


def state_name(S: Isw, x: State) -> str:
    return S.show(x)


@dataclass(frozen=True)
class StatePoset:
    system: Isw
    poset: FinPoset
    states: tuple[State, ...]
    bottom: State
    principal_index: Mapping[WitnessedSet, State] = field(compare=False)

    def name_of(self, x: State) -> str:
        return state_name(self.system, x)

    def state_of(self, name: str) -> State:
        for x in self.states:
            if self.name_of(x) == name:
                return x
        raise UnknownElem(f"no state named {name}")


def state_poset(S: Isw) -> StatePoset:
    states = enumerate_states(S)
    names = tuple(state_name(S, x) for x in states)
    leq = frozenset(
        (names[m], names[n])
        for m, x in enumerate(states)
        for n, y in enumerate(states)
        if x <= y
    )
    poset = FinPoset(names, leq)
    bottom = principal_state(S, WitnessedSet(S.delta, frozenset()))
    report = analyze(poset)
    if not report.l_domain or report.bottom != state_name(S, bottom):
        raise NotLDomain(f"state poset is not an L-domain with bottom {state_name(S, bottom)}")
    return StatePoset(S, poset, states, bottom, dict(S.closure))


def _require_state(S: Isw, x: Iterable[str]) -> State:
    x = frozenset(x)
    verdict = is_state(S, x)
    if not verdict.holds:
        raise NotAState(f"{S.show(x)} is not a state: condition {verdict.condition} fails, {verdict.detail}")
    return x


def approx(S: Isw, x: Iterable[str], y: Iterable[str]) -> bool:
    """x approximates y iff a consistent set inside y entails all of x."""
    x, y = _require_state(S, x), _require_state(S, y)
    return any(x <= S.closure[p] for p in _inside(S, y))


def state_local_lub(S: Isw, x: Iterable[str], y: Iterable[str], z: Iterable[str]) -> State:
    """Least upper bound of x and y among the states below z."""
    x, y, z = _require_state(S, x), _require_state(S, y), _require_state(S, z)
    if not (x <= z and y <= z):
        raise NotBounded(f"{S.show(x)} and {S.show(y)} are not both below {S.show(z)}")
    union = x | y
    return frozenset().union(
        *(S.closure[p] for p in S.sorted_con if p.witness in z and p.body <= union)
    )


def principal_is_compact(S: Isw, p: WitnessedSet) -> bool:
    """Compactness of [Z]_i through a reflexive pair it entails."""
    if p not in S.con:
        raise NotConsistent(f"{S.show_pair(p)} is not consistent")
    target = S.closure[p]
    return any(
        q.witness in target and q.body <= target and target <= S.closure[q]
        for q in reflexive_pairs(S)
    )


def approximants(S: Isw, z: Iterable[str]) -> list[State]:
    """The principal states [X]_i with i and X inside z."""
    z = frozenset(z)
    return S.order.sort_sets({S.closure[p] for p in _inside(S, z)})


def reflexive_approximants(S: Isw, z: Iterable[str]) -> list[State]:
    """As :func:`approximants`, restricted to reflexive pairs."""
    z = frozenset(z)
    refl = reflexive_pairs(S)
    return S.order.sort_sets({S.closure[p] for p in _inside(S, z) if p in refl})


def is_directed(family: Iterable[State]) -> bool:
    members = list(family)
    if not members:
        return False
    return all(any(x | y <= w for w in members) for x in members for y in members)
