"""From a finite L-domain to a system with witnesses and back again.

Every element of a finite poset is compact, so the basis is the whole poset
and the approximation relation is the order itself.
"""

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field

from .appmap import ApproxMap
from .errors import IsoCheckFailed, NotAState, NotLDomain, NotMonotone
from .finposet import FinPoset, analyze, local_lub, monotone
from .isw import Isw, WitnessedSet, check_condition, require_valid
from .states import State, enumerate_states, is_state
from .tokens import TokenOrder

logger = logging.getLogger(__name__)


def isw_from_poset(D: FinPoset) -> Isw:
    """I(D): (i, X) is consistent iff X lies below i, and entails what lies below its local lub."""
    report = analyze(D)
    if not report.l_domain:
        gap = report.l_domain_counterexample
        if gap is None or gap.z is None:
            raise NotLDomain("poset has no least element")
        x, y = gap.pair
        raise NotLDomain(f"{x} and {y} have no least upper bound below {gap.z}")

    order = TokenOrder(D.elems)
    con = set()
    ent = set()
    for i in D.elems:
        for X in order.subsets(D.down(i), "consistent sets of I(D)"):
            p = WitnessedSet(i, X)
            con.add(p)
            ent.update((p, a) for a in D.down(local_lub(D, i, X)))
    S = Isw(D.elems, D.bottom, frozenset(con), frozenset(ent))
    logger.debug(f"I(D) has {len(con)} consistent sets over {len(D.elems)} tokens")
    return S


@dataclass(frozen=True)
class DomSysBridge:
    source: FinPoset
    system: Isw
    sp: Mapping[State, str] = field(hash=False)
    st: Mapping[str, State] = field(hash=False)


def sp_map(bridge: DomSysBridge, x) -> str:
    """The least upper bound of a state in the poset."""
    x = frozenset(x)
    if not is_state(bridge.system, x).holds:
        raise NotAState(f"{bridge.system.show(x)} is not a state")
    D = bridge.source
    lub = D.least(D.upper_bounds(x))
    if lub is None:
        raise IsoCheckFailed(f"state {bridge.system.show(x)} has no least upper bound")
    return lub


def st_map(bridge: DomSysBridge, alpha: str) -> State:
    """Everything way below alpha, which is its principal ideal."""
    x = bridge.source.down(alpha)
    if not is_state(bridge.system, x).holds:
        raise IsoCheckFailed(f"ideal of {alpha} is not a state")
    return x


def bridge(D: FinPoset) -> DomSysBridge:
    S = isw_from_poset(D)
    partial = DomSysBridge(D, S, {}, {})
    sp = {x: sp_map(partial, x) for x in enumerate_states(S)}
    st = {alpha: st_map(partial, alpha) for alpha in D.elems}
    return DomSysBridge(D, S, sp, st)


@dataclass(frozen=True)
class RoundTrip:
    iso: Mapping[str, State] = field(hash=False)
    bc_source: bool
    bc_system: bool
    alg_system: bool


def roundtrip_check(D: FinPoset) -> RoundTrip:
    """Verify that st is an order isomorphism from D onto the states of I(D)."""
    b = bridge(D)
    S = b.system
    states = set(enumerate_states(S))
    if set(b.st.values()) != states or len(states) != len(D.elems):
        raise IsoCheckFailed("st is not a bijection onto the states")
    for alpha in D.elems:
        for beta in D.elems:
            if D.le(alpha, beta) != (b.st[alpha] <= b.st[beta]):
                raise IsoCheckFailed(f"st does not preserve and reflect {alpha} <= {beta}")
    for x in states:
        if b.st[b.sp[x]] != x:
            raise IsoCheckFailed(f"st(sp({S.show(x)})) differs")
    for alpha in D.elems:
        if b.sp[b.st[alpha]] != alpha:
            raise IsoCheckFailed(f"sp(st({alpha})) differs")

    bc_source = analyze(D).bounded_complete
    bc_system = check_condition(S, "BC").holds
    alg_system = check_condition(S, "ALG").holds
    if bc_source != bc_system:
        raise IsoCheckFailed("bounded completeness of D and BC of I(D) disagree")
    if not alg_system:
        raise IsoCheckFailed("ALG fails on I(D)")
    return RoundTrip(dict(b.st), bc_source, bc_system, alg_system)


def map_from_monotone(src: DomSysBridge, dst: DomSysBridge, f: Mapping[str, str]) -> ApproxMap:
    """I(f): (i, X) reaches a iff a lies below f of the local lub of X at i."""
    D, E = src.source, dst.source
    if set(f) != set(D.elems) or not set(f.values()) <= set(E.elems):
        raise NotMonotone("function must map every source element to a target element")
    if not monotone(D, E, f):
        raise NotMonotone("function is not monotone")
    S = src.system
    require_valid(S)
    rel = frozenset(
        (p, a)
        for p in S.con
        for a in E.down(f[src.sp[S.closure[p]]])
    )
    return ApproxMap(S, dst.system, rel)
