"""The one-point system, binary products, projections and pairing."""

import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .appmap import ApproxMap, enumerate_maps
from .config import MAX_PRODUCT_CON, MAX_PRODUCT_TOKENS, TERMINAL_TOKEN
from .errors import IsoCheckFailed, NotAState, SizeLimitExceeded, SystemMismatch
from .isw import Isw, WitnessedSet, require_valid
from .states import State, enumerate_states, is_state

logger = logging.getLogger(__name__)


def terminal_system() -> Isw:
    """T: one token, consistent with and without itself, entailing itself."""
    d = TERMINAL_TOKEN
    con = frozenset({WitnessedSet(d, frozenset()), WitnessedSet(d, frozenset({d}))})
    return Isw((d,), d, con, frozenset((p, d) for p in con))


def terminal_map(S: Isw) -> ApproxMap:
    require_valid(S)
    T = terminal_system()
    return ApproxMap(S, T, frozenset((p, T.delta) for p in S.con))


def terminal_map_is_unique(S: Isw) -> bool:
    """Exactly one relation into T passes validation, and it is terminal_map(S)."""
    found = enumerate_maps(S, terminal_system())
    return found == [terminal_map(S)]


def pair_name(a: str, b: str) -> str:
    return f"({a},{b})"


@dataclass(frozen=True)
class ProductSystem:
    left: Isw
    right: Isw
    product: Isw
    pr1: ApproxMap
    pr2: ApproxMap
    pairs: Mapping[str, tuple[str, str]] = field(hash=False, compare=False)

    def split(self, X: Iterable[str]) -> tuple[frozenset[str], frozenset[str]]:
        """Both projections of a set of pair tokens."""
        parts = [self.pairs[t] for t in X]
        return frozenset(a for a, _ in parts), frozenset(b for _, b in parts)

    def combine(self, x1: Iterable[str], x2: Iterable[str]) -> frozenset[str]:
        return frozenset(pair_name(a, b) for a in x1 for b in x2)


def _full_covers(B1: frozenset[str], B2: frozenset[str], cells: list[tuple[str, str]]) -> Iterable[frozenset[tuple[str, str]]]:
    """Subsets of B1 x B2 whose projections are exactly B1 and B2."""
    if not B1 and not B2:
        yield frozenset()
        return
    if not B1 or not B2:
        return
    for size in range(max(len(B1), len(B2)), len(cells) + 1):
        for combo in combinations(cells, size):
            if {a for a, _ in combo} == B1 and {b for _, b in combo} == B2:
                yield frozenset(combo)


@lru_cache(maxsize=64)
def product(S1: Isw, S2: Isw) -> ProductSystem:
    """The product system over token pairs, with both projections."""
    require_valid(S1)
    require_valid(S2)
    n_tokens = len(S1.tokens) * len(S2.tokens)
    if n_tokens > MAX_PRODUCT_TOKENS:
        raise SizeLimitExceeded("product tokens", n_tokens, MAX_PRODUCT_TOKENS)

    pairs = {pair_name(a, b): (a, b) for a in S1.tokens for b in S2.tokens}
    tokens = tuple(pairs)
    delta = pair_name(S1.delta, S2.delta)

    con: set[WitnessedSet] = set()
    ent: set[tuple[WitnessedSet, str]] = set()
    for i in S1.tokens:
        for j in S2.tokens:
            w = pair_name(i, j)
            for B1 in S1.bodies(i):
                for B2 in S2.bodies(j):
                    cells = [(a, b) for a in S1.order.ordered(B1) for b in S2.order.ordered(B2)]
                    entailed = [
                        pair_name(a, b) for a in S1.cl(i, B1) for b in S2.cl(j, B2)
                    ]
                    for X in _full_covers(B1, B2, cells):
                        p = WitnessedSet(w, frozenset(pair_name(a, b) for a, b in X))
                        con.add(p)
                        ent.update((p, c) for c in entailed)
                        if len(con) > MAX_PRODUCT_CON:
                            raise SizeLimitExceeded("product consistent sets", len(con), MAX_PRODUCT_CON)
    logger.debug(f"product has {len(tokens)} tokens and {len(con)} consistent sets")
    prod = Isw(tokens, delta, frozenset(con), frozenset(ent))

    def projection(k: int, factor: Isw) -> ApproxMap:
        rel = set()
        for p in prod.con:
            witness = pairs[p.witness][k]
            body = frozenset(pairs[t][k] for t in p.body)
            rel.update((p, a) for a in factor.cl(witness, body))
        return ApproxMap(prod, factor, frozenset(rel))

    return ProductSystem(S1, S2, prod, projection(0, S1), projection(1, S2), pairs)


def product_state_iso(P: ProductSystem) -> dict[State, tuple[State, State]]:
    """The bijection z -> (pr1 z, pr2 z), checked monotone both ways."""
    iso = {z: P.split(z) for z in enumerate_states(P.product)}
    left = set(enumerate_states(P.left))
    right = set(enumerate_states(P.right))
    if set(iso.values()) != {(x, y) for x in left for y in right} or len(iso) != len(left) * len(right):
        raise IsoCheckFailed("projections are not a bijection onto pairs of states")
    for z in iso:
        x, y = iso[z]
        if P.combine(x, y) != z:
            raise IsoCheckFailed(f"state {P.product.show(z)} is not the product of its projections")
        for w in iso:
            u, v = iso[w]
            if (z <= w) != (x <= u and y <= v):
                raise IsoCheckFailed("projection pairing does not preserve and reflect the order")
    return iso


def combine_states(P: ProductSystem, x1: Iterable[str], x2: Iterable[str]) -> State:
    x1, x2 = frozenset(x1), frozenset(x2)
    if not is_state(P.left, x1).holds:
        raise NotAState(f"{P.left.show(x1)} is not a state of the left factor")
    if not is_state(P.right, x2).holds:
        raise NotAState(f"{P.right.show(x2)} is not a state of the right factor")
    return P.combine(x1, x2)


def pairing(H1: ApproxMap, H2: ApproxMap) -> ApproxMap:
    """The mediating map into the product of the two targets."""
    if H1.source != H2.source:
        raise SystemMismatch("paired maps must share a source")
    P = product(H1.target, H2.target)
    rel = frozenset(
        (p, pair_name(a, b))
        for p in H1.source.con
        for a in H1.image[p]
        for b in H2.image[p]
    )
    return ApproxMap(H1.source, P.product, rel)
