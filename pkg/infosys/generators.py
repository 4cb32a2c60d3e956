"""Seeded random instances for property tests."""

import logging
import random
from itertools import combinations

from .classic import Ais, isw_from_ais
from .config import TERMINAL_TOKEN
from .domconv import isw_from_poset
from .errors import GenerationFailed
from .finposet import FinPoset, analyze, poset_from_pairs
from .isw import Isw
from .tokens import TokenOrder

logger = logging.getLogger(__name__)

MAX_ATTEMPTS = 200


def random_l_domain(seed: int, max_elems: int = 7) -> FinPoset:
    """Grow a pointed poset upward and keep it once it is an L-domain.

    Each new element sits above a random nonempty set of existing ones.
    Posets that fail the L-domain test are discarded and regrown.
    """
    rng = random.Random(seed)
    for attempt in range(MAX_ATTEMPTS):
        n = rng.randint(1, max_elems)
        names = [f"x{k}" for k in range(n)]
        pairs = []
        for k in range(1, n):
            below = rng.sample(names[:k], rng.randint(1, min(2, k)))
            pairs.extend((b, names[k]) for b in below)
            pairs.append((names[0], names[k]))
        P = poset_from_pairs(names, pairs)
        if analyze(P).l_domain:
            if attempt:
                logger.debug(f"seed {seed}: L-domain after {attempt} rejections")
            return P
    raise GenerationFailed(f"seed {seed}: no L-domain within {MAX_ATTEMPTS} attempts")


def _horn_closure(X: frozenset[str], rules: list[tuple[frozenset[str], str]], delta: str) -> frozenset[str]:
    closed = set(X) | {delta}
    changed = True
    while changed:
        changed = False
        for premise, conclusion in rules:
            if premise <= closed and conclusion not in closed:
                closed.add(conclusion)
                changed = True
    return frozenset(closed)


def random_ais(seed: int, max_tokens: int = 5) -> Ais:
    """An ais whose entailment is the closure under random Horn rules.

    A set is consistent when its closure avoids every conflict pair. Conflicts
    already forced by a single token are dropped so every singleton stays
    consistent.
    """
    rng = random.Random(seed)
    delta = TERMINAL_TOKEN
    atoms = [f"t{k}" for k in range(1, rng.randint(1, max_tokens))]
    tokens = (delta, *atoms)

    rules = []
    for _ in range(rng.randint(0, 2 * len(atoms))):
        premise = frozenset(rng.sample(atoms, rng.randint(1, min(2, len(atoms)))))
        rules.append((premise, rng.choice(atoms)))

    def closure(X: frozenset[str]) -> frozenset[str]:
        return _horn_closure(X, rules, delta)

    singles = [closure(frozenset({a})) for a in tokens]
    conflicts = [
        frozenset(pair)
        for pair in combinations(atoms, 2)
        if rng.random() < 0.3 and not any(frozenset(pair) <= c for c in singles)
    ]

    order = TokenOrder(tokens)
    con = set()
    ent = set()
    for X in order.subsets(tokens, "random ais"):
        F = closure(X)
        if any(c <= F for c in conflicts):
            continue
        con.add(X)
        ent.update((X, a) for a in F)
    return Ais(tokens, delta, frozenset(con), frozenset(ent))


def random_system(seed: int, max_tokens: int = 6) -> Isw:
    """A valid system, built either from a random L-domain or from a random ais."""
    rng = random.Random(seed)
    if rng.random() < 0.6:
        return isw_from_poset(random_l_domain(seed, max_tokens))
    return isw_from_ais(random_ais(seed, max_tokens))
