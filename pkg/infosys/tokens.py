"""Canonical ordering and printing of token sets.

Every report walks tokens in declaration order and finite sets by size, then by
the sorted positions of their members. Keeping that order in one place makes
counterexamples reproducible across runs.
"""

from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .config import MAX_SUBSET_TOKENS
from .errors import SizeLimitExceeded


@dataclass(frozen=True)
class TokenOrder:
    """Declaration order of a finite alphabet."""

    tokens: tuple[str, ...]

    @cached_property
    def index(self) -> dict[str, int]:
        return {t: n for n, t in enumerate(self.tokens)}

    def ordered(self, xs: Iterable[str]) -> list[str]:
        return sorted(xs, key=self.index.__getitem__)

    def set_key(self, xs: Iterable[str]) -> tuple[int, tuple[int, ...]]:
        positions = tuple(sorted(self.index[t] for t in xs))
        return len(positions), positions

    def show(self, xs: Iterable[str]) -> str:
        return "{" + ",".join(self.ordered(xs)) + "}"

    def subsets(self, xs: Iterable[str], what: str = "subset scan") -> Iterator[frozenset[str]]:
        """All subsets of xs, smallest first, each size in lexicographic order."""
        items = self.ordered(xs)
        if len(items) > MAX_SUBSET_TOKENS:
            raise SizeLimitExceeded(what, len(items), MAX_SUBSET_TOKENS)
        for size in range(len(items) + 1):
            for combo in combinations(items, size):
                yield frozenset(combo)

    def sort_sets(self, sets: Iterable[frozenset[str]]) -> list[frozenset[str]]:
        return sorted(sets, key=self.set_key)

    def inclusion_pairs(
        self, bodies: Iterable[frozenset[str]]
    ) -> Iterator[tuple[frozenset[str], frozenset[str]]]:
        """Pairs (X, Y) with X a strict subset of Y, both among bodies.

        A downward-closed family only needs its one-element extensions, so
        the scan drops to covering pairs when that holds.
        """
        family = self.sort_sets(set(bodies))
        members = set(family)
        if all(y - {b} in members for y in family for b in y):
            for y in family:
                for b in self.ordered(y):
                    yield y - {b}, y
            return
        for y in family:
            for x in family:
                if x < y:
                    yield x, y
