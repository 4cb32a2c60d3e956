import random
from itertools import product as cartesian

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from infosys.appmap import (
    ApproxMap,
    StateFn,
    apply_map,
    compose,
    enumerate_maps,
    fn_from_map,
    identity_fn,
    identity_map,
    map_from_fn,
    monotone_functions,
    strong_source_cut_holds,
    then,
    validate_map,
)
from infosys.errors import MalformedMap, NotAState, NotMonotone, SizeLimitExceeded, SystemMismatch
from infosys.generators import random_system
from infosys.isw import ws
from infosys.states import enumerate_states

from .conftest import load

B, BT = frozenset({"b"}), frozenset({"b", "t"})


def test_identity_fixture(IC2):
    H = load("ID_C2.map")
    assert H == identity_map(IC2)
    assert validate_map(H).valid


def test_missing_delta_is_reported():
    report = validate_map(load("NODELTA.map"))
    assert [v.axiom for v in report.failures] == ["3", "6"]
    assert report.verdict("6").detail == "(Δ,{}) does not reach Δ"
    assert not report.verdict("5 (split form)").holds


def test_relation_must_stay_inside_the_systems(IC2, T):
    with pytest.raises(MalformedMap):
        ApproxMap(IC2, T, frozenset({(ws("b", "t"), "Δ")}))
    with pytest.raises(MalformedMap):
        ApproxMap(IC2, T, frozenset({(ws("b"), "b")}))


def test_compose_with_identity():
    ident, term = load("ID_C2.map"), load("TERM_C2.map")
    assert compose(ident, term) == term
    with pytest.raises(SystemMismatch):
        compose(term, ident)


def test_apply_map():
    term = load("TERM_C2.map")
    assert apply_map(term, BT) == frozenset({"Δ"})
    assert apply_map(load("ID_C2.map"), B) == B
    with pytest.raises(NotAState):
        apply_map(term, {"t"})


def test_identity_map_gives_identity_function(IC2, IM):
    for S in (IC2, IM):
        assert fn_from_map(identity_map(S)) == identity_fn(S)


@pytest.mark.parametrize(
    ("source", "target", "count"),
    [("T", "IC2", 2), ("IC2", "T", 1), ("IC2", "IC2", 3)],
)
def test_maps_match_monotone_functions(source, target, count, request):
    S, T = request.getfixturevalue(source), request.getfixturevalue(target)
    maps = enumerate_maps(S, T)
    functions = list(monotone_functions(S, T))
    assert len(maps) == count
    assert len(functions) == count
    assert {map_from_fn(S, T, f) for f in functions} == set(maps)
    for H in maps:
        assert map_from_fn(S, T, fn_from_map(H)) == H
        assert strong_source_cut_holds(H)


def test_composition_matches_function_composition(IC2):
    maps = enumerate_maps(IC2, IC2)
    for H in maps:
        for G in maps:
            assert fn_from_map(compose(H, G)) == then(fn_from_map(H), fn_from_map(G))


def test_state_function_tables(IC2):
    swap = {B: BT, BT: B}
    assert not StateFn(IC2, IC2, swap).is_monotone()
    with pytest.raises(NotMonotone):
        map_from_fn(IC2, IC2, swap)
    with pytest.raises(NotAState):
        map_from_fn(IC2, IC2, {B: frozenset({"t"}), BT: BT})
    with pytest.raises(NotAState):
        map_from_fn(IC2, IC2, {B: B})


def test_enumeration_caps(IM, T):
    with pytest.raises(SizeLimitExceeded):
        list(monotone_functions(IM, IM))
    with pytest.raises(SizeLimitExceeded):
        enumerate_maps(IM, T)


def test_split_interpolation_agrees_on_small_relations(IC2):
    cells = [(p, b) for p in IC2.sorted_con for b in IC2.tokens]
    for bits in cartesian((False, True), repeat=len(cells)):
        H = ApproxMap(IC2, IC2, frozenset(c for c, keep in zip(cells, bits) if keep))
        report = validate_map(H)
        if all(report.verdict(n).holds for n in ("1", "3", "4")):
            assert report.verdict("5").holds == report.verdict("5 (split form)").holds


def random_monotone_table(rng, S, T):
    """A random monotone table between state sets, constant if the greedy pick gets stuck."""
    sources, targets = enumerate_states(S), enumerate_states(T)
    table = {}
    for x in sources:
        floor = [table[w] for w in table if w <= x]
        fits = [y for y in targets if all(v <= y for v in floor)]
        if not fits:
            c = rng.choice(targets)
            return {w: c for w in sources}
        table[x] = rng.choice(fits)
    return table


def random_maps(seed, count):
    rng = random.Random(seed)
    systems = [random_system(seed + k, 4) for k in range(count + 1)]
    return [
        map_from_fn(S, T, random_monotone_table(rng, S, T))
        for S, T in zip(systems, systems[1:])
    ]


@settings(max_examples=20)
@given(st.integers(min_value=0, max_value=10_000))
def test_identity_laws(seed):
    (H,) = random_maps(seed, 1)
    assert validate_map(H).valid, f"seed {seed}"
    assert compose(identity_map(H.source), H) == H, f"seed {seed}"
    assert compose(H, identity_map(H.target)) == H, f"seed {seed}"
    assert fn_from_map(identity_map(H.source)) == identity_fn(H.source), f"seed {seed}"


@settings(max_examples=20)
@given(st.integers(min_value=0, max_value=10_000))
def test_composition_is_associative(seed):
    H, G, K = random_maps(seed, 3)
    assert compose(compose(H, G), K) == compose(H, compose(G, K)), f"seed {seed}"


@settings(max_examples=20)
@given(st.integers(min_value=0, max_value=10_000))
def test_state_functions_respect_composition(seed):
    H, G = random_maps(seed, 2)
    assert fn_from_map(compose(H, G)) == then(fn_from_map(H), fn_from_map(G)), f"seed {seed}"


@settings(max_examples=20)
@given(st.integers(min_value=0, max_value=10_000))
def test_maps_and_functions_correspond(seed):
    rng = random.Random(seed)
    S, T = random_system(seed, 4), random_system(seed + 1, 4)
    table = random_monotone_table(rng, S, T)
    H = map_from_fn(S, T, table)
    assert fn_from_map(H) == StateFn(S, T, table), f"seed {seed}"
    assert map_from_fn(S, T, fn_from_map(H)) == H, f"seed {seed}"
