import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from infosys.config import FIXTURES_DIR
from infosys.domconv import isw_from_poset
from infosys.errors import InvalidFrame, MalformedFrame
from infosys.formats import parse
from infosys.frames import (
    FRAME_AXIOMS,
    Frame,
    accessibility,
    check_declared_accessibility,
    frame_to_isw,
    global_interpolation,
    isw_to_frame,
    lemma_eq4,
    validate_frame,
)
from infosys.generators import random_l_domain, random_system

from .conftest import load

EMPTY = frozenset()


def test_chain_frame_validates():
    report = validate_frame(load("C2.frame"))
    assert report.valid
    assert tuple(v.axiom for v in report.verdicts) == FRAME_AXIOMS


def test_chain_frame_is_the_chain_system(IC2):
    assert frame_to_isw(load("C2.frame")) == IC2


def test_accessibility_is_derived():
    assert accessibility(load("C2.frame")) == frozenset({("b", "b"), ("b", "t"), ("t", "t")})


def test_declared_accessibility_mismatch():
    doc = parse(FIXTURES_DIR / "BADR.frame")
    assert check_declared_accessibility(doc.body, doc.relation) == [("t", "b")]
    good = parse(FIXTURES_DIR / "C2.frame")
    assert check_declared_accessibility(good.body, good.relation) == []


def test_non_monotone_frame_is_rejected():
    F = Frame(
        ("Δ",),
        "Δ",
        {"Δ": frozenset({EMPTY, frozenset({"Δ"})})},
        {"Δ": frozenset({(EMPTY, "Δ")})},
    )
    report = validate_frame(F)
    assert not report.verdict("5").holds
    with pytest.raises(InvalidFrame, match="frame axiom 5"):
        frame_to_isw(F)


def test_accessibility_must_be_a_preorder():
    F = Frame(("a",), "a", {"a": frozenset({EMPTY})}, {"a": frozenset({(EMPTY, "a")})})
    with pytest.raises(InvalidFrame):
        accessibility(F)


def test_malformed_frame():
    with pytest.raises(MalformedFrame):
        Frame(("a",), "a", {"a": frozenset({EMPTY})}, {"a": frozenset({(frozenset({"a"}), "a")})})
    with pytest.raises(MalformedFrame):
        Frame(("a",), "b", {"a": frozenset()}, {"a": frozenset()})


def test_systems_round_trip_through_frames(fixture_systems):
    for name, S in fixture_systems.items():
        F = isw_to_frame(S)
        assert validate_frame(F).valid, name
        assert frame_to_isw(F) == S, name
        assert lemma_eq4(F) == (True, True), name
        assert global_interpolation(F) == (True, True), name


@settings(max_examples=30)
@given(st.integers(min_value=0, max_value=10_000))
def test_domain_systems_are_frames(seed):
    S = isw_from_poset(random_l_domain(seed, 6))
    F = isw_to_frame(S)
    assert validate_frame(F).valid, f"seed {seed}"
    assert frame_to_isw(F) == S


def frame_from_closures(con_of, closures, delta="d"):
    """Frame whose entailment at i sends X to closures[i](X)."""
    tokens = tuple(con_of)
    ent_of = {i: frozenset((X, a) for X in con_of[i] for a in closures[i](X)) for i in tokens}
    return Frame(tokens, delta, con_of, ent_of)


def sets(*bodies):
    return frozenset(frozenset(b) for b in bodies)


def no_witness_for_ab():
    """{a,b} is entailed at c, but no token c entails has {a,b} in its consistency."""
    return frame_from_closures(
        {
            "d": sets("", "d"),
            "a": sets("", "a", "d", "ad"),
            "b": sets("", "b", "d", "bd"),
            "c": frozenset(frozenset(s) for r in range(5) for s in combinations("abcd", r)),
        },
        {
            "d": lambda X: {"d"},
            "a": lambda X: (X & {"a"}) | {"d"},
            "b": lambda X: (X & {"b"}) | {"d"},
            "c": lambda X: (X - {"c"}) | {"d"},
        },
    )


def test_failing_witness_interpolation_fails_both_sides():
    F = no_witness_for_ab()
    assert [v.axiom for v in validate_frame(F).failures] == ["11"]
    assert global_interpolation(F) == (False, False)


HYPOTHESES = ("4", "5", "7", "9", "10")


@settings(max_examples=100)
@given(st.integers(min_value=0, max_value=10_000))
def test_global_interpolation_sides_agree(seed):
    F = isw_to_frame(random_system(seed, 5))
    assert global_interpolation(F) == (True, True), f"seed {seed}"


@settings(max_examples=100)
@given(st.integers(min_value=0, max_value=10_000))
def test_global_interpolation_sides_agree_after_dropping_an_entailment(seed):
    F = isw_to_frame(random_system(seed, 5))
    rng = random.Random(seed)
    i = rng.choice(F.tokens)
    dropped = rng.choice(sorted(F.ent_of[i], key=lambda e: (F.order.set_key(e[0]), F.order.index[e[1]])))
    G = Frame(F.tokens, F.delta, F.con_of, {**F.ent_of, i: F.ent_of[i] - {dropped}})
    report = validate_frame(G)
    if all(report.verdict(n).holds for n in HYPOTHESES):
        local, combined = global_interpolation(G)
        assert local == combined, f"seed {seed}"


def test_eq4_claims_nothing_without_axiom_7():
    # a reaches d, but con@a has {a,d} while con@d does not
    F = frame_from_closures(
        {"d": sets("", "d", "a"), "a": sets("", "a", "d", "ad")},
        {"d": lambda X: X | {"d"}, "a": lambda X: X | {"d"}},
    )
    report = validate_frame(F)
    assert not report.verdict("7").holds
    assert not report.verdict("4").holds
    assert report.verdict("11").holds
    assert lemma_eq4(F) == (True, True)


def test_eq4_second_statement_on_failing_witness_interpolation():
    assert lemma_eq4(no_witness_for_ab()) == (True, True)
