import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from infosys.classic import (
    Ais,
    Cis,
    ais_from_isw,
    ais_points,
    cis_from_isw,
    cis_points,
    cis_state_iso,
    isw_from_ais,
    isw_from_cis,
    refl_lemma_holds,
    validate_ais,
    validate_cis,
)
from infosys.config import FRESH_TOKEN
from infosys.errors import AlgPlusViolated, BcViolated, FreshTokenClash, InvalidSystem
from infosys.formats import parse_text
from infosys.generators import random_ais, random_system
from infosys.isw import check_condition
from infosys.states import enumerate_states

from .conftest import GOLDEN_DIR

EMPTY = frozenset()


def without(A: Ais, drop) -> Ais:
    return Ais(A.tokens, A.delta, A.con, frozenset(e for e in A.ent if not drop(e)))


def test_cis_fixture(CIS1):
    report = validate_cis(CIS1)
    assert report.valid
    assert report.verdict("6 (cut direction)").holds
    assert cis_points(CIS1) == [EMPTY, frozenset({"a"})]


def test_cis_without_singletons_fails():
    C = Cis(("a",), frozenset({EMPTY}), frozenset())
    assert not validate_cis(C).verdict("3").holds
    with pytest.raises(InvalidSystem):
        cis_points(C)


def test_cis_conversion_matches_golden(CIS1):
    expected = parse_text((GOLDEN_DIR / "convert_CIS1_isw.txt").read_text(encoding="utf-8")).body
    assert isw_from_cis(CIS1) == expected
    assert cis_state_iso(CIS1) == {
        EMPTY: frozenset({FRESH_TOKEN}),
        frozenset({"a"}): frozenset({FRESH_TOKEN, "a"}),
    }


def test_fresh_token_must_be_fresh():
    C = Cis((FRESH_TOKEN,), frozenset({EMPTY, frozenset({FRESH_TOKEN})}), frozenset())
    with pytest.raises(FreshTokenClash):
        isw_from_cis(C)


def test_forgetting_witnesses(IC2, IM):
    C = cis_from_isw(IC2)
    assert validate_cis(C).valid
    assert cis_points(C) == list(enumerate_states(IC2))
    with pytest.raises(BcViolated):
        cis_from_isw(IM)


def test_ais_fixture(AIS1):
    assert validate_ais(AIS1).valid
    assert ais_points(AIS1) == [frozenset({"Δ"}), frozenset({"Δ", "a"})]


def test_printed_fifth_axiom_is_reported_only_when_strict(AIS1):
    assert validate_ais(AIS1, strict=False).extras == ()
    printed = validate_ais(AIS1, strict=True).verdict("5 (printed form)")
    assert not printed.holds
    assert printed.detail == "{a} entails {} and a, {} does not entail a"


def test_ais_axiom_failures(AIS1):
    no_delta = without(AIS1, lambda e: e[1] == "Δ" and e[0])
    assert not validate_ais(no_delta).verdict("4").holds
    not_reflexive = without(AIS1, lambda e: e == (frozenset({"a"}), "a"))
    report = validate_ais(not_reflexive)
    assert report.verdict("6").detail == "{a} does not entail its member a"


def test_ais_round_trip(AIS1):
    S = isw_from_ais(AIS1)
    assert list(enumerate_states(S)) == ais_points(AIS1)
    assert ais_from_isw(S) == AIS1


def test_independent_atoms_break_alg_plus(AIS2):
    S = isw_from_ais(AIS2)
    assert check_condition(S, "BC").holds
    assert not check_condition(S, "ALG+").holds
    with pytest.raises(AlgPlusViolated):
        ais_from_isw(S)


def test_reflexive_lemma(T, IC2):
    assert refl_lemma_holds(T)
    assert not refl_lemma_holds(IC2)


@settings(max_examples=40)
@given(st.integers(min_value=0, max_value=10_000))
def test_random_ais_states_are_points(seed):
    A = random_ais(seed, 5)
    assert list(enumerate_states(isw_from_ais(A))) == ais_points(A), f"seed {seed}"


@settings(max_examples=40)
@given(st.integers(min_value=0, max_value=10_000))
def test_bounded_complete_systems_keep_their_states(seed):
    S = random_system(seed, 5)
    if check_condition(S, "BC").holds:
        assert list(enumerate_states(S)) == cis_points(cis_from_isw(S)), f"seed {seed}"
