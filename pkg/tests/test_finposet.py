import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from infosys.errors import (
    CycleDetected,
    DuplicateElem,
    NoLocalLub,
    NotAnOrder,
    NotBelowZ,
    SizeLimitExceeded,
    UnknownElem,
)
from infosys.finposet import (
    FinPoset,
    LDomainGap,
    analyze,
    approximation_laws,
    find_iso,
    hasse_edges,
    is_order_iso,
    local_lub,
    monotone,
    poset_from_pairs,
    product_poset,
    relabel,
    way_below,
)
from infosys.generators import random_l_domain

from .conftest import load


def chain(n: int) -> FinPoset:
    names = [f"c{k}" for k in range(n)]
    return poset_from_pairs(names, zip(names, names[1:]))


def test_pairs_are_closed_reflexively_and_transitively():
    P = poset_from_pairs(["x", "y", "z"], [("x", "y"), ("y", "z")])
    assert P.le("x", "z")
    assert all(P.le(e, e) for e in P.elems)
    assert not P.le("z", "x")


def test_cycle_is_rejected():
    with pytest.raises(CycleDetected) as info:
        poset_from_pairs(["x", "y"], [("x", "y"), ("y", "x")])
    assert set(info.value.cycle) == {"x", "y"}


def test_duplicate_and_unknown_elements():
    with pytest.raises(DuplicateElem):
        poset_from_pairs(["x", "x"], [])
    with pytest.raises(UnknownElem):
        poset_from_pairs(["x"], [("x", "y")])


def test_direct_relation_must_be_an_order():
    refl = {("x", "x"), ("y", "y"), ("z", "z")}
    with pytest.raises(NotAnOrder, match="not reflexive"):
        FinPoset(("x", "y"), frozenset({("x", "x"), ("x", "y")}))
    with pytest.raises(NotAnOrder, match="not transitive"):
        FinPoset(("x", "y", "z"), frozenset(refl | {("x", "y"), ("y", "z")}))
    with pytest.raises(CycleDetected):
        FinPoset(("x", "y", "z"), frozenset(refl | {("x", "y"), ("y", "x")}))
    P = FinPoset(("x", "y", "z"), frozenset(refl | {("x", "y"), ("y", "z"), ("x", "z")}))
    assert P == poset_from_pairs(["x", "y", "z"], [("x", "y"), ("y", "z")])


def test_chain_report(C2):
    report = analyze(C2)
    assert report.pointed and report.bottom == "b"
    assert report.bounded_complete and report.l_domain
    assert report.compacts == frozenset({"b", "t"})
    assert report.algebraic


def test_m_is_an_l_domain_but_not_bounded_complete(M):
    report = analyze(M)
    assert report.l_domain
    assert not report.bounded_complete
    assert report.bc_counterexample == ("a", "b")


def test_flat_domain_is_bounded_complete(FLAT2):
    report = analyze(FLAT2)
    assert report.bounded_complete and report.l_domain


def test_missing_local_lub_is_reported():
    P = load("NOTL.poset")
    report = analyze(P)
    assert not report.l_domain
    assert report.l_domain_counterexample == LDomainGap("t", ("a", "b"))
    with pytest.raises(NoLocalLub):
        local_lub(P, "t", ["a", "b"])


def test_unpointed_poset_is_not_an_l_domain():
    P = poset_from_pairs(["x", "y"], [])
    report = analyze(P)
    assert not report.pointed
    assert report.l_domain_counterexample == LDomainGap(None, ())


def test_local_lub(M):
    assert local_lub(M, "t1", ["a", "b"]) == "t1"
    assert local_lub(M, "t2", ["a", "b"]) == "t2"
    assert local_lub(M, "t1", []) == "⊥"
    assert local_lub(M, "a", ["⊥", "a"]) == "a"
    with pytest.raises(NotBelowZ):
        local_lub(M, "a", ["b"])


def test_way_below_is_the_order(M, C2):
    assert way_below(M) == M.leq
    assert way_below(M, exhaustive=True) == M.leq
    assert way_below(C2, exhaustive=True) == C2.leq


def test_exhaustive_scan_is_capped():
    with pytest.raises(SizeLimitExceeded):
        way_below(chain(11), exhaustive=True)


def test_approximation_laws_hold(M, FLAT2):
    assert approximation_laws(M) is None
    assert approximation_laws(FLAT2) is None


def test_hasse_edges(M):
    assert hasse_edges(M) == [
        ("⊥", "a"), ("⊥", "b"), ("a", "t1"), ("a", "t2"), ("b", "t1"), ("b", "t2"),
    ]


def test_find_iso_recovers_a_relabelling(M):
    names = {"⊥": "0", "a": "1", "b": "2", "t1": "3", "t2": "4"}
    Q = relabel(M, names)
    iso = find_iso(M, Q)
    assert iso is not None
    assert is_order_iso(M, Q, iso)


def test_find_iso_rejects_non_isomorphic(M, FLAT2, C2):
    assert find_iso(M, FLAT2) is None
    assert find_iso(chain(3), FLAT2) is None
    assert find_iso(C2, chain(2)) is not None


def test_find_iso_is_capped():
    with pytest.raises(SizeLimitExceeded):
        find_iso(chain(13), chain(13))


def test_product_poset(C2):
    grid = product_poset(C2, C2)
    assert len(grid.elems) == 4
    assert grid.le("(b,b)", "(t,t)")
    assert not grid.le("(b,t)", "(t,b)")
    assert analyze(grid).bottom == "(b,b)"


def test_monotone(C2):
    assert monotone(C2, C2, {"b": "b", "t": "t"})
    assert monotone(C2, C2, {"b": "t", "t": "t"})
    assert not monotone(C2, C2, {"b": "t", "t": "b"})


@settings(max_examples=50)
@given(st.integers(min_value=0, max_value=10_000))
def test_random_l_domains(seed):
    P = random_l_domain(seed, 7)
    report = analyze(P)
    assert report.l_domain, f"seed {seed}"
    assert way_below(P) == P.leq
    assert approximation_laws(P) is None
