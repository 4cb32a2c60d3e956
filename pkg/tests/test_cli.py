import pydot
import pytest

from infosys.config import FIXTURES_DIR
from infosys.core import run

from .conftest import GOLDEN_DIR


def fixture(name: str) -> str:
    return str(FIXTURES_DIR / name)


def golden(name: str) -> str:
    return (GOLDEN_DIR / name).read_text(encoding="utf-8")


@pytest.mark.parametrize(
    ("argv", "expected", "code"),
    [
        (["validate", fixture("T.isw")], "validate_T.txt", 0),
        (["validate", fixture("BAD.isw")], "validate_BAD.txt", 1),
        (["validate", fixture("NODELTA.map")], "validate_NODELTA.txt", 1),
        (["validate", fixture("BADR.frame")], "validate_BADR.txt", 1),
        (["check", fixture("IM.isw"), "--bc"], "check_bc_IM.txt", 1),
        (["check", fixture("IC2.isw")], "check_IC2.txt", 0),
        (["roundtrip", fixture("M.poset")], "roundtrip_M.txt", 0),
        (["states", fixture("IC2.isw")], "states_IC2.txt", 0),
        (["states", fixture("C2.poset"), "--oracle"], "states_IC2.txt", 0),
        (["domain", fixture("M.poset")], "domain_M.txt", 0),
        (["iso", fixture("C2.poset"), fixture("IC2.isw")], "iso_C2_IC2.txt", 0),
        (["product", fixture("T.isw"), fixture("T.isw")], "product_T_T.txt", 0),
        (["convert", fixture("CIS1.cis"), "--to", "isw"], "convert_CIS1_isw.txt", 0),
        (["convert", fixture("IC2.isw"), "--to", "frame"], "convert_IC2_frame.txt", 0),
    ],
)
def test_golden_output(argv, expected, code, capsys):
    assert run(argv) == code
    assert capsys.readouterr().out == golden(expected)


def dot_shape(text: str) -> tuple[str | None, set[str], set[tuple[str, str]]]:
    (graph,) = pydot.graph_from_dot_data(text)
    nodes = {n.get_name().strip('"') for n in graph.get_nodes()} - {"node", "edge", "graph"}
    edges = {(e.get_source().strip('"'), e.get_destination().strip('"')) for e in graph.get_edges()}
    return graph.get("rankdir"), nodes, edges


def test_export_dot_matches_golden_graph(capsys):
    assert run(["export-dot", fixture("C2.poset")]) == 0
    assert dot_shape(capsys.readouterr().out) == dot_shape(golden("dot_C2.txt"))


def test_export_dot_of_state_poset(capsys):
    assert run(["export-dot", fixture("IC2.isw"), "--name", "IC2"]) == 0
    out = capsys.readouterr().out
    (graph,) = pydot.graph_from_dot_data(out)
    assert graph.get_name().strip('"') == "IC2"
    assert dot_shape(out) == ("BT", {"{b}", "{b,t}"}, {("{b}", "{b,t}")})


@pytest.mark.parametrize(("poset", "system"), [("C2.poset", "IC2.isw"), ("M.poset", "IM.isw")])
def test_poset_conversion_reproduces_fixture(poset, system, capsys):
    assert run(["convert", fixture(poset), "--to", "isw"]) == 0
    assert capsys.readouterr().out == (FIXTURES_DIR / system).read_text(encoding="utf-8")


def test_compose_with_identity_prints_the_other_map(capsys):
    assert run(["compose", fixture("ID_C2.map"), fixture("TERM_C2.map")]) == 0
    assert capsys.readouterr().out == (FIXTURES_DIR / "TERM_C2.map").read_text(encoding="utf-8")


def test_apply(capsys):
    assert run(["apply", fixture("TERM_C2.map"), "--state", "{b,t}"]) == 0
    assert capsys.readouterr().out == "{Δ}\n"


def test_ais_points_are_listed(capsys):
    assert run(["states", fixture("AIS1.ais")]) == 0
    assert capsys.readouterr().out == "states: 2\n{Δ}\n{Δ,a}\n"


def test_strict_printed_axioms(capsys):
    assert run(["validate", fixture("AIS1.ais"), "--strict-printed-axioms"]) == 0
    out = capsys.readouterr().out
    assert "extra 5 (printed form): fails" in out
    assert out.endswith("6/6 axioms hold\n")


def test_missing_isomorphism(capsys):
    assert run(["iso", fixture("C2.poset"), fixture("M.poset")]) == 1
    assert capsys.readouterr().out == "iso: none\n"


@pytest.mark.parametrize(
    ("argv", "code", "message"),
    [
        (["roundtrip", fixture("NOTL.poset")], 1, "have no least upper bound below t"),
        (["convert", fixture("AIS2.ais"), "--to", "isw"], 0, None),
        (["check", fixture("BAD.isw")], 1, "axiom 5 fails"),
        (["validate", fixture("BADTOKEN.isw")], 2, "BADTOKEN.isw:5:"),
        (["apply", fixture("ID_C2.map"), "--state", "{t}"], 2, "is not a state"),
        (["compose", fixture("TERM_C2.map"), fixture("ID_C2.map")], 2, "error:"),
        (["convert", fixture("C2.poset"), "--to", "frame"], 2, "no conversion from poset to frame"),
        (["roundtrip", fixture("IC2.isw")], 2, "expected kind poset"),
        (["domain", fixture("M.poset")], 0, None),
    ],
)
def test_exit_codes(argv, code, message, capsys):
    assert run(argv) == code
    err = capsys.readouterr().err
    if message is not None:
        assert message in err


def test_size_limit_exit_code(tmp_path, capsys):
    names = [f"c{k}" for k in range(13)]
    lines = ["kind poset", "elems " + " ".join(names)]
    lines += [f"le {x} {y}" for x, y in zip(names, names[1:])]
    chain = tmp_path / "C13.poset"
    chain.write_text("\n".join(lines) + "\n", encoding="utf-8")
    assert run(["iso", str(chain), str(chain)]) == 3
    assert "exceeds limit" in capsys.readouterr().err


def test_algplus_failure_on_conversion(capsys, tmp_path):
    assert run(["convert", fixture("AIS2.ais"), "--to", "isw"]) == 0
    converted = tmp_path / "S2.isw"
    converted.write_text(capsys.readouterr().out, encoding="utf-8")
    assert run(["convert", str(converted), "--to", "ais"]) == 1
    assert "ALG+ fails" in capsys.readouterr().err
