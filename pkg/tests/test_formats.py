import pytest

from relcat import relations as rel
from relcat.checker import Counterexample, Verdict
from relcat.errors import OutputError, ParseError
from relcat.extraction import AtomSet, ExtractedRelation
from relcat.formats import (load_rig, parse_extraction, parse_matrices, parse_relations, parse_report, parse_rig,
                            parse_witness, read_source, write_extraction, write_matrices, write_relations,
                            write_report, write_rig, write_target, write_witness)
from relcat.matcat import MatObject


SHORT_ROW = """\
rig bad
carrier 0 1
zero 0
one 1
add
0 1
1
mul
0 0
0 1
"""


@pytest.mark.parametrize("name", ["bool", "chain3", "gf2", "trivial", "trunc3"])
def test_bundled_rig_text_is_stable(name):
    rig = load_rig(name)
    assert parse_rig(write_rig(rig)) == rig


def test_short_row_names_the_line():
    with pytest.raises(ParseError) as e:
        parse_rig(SHORT_ROW, "bad.rig")
    assert e.value.line == 7
    assert e.value.column == 2
    assert str(e.value).startswith("bad.rig:7:2: ")


def test_unknown_element():
    with pytest.raises(ParseError) as e:
        parse_rig(SHORT_ROW.replace("\n1\n", "\n1 2\n"), "bad.rig")
    assert (e.value.line, e.value.column) == (7, 3)


def test_unknown_infinitary_rule():
    text = SHORT_ROW.replace("\n1\n", "\n1 1\n") + "infinitary sup\n"
    with pytest.raises(ParseError) as e:
        parse_rig(text)
    assert e.value.line == 11


def test_missing_rig_is_a_parse_error():
    with pytest.raises(ParseError):
        load_rig("no-such-rig")


def test_relation_file():
    parsed = parse_relations("set X a b\nset Y y\nrel r X Y\n1\n0\n")
    r = parsed.relations["r"]
    assert r.pairs == {("a", "y")}
    assert list(parsed.sets) == ["X", "Y"]


def test_relation_file_errors():
    with pytest.raises(ParseError) as e:
        parse_relations("set X a b\nrel r X Z\n")
    assert (e.value.line, e.value.column) == (2, 9)
    with pytest.raises(ParseError) as e:
        parse_relations("set X a b\nrel r X X\n10\n1\n")
    assert e.value.line == 4
    with pytest.raises(ParseError) as e:
        parse_relations("set X a b\nrel r X X\n10\n")
    assert "expected 2" in str(e.value)
    with pytest.raises(ParseError):
        parse_relations("set X a a\n")


def test_empty_codomain_rows():
    E = rel.FinSet("E", ())
    X = rel.finset("X", 2)
    text = write_relations([("z", rel.zero_morphism(X, E))])
    assert text == "set X a b\nset E\nrel z X E\n-\n-\n"
    assert parse_relations(text).relations["z"] == rel.zero_morphism(X, E)


def test_clashing_set_labels():
    A = rel.FinSet("X", ("a",))
    B = rel.FinSet("X", ("a", "b"))
    text = write_relations([("r", rel.zero_morphism(A, B))])
    assert text.splitlines()[:3] == ["set X a", "set X_2 a b", "rel r X X_2"]


def test_matrix_file():
    rig = load_rig("chain3")
    parsed = parse_matrices("mat f chain3 2 1\n½\n1\nmat e chain3 1 0\n-\n")
    assert parsed["f"].labels() == [["½"], ["1"]]
    assert parsed["f"].rig is rig
    assert parsed["e"].dom == MatObject(0)
    assert parse_matrices(write_matrices(list(parsed.items()))) == parsed


def test_matrix_file_errors():
    with pytest.raises(ParseError) as e:
        parse_matrices("mat f chain3 1 2\n½ 2\n")
    assert (e.value.line, e.value.column) == (2, 3)
    with pytest.raises(ParseError) as e:
        parse_matrices("mat f nope 1 1\n1\n")
    assert e.value.column == 7


def test_report_lines():
    class Report:
        model = "chain3"
        bound = 2
        verdicts = {"4-unit-nonzero": Verdict(True), "5-scalars-invertible": Verdict(False)}

    text = write_report(Report, ["cap 2"], {"5-scalars-invertible": "witness-5.mat"})
    assert text.splitlines()[:2] == ["# relcat report", "# model chain3"]
    assert "# cap 2" in text.splitlines()
    lines = parse_report(text)
    assert [(line.condition, line.holds, line.bound, line.witness) for line in lines] == [
        ("4-unit-nonzero", True, 2, None),
        ("5-scalars-invertible", False, 2, "witness-5.mat"),
    ]


def test_report_errors():
    with pytest.raises(ParseError) as e:
        parse_report("x HOLDS bound=two\n")
    assert e.value.column == 9


def test_witness_headers():
    cx = Counterexample((), "unit-nonzero", "zero", "nonzero", 3)
    found = parse_witness(write_witness("rel", cx, ""))
    assert (found.equation, found.model, found.bound, found.lhs, found.rhs) == \
        ("unit-nonzero", "rel", 3, "zero", "nonzero")
    with pytest.raises(ParseError):
        parse_witness("# equation x\n")


def test_extraction_file():
    X = rel.finset("X", 2)
    atoms = AtomSet(X, ["p", "q"])
    erel = ExtractedRelation(atoms, atoms, {(1, 0), (0, 1)})
    text = write_extraction([("X", ["10", "01"])], [("r", erel)])
    assert text == "atoms X 2\n10\n01\nerel r 2 2\n0 1\n1 0\n"
    found_atoms, erels = parse_extraction(text)
    assert found_atoms == {"X": ["10", "01"]}
    assert erels == {"r": (2, 2, [(0, 1), (1, 0)])}
    with pytest.raises(ParseError):
        parse_extraction("erel r 1 1\n0 3\n")


def test_read_source_positions_bad_bytes(tmp_path):
    path = tmp_path / "bad.mat"
    path.write_bytes(b"mat m bool 1 1\n1\xff\n")
    with pytest.raises(ParseError) as e:
        read_source(str(path))
    assert (e.value.line, e.value.column) == (2, 2)
    assert "0xff" in str(e.value)


def test_read_source_missing_file(tmp_path):
    with pytest.raises(ParseError, match="cannot read"):
        read_source(str(tmp_path / "absent.rel"))


def test_write_target(tmp_path):
    path = tmp_path / "out.txt"
    write_target(str(path), "½\n")
    assert path.read_text(encoding="utf-8") == "½\n"
    with pytest.raises(OutputError, match="cannot write"):
        write_target(str(tmp_path / "no" / "out.txt"), "x")
