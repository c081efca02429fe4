"""The input format, its round-trip, and the command-line surface."""

import json
from fractions import Fraction
from pathlib import Path as FsPath

import pytest

from qhh.cli import InstanceFile, ParseError, main, parse, serialize
from qhh.linalg import QQ

FIXTURES = FsPath(__file__).parent.parent / "fixtures"

SAMPLE = """\
field Q
[vertices] f x y e
[arrows] b2: f -> x ; b3: x -> y ; b4: y -> e
[relations] 1 b4.b3 ; 1 b3.b2
[bound] 3
[new_arrows] a: e -> f
"""


def test_parse_sample_counts():
    inst = parse(SAMPLE)
    assert inst.field_name == "Q"
    assert inst.quiver.vertices == ("f", "x", "y", "e")
    assert len(inst.quiver.arrows) == 3
    assert inst.relations == (
        ((Fraction(1), ("b4", "b3")),),
        ((Fraction(1), ("b3", "b2")),),
    )
    assert inst.bound == 3
    assert [a.name for a in inst.new_arrows] == ["a"]


def test_parse_builds_working_presentation():
    from qhh.algebra import build_algebra

    inst = parse(SAMPLE)
    algebra = build_algebra(inst.presentation(QQ), field=QQ)
    assert algebra.dim == 7 and algebra.center_dim() == 1


def test_fixture_files_round_trip():
    paths = sorted(FIXTURES.glob("*.qa"))
    assert len(paths) == 5
    for path in paths:
        inst = parse(path.read_text())
        again = parse(serialize(inst))
        assert again == inst, path.name


def test_round_trip_rationals_and_empty_bound():
    text = """\
field 7
[vertices] p q r
[arrows] c: p -> q ; d: q -> r ; g: p -> q ; h: q -> r
[relations] 1 d.c + -3/2 h.g
[bound]
[new_arrows]
"""
    inst = parse(text)
    assert inst.bound is None
    assert inst.relations[0][1] == (Fraction(-3, 2), ("h", "g"))
    assert parse(serialize(inst)) == inst
    assert inst.resolved_field().characteristic == 7


def test_comments_and_multiline_sections():
    inst = parse((FIXTURES / "chain6.qa").read_text())
    assert len(inst.relations) == 2
    assert inst.bound is None
    # the two relations came from separate continuation lines
    assert inst.relations[0] == ((Fraction(1), ("b5", "b4", "b3", "b2")),)


def test_parse_error_positions():
    # second relation entry names the unknown arrow, with its column
    bad = SAMPLE.replace("1 b3.b2", "1 b9.b2")
    with pytest.raises(ParseError, match="unknown arrow 'b9'") as err:
        parse(bad)
    assert err.value.line == 4
    assert err.value.column == 23


@pytest.mark.parametrize("mangle, message", [
    (lambda t: t.replace("field Q\n", ""), "missing field line"),
    (lambda t: t.replace("field Q", "field 9"), "field must be Q or a prime"),
    (lambda t: t.replace("[bound] 3\n", ""), r"missing section \[bound\]"),
    (lambda t: t + "[vertices] z\n", r"duplicate section \[vertices\]"),
    (lambda t: t.replace("[vertices] f x y e", "[vertices] f x y e f"),
     "duplicate vertex 'f'"),
    (lambda t: t.replace("b3: x -> y", "b2: x -> y"), "duplicate arrow 'b2'"),
    (lambda t: t.replace("a: e -> f", "b2: e -> f"), "duplicate arrow 'b2'"),
    (lambda t: t.replace("a: e -> f", "a: e -> zz"), "unknown vertex 'zz'"),
    (lambda t: t.replace("a: e -> f", "a e -> f"), "expected 'name: source"),
    (lambda t: t.replace("a: e -> f", "a: e f"), "expected 'source -> target'"),
    (lambda t: t.replace("1 b4.b3", "1/0 b4.b3"), "bad coefficient '1/0'"),
    (lambda t: t.replace("1 b4.b3", "b4.b3"), "needs 'coeff path'"),
    (lambda t: t.replace("1 b4.b3", "1 b4.b2"), "do not compose"),
    (lambda t: t.replace("[bound] 3", "[bound] two"), "bound must be an integer"),
    (lambda t: t.replace("[bound] 3", "[bound] 1"), "bound must be at least 2"),
    (lambda t: t.replace("[arrows]", "[arows]"), r"unknown section \[arows\]"),
    (lambda t: "stray text\n" + t, "content before any section"),
])
def test_parse_rejections(mangle, message):
    with pytest.raises(ParseError, match=message):
        parse(mangle(SAMPLE))


def test_analyze_exit_zero_and_report(capsys):
    code = main(["analyze", str(FIXTURES / "kronecker.qa"), "--oracle"])
    out = capsys.readouterr().out
    assert code == 0
    assert "dim(base): 4" in out
    assert "dim(extended): 5" in out
    assert "delta: 5 (center 0 + extended 3 + ext/hom 2)" in out
    assert "hh1_extended: 8" in out


def test_analyze_json_document(capsys):
    code = main(["analyze", str(FIXTURES / "kronecker.qa"), "--json"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    assert doc["dim_base"] == 4 and doc["dim_extended"] == 5
    assert doc["delta"]["delta"] == 5
    assert doc["pairs"] == [
        {"arrow": "a", "path": "(f, e)", "dim": 2},
        {"arrow": "a", "path": "(f, a, e)", "dim": 1},
    ]
    assert "oracle" not in doc


def test_analyze_rejects_relative_loop(capsys):
    code = main(["analyze", str(FIXTURES / "reverse_arrow.qa")])
    err = capsys.readouterr().err
    assert code == 2
    assert "(a -> a)" in err and "infinite" in err


def test_analyze_dimension_cap(capsys):
    code = main(["analyze", str(FIXTURES / "kronecker.qa"), "--max-dim", "4"])
    err = capsys.readouterr().err
    assert code == 3
    assert "dimension 5" in err and "--max-dim" in err


def test_analyze_missing_and_corrupted_files(tmp_path, capsys):
    assert main(["analyze", str(tmp_path / "nope.qa")]) == 2
    bad = tmp_path / "bad.qa"
    bad.write_text("field Q\n\ngarbage before any section\n[vertices] v\n")
    assert main(["analyze", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "line 3" in err and "before any section" in err


def test_analyze_without_new_arrows(tmp_path, capsys):
    path = tmp_path / "plain.qa"
    path.write_text("""\
field Q
[vertices] e f
[arrows] u: e -> f ; v: e -> f
[relations]
[bound] 2
[new_arrows]
""")
    code = main(["analyze", str(path), "--json"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    assert doc["dim_extended"] == doc["dim_base"] == 4
    assert doc["delta"]["delta"] == 0 and doc["pairs"] == []


def test_analyze_prime_field_flag(capsys):
    code = main(["analyze", str(FIXTURES / "kronecker.qa"), "--field", "5",
                 "--json"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    assert doc["field"] == "5" and doc["delta"]["delta"] == 5
    assert main(["analyze", str(FIXTURES / "kronecker.qa"),
                 "--field", "6"]) == 2


def test_verify_file_passes(capsys):
    code = main(["verify", str(FIXTURES / "chain4.qa")])
    out = capsys.readouterr().out
    assert code == 0
    assert "result: pass" in out
    assert "[pass] delta_matches_oracle: 1 == 1" in out


def test_verify_rejects_relative_loop(capsys):
    code = main(["verify", str(FIXTURES / "reverse_arrow.qa")])
    err = capsys.readouterr().err
    assert code == 2 and "(a -> a)" in err


def test_verify_needs_exactly_one_input(capsys):
    assert main(["verify"]) == 2
    assert main(["verify", str(FIXTURES / "chain4.qa"),
                 "--random", "1", "1"]) == 2
    assert main(["verify", "--random", "1", "0"]) == 2


def test_verify_random_batch(capsys):
    code = main(["verify", "--random", "11", "2", "--json"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    assert doc["ok"] is True and len(doc["reports"]) == 2
    assert all(r["ok"] for r in doc["reports"])


def test_reports_are_byte_identical(capsys):
    runs = []
    for _ in range(2):
        assert main(["analyze", str(FIXTURES / "chain5.qa"), "--json"]) == 0
        runs.append(capsys.readouterr().out)
    assert runs[0] == runs[1]
    runs = []
    for _ in range(2):
        assert main(["verify", "--random", "3", "1"]) == 0
        runs.append(capsys.readouterr().out)
    assert runs[0] == runs[1]


def test_bad_usage_exits_two(capsys):
    assert main([]) == 2
    assert main(["frobnicate"]) == 2
    capsys.readouterr()
