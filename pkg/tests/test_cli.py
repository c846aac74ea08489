import os

import pytest

from relcat.cli import cli

from conftest import example, golden


@pytest.mark.parametrize("args, expected", [
    (["compute", "kernel", "r.rel"], "kernel_r.rel"),
    (["compute", "trace", "id.rel"], "trace_id.rel"),
    (["compute", "meet", "a.rel", "b.rel"], "meet_a_b.rel"),
    (["compute", "neg", "half.mat", "--rig", "chain3"], "neg_p.mat"),
    (["extract", "pair.rel"], "extract_pair.txt"),
    (["extract", "empty.rel"], "extract_empty.txt"),
])
def test_golden_outputs(runner, args, expected):
    args = [example(a) if a.endswith((".rel", ".mat")) else a for a in args]
    result = runner.invoke(cli, args)
    assert result.exit_code == 0, result.output
    assert result.output == golden(expected)


def test_compute_writes_to_a_file(runner, tmp_path):
    out = str(tmp_path / "k.rel")
    result = runner.invoke(cli, ["compute", "kernel", example("r.rel"), "--out", out])
    assert result.exit_code == 0
    assert result.output == ""
    with open(out, encoding="utf-8") as f:
        assert f.read() == golden("kernel_r.rel")


@pytest.mark.parametrize("args", [
    ["compute", "meet", "a.rel", "r.rel"],
    ["compute", "trace", "r.rel"],
    ["compute", "kernel", "a.rel", "b.rel"],
    ["compute", "join", "a.rel", "r.rel"],
])
def test_compute_rejects_mismatched_operands(runner, args):
    result = runner.invoke(cli, [example(a) if a.endswith(".rel") else a for a in args])
    assert result.exit_code == 2
    assert "error:" in result.output


def test_matrix_over_another_rig(runner):
    result = runner.invoke(cli, ["compute", "neg", example("half.mat"), "--rig", "bool"])
    assert result.exit_code == 2


def test_extract_fails_on_a_chain(runner):
    result = runner.invoke(cli, ["extract", example("half.mat"), "--rig", "chain3"])
    assert result.exit_code == 1
    assert "complementation" in result.output
    assert "½" in result.output


@pytest.mark.parametrize("args, expected, code", [
    (["lattice", "--size", "3"], "lattice_rel_3.txt", 0),
    (["lattice", "--size", "1", "--rig", "chain3"], "lattice_chain3_1.txt", 1),
])
def test_lattice_reports(runner, args, expected, code):
    result = runner.invoke(cli, args)
    assert result.exit_code == code
    assert result.output == golden(expected)


def test_sampling_needs_a_seed(runner):
    result = runner.invoke(cli, ["lattice", "--size", "3", "--sampled", "10"])
    assert result.exit_code == 2


def test_sampled_lattice(runner):
    result = runner.invoke(cli, ["lattice", "--size", "4", "--sampled", "50", "--seed", "7"])
    assert result.exit_code == 0
    assert "# mode sampled" in result.output


def test_model_and_rig_are_exclusive(runner):
    result = runner.invoke(cli, ["lattice", "--size", "1", "--model", "rel", "--rig", "bool"])
    assert result.exit_code == 2


def test_malformed_rig_file(runner, tmp_path):
    path = tmp_path / "bad.rig"
    path.write_text("rig bad\ncarrier 0 1\nzero 0\none 1\nadd\n0 1\n1 1 1\nmul\n0 0\n0 1\n", encoding="utf-8")
    result = runner.invoke(cli, ["check", "--rig", str(path), "--bound", "1"])
    assert result.exit_code == 2
    assert ":7:" in result.output


def test_unknown_rig(runner):
    result = runner.invoke(cli, ["lattice", "--size", "1", "--rig", "nosuchrig"])
    assert result.exit_code == 2
    assert "bundled" in result.output


def test_check_relations_holds(runner):
    with runner.isolated_filesystem():
        first = runner.invoke(cli, ["check", "--model", "rel", "--bound", "2"])
        second = runner.invoke(cli, ["check", "--model", "rel", "--bound", "2"])
        assert os.listdir(".") == []
    assert first.exit_code == 0, first.output
    assert first.output == second.output
    lines = first.output.splitlines()
    assert lines[:3] == ["# relcat report", "# model rel", "# bound 2"]
    verdicts = [line for line in lines if not line.startswith("#")]
    assert verdicts
    assert all(" HOLDS bound=2" in line for line in verdicts)
    assert any(line.startswith("5-scalars-invertible ") for line in verdicts)
    assert any(line.startswith("coherence-associator-2-2-2 ") for line in verdicts)


def test_check_chain_writes_a_replayable_witness(runner):
    with runner.isolated_filesystem():
        result = runner.invoke(cli, ["check", "--rig", "chain3", "--bound", "2", "--out", "report.txt"])
        assert result.exit_code == 1
        with open("report.txt", encoding="utf-8") as f:
            report = f.read().splitlines()
        assert "5-scalars-invertible FAILS bound=2 witness=witness-5-scalars-invertible.mat" in report
        with open("witness-5-scalars-invertible.mat", encoding="utf-8") as f:
            witness = f.read()
        assert "# equation" in witness
        assert "½" in witness
        replayed = runner.invoke(cli, ["replay", "witness-5-scalars-invertible.mat"])
    assert replayed.exit_code == 0, replayed.output
    assert replayed.output.startswith("replays: ")


def test_check_truncated_naturals(runner):
    with runner.isolated_filesystem():
        result = runner.invoke(cli, ["check", "--rig", "trunc3", "--bound", "2", "--out", "report.txt"])
        assert result.exit_code == 1
        with open("witness-5-scalars-invertible.mat", encoding="utf-8") as f:
            body = [line for line in f.read().splitlines() if not line.startswith("#")]
    assert body[-1] == "2"


def test_tampered_witness_does_not_replay(runner):
    with runner.isolated_filesystem():
        runner.invoke(cli, ["check", "--rig", "chain3", "--bound", "2", "--out", "report.txt"])
        with open("witness-5-scalars-invertible.mat", encoding="utf-8") as f:
            text = f.read()
        with open("tampered.mat", "w", encoding="utf-8") as f:
            f.write(text.replace("½", "1"))
        result = runner.invoke(cli, ["replay", "tampered.mat"])
    assert result.exit_code == 1


def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert "relcat" in result.output


@pytest.mark.parametrize("op, expected", [
    ("trace", "mat trace_f chain3 1 1\n0\n"),
    ("top", "mat top_f chain3 2 1\n1\n1\n"),
])
def test_compute_on_matrices(runner, op, expected):
    result = runner.invoke(cli, ["compute", op, example("swap.mat"), "--rig", "chain3"])
    assert result.exit_code == 0, result.output
    assert result.output == expected


@pytest.mark.parametrize("content, position", [
    (b"\xff\xfe bad\n", ":1:1:"),
    (b"set X a b\nrel r X X\n10\n0\xe91\n", ":4:2:"),
])
def test_invalid_utf8_is_an_input_error(runner, tmp_path, content, position):
    path = tmp_path / "bad.rel"
    path.write_bytes(content)
    result = runner.invoke(cli, ["compute", "kernel", str(path)])
    assert result.exit_code == 2
    assert "error:" in result.output
    assert position in result.output
    assert "UTF-8" in result.output


def test_unwritable_output_is_an_input_error(runner, tmp_path):
    out = str(tmp_path / "missing" / "k.rel")
    result = runner.invoke(cli, ["compute", "kernel", example("r.rel"), "--out", out])
    assert result.exit_code == 2
    assert "error:" in result.output
    assert "cannot write" in result.output


def test_check_relations_at_bound_three(runner):
    with runner.isolated_filesystem():
        result = runner.invoke(cli, ["check", "--model", "rel", "--bound", "3"])
    assert result.exit_code == 0, result.output
    verdicts = [line for line in result.output.splitlines() if not line.startswith("#")]
    assert all(" HOLDS bound=3" in line for line in verdicts)
    assert any(line.startswith("coherence-associator-1-2-3 ") for line in verdicts)


def test_sampled_check_records_the_samples(runner):
    with runner.isolated_filesystem():
        result = runner.invoke(cli, ["check", "--bound", "1", "--sampled", "9", "--seed", "4"])
    assert result.exit_code == 0, result.output
    assert "else 9 samples (seed 4)" in result.output
