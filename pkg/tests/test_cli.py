"""CLI subcommands, exercised in-process through main(argv)."""

import json

import pytest

from ramabel.cli import main


def run(tmp_path, *argv):
    return main(["--out", str(tmp_path), "--cache-dir", str(tmp_path / "cache"),
                 *argv])


def read_manifest(tmp_path, command):
    return json.loads((tmp_path / f"{command}_manifest.json").read_text())


class TestBasics:
    def test_csum(self, tmp_path, capsys):
        assert run(tmp_path, "csum", "--q", "6", "--n", "3") == 0
        assert "c_6(3) = -2" in capsys.readouterr().out
        csv = (tmp_path / "csum.csv").read_text()
        assert csv.splitlines()[0] == "q,n,value"
        assert csv.splitlines()[1] == "6,3,-2"
        man = read_manifest(tmp_path, "csum")
        assert man["output_sha256"]
        assert man["params"] == {"q": 6, "n": 3}

    def test_sieve_checksum_deterministic(self, tmp_path, capsys):
        assert run(tmp_path, "sieve", "--n", "20000") == 0
        first = capsys.readouterr().out
        assert run(tmp_path, "sieve", "--n", "20000") == 0
        assert capsys.readouterr().out == first

    def test_singular_c2(self, tmp_path, capsys):
        assert run(tmp_path, "singular", "--form", "C2", "--p", "1000000") == 0
        out = capsys.readouterr().out
        value = float(out.split(" = ")[1].split()[0])
        assert abs(value - 0.6601618158) < 1e-6

    def test_props_all_pass(self, tmp_path):
        assert run(tmp_path, "props", "--qmax", "20", "--nmax", "60") == 0
        csv = (tmp_path / "props.csv").read_text()
        assert "FAIL" not in csv

    def test_abel(self, tmp_path):
        assert run(tmp_path, "abel", "--x", "2", "--zs", "0.5,0.9") == 0
        lines = (tmp_path / "abel.csv").read_text().splitlines()
        assert lines[0] == "x,z,Q,value,target,gap"
        assert len(lines) == 3

    def test_goldbach(self, tmp_path, capsys):
        assert run(tmp_path, "goldbach", "--n", "3", "--q1", "2", "--q2", "2") == 0
        assert "6" in capsys.readouterr().out


class TestErrors:
    def test_usage_error_exit_two(self, tmp_path):
        assert run(tmp_path, "sieve", "--n", "0") == 2

    def test_singular_missing_params(self, tmp_path):
        assert run(tmp_path, "singular", "--form", "pair") == 2

    def test_bad_tuple(self, tmp_path):
        assert run(tmp_path, "tuple", "--offsets", "0,2,4", "--n", "100") == 2


class TestDeterminism:
    def test_rerun_byte_identical(self, tmp_path):
        args = ("autocorr", "--gap", "2", "--n", "20000")
        assert run(tmp_path, *args) == 0
        first = (tmp_path / "autocorr.csv").read_bytes()
        assert run(tmp_path, *args) == 0
        assert (tmp_path / "autocorr.csv").read_bytes() == first

    def test_threads_do_not_change_output(self, tmp_path):
        base = ("autocorr", "--gap", "6", "--n", "50000")
        assert run(tmp_path, "--threads", "1", *base) == 0
        one = (tmp_path / "autocorr.csv").read_bytes()
        assert run(tmp_path, "--threads", "8", *base) == 0
        assert (tmp_path / "autocorr.csv").read_bytes() == one

    def test_manifest_records_command_line(self, tmp_path):
        assert run(tmp_path, "pnt", "--n", "10000") == 0
        man = read_manifest(tmp_path, "pnt")
        assert man["command"] == "pnt"
        assert "--n" in man["command_line"]
        assert man["sieve_bound"] == 10000


class TestSubcommandCoverage:
    def test_conjd(self, tmp_path, capsys):
        assert run(tmp_path, "conjd", "--a", "1", "--b", "2", "--l", "1",
                   "--n", "20000") == 0
        assert "conjecture_d_mean" in capsys.readouterr().out

    def test_tuple(self, tmp_path):
        assert run(tmp_path, "tuple", "--offsets", "0,2,6", "--n", "20000") == 0
        lines = (tmp_path / "tuple.csv").read_text().splitlines()
        # both weightings, ten checkpoints each, plus header
        assert len(lines) == 21

    def test_polymean(self, tmp_path, capsys):
        assert run(tmp_path, "polymean", "--q", "5", "--poly", "1,0,1",
                   "--n", "100000") == 0
        out = capsys.readouterr().out
        assert "exact" in out or "1" in out
