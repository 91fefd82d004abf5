"""
Tests for the command-line front-end.
"""

import json

import pytest

from src.checks import BaseCheck, get_registry, register_default_checks
from src.cli import EXIT_CONFIG, EXIT_OK, EXIT_VERIFY_FAILED, build_parser, main
from src.schemas import parse_pairs


class AlwaysFails(BaseCheck):
    name = "always-fails-cli"
    description = "fails on its only case"

    def evaluate(self):
        yield "only", False


@pytest.fixture
def failing_check():
    register_default_checks()
    registry = get_registry()
    registry.register_check(AlwaysFails)
    yield AlwaysFails.name
    registry.unregister_check(AlwaysFails.name)


class TestRanks:
    @pytest.mark.golden
    def test_csv_matches_golden(self, capsys, read_data):
        code = main(["--format", "csv", "ranks", "--n-max", "3", "--d-max", "2"])
        assert code == EXIT_OK
        assert capsys.readouterr().out == read_data("ranks_small.csv")

    @pytest.mark.slow
    @pytest.mark.golden
    def test_csv_to_degree_four(self, capsys, read_data):
        code = main(["--format", "csv", "ranks", "--n-max", "4", "--d-max", "4"])
        assert code == EXIT_OK
        assert capsys.readouterr().out == read_data("ranks_d4.csv")

    def test_json(self, capsys):
        assert main(["--format", "json", "ranks", "--n-min", "1", "--n-max", "2", "--d-max", "1"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data == {"spec": "all", "n_min": 1, "d_min": 0, "ranks": [[1, 1], [2, 3]]}

    def test_text(self, capsys):
        assert main(["ranks", "--n-max", "1", "--d-max", "1"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].split() == ["d", "n=0", "n=1"]
        assert lines[2].split() == ["1", "1", "2"]

    def test_open_substack(self, capsys):
        assert main(["--format", "csv", "ranks", "--n-max", "0", "--d-max", "2", "--spec", "max-edges:0"]) == EXIT_OK
        assert capsys.readouterr().out == "d,n=0\n0,1\n1,0\n2,1\n"

    def test_out_file(self, tmp_path, capsys):
        target = tmp_path / "ranks.csv"
        assert main(["--format", "csv", "--out", str(target), "ranks", "--n-max", "1", "--d-max", "0"]) == EXIT_OK
        assert capsys.readouterr().out == ""
        assert target.read_text(encoding="utf-8") == "d,n=0,n=1\n0,1,1\n"


class TestHilbert:
    @pytest.mark.golden
    def test_csv_matches_golden(self, capsys, read_data):
        code = main(["--format", "csv", "hilbert", "--n", "0", "--spec", "max-edges:2", "--d-max", "8"])
        assert code == EXIT_OK
        assert capsys.readouterr().out == read_data("hilbert_max_edges_2.csv")

    def test_text(self, capsys):
        assert main(["hilbert", "--n", "2", "--spec", "chains", "--d-max", "4"]) == EXIT_OK
        assert capsys.readouterr().out == "1 2 4 8 16\n"


class TestPullbackRanks:
    @pytest.mark.golden
    def test_csv_matches_golden(self, capsys, read_data):
        code = main(["--format", "csv", "pullback-ranks", "--pairs", "(3,0),(3,1),(2,0),(2,1)", "--m-max", "4"])
        assert code == EXIT_OK
        assert capsys.readouterr().out == read_data("pullback_small.csv")

    def test_text_marks_lower_bounds(self, capsys):
        assert main(["pullback-ranks", "--pairs", "(2,1)", "--m-max", "2"]) == EXIT_OK
        assert capsys.readouterr().out == "(2,1) CH=3: - >=0 >=1\n"

    def test_pairs_below_three_markings(self, capsys):
        assert main(["pullback-ranks", "--pairs", "(0,1)", "--m-max", "2"]) == EXIT_CONFIG


class TestVerify:
    def test_single_check(self, capsys):
        assert main(["verify", "--only", "wdvv"]) == EXIT_OK
        assert capsys.readouterr().out == "PASS wdvv (2 cases)\n"

    def test_json_summary(self, capsys):
        assert main(["--format", "json", "verify", "--only", "wdvv", "--only", "kappa-closure"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["passed"] is True
        assert [r["name"] for r in data["results"]] == ["wdvv", "kappa-closure"]

    def test_failed_check_exit_code(self, capsys, failing_check):
        assert main(["verify", "--only", failing_check]) == EXIT_VERIFY_FAILED
        assert capsys.readouterr().out.startswith(f"FAIL {failing_check}")

    def test_unknown_check(self, capsys):
        assert main(["verify", "--only", "no-such-check"]) == EXIT_CONFIG


class TestConfiguration:
    def test_bad_spec(self, capsys):
        assert main(["ranks", "--spec", "max-edges:x"]) == EXIT_CONFIG
        assert "invalid configuration" in capsys.readouterr().err

    def test_empty_range(self, capsys):
        assert main(["ranks", "--n-min", "3", "--n-max", "1"]) == EXIT_CONFIG

    def test_bad_threads(self, capsys):
        assert main(["--threads", "0", "ranks"]) == EXIT_CONFIG

    def test_bad_log_level(self, capsys):
        assert main(["--log-level", "LOUD", "ranks"]) == EXIT_CONFIG

    def test_missing_subcommand(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args([])

    def test_parse_pairs(self):
        assert parse_pairs("(3,1), (2, 0)") == [(3, 1), (2, 0)]
        with pytest.raises(ValueError):
            parse_pairs("(3,1) and more")
        with pytest.raises(ValueError):
            parse_pairs("")
