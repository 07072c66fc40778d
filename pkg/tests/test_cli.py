"""Command-line client: exit codes, output streams, report format flag
placement, and byte-identical reruns.
"""

import json

import pytest

from fincat.cli import main


@pytest.fixture()
def c2(data_dir):
    return str(data_dir / "c2.fincat")


@pytest.fixture()
def m2(data_dir):
    return str(data_dir / "m2.fincat")


@pytest.fixture()
def v2(data_dir):
    return str(data_dir / "v2.fincat")


class TestExitCodes:
    def test_all_pass_is_zero(self, c2, capsys):
        assert main([c2, "validate"]) == 0
        out = capsys.readouterr()
        assert "status: 0" in out.out
        assert out.err == ""

    def test_failed_check_is_one(self, m2, capsys):
        # the idempotent cannot lift against itself, so the shipped
        # all/all system is not a factorization system
        assert main([m2, "check-fs", "m2", "all_all"]) == 1
        out = capsys.readouterr()
        assert "level=none" in out.out
        assert "from e to e" in out.out

    def test_unknown_command_is_two(self, c2, capsys):
        assert main([c2, "frobnicate"]) == 2
        out = capsys.readouterr()
        assert "unknown command" in out.err

    def test_missing_workspace_is_two(self, capsys):
        assert main(["/nonexistent/path.fincat", "validate"]) == 2
        assert "no such workspace file" in capsys.readouterr().err

    def test_cap_exceeded_is_three(self, v2, capsys):
        # the linear fixture has 31 arrows, over the default cap of 16
        assert main([v2, "enumerate", "fs", "v2"]) == 3
        assert "cap" in capsys.readouterr().err


class TestFormatFlag:
    def test_trailing_json_flag(self, c2, capsys):
        assert main([c2, "enumerate", "fs", "c2", "--format", "json"]) == 0
        body = json.loads(capsys.readouterr().out)
        assert body["schema"] == "fincat-report/1"
        counts = [c for c in body["checks"] if c["name"] == "count"]
        assert counts[0]["witnesses"] == ["2"]

    def test_leading_json_flag(self, c2, capsys):
        assert main([c2, "--format", "json", "validate"]) == 0
        body = json.loads(capsys.readouterr().out)
        assert body["status"] == 0

    def test_bad_format_value(self, c2, capsys):
        assert main([c2, "validate", "--format", "xml"]) == 2
        assert "--format needs human or json" in capsys.readouterr().err


class TestDeterminism:
    def test_byte_identical_reruns(self, c2, capsys):
        main([c2, "ladder", "c2", "--format", "json"])
        first = capsys.readouterr().out
        main([c2, "ladder", "c2", "--format", "json"])
        second = capsys.readouterr().out
        assert first == second
        assert json.loads(first)["status"] == 0

    def test_human_format_stable(self, c2, capsys):
        main([c2, "analyze", "c2"])
        first = capsys.readouterr().out
        main([c2, "analyze", "c2"])
        assert capsys.readouterr().out == first
