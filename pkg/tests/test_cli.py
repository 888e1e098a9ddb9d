"""CLI subcommands, output, and exit codes."""

import json
import os

import pytest

from argonaut.cli import cli_run

from conftest import MAKINSON_KB

TWO_CYCLE_KB = """\
atoms p
premise p
premise ~p
setting core=cl attack=dicodef
"""

PRIORITIZED_KB = """\
atoms p q
premise p [1]
premise ~p [2]
setting core=cl-top attack=didef lifting=min
"""


@pytest.fixture
def kb_path(tmp_path):
    def write(text, name="kb.kb"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


class TestEntails:
    def test_preferred_consequence_of_running_example(self, kb_path, capsys):
        path = kb_path(MAKINSON_KB)
        assert cli_run(["entails", path, "--query", "p", "--sem", "prf"]) == 0
        out = capsys.readouterr().out
        assert out.splitlines()[0] == "true"

    def test_axiom_addition_defeats_the_query(self, kb_path, capsys):
        path = kb_path(MAKINSON_KB)
        code = cli_run(
            ["entails", path, "--query", "p", "--sem", "prf", "--add-axiom", "p|q"]
        )
        assert code == 0
        assert capsys.readouterr().out.splitlines()[0] == "false"

    def test_witnesses_listed_per_extension(self, kb_path, capsys):
        path = kb_path(TWO_CYCLE_KB)
        cli_run(["entails", path, "--query", "p", "--sem", "prf"])
        out = capsys.readouterr().out
        assert out.splitlines()[0] == "false"
        assert "extension 0" in out and "extension 1" in out

    def test_at_most_needs_priorities(self, kb_path, capsys):
        path = kb_path(TWO_CYCLE_KB)
        assert cli_run(
            ["entails", path, "--query", "p", "--sem", "grd", "--at-most", "1"]
        ) == 64

    def test_prioritized_entailment_with_bound(self, kb_path, capsys):
        path = kb_path(PRIORITIZED_KB)
        assert cli_run(["entails", path, "--query", "p", "--sem", "grd"]) == 0
        assert capsys.readouterr().out.splitlines()[0] == "true"
        assert cli_run(
            ["entails", path, "--query", "~p", "--sem", "grd"]
        ) == 0
        assert capsys.readouterr().out.splitlines()[0] == "false"


class TestExtensions:
    def test_two_cycle_has_two_preferred(self, kb_path, capsys):
        path = kb_path(TWO_CYCLE_KB)
        assert cli_run(["extensions", path, "--sem", "prf", "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert len(payload["extensions"]["prf"]) == 2

    def test_human_readable_listing(self, kb_path, capsys):
        path = kb_path(TWO_CYCLE_KB)
        assert cli_run(["extensions", path, "--sem", "grd"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("1 grd extension(s)")


class TestGraph:
    def test_dot_file_written(self, kb_path, tmp_path, capsys):
        path = kb_path(MAKINSON_KB)
        target = str(tmp_path / "out.dot")
        assert cli_run(["graph", path, "--dot", target]) == 0
        text = open(target).read()
        assert text.startswith("digraph attacks {")

    def test_dot_to_stdout(self, kb_path, capsys):
        path = kb_path(TWO_CYCLE_KB)
        assert cli_run(["graph", path, "--dot", "-"]) == 0
        assert capsys.readouterr().out.startswith("digraph attacks {")


class TestCheck:
    def test_property_pass_exit_zero(self, kb_path, capsys):
        path = kb_path(TWO_CYCLE_KB)
        assert cli_run(["check", path, "--property", "pointed"]) == 0
        assert "PASS" in capsys.readouterr().out

    def test_property_fail_exit_one(self, kb_path, capsys):
        # plain classical core with direct defeat interferes
        path = kb_path("atoms p q\npremise p\nsetting core=cl attack=didef\n")
        code = cli_run(["check", path, "--property", "non-interference", "--sem", "grd"])
        out = capsys.readouterr().out
        assert code == 1 and "FAIL" in out

    def test_random_checks_report_seeds(self, capsys):
        code = cli_run(
            [
                "check",
                "--random",
                "seed=3",
                "trials=2",
                "--property",
                "stb-eq-prf",
                "--json",
            ]
        )
        payload = json.loads(capsys.readouterr().out)
        assert code == 0
        assert [r["seed"] for r in payload] == [3, 4]

    def test_env_seed_override(self, capsys, monkeypatch):
        monkeypatch.setenv("ARGONAUT_SEED", "17")
        code = cli_run(
            ["check", "--random", "trials=1", "--property", "pointed", "--json"]
        )
        payload = json.loads(capsys.readouterr().out)
        assert code == 0 and payload[0]["seed"] == 17


class TestExitCodes:
    def test_unknown_flag_is_usage_error(self, kb_path, capsys):
        path = kb_path(TWO_CYCLE_KB)
        assert cli_run(["entails", path, "--query", "p", "--sem", "nope"]) == 64

    def test_missing_file_is_kb_error(self, capsys):
        assert cli_run(["entails", "/nonexistent.kb", "--query", "p", "--sem", "grd"]) == 65

    def test_bad_kb_is_kb_error(self, kb_path, capsys):
        path = kb_path("atoms p\npremise q\n")
        assert cli_run(["entails", path, "--query", "p", "--sem", "grd"]) == 65
