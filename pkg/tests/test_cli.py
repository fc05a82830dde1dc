#!/usr/bin/env python3
"""Tests for the semibrick CLI (core.cli)."""

import json

import pytest

from tests.helpers import kronecker, module, write_json
from core import settings
from core.cli import __version__, _resolve_file, build_parser, main, run_command
from core.config import (
    EXIT_EXHAUSTED, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE, MODULE_DIR, MODULE_SUFFIX,
    SCHEMA_VERSION, SUBCOMMANDS, VIOLATION_FLAG,
)
from core.modrep import direct_sum, module_to_dict, random_basis_change, read_module


@pytest.fixture(autouse=True)
def isolated(tmp_path, monkeypatch):
    """Fresh settings file and an empty working directory."""
    monkeypatch.setattr(settings, "SETTINGS_FILE", tmp_path / "settings.json")
    monkeypatch.chdir(tmp_path)
    return tmp_path


@pytest.fixture
def sum_file(tmp_path):
    """R1 (+) R2 in a random basis, as a module file."""
    m = random_basis_change(direct_sum(kronecker(1), kronecker(2)), 4).renamed("R1+R2")
    return write_json(tmp_path, "sum.json", json.dumps(module_to_dict(m)))


# ---------------------------------------------------------------------------
#  Version / help / parser
# ---------------------------------------------------------------------------

class TestCLIBasics:
    def test_version_flag(self, capsys):
        assert main(["--version"]) == EXIT_OK
        assert __version__ in capsys.readouterr().out

    def test_no_command_shows_help(self, capsys):
        assert main([]) == EXIT_OK
        assert "usage" in capsys.readouterr().out.lower()

    def test_parser_knows_every_subcommand(self):
        parser = build_parser()
        for name in SUBCOMMANDS:
            args = parser.parse_args([name])
            assert args.command == name

    def test_parser_common_flags(self):
        args = build_parser().parse_args(
            ["extend", "-q", "k2.q", "-s", "r1.json", "r2.json", "--lmax", "3", "-j", "2"])
        assert args.semibrick == ["r1.json", "r2.json"]
        assert (args.lmax, args.workers, args.member) == (3, 2, 0)

    def test_unknown_subcommand_suggests(self):
        result = run_command(["brik", "--module", "r1"])
        assert result.code == EXIT_USAGE
        assert "did you mean 'brick'" in result.report["error"]


class TestResolveFile:
    def test_existing_path(self, tmp_path):
        path = write_json(tmp_path, "mine.json", "{}")
        assert _resolve_file(str(path), MODULE_DIR, MODULE_SUFFIX) == path.resolve()

    def test_bundled_by_name(self):
        assert _resolve_file("r1.json", MODULE_DIR, MODULE_SUFFIX) == MODULE_DIR / "r1.json"

    def test_adds_extension(self):
        assert _resolve_file("r1", MODULE_DIR, MODULE_SUFFIX) == MODULE_DIR / "r1.json"

    def test_missing(self):
        with pytest.raises(FileNotFoundError):
            _resolve_file("no_such_module_xyz", MODULE_DIR, MODULE_SUFFIX)


# ---------------------------------------------------------------------------
#  Single modules and pairs
# ---------------------------------------------------------------------------

class TestModuleCommands:
    def test_brick(self):
        result = run_command(["brick", "--quiver", "k2.q", "--module", "r1.json"])
        assert result.code == EXIT_OK
        assert result.report["is_brick"] is True
        assert result.report["end_dim"] == 1

    def test_brick_negative(self, sum_file):
        result = run_command(["brick", "--module", str(sum_file)])
        assert result.code == EXIT_NEGATIVE
        assert result.report["status"] == "negative"
        assert result.report["end_dim"] == 2

    def test_hom_and_ext(self):
        hom = run_command(["hom", "-m", "r1", "-m", "r2"])
        assert hom.report["hom_dim"] == 0
        ext = run_command(["ext", "-m", "r1", "-m", "r1"])
        assert (ext.report["ext1_dim"], ext.report["hom_dim"], ext.report["euler_form"]) == (1, 1, 0)

    def test_hom_needs_two_modules(self):
        result = run_command(["hom", "-m", "r1"])
        assert result.code == EXIT_USAGE
        assert "exactly 2" in result.report["error"]

    def test_semibrick(self):
        ok = run_command(["semibrick", "-s", "r1", "r2"])
        assert ok.code == EXIT_OK
        assert ok.report["hom_table"] == [[1, 0], [0, 1]]
        bad = run_command(["semibrick", "-s", "a2_p1", "a2_s2"])
        assert bad.code == EXIT_NEGATIVE
        assert (bad.report["witness"]["i"], bad.report["witness"]["j"]) == (1, 0)

    def test_iso(self):
        same = run_command(["iso", "-m", "r1", "-m", "r1"])
        assert same.code == EXIT_OK
        assert set(same.report["isomorphism"]) == {"1", "2"}
        assert run_command(["iso", "-m", "r1", "-m", "r2"]).code == EXIT_NEGATIVE

    def test_open(self):
        assert run_command(["open", "-m", "k2_p1"]).code == EXIT_OK
        result = run_command(["open", "-m", "r1"])
        assert result.code == EXIT_NEGATIVE
        assert result.report["ext1_self"] == 1

    def test_open_rejects_non_brick(self, sum_file):
        assert run_command(["open", "-m", str(sum_file)]).code == EXIT_USAGE

    def test_decompose(self, sum_file):
        result = run_command(["decompose", "-m", str(sum_file)])
        assert result.code == EXIT_OK
        assert result.report["verified"] is True
        assert [s["dim"] for s in result.report["summands"]] == [[1, 1], [1, 1]]

    def test_ext_out_of_scope(self):
        result = run_command(["ext", "-m", "loop_n", "-m", "loop_n"])
        assert result.code == EXIT_USAGE
        assert "path algebras only" in result.report["error"]


# ---------------------------------------------------------------------------
#  Dimension vectors
# ---------------------------------------------------------------------------

class TestDimensionCommands:
    def test_schur(self):
        assert run_command(["schur", "-q", "k2", "-d", "1,1", "--trials", "5"]).code == EXIT_OK
        result = run_command(["schur", "-q", "k2", "-d", "2,2", "--trials", "5"])
        assert result.code == EXIT_NEGATIVE
        assert result.report["attempted"] == 5

    def test_classify(self):
        result = run_command(["classify", "-q", "k3", "-d", "1,1", "--trials", "5", "--samples", "3"])
        assert result.code == EXIT_OK
        assert result.report["verdict"] == "wild"
        assert result.report["doubled"]["summands"] == [[2, 2]]

    def test_candecomp(self):
        result = run_command(["candecomp", "-q", "k2", "-d", "2,2", "--samples", "3"])
        assert result.report["summands"] == [[1, 1], [1, 1]]
        assert result.report["agreement"] == 1.0

    def test_generic_hom(self):
        result = run_command(["generic-hom", "-q", "k2", "-d", "0,1", "-d", "1,2", "--samples", "3"])
        assert result.report["minimum"] == 2

    def test_generic_hom_needs_two_dims(self):
        assert run_command(["generic-hom", "-q", "k2", "-d", "1,1"]).code == EXIT_USAGE

    def test_component(self):
        result = run_command(["component", "-q", "k2", "-d", "1,2", "--samples", "3"])
        assert result.report["verdict"] == "unique open brick"

    def test_dim_length_mismatch(self):
        result = run_command(["schur", "-q", "k2", "-d", "1,1,1"])
        assert result.code == EXIT_USAGE
        assert "2 vertices" in result.report["error"]

    def test_missing_quiver(self):
        result = run_command(["schur", "-d", "1,1"])
        assert result.code == EXIT_USAGE
        assert "requires --quiver" in result.report["error"]


# ---------------------------------------------------------------------------
#  Presentations
# ---------------------------------------------------------------------------

class TestPresentationCommands:
    def test_theta_defaults_to_dimension_vector(self):
        result = run_command(["theta", "-m", "k2_p1"])
        assert result.report["theta"] == [1, 0]
        assert result.report["iota"] == [1, 2]
        assert result.report["theta_value"] == 1

    def test_present_writes_cokernel(self, tmp_path):
        out = tmp_path / "coker.json"
        result = run_command(["present", "-q", "k2", "-t", "1,-1", "-m", "r1", "-o", str(out)])
        assert result.code == EXIT_OK
        assert result.report["injective"] is True
        assert result.report["identity"][0]["holds"] is True
        assert read_module(out).dim.entries == (1, 1)

    def test_fbar(self):
        result = run_command(["fbar", "-m", "r1"])
        assert result.code == EXIT_OK
        assert result.report["rule"] == "exhaustive"

    def test_fbar_violation(self):
        result = run_command(["fbar", "-m", "r1", "--theta=-1,1"])
        assert result.code == EXIT_NEGATIVE
        assert result.report["violating"] == [0, 1]

    def test_fei(self):
        result = run_command(["fei", "-m", "r1", "--trials", "10"])
        assert result.code == EXIT_OK
        assert result.report["l"] == 1

    def test_fei_exhausted(self):
        result = run_command(["fei", "-m", "a2_s1", "--lmax", "1", "--trials", "3"])
        assert result.code == EXIT_EXHAUSTED
        assert result.report["status"] == "exhausted"
        assert result.report["hypothesis"] == "violated"


# ---------------------------------------------------------------------------
#  Semibrick engine
# ---------------------------------------------------------------------------

class TestEngineCommands:
    def test_extend(self, tmp_path):
        out = tmp_path / "new.json"
        result = run_command(["extend", "-q", "k2.q", "-s", "r1.json", "--seed", "7", "-o", str(out)])
        assert result.code == EXIT_OK
        cert = result.report["certificate"]
        assert cert["l"] == 1 and cert["seed"] == 7
        assert cert["root_type"] == "tame"
        assert cert["checks"]["hom_to_members"] == [0]
        assert read_module(out).dim.entries == (1, 1)

    def test_extend_is_reproducible(self):
        argv = ["extend", "-s", "k3_r111", "--seed", "11", "--trials", "10"]
        assert run_command(argv).report == run_command(argv).report
        assert run_command(argv).report == run_command(argv + ["-j", "3"]).report

    def test_extend_exhausted(self):
        result = run_command(["extend", "-s", "a2_p1", "--lmax", "1", "--trials", "3"])
        assert result.code == EXIT_EXHAUSTED
        assert result.report["exhausted"]["per_l"]["1"]["attempts"] == 3
        assert result.report["exhausted"]["root_type"] == "real"

    def test_extend_bad_member(self):
        result = run_command(["extend", "-s", "r1", "--member", "5"])
        assert result.code == EXIT_USAGE
        assert "out of range" in result.report["error"]

    def test_extend_rejects_non_semibrick(self):
        assert run_command(["extend", "-s", "r1", "r1"]).code == EXIT_USAGE

    @pytest.mark.parametrize("argv", [
        ["semibrick"],
        ["extend"],
        ["grow", "--target", "2"],
        ["probe", "-d", "1,1"],
    ])
    def test_empty_members_file_is_usage_error(self, tmp_path, argv):
        path = write_json(tmp_path, "none.json", json.dumps({"members": []}))
        result = run_command(argv[:1] + ["-s", str(path)] + argv[1:])
        assert result.code == EXIT_USAGE
        assert "non-empty" in result.report["error"]

    def test_grow(self):
        result = run_command(["grow", "-s", "r1", "--target", "3", "--lmax", "2", "--trials", "10"])
        assert result.code == EXIT_OK
        assert result.report["size"] == 3
        assert len(result.report["certificates"]) == 2

    def test_probe(self):
        assert run_command(["probe", "-s", "r1", "-d", "1,1", "--trials", "3"]).code == EXIT_OK
        flagged = run_command(["probe", "-s", "r1", "-d", "2,2", "--trials", "2"])
        assert flagged.code == EXIT_NEGATIVE
        assert flagged.report["flag"] == VIOLATION_FLAG

    def test_perp(self):
        result = run_command(["perp", "-m", "r1", "--samples", "5", "--lmax", "2", "--trials", "10"])
        assert result.report["product"] == 1
        assert result.report["hom_to_b_zero"] >= 0.8

    def test_selftest_subset(self):
        result = run_command(["selftest", "--only", "algebra"])
        assert result.code == EXIT_OK
        assert result.report["failed"] == []


# ---------------------------------------------------------------------------
#  Errors and output
# ---------------------------------------------------------------------------

class TestErrorsAndOutput:
    def test_missing_file(self):
        result = run_command(["brick", "-m", "nonexistent_module_xyz.json"])
        assert result.code == EXIT_USAGE
        assert "file not found" in result.report["error"]

    def test_bad_prime(self):
        result = run_command(["schur", "-q", "k2", "-d", "1,1", "--prime", "8"])
        assert result.code == EXIT_USAGE
        assert "not prime" in result.report["error"]

    def test_zero_budget(self):
        assert run_command(["schur", "-q", "k2", "-d", "1,1", "--trials", "0"]).code == EXIT_USAGE

    def test_quiver_syntax_error_names_file_and_line(self, tmp_path):
        (tmp_path / "bad.q").write_text("vertices: 1\narow a: 1 -> 1\n", encoding="utf-8")
        result = run_command(["schur", "-q", "bad.q", "-d", "1"])
        assert result.code == EXIT_USAGE
        assert "bad.q:2" in result.report["error"]

    def test_malformed_module(self, tmp_path):
        path = write_json(tmp_path, "broken.json", '{"quiver": "k2"}')
        result = run_command(["brick", "-m", str(path)])
        assert result.code == EXIT_USAGE
        assert "broken.json" in result.report["error"]

    def test_json_report(self, capsys):
        assert main(["brick", "-m", "r1", "--json"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["schema_version"] == SCHEMA_VERSION
        assert report["command"] == "brick"
        assert report["budgets"]["trials"] > 0
        assert "field_note" in report

    def test_json_setting_applies(self, capsys):
        settings.save_settings({"json": True})
        main(["brick", "-m", "r1"])
        assert json.loads(capsys.readouterr().out)["is_brick"] is True

    def test_table_report(self, capsys):
        main(["brick", "-m", "r1"])
        out = capsys.readouterr().out
        assert "semibrick brick" in out
        assert "is_brick" in out

    def test_error_goes_to_stderr(self, capsys):
        assert main(["brick", "-m", "nonexistent_module_xyz"]) == EXIT_USAGE
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "semibrick: error:" in captured.err

    def test_json_error_envelope_on_stdout(self, capsys):
        assert main(["brick", "-m", "nonexistent_module_xyz", "--json"]) == EXIT_USAGE
        captured = capsys.readouterr()
        doc = json.loads(captured.out)
        assert doc["status"] == "error"
        assert doc["command"] == "brick"
        assert doc["schema_version"] == SCHEMA_VERSION
        assert "file not found" in doc["error"]
        assert "semibrick: error:" in captured.err

    def test_json_error_envelope_for_unknown_subcommand(self, capsys):
        assert main(["brik", "--json"]) == EXIT_USAGE
        doc = json.loads(capsys.readouterr().out)
        assert doc["status"] == "error" and doc["command"] == "brik"
        assert "did you mean 'brick'" in doc["error"]

    def test_arithmetic_error_raises_violation_flag(self, mocker):
        handler = mocker.Mock(side_effect=ArithmeticError("brick with q(d) = 2"))
        mocker.patch.dict("core.cli.COMMANDS", {"brick": handler})
        result = run_command(["brick", "-m", "r1", "--json"])
        assert result.code == EXIT_NEGATIVE
        assert result.report["flag"] == VIOLATION_FLAG
        assert result.report["status"] == "error"
        handler.assert_called_once()

    def test_selftest_table_lists_checks(self, capsys):
        main(["selftest", "--only", "quiver-text-roundtrip"])
        assert "quiver-text-roundtrip" in capsys.readouterr().out

    def test_bundled_module_matches_fixture(self):
        assert module("r1") == kronecker(1)
