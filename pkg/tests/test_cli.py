"""Command line interface: exit codes, output formats, determinism."""

import io
import json

import pytest

from tauhh import __version__
from tauhh.cli import main, render_json

from conftest import DUAL_NUMBERS, TWO_PARALLEL_THEN_ONE

CA_TEXT = TWO_PARALLEL_THEN_ONE.rstrip() + "\nrelations\nc*a\n"


@pytest.fixture
def ca_file(tmp_path):
    f = tmp_path / "ca.quiver"
    f.write_text(CA_TEXT)
    return str(f)


@pytest.fixture
def dual_file(tmp_path):
    f = tmp_path / "dual.quiver"
    f.write_text(DUAL_NUMBERS)
    return str(f)


class TestReportHuman:
    def test_worked_example_exit_zero(self, ca_file, capsys):
        assert main(["report", ca_file]) == 0
        out = capsys.readouterr().out
        assert "dimension 7" in out
        assert "tau_hh1" in out and "graded_formula=3" in out
        assert "excess" in out and "tau_minus_h1=1" in out
        assert "derivations=2" in out

    def test_monomial_block_for_triangular_input(self, ca_file, capsys):
        main(["report", ca_file])
        out = capsys.readouterr().out
        assert "monomial classification:" in out
        assert "relation paths: c*a" in out
        assert "non-uniform pairs: (a, b)" in out

    def test_no_monomial_block_for_cyclic_input(self, dual_file, capsys):
        assert main(["report", dual_file]) == 0
        out = capsys.readouterr().out
        assert "monomial classification:" not in out
        assert "closed forms: crown" in out

    def test_quiet_success_prints_nothing(self, ca_file, capsys):
        assert main(["report", ca_file, "--quiet"]) == 0
        captured = capsys.readouterr()
        assert captured.out == ""
        assert captured.err == ""

    def test_stdin_dash(self, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO(CA_TEXT))
        assert main(["report", "-"]) == 0
        assert "<stdin>" in capsys.readouterr().out


class TestReportJson:
    def test_schema_and_roundtrip(self, ca_file, capsys):
        assert main(["report", ca_file, "--json"]) == 0
        text = capsys.readouterr().out.rstrip("\n")
        doc = json.loads(text)
        assert set(doc) >= {"input", "invariants", "closed_forms", "version"}
        assert render_json(doc) == text
        assert doc["version"] == __version__
        assert doc["input"]["dimension"] == 7
        names = [row["name"] for row in doc["invariants"]]
        assert names == [
            "dim_center",
            "tau_hh1",
            "hh1",
            "hom_relations",
            "hh2",
            "excess",
            "tau_rigid",
            "hh2_cancellation",
        ]
        for row in doc["invariants"]:
            assert row["agree"] is True
            assert len(row["routes"]) >= 1
        tau = next(r for r in doc["invariants"] if r["name"] == "tau_hh1")
        assert len(tau["routes"]) == 3 and tau["value"] == 3

    def test_field_override(self, dual_file, capsys):
        assert main(["report", dual_file, "--json", "--field", "fp:2"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["input"]["field"] == "F2"
        byname = {r["name"]: r["value"] for r in doc["invariants"]}
        assert byname["hh1"] == 2
        assert byname["excess"] == 0

    def test_skip_bar_drops_bar_routes(self, ca_file, capsys):
        assert main(["report", ca_file, "--json", "--skip-bar"]) == 0
        doc = json.loads(capsys.readouterr().out)
        names = [row["name"] for row in doc["invariants"]]
        assert "hh2_cancellation" not in names
        h1 = next(r for r in doc["invariants"] if r["name"] == "hh1")
        assert [r["name"] for r in h1["routes"]] == ["derivations"]

    def test_tiny_bar_cap_degrades_not_fails(self, dual_file, capsys):
        assert main(["report", dual_file, "--json", "--bar-cap", "1"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["bar_skipped"]


class TestInputErrors:
    def test_missing_file(self, capsys):
        assert main(["report", "/no/such/file.quiver"]) == 1
        assert "cannot read" in capsys.readouterr().err

    def test_short_relation(self, tmp_path, capsys):
        f = tmp_path / "bad.quiver"
        f.write_text("field Q\nvertices 2\narrow a v1 v2\nrelations\na\n")
        assert main(["report", str(f)]) == 1
        err = capsys.readouterr().err
        assert "length" in err and "error" in err

    def test_parse_error_reports_position(self, tmp_path, capsys):
        f = tmp_path / "bad.quiver"
        f.write_text("field Q\nvertices 2\narrow a v1 vX\n")
        assert main(["report", str(f)]) == 1
        assert "line 3" in capsys.readouterr().err

    def test_not_admissible(self, tmp_path, capsys):
        f = tmp_path / "free.quiver"
        f.write_text("field Q\nvertices 1\narrow x v1 v1\n")
        assert main(["report", str(f), "--cap", "8"]) == 1
        assert capsys.readouterr().err

    def test_bad_field_flag(self, ca_file, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["report", ca_file, "--field", "fp:9"])
        assert exc.value.code == 1
        assert "not prime" in capsys.readouterr().err

    def test_unknown_subcommand(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 1

    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["--version"])
        assert exc.value.code == 0
        assert __version__ in capsys.readouterr().out


class TestMismatchExit:
    def test_route_disagreement_exits_two(self, ca_file, capsys, monkeypatch):
        import tauhh.cli as cli_mod
        from tauhh.cohomology import InvariantReport, InvariantRow

        def fake(alg, with_bar=True, bar_cap=200_000):
            rep = InvariantReport()
            rep.rows.append(
                InvariantRow("hh1", 2, [("derivations", 2), ("bar_complex", 3)], False)
            )
            rep.exact_sequence_ok = True
            return rep

        monkeypatch.setattr(cli_mod, "compute_invariants", fake)
        assert main(["report", ca_file, "--quiet"]) == 2
        err = capsys.readouterr().err
        assert "route mismatch in hh1" in err


class TestSelfcheck:
    def test_passes_and_reruns_identically(self, capsys):
        args = ["selfcheck", "--seed", "3", "--count", "4"]
        assert main(args) == 0
        first = capsys.readouterr().out
        assert main(args) == 0
        second = capsys.readouterr().out
        assert first == second
        assert "0 failures" in first

    def test_covers_crowns_and_examples(self, capsys):
        assert main(["selfcheck", "--count", "0"]) == 0
        out = capsys.readouterr().out
        assert "crown:5:F2" in out
        assert "example:square-shortcut" in out

    def test_quiet_tally_only(self, capsys):
        assert main(["selfcheck", "--count", "2", "--quiet"]) == 0
        out = capsys.readouterr().out.strip().splitlines()
        assert len(out) == 1
        assert out[0].startswith("selfcheck:")
