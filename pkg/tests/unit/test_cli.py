"""
Unit tests for the command-line entry point: outputs, diagnostics and exit codes.
"""

import csv
import io
import json

import pytest

import src.main as cli
from src.main import EXIT_FAILED, EXIT_IO, EXIT_OK, EXIT_PARSE, EXIT_VALIDATION, diagnostic, main
from src.utils.config_manager import ConfigManager
from src.utils.errors import MeshParseError

REFLEX_PENTAGON = {"dimension": 2, "vertices": [[0, 0], [2, 0], [2, 2], [1, 0.5], [0, 2]],
                   "elements": [{"vertices": [0, 1, 2, 3, 4]}]}


class TestCommands:
    """Subcommands on corpus geometries."""

    @pytest.fixture
    def run(self, tmp_path, capsys):
        def invoke(*argv):
            code = main([*argv, "--config-dir", str(tmp_path / "config")])
            captured = capsys.readouterr()
            return code, captured.out, captured.err
        return invoke

    def test_validate(self, run):
        """Test a valid mesh summary."""
        code, out, _ = run("validate", "corpus:two-squares")
        data = json.loads(out)
        assert code == EXIT_OK
        assert data['valid'] is True
        assert data['interior_facets'] == 1

    def test_coords_csv(self, run):
        """Test coordinates at an explicit point."""
        code, out, _ = run("coords", "corpus:square", "--point", "0.3,0.6")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == EXIT_OK
        assert len(rows) == 4
        assert float(rows[0]['lambda']) == pytest.approx(0.28)
        assert float(rows[0]['grad_y']) == pytest.approx(-0.7)

    def test_coords_default_samples(self, run):
        """Test sampled coordinates as JSON."""
        code, out, _ = run("coords", "corpus:triangle", "--samples", "3", "--format", "json")
        assert code == EXIT_OK
        assert len(json.loads(out)) == 9

    def test_count(self, run):
        """Test the count table of a pentagon."""
        code, out, _ = run("count", "corpus:pentagon", "--format", "json")
        rows = {(r['k'], r['family']): r for r in json.loads(out)}
        assert code == EXIT_OK
        assert (rows[(1, "P")]['constructed'], rows[(1, "P")]['boundary']) == (20, 10)

    def test_verify_repro_coefficients(self, run):
        """Test the identity target on a hexagon."""
        code, out, _ = run("verify-repro", "corpus:hexagon", "--family", "P", "--k", "1",
                           "--target", "identity", "--samples", "20")
        data = json.loads(out)
        assert code == EXIT_OK
        assert data['overall_pass'] is True
        assert data['results'][0]['method'] == "coefficients"

    def test_verify_repro_span_fallback(self, run):
        """Test top trimmed forms fall back to the span oracle."""
        code, out, _ = run("verify-repro", "corpus:pentagon", "--family", "Pminus", "--k", "2",
                           "--target", "one", "--samples", "30")
        data = json.loads(out)
        assert code == EXIT_OK
        assert data['results'][0]['method'] == "span"

    def test_verify_repro_failure(self, run):
        """Test a symmetric target is not in the trimmed edge span."""
        code, out, _ = run("verify-repro", "corpus:square", "--family", "Pminus", "--k", "1",
                           "--target", "matrix:1,0;0,2", "--samples", "20")
        assert code == EXIT_FAILED
        assert json.loads(out)['overall_pass'] is False

    def test_verify_conformity(self, run):
        """Test trimmed edge forms across the shared edge."""
        code, out, _ = run("verify-conformity", "corpus:two-squares", "--family", "Pminus", "--k", "1")
        data = json.loads(out)
        assert code == EXIT_OK
        assert data['facets'][0]['trace'] == "tangential"

    def test_sample_field_facet(self, run):
        """Test both sides of the shared edge report the same tangential trace."""
        code, out, _ = run("sample-field", "corpus:two-squares", "--descriptor", "W:1,4",
                           "--facet", "1", "--count", "4", "--format", "json")
        rows = json.loads(out)
        assert code == EXIT_OK
        assert len(rows) == 8
        for left, right in zip(rows[::2], rows[1::2]):
            assert (left['element_id'], right['element_id']) == (0, 1)
            assert left['t0'] == pytest.approx(right['t0'], abs=1e-12)

    def test_sample_field_off_support(self, run):
        """Test a function sampled on an element without its vertices is zero."""
        code, out, _ = run("sample-field", "corpus:two-squares", "--descriptor", "L:0",
                           "--element", "1", "--count", "3")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == EXIT_OK
        assert [float(r['v0']) for r in rows] == [0.0, 0.0, 0.0]

    def test_gen_corpus(self, run, tmp_path):
        """Test the corpus is written to disk."""
        code, out, _ = run("gen-corpus", str(tmp_path / "corpus"))
        assert code == EXIT_OK
        assert len(json.loads(out)['files']) == 13

    def test_run_suite_to_file(self, run, tmp_path):
        """Test a suite report written with --out."""
        path = tmp_path / "report.json"
        code, out, _ = run("run-suite", "corpus:triangle", "--suite", "count", "--samples", "12",
                           "--out", str(path))
        data = json.loads(path.read_text())
        assert code == EXIT_OK
        assert out == ""
        assert data['overall_pass'] is True
        assert data['settings']['samples'] == 12

    def test_stored_settings(self, run, tmp_path):
        """Test settings.json in the config directory supplies defaults."""
        ConfigManager(str(tmp_path / "config")).save_settings({'seed': 7})
        code, out, _ = run("run-suite", "corpus:square", "--suite", "count")
        assert code == EXIT_OK
        assert json.loads(out)['settings']['seed'] == 7


class TestExitCodes:
    """Diagnostics and exit statuses for failures."""

    @pytest.fixture
    def run(self, tmp_path, capsys):
        def invoke(*argv):
            code = main([*argv, "--config-dir", str(tmp_path / "config")])
            return code, capsys.readouterr().err
        return invoke

    def test_invalid_polygon(self, run, tmp_path):
        """Test a reflex vertex is a validation error naming the vertex."""
        path = tmp_path / "reflex.json"
        path.write_text(json.dumps(REFLEX_PENTAGON))
        code, err = run("validate", str(path))
        assert code == EXIT_VALIDATION
        assert "error: kind=validation element=0 vertex=3 " in err

    def test_missing_file(self, run, tmp_path):
        """Test unreadable paths exit with the I/O status."""
        code, err = run("validate", str(tmp_path / "missing.json"))
        assert code == EXIT_IO
        assert "kind=io" in err
        assert "missing.json" in err

    def test_bad_json(self, run, tmp_path):
        """Test JSON syntax errors report field and line."""
        path = tmp_path / "broken.json"
        path.write_text('{"dimension": 2,\n"vertices": [}\n')
        code, err = run("validate", str(path))
        assert code == EXIT_PARSE
        assert "kind=parse field=document line=2" in err

    def test_bad_point(self, run):
        """Test unparsable points are argument errors."""
        code, err = run("coords", "corpus:square", "--point", "a,b")
        assert code == EXIT_PARSE
        assert "kind=descriptor" in err

    def test_bad_descriptor(self, run):
        """Test malformed descriptors are argument errors."""
        code, _ = run("sample-field", "corpus:square", "--descriptor", "Q:1")
        assert code == EXIT_PARSE

    def test_vertex_out_of_range(self, run):
        """Test descriptors naming missing vertices are index errors."""
        code, err = run("sample-field", "corpus:square", "--descriptor", "W:0,9")
        assert code == EXIT_VALIDATION
        assert "kind=index" in err

    def test_unknown_subcommand_option(self, run):
        """Test argparse errors exit with status 2."""
        with pytest.raises(SystemExit) as info:
            run("run-suite", "corpus:square", "--suite", "bogus")
        assert info.value.code == EXIT_PARSE

    def test_unexpected_error(self, run, monkeypatch):
        """Test crashes inside a command become a one-line diagnostic."""
        def crash(args, settings):
            raise KeyError((1, 2))
        monkeypatch.setitem(cli.COMMANDS, "count", crash)
        code, err = run("count", "corpus:square")
        assert code == EXIT_PARSE
        lines = [line for line in err.splitlines() if line.startswith("error:")]
        assert lines == ['error: kind=internal message="(1, 2)"']

    def test_suite_all_on_two_squares(self, run):
        """Test the full suite exits cleanly on a two-element mesh."""
        code, _ = run("run-suite", "corpus:two-squares", "--suite", "all", "--samples", "20")
        assert code == EXIT_OK

    def test_diagnostic_quotes(self):
        """Test quotes in messages are escaped into the single line."""
        line = diagnostic(MeshParseError('bad "value"', field="vertices[0]"))
        assert line == "error: kind=parse field=vertices[0] message=\"bad 'value'\""
