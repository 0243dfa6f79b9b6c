"""
Integration tests for the dp3geo command line
"""

import json

import pytest

from dp3geo.cli import main
from dp3geo.shared.constants import ENV_OUTPUT_DIR


@pytest.fixture(autouse=True)
def stdout_only(monkeypatch):
    """Send documents to stdout unless a test asks otherwise."""
    monkeypatch.delenv(ENV_OUTPUT_DIR, raising=False)


@pytest.fixture
def run(capsys):
    """Run the CLI and return (status, stdout, stderr)."""

    def _run(*argv):
        status = main(list(argv))
        captured = capsys.readouterr()
        return status, captured.out, captured.err

    return _run


@pytest.fixture
def profile_file(tmp_path):
    """Profile of the special member of (-4;2,2,4) on disk."""
    path = tmp_path / "profile.json"
    path.write_text(
        json.dumps(
            {
                "xyt": 1,
                "xzt": 1,
                "y2t": 2,
                "yzt": 2,
                "z2t": 2,
                "xt2": 3,
                "yt2": 4,
                "zt2": 4,
                "t3": 6,
            }
        ),
        encoding="utf-8",
    )
    return str(path)


@pytest.mark.integration
class TestGeographyCommand:
    """Test cases for the geography subcommand."""

    def test_tsv_bullets(self, run):
        """Test that the default window has the known nonrigid points."""
        status, out, _ = run("geography")
        assert status == 0
        rows = [line.split("\t") for line in out.splitlines()[1:]]
        assert len({(row[0], row[1]) for row in rows if row[5] == "bullet"}) == 11

    def test_svg_is_deterministic(self, run):
        """Test that two runs give identical documents."""
        first = run("geography", "--format", "svg")
        second = run("geography", "--format", "svg")
        assert first == second
        assert first[1].rstrip().endswith("</svg>")

    def test_empty_window(self, run):
        """Test that an inverted n range is rejected."""
        status, _, err = run("geography", "--n-min", "2", "--n-max", "-2")
        assert status == 1
        assert "error: Empty window" in err

    def test_output_dir(self, run, tmp_path):
        """Test writing the document to a directory."""
        status, out, _ = run("geography", "--format", "json", "--output-dir", str(tmp_path))
        path = tmp_path / "geography.json"
        assert status == 0
        assert out.strip() == str(path)
        assert json.loads(path.read_text(encoding="utf-8"))["points"]


@pytest.mark.integration
class TestFamilyCommand:
    """Test cases for the family subcommand."""

    def test_text_report(self, run):
        """Test the report of (-2;1,2,2)."""
        status, out, _ = run("family", "-2", "1", "2", "2")
        assert status == 0
        assert "  -K = M - L" in out
        assert "  -K·Γ = -1" in out
        assert "  K² = 3Γ + 7M²L (interior, iff)" in out
        assert "  σ-position: interior" in out

    def test_json_report(self, run):
        """Test the JSON report."""
        status, out, _ = run("family", "-2", "1", "2", "2", "--format", "json")
        document = json.loads(out)
        assert status == 0
        assert document["family"] == {"n": -2, "a": 1, "b": 2, "c": 2}
        assert document["mk_dot_gamma"] == -1

    def test_inadmissible_family(self, run):
        """Test that an inadmissible family is reported, not rejected."""
        status, out, _ = run("family", "-2", "1", "1", "1")
        assert status == 0
        assert "  admissible: no (breaks n ≥ −c)" in out
        assert "K²" not in out

    def test_unsorted_twists(self, run):
        """Test that twists out of order exit with status 1."""
        status, out, err = run("family", "0", "2", "1", "1")
        assert status == 1
        assert out == ""
        assert "error: Invalid family" in err


@pytest.mark.integration
class TestNewtonCommand:
    """Test cases for the newton subcommand."""

    def test_table(self, run):
        """Test the degree-0 row of (-2;1,2,2)."""
        status, out, _ = run("newton", "-2", "1", "2", "2")
        assert status == 0
        assert "  0: xy^2, x^2z, x^2t" in out
        assert "  val(F) = 0" in out

    def test_substitution_with_profile(self, run, profile_file):
        """Test the restabilization of (-4;2,2,4)."""
        status, out, _ = run(
            "newton",
            "-4",
            "2",
            "2",
            "4",
            "--profile",
            profile_file,
            "--substitute",
            "3,2,2,0",
            "--cancel",
            "6",
        )
        assert status == 0
        assert "  substitution u^(3,2,2,0), cancel u^6: (-4;2,2,4) -> (-1;1,1,1)" in out
        assert "    x^2t (0) -> x^2t (0)" in out

    def test_rejected_substitution(self, run):
        """Test that a general member does not restabilize."""
        status, _, err = run(
            "newton", "-4", "2", "2", "4", "--substitute", "3,2,2,0", "--cancel", "6"
        )
        assert status == 1
        assert "error: " in err

    def test_cancel_needs_weights(self, run):
        """Test that --cancel alone is rejected."""
        status, _, _ = run("newton", "-4", "2", "2", "4", "--cancel", "6")
        assert status == 1


@pytest.mark.integration
class TestChowCommand:
    """Test cases for the chow subcommand."""

    def test_number(self, run):
        """Test (M - L)(M³ - 5M²L) = -1 on F(0,1,2,2)."""
        status, out, _ = run("chow", "--scroll", "0,1,2,2", "--expr", "(M-L)(M^3-5M^2L)")
        assert status == 0
        assert out == "F(0,1,2,2)/P1: (M-L)(M^3-5M^2L) = -1\n"

    def test_normal_form(self, run):
        """Test that lower-degree classes are printed reduced."""
        status, out, _ = run("chow", "--scroll", "0,1,2,2", "--expr", "M^2+2ML", "--format", "json")
        assert status == 0
        assert json.loads(out)["normal_form"] == "M^2 + 2ML"


@pytest.mark.integration
class TestLinkCommands:
    """Test cases for the link and table2 subcommands."""

    def test_link(self, run):
        """Test the Francia antiflip from the command line."""
        status, out, _ = run("link", "-2", "1", "2", "2")
        assert status == 0
        assert "  wall 1: M  antiflip (pairing -1)" in out

    def test_link_with_extensions(self, run):
        """Test row 8a with both unprojection variables."""
        status, out, _ = run("link", "-1", "1", "1", "2", "--extend", "3:-3", "--extend", "5:-6")
        assert status == 0
        assert "ξ" in out and "η" in out
        assert "(row 8a)" in out

    def test_table2_verification(self, run):
        """Test that every curated row verifies."""
        status, out, _ = run("table2", "--verify")
        lines = [line for line in out.splitlines() if line.startswith("verify ")]
        assert status == 0
        assert len(lines) == 11
        assert all(line.endswith("; σ ok") for line in lines)
        assert "FAIL" not in out


@pytest.mark.integration
class TestThetaCommand:
    """Test cases for the theta subcommand."""

    def test_overrides(self, run):
        """Test h0(λ(2)) = 2 on a septic."""
        status, out, _ = run("theta", "--degree", "7", "--p", "2=2")
        assert status == 0
        assert "  partition: 3+3+1" in out
        assert "  moduli: 45 - 11 = 34 of 35 (codimension 1)" in out
        assert "  conic bundle: " in out

    def test_partition(self, run):
        """Test a format given by its partition."""
        status, out, _ = run("theta", "--degree", "7", "--partition", "5,1,1")
        assert status == 0
        assert "  moduli: 50 - 17 = 33 of 35 (codimension 2)" in out

    def test_five_one_one(self, run):
        """Test the 5+1+1 septic and its bad K-trivial link."""
        status, out, _ = run("theta", "--degree", "7", "--e", "0", "--p", "1=1", "--p", "2=3")
        assert status == 0
        assert "  partition: 5+1+1" in out
        assert "  moduli: 50 - 17 = 33 of 35 (codimension 2)" in out
        assert "link: bad K-trivial (2,1)-contraction; other model: X rigid ?" in out

    def test_exclusive_arguments(self, run):
        """Test that overrides and a partition cannot be combined."""
        status, _, err = run("theta", "--degree", "7", "--p", "2=2", "--partition", "3,3,1")
        assert status == 1
        assert "exclusive" in err

    def test_inconsistent_overrides(self, run):
        """Test that a forced value cannot be overridden."""
        status, _, _ = run("theta", "--degree", "7", "--p", "4=0")
        assert status == 1


@pytest.mark.integration
class TestEntryPoint:
    """Test cases for parsing and schemas."""

    def test_unknown_command(self, run):
        """Test that usage errors exit with status 1."""
        status, _, err = run("unknown")
        assert status == 1
        assert "error:" in err

    def test_schema(self, run):
        """Test that --schema prints the document schema."""
        status, out, _ = run("table2", "--schema")
        assert status == 0
        assert "rows" in json.loads(out)["properties"]

    def test_write_failure(self, run, mocker, tmp_path):
        """Test that an unwritable output directory exits with status 1."""
        mocker.patch("dp3geo.cli.Path.write_text", side_effect=OSError(28, "No space left"))
        status, out, err = run("table2", "--output-dir", str(tmp_path))
        assert status == 1
        assert out == ""
        assert "cannot write output: No space left" in err
