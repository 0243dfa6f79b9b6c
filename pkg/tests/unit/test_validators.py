"""
Unit tests for input validation and configuration
"""

import json

import pytest

from dp3geo.shared.config import Config
from dp3geo.shared.constants import ENV_OUTPUT_DIR
from dp3geo.shared.exceptions import ValidationError
from dp3geo.shared.models import DivClass
from dp3geo.shared.validators import (
    load_profile,
    parse_class,
    parse_int_list,
    parse_monomial,
    parse_overrides,
    validate_basis_change,
    validate_profile,
)


class TestParseClass:
    """Test cases for divisor class arguments."""

    @pytest.mark.parametrize(
        "text,expected",
        [
            ("3:-1", (DivClass(m=3, l=-1), "")),
            ("5:-6:η", (DivClass(m=5, l=-6), "η")),
            ("3M-2L", (DivClass(m=3, l=-2), "")),
            ("-L", (DivClass(m=0, l=-1), "")),
            ("M − 2L", (DivClass(m=1, l=-2), "")),
        ],
    )
    def test_valid_classes(self, text, expected):
        """Test the pair and expression spellings."""
        assert parse_class(text) == expected

    @pytest.mark.parametrize("text", ["bad", "3M+", "3:x", ""])
    def test_invalid_classes(self, text):
        """Test that unparseable classes raise."""
        with pytest.raises(ValidationError):
            parse_class(text)


class TestParseLists:
    """Test cases for integer lists and overrides."""

    def test_int_list(self):
        """Test commas, spaces and the unicode minus."""
        assert parse_int_list("3, 2,−2,0", "weights") == [3, 2, -2, 0]

    def test_int_list_error_names_argument(self):
        """Test that the argument name appears in the error."""
        with pytest.raises(ValidationError, match="weights"):
            parse_int_list("3,two", "weights")

    def test_overrides(self):
        """Test N=V pairs."""
        assert parse_overrides(["1=0", "2=1"]) == {1: 0, 2: 1}

    @pytest.mark.parametrize("item", ["2", "2=x", "=1"])
    def test_invalid_overrides(self, item):
        """Test that malformed overrides raise."""
        with pytest.raises(ValidationError, match="N=V"):
            parse_overrides([item])

    def test_basis_change(self):
        """Test a 2x2 matrix."""
        assert validate_basis_change([[1, 0], [-1, 1]]) == ((1, 0), (-1, 1))

    def test_basis_change_shape(self):
        """Test that other shapes raise."""
        with pytest.raises(ValidationError):
            validate_basis_change([[1, 0, 0], [0, 1, 0]])


class TestMonomials:
    """Test cases for fibre monomials."""

    def test_parse(self):
        """Test exponents in x, y, z, t order."""
        assert parse_monomial("x^2t") == (2, 0, 0, 1)
        assert parse_monomial("xyz") == (1, 1, 1, 0)

    def test_not_cubic(self):
        """Test that only cubic monomials are accepted."""
        with pytest.raises(ValidationError, match="not cubic"):
            parse_monomial("xy")

    def test_unknown_variable(self):
        """Test that u is not a fibre variable."""
        with pytest.raises(ValidationError):
            parse_monomial("uxy")


class TestProfiles:
    """Test cases for divisibility profiles."""

    def test_flat_map_is_normalized(self):
        """Test that x2y and x^2y name the same coefficient."""
        profile = validate_profile({"x2y": 1, "zt2": 0})
        assert profile.powers == {"x^2y": 1, "zt^2": 0}
        assert profile.vanishing == ()

    def test_structured_payload(self):
        """Test powers and vanishing together."""
        profile = validate_profile({"powers": {"t3": 6}, "vanishing": ["x2z"]})
        assert profile.power("t^3") == 6
        assert profile.vanishes("x^2z")
        assert profile.power("xyz") == 0

    @pytest.mark.parametrize(
        "payload",
        [{"xyz": -1}, {"xyz": "1"}, {"xyz": True}, ["xyz"]],
        ids=["negative", "string", "bool", "list"],
    )
    def test_invalid_payloads(self, payload):
        """Test that bad powers and non-objects raise."""
        with pytest.raises(ValidationError):
            validate_profile(payload)

    def test_load_profile(self, tmp_path):
        """Test reading a profile file."""
        path = tmp_path / "profile.json"
        path.write_text(json.dumps({"vanishing": ["x2y"]}), encoding="utf-8")
        assert load_profile(str(path)).vanishing == ("x^2y",)

    def test_missing_file(self, tmp_path):
        """Test that a missing file is a validation error."""
        with pytest.raises(ValidationError, match="Cannot read profile file"):
            load_profile(str(tmp_path / "missing.json"))

    def test_bad_json(self, tmp_path):
        """Test that malformed JSON is a validation error."""
        path = tmp_path / "profile.json"
        path.write_text("{xyz: 1", encoding="utf-8")
        with pytest.raises(ValidationError, match="Invalid JSON"):
            load_profile(str(path))


class TestConfig:
    """Test cases for runtime configuration."""

    def test_defaults(self, monkeypatch):
        """Test that documents go to stdout by default."""
        monkeypatch.delenv(ENV_OUTPUT_DIR, raising=False)
        config = Config()
        assert config.output_dir == ""
        assert not config.writes_files
        assert config.log_level == "WARNING"

    def test_environment(self, monkeypatch, tmp_path):
        """Test the output directory from the environment."""
        monkeypatch.setenv(ENV_OUTPUT_DIR, str(tmp_path))
        config = Config(log_level="debug")
        assert config.output_dir == str(tmp_path)
        assert config.writes_files
        assert config.log_level == "DEBUG"

    def test_explicit_override(self, monkeypatch, tmp_path):
        """Test that an explicit directory wins over the environment."""
        monkeypatch.setenv(ENV_OUTPUT_DIR, str(tmp_path))
        assert Config(output_dir="out").output_dir == "out"

    def test_unknown_log_level(self):
        """Test that unknown levels raise."""
        with pytest.raises(ValueError):
            Config(log_level="LOUD")
