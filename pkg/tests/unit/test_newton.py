"""
Unit tests for Newton tables, base-locus certificates and weighted substitutions
"""

import pytest

from dp3geo.geography import families_at
from dp3geo.newton import (
    CUBIC_MONOMIALS,
    base_locus_certificates,
    check_profile,
    compose,
    coefficient_degree,
    newton_table,
    unprojection_class,
    val,
    weighted_substitution,
)
from dp3geo.shared.exceptions import EmptyTableError, SubstitutionRejectedError, ValidationError
from dp3geo.shared.models import DivClass, DivisibilityProfile, FamilyParams
from dp3geo.shared.validators import validate_profile


class TestNewtonTable:
    """Test cases for building Newton tables."""

    def test_cubic_monomials(self):
        """Test that all 20 cubic monomials are listed once."""
        assert len(CUBIC_MONOMIALS) == 20
        assert len(set(CUBIC_MONOMIALS)) == 20

    def test_francia_family_table(self, francia_family):
        """Test the rows of (-2;1,2,2) grouped by degree."""
        assert newton_table(francia_family).texts_by_degree() == {
            0: ["xy^2", "x^2z", "x^2t"],
            1: ["y^3", "xyz", "xyt"],
            2: ["y^2z", "y^2t", "xz^2", "xzt", "xt^2"],
            3: ["yz^2", "yzt", "yt^2"],
            4: ["z^3", "z^2t", "zt^2", "t^3"],
        }

    def test_special_family_counts(self, special_family):
        """Test the degree counts of (-1;1,1,2)."""
        assert newton_table(special_family).counts_by_degree() == {
            0: 2,
            1: 4,
            2: 6,
            3: 4,
            4: 2,
            5: 1,
        }

    def test_unstable_family_table(self, unstable_family):
        """Test the degree-0 row of (-4;2,2,4)."""
        grouped = newton_table(unstable_family).texts_by_degree()
        assert grouped[0] == ["xy^2", "xyz", "xz^2", "x^2t"]
        assert grouped[8] == ["t^3"]

    def test_degrees_are_nonnegative(self):
        """Test that every listed row has its coefficient degree."""
        for d in range(8):
            for fam in families_at(-2, d):
                for row in newton_table(fam).rows:
                    assert row.degree == coefficient_degree(fam, row.monomial) >= 0


class TestVal:
    """Test cases for val(F)."""

    def test_val_general(self, francia_family):
        """Test val = 0 when degree-0 rows exist."""
        assert val(newton_table(francia_family)) == 0

    def test_val_with_vanishing_rows(self, unstable_family):
        """Test that vanishing rows are skipped."""
        profile = validate_profile({"vanishing": ["xy2", "xyz", "xz2", "x2t"]})
        assert val(newton_table(unstable_family), profile) == 2

    def test_val_of_empty_table(self):
        """Test that val of an empty table raises."""
        table = newton_table(FamilyParams(n=-10, a=0, b=0, c=0))
        assert table.rows == ()
        with pytest.raises(EmptyTableError):
            val(table)

    def test_profile_monomial_outside_table(self, francia_family):
        """Test that a profile may not name a missing monomial."""
        with pytest.raises(ValidationError):
            check_profile(newton_table(francia_family), validate_profile({"x3": 1}))

    def test_profile_power_above_degree(self, unstable_family):
        """Test that a u-power cannot exceed the coefficient degree."""
        with pytest.raises(ValidationError):
            check_profile(newton_table(unstable_family), validate_profile({"t3": 9}))


class TestCertificates:
    """Test cases for base-locus certificates."""

    def test_francia_family(self, francia_family):
        """Test the certificates of (-2;1,2,2)."""
        report = base_locus_certificates(francia_family)
        assert not report.all_divisible_by_z_or_t
        assert not report.has_x3
        assert report.x2_terms == ("x^2z", "x^2t")
        assert not report.equal_twist_cubic
        assert report.agrees_with_inequalities

    def test_agreement_over_window(self):
        """Test that certificates agree with the inequalities for admissible families."""
        for n in range(-4, 2):
            for d in range(10):
                for fam in families_at(n, d):
                    assert base_locus_certificates(fam).agrees_with_inequalities, fam

    def test_unprojection_class(self, special_family):
        """Test ξ = f/v of class 3M + (n - 2)L."""
        assert unprojection_class(special_family) == DivClass(m=3, l=-3)


class TestWeightedSubstitution:
    """Test cases for u^w substitutions."""

    def test_restabilization(self, unstable_family, unstable_profile):
        """Test that weights (3,2,2,0) with u^6 cancelled give (-1;1,1,1)."""
        result = weighted_substitution(unstable_family, (3, 2, 2, 0), 6, unstable_profile)
        assert result.family == FamilyParams(n=-1, a=1, b=1, c=1)
        assert result.permutation == (0, 1, 2, 3)
        assert result.class_audit
        assert result.profile.powers == {"xy^2": 1, "xyz": 1, "xz^2": 1}
        assert result.profile.vanishing == ("x^2y", "x^2z")

    def test_newton_map_entry(self, unstable_family, unstable_profile):
        """Test the image of x^2t."""
        result = weighted_substitution(unstable_family, (3, 2, 2, 0), 6, unstable_profile)
        entry = next(e for e in result.newton_map if e.source == "x^2t")
        assert (entry.target, entry.source_degree, entry.target_degree) == ("x^2t", 0, 0)
        assert entry.residual_power == 0

    def test_cancelling_too_much(self, unstable_family, unstable_profile):
        """Test that u^7 does not divide the substituted equation."""
        with pytest.raises(SubstitutionRejectedError, match="x\\^2t"):
            weighted_substitution(unstable_family, (3, 2, 2, 0), 7, unstable_profile)

    def test_general_member_is_rejected(self, unstable_family):
        """Test that without the profile u^6 does not divide."""
        with pytest.raises(SubstitutionRejectedError):
            weighted_substitution(unstable_family, (3, 2, 2, 0), 6)

    @pytest.mark.parametrize("weights,cancel", [((1, 0, 0), 0), ((1, -1, 0, 0), 0), ((0,) * 4, -1)])
    def test_invalid_arguments(self, francia_family, weights, cancel):
        """Test arity and sign checks."""
        with pytest.raises(ValidationError):
            weighted_substitution(francia_family, weights, cancel)

    def test_coordinates_are_resorted(self):
        """Test the permutation when x becomes the largest twist."""
        result = weighted_substitution(FamilyParams(n=-1, a=1, b=1, c=1), (2, 0, 0, 0), 0)
        assert result.family == FamilyParams(n=2, a=0, b=0, c=1)
        assert result.permutation == (1, 2, 3, 0)

    def test_compose(self):
        """Test that two substitutions compose to one."""
        first = weighted_substitution(FamilyParams(n=-1, a=1, b=1, c=1), (2, 0, 0, 0), 0)
        second = weighted_substitution(first.family, (0, 0, 0, 1), 0)
        composed = compose(first, (0, 0, 0, 1), 0)
        assert composed.weights == (3, 0, 0, 0)
        assert composed.family == second.family == FamilyParams(n=2, a=0, b=0, c=2)

    def test_empty_profile_is_neutral(self, francia_family):
        """Test that an empty profile changes nothing."""
        plain = weighted_substitution(francia_family, (1, 0, 0, 0), 0)
        with_profile = weighted_substitution(
            francia_family, (1, 0, 0, 0), 0, DivisibilityProfile()
        )
        assert plain == with_profile
