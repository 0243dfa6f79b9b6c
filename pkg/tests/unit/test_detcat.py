"""
Unit tests for the determinantal numerology of double covers of plane curves
"""

from typing import Iterator, List, Tuple

import pytest

from dp3geo.detcat import (
    conic_bundle_models,
    derive_format,
    format_from_hilbert,
    format_from_partition,
    hilbert_series,
    moduli_count,
    rr_table,
    theta_report,
)
from dp3geo.shared.exceptions import (
    InconsistentOverridesError,
    NonRealizableFormatError,
    ValidationError,
)
from dp3geo.shared.models import CoverSpec, DetFormat, ModuliCount
from dp3geo.shared.validators import validate_cover


def partitions(total: int, largest: int, parity: int) -> Iterator[Tuple[int, ...]]:
    """Partitions of total into parts ≡ parity mod 2, largest first."""
    if total == 0:
        yield ()
        return
    for part in range(min(total, largest), 0, -1):
        if part % 2 == parity:
            for rest in partitions(total - part, part, parity):
                yield (part,) + rest


def cover_cases() -> List[Tuple[int, int, Tuple[int, ...]]]:
    cases = []
    for d in range(1, 10):
        for e in (0, 1):
            if (e * d) % 2:
                continue
            for partition in partitions(d, d, (d + e) % 2):
                cases.append((d, e, partition))
    return cases


@pytest.fixture
def septic():
    """Degree 7, λ² = O, with h0(λ(2)) = 1."""
    return CoverSpec(d=7, e=0, p_overrides={1: 0, 2: 1})


class TestRiemannRoch:
    """Test cases for h0 tables."""

    def test_septic_table(self, septic):
        """Test h0(λ(n)) = 0, 0, 1, 7, 14, 21 for n = 0..5."""
        assert rr_table(septic, 5) == (0, 0, 1, 7, 14, 21)

    def test_septic_without_overrides(self):
        """Test that h0(λ(3)) = 7 when h0(λ(2)) = 0."""
        assert rr_table(CoverSpec(d=7, e=0), 3)[3] == 7

    def test_odd_theta_on_quartic(self):
        """Test h0 = 1, 4, 8 for an odd theta characteristic."""
        assert rr_table(CoverSpec(d=4, e=1, p_overrides={1: 1}), 3) == (0, 1, 4, 8)

    def test_default_range(self, septic):
        """Test that the table runs to n = d + e + 2."""
        assert len(rr_table(septic)) == 10

    @pytest.mark.parametrize("d,e", [(3, 0), (4, 1), (5, 0), (6, 1), (7, 0), (8, 0)])
    def test_serre_duality(self, d, e):
        """Test h0(λ(n)) - h0(λ(d-3+e-n)) = χ(λ(n))."""
        spec = CoverSpec(d=d, e=e)
        top = d - 3 + e
        table = rr_table(spec, top)
        for n in range(top + 1):
            assert table[n] - table[spec.dual_index(n)] == spec.chi(n)

    @pytest.mark.parametrize(
        "overrides",
        [{4: 0}, {3: 5}, {1: 5}, {1: 1, 2: 0}],
        ids=["forced-chi", "forced-dual", "clifford", "drop"],
    )
    def test_inconsistent_overrides(self, overrides):
        """Test overrides that contradict Riemann-Roch, duality or Clifford."""
        with pytest.raises(InconsistentOverridesError):
            rr_table(CoverSpec(d=7, e=0, p_overrides=overrides))

    def test_parity(self):
        """Test that e·d must be even."""
        with pytest.raises(ValidationError):
            validate_cover(7, 1, {})

    def test_negative_override(self):
        """Test that overrides are nonnegative."""
        with pytest.raises(ValidationError):
            validate_cover(7, 0, {2: -1})


class TestDeriveFormat:
    """Test cases for the minimal-generator analysis."""

    @pytest.mark.parametrize(
        "overrides,partition",
        [
            ({2: 0}, (1, 1, 1, 1, 1, 1, 1)),
            ({2: 1}, (3, 1, 1, 1, 1)),
            ({2: 2}, (3, 3, 1)),
            ({1: 1, 2: 3}, (5, 1, 1)),
        ],
    )
    def test_septic_formats(self, overrides, partition):
        """Test the four formats of degree 7."""
        fmt = derive_format(CoverSpec(d=7, e=0, p_overrides=overrides))
        assert fmt.diag_degrees == partition

    def test_odd_quartic(self):
        """Test the 2x2 format of an odd theta characteristic."""
        fmt = derive_format(CoverSpec(d=4, e=1, p_overrides={1: 1}))
        assert fmt.diag_degrees == (3, 1)
        assert fmt.entry_degrees == ((3, 2), (2, 1))
        assert fmt.gen_degrees == (1, 2)

    def test_even_quartic(self):
        """Test the 4x4 linear format of an even theta characteristic."""
        fmt = derive_format(CoverSpec(d=4, e=1))
        assert fmt.diag_degrees == (1, 1, 1, 1)

    def test_non_realizable(self):
        """Test h0(λ(1)) = h0(λ(2)) = 1, below what one linear generator forces."""
        with pytest.raises(NonRealizableFormatError):
            derive_format(CoverSpec(d=7, e=0, p_overrides={1: 1, 2: 1}))

    def test_hilbert_function_off_the_resolution(self):
        """Test a Hilbert function no symmetric format reproduces."""
        with pytest.raises(NonRealizableFormatError):
            format_from_hilbert(7, 0, (0, 0, 0, 7, 14, 22))

    @pytest.mark.slow
    @pytest.mark.parametrize("d,e,partition", cover_cases())
    def test_round_trip(self, d, e, partition):
        """Test that the Hilbert series of a format gives the format back."""
        fmt = format_from_partition(d, e, partition)
        assert format_from_hilbert(d, e, hilbert_series(fmt)) == fmt


class TestFormats:
    """Test cases for formats built from partitions."""

    @pytest.mark.parametrize(
        "partition,entries",
        [
            ([3, 3, 1], ((3, 3, 2), (3, 3, 2), (2, 2, 1))),
            ([1, 5, 1], ((5, 3, 3), (3, 1, 1), (3, 1, 1))),
        ],
    )
    def test_septic_entries(self, partition, entries):
        """Test entry degrees (d_i + d_j)/2 with the largest part first."""
        assert format_from_partition(7, 0, partition).entry_degrees == entries

    def test_conic(self):
        """Test a conic as a 2x2 linear symmetric determinant."""
        fmt = format_from_partition(2, 1, [1, 1])
        assert fmt.entry_degrees == ((1, 1), (1, 1))

    def test_parity_violation(self):
        """Test that parts must be congruent to d + e."""
        with pytest.raises(ValidationError):
            format_from_partition(2, 0, [1, 1])

    def test_wrong_sum(self):
        """Test that parts must sum to d."""
        with pytest.raises(ValidationError):
            format_from_partition(7, 0, [3, 1, 1])

    def test_non_integer_parts(self):
        """Test that parts must be integers."""
        with pytest.raises(ValidationError):
            format_from_partition(7, 0, ["three", 4])

    @pytest.mark.parametrize("d,e,partition", cover_cases())
    def test_largest_part_first(self, d, e, partition):
        """Test that diagonal degrees are stored largest first whatever the input order."""
        fmt = format_from_partition(d, e, list(reversed(partition)))
        assert fmt.diag_degrees == tuple(sorted(partition, reverse=True))
        assert fmt.entry_degrees[0][0] == max(partition)

    @pytest.mark.parametrize("d,e,partition", cover_cases())
    def test_determinant_degree(self, d, e, partition):
        """Test Σ(l_i - r_i) = d."""
        fmt = format_from_partition(d, e, partition)
        assert sum(fmt.rel_degrees) - sum(fmt.gen_degrees) == d


class TestHilbertSeries:
    """Test cases for Hilbert series."""

    def test_septic_series(self):
        """Test the series of the 5x5 format."""
        fmt = format_from_partition(7, 0, [3, 1, 1, 1, 1])
        assert hilbert_series(fmt, 6) == (0, 0, 1, 7, 14, 21, 28)

    def test_quartic_series(self):
        """Test the series of the odd quartic format."""
        fmt = format_from_partition(4, 1, [3, 1])
        assert hilbert_series(fmt, 4) == (0, 1, 4, 8, 12)

    def test_empty_format(self):
        """Test that the empty format has zero series."""
        assert hilbert_series(DetFormat(d=0, e=0, diag_degrees=()), 4) == (0, 0, 0, 0, 0)

    def test_series_reproduces_table(self, septic):
        """Test that the derived format reproduces the h0 table."""
        assert hilbert_series(derive_format(septic)) == rr_table(septic)


class TestModuli:
    """Test cases for moduli counts."""

    @pytest.mark.parametrize(
        "partition,expected",
        [
            ((3, 3, 1), (45, 11, 34, 35)),
            ((1,) * 7, (84, 49, 35, 35)),
            ((3, 1, 1, 1, 1), (64, 29, 35, 35)),
            ((5, 1, 1), (50, 17, 33, 35)),
        ],
    )
    def test_septic_counts(self, partition, expected):
        """Test params, gauge, family and curve dimensions."""
        count = moduli_count(format_from_partition(7, 0, partition))
        assert count == ModuliCount(
            params=expected[0],
            gauge=expected[1],
            family_dim=expected[2],
            all_curves_dim=expected[3],
        )

    def test_codimension(self):
        """Test that the 3x3 format sits in codimension 1."""
        assert moduli_count(format_from_partition(7, 0, [3, 3, 1])).codimension == 1


class TestThetaReport:
    """Test cases for theta reports."""

    def test_conic_bundle_models(self):
        """Test the four conic bundle models keyed by h0(λ(2))."""
        assert [model.h0_lambda2 for model in conic_bundle_models()] == [0, 1, 2, 3]

    def test_report_from_cover(self):
        """Test the report of h0(λ(2)) = 2."""
        report = theta_report(CoverSpec(d=7, e=0, p_overrides={2: 2}))
        assert report.format.diag_degrees == (3, 3, 1)
        assert report.rr_table == (0, 0, 2, 7, 14, 21, 28, 35, 42, 49)
        assert report.moduli.family_dim == 34
        assert report.conic_bundle.partition == (3, 3, 1)

    def test_report_from_partition(self):
        """Test a report built from a partition only."""
        report = theta_report(format_from_partition(7, 0, [5, 1, 1]))
        assert report.spec is None
        assert report.rr_table is None
        assert report.hilbert[:4] == (0, 1, 3, 8)
        assert report.conic_bundle.h0_lambda2 == 3

    @pytest.mark.parametrize("model", conic_bundle_models(), ids=lambda m: str(m.h0_lambda2))
    def test_conic_bundle_matches_partition(self, model):
        """Test that each model is attached to the format with its partition."""
        report = theta_report(format_from_partition(7, 0, model.partition))
        assert report.conic_bundle == model

    def test_five_one_one_is_the_exception(self):
        """Test that h0(λ(2)) = 3 gives 5+1+1, a family of dimension 33 = 50 - 17."""
        report = theta_report(CoverSpec(d=7, e=0, p_overrides={1: 1, 2: 3}))
        assert report.format.diag_degrees == (5, 1, 1)
        assert report.rr_table[:3] == (0, 1, 3)
        assert report.moduli == ModuliCount(params=50, gauge=17, family_dim=33, all_curves_dim=35)
        assert report.moduli.codimension == 2
        assert report.conic_bundle.link == "bad K-trivial (2,1)-contraction"
        assert report.conic_bundle.other_model == "X rigid"
        others = [model for model in conic_bundle_models() if model.h0_lambda2 != 3]
        assert all(
            moduli_count(format_from_partition(7, 0, model.partition)).family_dim >= 34
            for model in others
        )

    def test_no_conic_bundle_off_degree_seven(self):
        """Test that other degrees carry no conic bundle."""
        assert theta_report(CoverSpec(d=4, e=1, p_overrides={1: 1})).conic_bundle is None
