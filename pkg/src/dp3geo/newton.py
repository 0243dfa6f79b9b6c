"""
Newton tables of dP3 fibrations and the weighted substitution.

The cubic F of X ∈ |3M + nL| ⊂ F(0,a,b,c) is a combination of fibre
monomials x^α y^β z^γ t^δ whose coefficients are forms in u, v of degree
n + aβ + bγ + cδ. A monomial can occur only when that degree is ≥ 0.
"""

from typing import Dict, List, Optional, Sequence, Tuple

from aws_lambda_powertools import Logger

from dp3geo.shared.constants import FIBRE_NAMES_4, SERVICE_NAME
from dp3geo.shared.exceptions import (
    EmptyTableError,
    SubstitutionRejectedError,
    ValidationError,
)
from dp3geo.shared.models import (
    BaseLocusReport,
    DivClass,
    DivisibilityProfile,
    FamilyParams,
    Monomial,
    NewtonMapEntry,
    NewtonRow,
    NewtonTable,
    SubstitutionResult,
)
from dp3geo.shared.utils import compositions, format_monomial
from dp3geo.shared.validators import build

logger = Logger(service=SERVICE_NAME, child=True)

CUBIC_MONOMIALS: Tuple[Monomial, ...] = tuple(compositions(3, 4))  # type: ignore[arg-type]

_X2_TERMS = ((2, 1, 0, 0), (2, 0, 1, 0), (2, 0, 0, 1))
_YZ_CUBICS = ((0, 3, 0, 0), (0, 2, 1, 0), (0, 1, 2, 0), (0, 0, 3, 0))


def coefficient_degree(fam: FamilyParams, monomial: Sequence[int]) -> int:
    return fam.n + sum(a * e for a, e in zip(fam.twists, monomial))


def _row_key(row: NewtonRow) -> Tuple[int, ...]:
    alpha, beta, gamma, delta = row.monomial
    return (row.degree, alpha, -beta, -gamma, -delta)


def newton_table(fam: FamilyParams) -> NewtonTable:
    """Fibre monomials with nonnegative coefficient degree, grouped by degree.

    Within a degree, rows run by increasing power of x, then decreasing
    powers of y, z, t.
    """
    rows = [
        NewtonRow(monomial=monomial, degree=degree)
        for monomial in CUBIC_MONOMIALS
        if (degree := coefficient_degree(fam, monomial)) >= 0
    ]
    rows.sort(key=_row_key)
    return NewtonTable(family=fam, rows=tuple(rows))


def check_profile(table: NewtonTable, profile: DivisibilityProfile) -> None:
    """A profile may only constrain monomials of the table, with powers up to their degree."""
    degrees = {row.text: row.degree for row in table.rows}
    for text in list(profile.powers) + list(profile.vanishing):
        if text not in degrees:
            raise ValidationError(
                f"Profile monomial '{text}' does not occur in the table of {table.family}"
            )
    for text, power in profile.powers.items():
        if power > degrees[text]:
            raise ValidationError(
                f"Profile power u^{power} exceeds the coefficient degree {degrees[text]} of {text}"
            )


def _present(table: NewtonTable, profile: Optional[DivisibilityProfile]) -> List[NewtonRow]:
    if profile is None:
        return list(table.rows)
    return [row for row in table.rows if not profile.vanishes(row.text)]


def val(table: NewtonTable, profile: Optional[DivisibilityProfile] = None) -> int:
    """Order of F along u = v = 0: least coefficient degree over the monomials present."""
    if profile is not None:
        check_profile(table, profile)
    present = _present(table, profile)
    if not present:
        raise EmptyTableError(f"No monomials present for {table.family}")
    return min(row.degree for row in present)


def base_locus_certificates(fam: FamilyParams) -> BaseLocusReport:
    """Read the base-locus conditions off the table and compare with the inequalities."""
    table = newton_table(fam)
    present = {row.monomial for row in table.rows}
    by_degree = {row.monomial: row.degree for row in table.rows}

    divisible = all(m[2] + m[3] > 0 for m in present)
    has_x3 = (3, 0, 0, 0) in present
    x2_terms = tuple(format_monomial(m, FIBRE_NAMES_4) for m in _X2_TERMS if m in present)
    equal_twist_cubic = all(m[3] > 0 for m in present if m[0] > 0) and all(
        by_degree.get(m) == 0 for m in _YZ_CUBICS
    )

    n, a, b, c = fam.n, fam.a, fam.b, fam.c
    agrees = (
        divisible == (n < -3 * a)
        and has_x3 == (n >= 0)
        and bool(x2_terms) == (n >= -c)
        and equal_twist_cubic == (a == b and n == -3 * a and n < 0)
    )
    if not agrees:
        logger.warning("Certificates disagree with inequalities", extra={"family": str(fam)})
    return BaseLocusReport(
        family=fam,
        all_divisible_by_z_or_t=divisible,
        has_x3=has_x3,
        x2_terms=x2_terms,
        equal_twist_cubic=equal_twist_cubic,
        agrees_with_inequalities=agrees,
    )


def unprojection_class(fam: FamilyParams) -> DivClass:
    """Class of ξ = f/v when F = uf - vg with f, g ∈ |3M + (n-1)L|."""
    return DivClass(m=3, l=fam.n - 2)


# ---------------------------------------------------------------- substitution


def weighted_substitution(
    fam: FamilyParams,
    weights: Sequence[int],
    cancel: int,
    profile: Optional[DivisibilityProfile] = None,
) -> SubstitutionResult:
    """Substitute x_i ↦ u^(w_i) x_i, then divide F by u^s.

    Coefficient degrees shift by w·e - s and the u-powers of the profile by
    the same amount; a present monomial whose u-power would go negative
    rejects the substitution. Coordinates are re-sorted so the new twists
    are nondecreasing.
    """
    if len(weights) != 4 or any(w < 0 for w in weights):
        raise ValidationError(
            f"Substitution weights must be 4 nonnegative integers, got {list(weights)}"
        )
    if cancel < 0:
        raise ValidationError(f"Cancelled power must be nonnegative, got {cancel}")

    table = newton_table(fam)
    if profile is not None:
        check_profile(table, profile)

    shifted = [a + w for a, w in zip(fam.twists, weights)]
    low = min(shifted)
    permutation = tuple(sorted(range(4), key=lambda i: (shifted[i], i)))
    new_twists = [shifted[i] - low for i in permutation]
    target = build(
        FamilyParams,
        "substituted family",
        n=fam.n + 3 * low - cancel,
        a=new_twists[1],
        b=new_twists[2],
        c=new_twists[3],
    )

    entries: List[NewtonMapEntry] = []
    residual: Dict[str, int] = {}
    audit = True
    for row in _present(table, profile):
        lift = sum(w * e for w, e in zip(weights, row.monomial))
        power = (profile.power(row.text) if profile else 0) + lift - cancel
        if power < 0:
            raise SubstitutionRejectedError(
                f"Substitution rejected: coefficient of {row.text} is not divisible by u^{cancel}"
                f" after the shift (residual u^{power})"
            )
        image = tuple(row.monomial[i] for i in permutation)
        target_degree = coefficient_degree(target, image)
        audit = audit and target_degree == row.degree + lift - cancel
        text = format_monomial(image, FIBRE_NAMES_4)
        entries.append(
            NewtonMapEntry(
                source=row.text,
                target=text,
                source_degree=row.degree,
                target_degree=target_degree,
                residual_power=power,
            )
        )
        if power:
            residual[text] = power

    hit = {entry.target for entry in entries}
    vanishing = tuple(row.text for row in newton_table(target).rows if row.text not in hit)
    logger.debug(
        "Weighted substitution applied",
        extra={"source": str(fam), "target": str(target), "cancel": cancel},
    )
    return SubstitutionResult(
        source=fam,
        family=target,
        weights=tuple(weights),
        cancel=cancel,
        permutation=permutation,
        profile=DivisibilityProfile(powers=residual, vanishing=vanishing),
        newton_map=tuple(entries),
        class_audit=audit,
    )


def compose(
    first: SubstitutionResult,
    weights: Sequence[int],
    cancel: int,
    profile: Optional[DivisibilityProfile] = None,
) -> SubstitutionResult:
    """One substitution on ``first.source`` equal to ``first`` followed by (weights, cancel).

    ``weights`` index the coordinates of ``first.family``; ``profile`` is the
    profile ``first`` was applied with.
    """
    position = {old: new for new, old in enumerate(first.permutation)}
    combined = [first.weights[i] + weights[position[i]] for i in range(4)]
    return weighted_substitution(first.source, combined, first.cancel + cancel, profile)
