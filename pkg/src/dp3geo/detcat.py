"""
Determinantal numerology of 2-to-1 covers of plane curves.

A cover of a smooth plane curve C of degree d is given by a line bundle λ
with λ² = O_C(-e), e ∈ {0, 1}. The module ⊕ H⁰(C, λ(n)) over the plane
coordinate ring has a symmetric resolution 0 → ⊕S(-l_i) → ⊕S(-r_i) → λ → 0
with l_i = d + e - r_i; the matrix has entries of degree (d_i + d_j)/2 where
d_i = l_i - r_i.
"""

from typing import Dict, List, Optional, Sequence, Tuple, Union

from aws_lambda_powertools import Logger

from dp3geo import curated
from dp3geo.shared.constants import PLANE_VARIABLES, SERVICE_NAME
from dp3geo.shared.exceptions import (
    InconsistentOverridesError,
    NonRealizableFormatError,
    ValidationError,
)
from dp3geo.shared.models import ConicBundleModel, CoverSpec, DetFormat, ModuliCount, ThetaReport
from dp3geo.shared.utils import plane_dim
from dp3geo.shared.validators import build

logger = Logger(service=SERVICE_NAME, child=True)

# d = 7, e = 0 is the degree of the discriminant of a conic bundle over P²
_CONIC_BUNDLE_DEGREE = 7


def default_n_max(d: int, e: int) -> int:
    return d + e + 2


def _ambiguous(spec: CoverSpec, n: int) -> bool:
    """Both h⁰ and h¹ of λ(n) may be nonzero and n is the smaller of a dual pair."""
    dual = spec.dual_index(n)
    return spec.lambda_degree(n) > 0 and spec.lambda_degree(dual) > 0 and n <= dual


def _h0(spec: CoverSpec, n: int) -> int:
    if spec.lambda_degree(n) <= 0:
        # λ(n) of degree 0 is a nontrivial torsion bundle
        return 0
    dual = spec.dual_index(n)
    if spec.lambda_degree(dual) <= 0:
        return spec.chi(n)
    if n > dual:
        return spec.chi(n) + _h0(spec, dual)
    return spec.p_overrides.get(n, 0)


def _check_overrides(spec: CoverSpec) -> None:
    for n, value in sorted(spec.p_overrides.items()):
        if not _ambiguous(spec, n):
            forced = _h0(spec, n)
            if value != forced:
                raise InconsistentOverridesError(
                    f"h0(λ({n})) is forced to be {forced} by Riemann-Roch and duality, got {value}"
                )
            continue
        degree = spec.lambda_degree(n)
        if value < spec.chi(n):
            raise InconsistentOverridesError(
                f"h0(λ({n})) = {value} is below χ(λ({n})) = {spec.chi(n)}"
            )
        # Clifford
        if 2 * value > degree + 2:
            raise InconsistentOverridesError(
                f"h0(λ({n})) = {value} exceeds the Clifford bound for degree {degree}"
            )
    ambiguous = [n for n in spec.p_overrides if _ambiguous(spec, n)]
    if not ambiguous:
        return
    # multiplication by a linear form embeds H0(λ(n)) in H0(λ(n+1))
    for n in range(0, max(ambiguous) + 1):
        if _h0(spec, n + 1) < _h0(spec, n):
            raise InconsistentOverridesError(
                f"h0 drops from λ({n}) to λ({n + 1}): {_h0(spec, n)} > {_h0(spec, n + 1)}"
            )


def rr_table(spec: CoverSpec, n_max: Optional[int] = None) -> Tuple[int, ...]:
    """h⁰(C, λ(n)) for n = 0..n_max.

    Values with only one cohomology group possibly nonzero come from
    Riemann-Roch; the remaining ones from overrides (0 when absent) and
    Serre duality h¹(λ(n)) = h⁰(λ(d - 3 + e - n)).
    """
    _check_overrides(spec)
    top = default_n_max(spec.d, spec.e) if n_max is None else n_max
    table = tuple(_h0(spec, n) for n in range(top + 1))
    logger.debug("Riemann-Roch table computed", extra={"d": spec.d, "e": spec.e, "n_max": top})
    return table


def _predicted(gens: Sequence[int], rels: Sequence[int], n: int) -> int:
    return sum(plane_dim(n - r, PLANE_VARIABLES) for r in gens) - sum(
        plane_dim(n - l, PLANE_VARIABLES) for l in rels
    )


def format_from_hilbert(d: int, e: int, values: Sequence[int]) -> DetFormat:
    """Minimal-generator analysis of a Hilbert function h(0), h(1), ...

    Generators are added greedily degree by degree, each one bringing its
    symmetric relation in degree d + e - r. The resulting format must
    reproduce every given value.
    """
    gens: List[int] = []
    for n in range(min(len(values), (d + e - 1) // 2 + 1)):
        new = values[n] - _predicted(gens, [d + e - r for r in gens], n)
        if new < 0:
            raise NonRealizableFormatError(
                f"h0 = {values[n]} in degree {n} is below what earlier generators force"
            )
        gens.extend([n] * new)

    parts = tuple(d + e - 2 * r for r in gens)
    if sum(parts) != d:
        raise NonRealizableFormatError(
            f"Generators in degrees {gens} give diagonal degrees summing to {sum(parts)}, not {d}"
        )
    fmt = build(DetFormat, "determinantal format", d=d, e=e, diag_degrees=parts)
    series = hilbert_series(fmt, len(values) - 1)
    if tuple(values) != series:
        raise NonRealizableFormatError(
            f"Format {list(parts)} predicts {list(series)}, not {list(values)}"
        )
    return fmt


def derive_format(spec: CoverSpec) -> DetFormat:
    """Symmetric format of the cover, with generator degrees ascending.

    Diagonal degrees come out largest first, so the odd quartic reads
    ((3, 2), (2, 1)) rather than starting from the smallest part. Every
    format in this module uses that order.
    """
    fmt = format_from_hilbert(spec.d, spec.e, rr_table(spec))
    logger.debug(
        "Format derived",
        extra={"d": spec.d, "e": spec.e, "partition": list(fmt.diag_degrees)},
    )
    return fmt


def format_from_partition(d: int, e: int, partition: Sequence[int]) -> DetFormat:
    """Format with the given diagonal degrees, largest first."""
    try:
        parts = tuple(sorted((int(part) for part in partition), reverse=True))
    except (TypeError, ValueError):
        raise ValidationError(f"Partition must be a list of integers, got {partition!r}")
    return build(DetFormat, "determinantal format", d=d, e=e, diag_degrees=parts)


def hilbert_series(fmt: DetFormat, n_max: Optional[int] = None) -> Tuple[int, ...]:
    """Coefficients of (Σ t^r_i - Σ t^l_i)/(1 - t)³ for n = 0..n_max."""
    top = default_n_max(fmt.d, fmt.e) if n_max is None else n_max
    return tuple(_predicted(fmt.gen_degrees, fmt.rel_degrees, n) for n in range(top + 1))


def moduli_count(fmt: DetFormat, variables: int = PLANE_VARIABLES) -> ModuliCount:
    """Parameters of the symmetric matrix minus the gauge group of the generators."""
    entries = fmt.entry_degrees
    size = fmt.size
    params = sum(
        plane_dim(entries[i][j], variables) for i in range(size) for j in range(i, size)
    )
    gauge = sum(plane_dim(ri - rj, variables) for ri in fmt.gen_degrees for rj in fmt.gen_degrees)
    return ModuliCount(
        params=params,
        gauge=gauge,
        family_dim=params - gauge,
        all_curves_dim=plane_dim(fmt.d, variables) - 1,
    )


def conic_bundle_models() -> Tuple[ConicBundleModel, ...]:
    """Conic bundles over P² with discriminant of degree 7, by h⁰(λ(2))."""
    return curated.CONIC_BUNDLES


def theta_report(source: Union[CoverSpec, DetFormat], n_max: Optional[int] = None) -> ThetaReport:
    """Format, Hilbert series and moduli count of a cover or of a given format."""
    if isinstance(source, CoverSpec):
        spec: Optional[CoverSpec] = source
        table: Optional[Tuple[int, ...]] = rr_table(source, n_max)
        fmt = derive_format(source)
    else:
        spec, table, fmt = None, None, source

    top = default_n_max(fmt.d, fmt.e) if n_max is None else n_max
    series = hilbert_series(fmt, max(top, 2))
    conic_bundle = None
    if fmt.d == _CONIC_BUNDLE_DEGREE and fmt.e == 0:
        models: Dict[int, ConicBundleModel] = curated.conic_bundle_by_h0()
        conic_bundle = models.get(series[2])
    return ThetaReport(
        spec=spec,
        format=fmt,
        rr_table=table,
        hilbert=series[: top + 1],
        moduli=moduli_count(fmt),
        conic_bundle=conic_bundle,
    )
