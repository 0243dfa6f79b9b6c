"""
Rank-2 toric scrolls as quotients of affine space by a (C*)^2 action.

A scroll is described by its weight matrix: one integer column (m, l) per
affine coordinate, the class mM + lL of that coordinate. Sections of a class
are the monomials of that weight, chambers are the open cones between
consecutive column rays, and crossing a wall is a birational modification of
the quotient.
"""

import math
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from aws_lambda_powertools import Logger

from dp3geo.shared.constants import BASE_NAMES_P1, FIBRE_NAMES_4, SERVICE_NAME
from dp3geo.shared.exceptions import (
    DegenerateScrollError,
    InvalidMatrixError,
    NonUnimodularError,
    UnboundedEnumerationError,
)
from dp3geo.shared.models import (
    BasisChange,
    Chamber,
    ChamberWalk,
    DivClass,
    RayColumns,
    StandardScroll,
    WeightMatrix,
)
from dp3geo.shared.utils import (
    Vector,
    compositions,
    cone_extremes,
    cross,
    format_monomial,
    plane_dim,
    primitive,
    walk_compare,
    walk_key,
)
from dp3geo.shared.validators import build_matrix, validate_basis_change

logger = Logger(service=SERVICE_NAME, child=True)

Exponents = Tuple[int, ...]
BasisChangeLike = Union[BasisChange, Sequence[Sequence[int]]]


def default_names(scroll: StandardScroll) -> List[str]:
    """Coordinate names u, v, x, y, z, t (indexed names for other shapes)."""
    if scroll.base_dim == 1:
        base = list(BASE_NAMES_P1)
    else:
        base = [f"u{i}" for i in range(scroll.base_dim + 1)]
    if scroll.fibre_rank == len(FIBRE_NAMES_4):
        fibre = list(FIBRE_NAMES_4)
    else:
        fibre = [f"x{i}" for i in range(scroll.fibre_rank)]
    return base + fibre


def standard_to_matrix(
    scroll: StandardScroll, names: Optional[Sequence[str]] = None
) -> WeightMatrix:
    """Weight matrix of F(a_0,...,a_n) over P^k: base columns L, fibre columns M - a_i L."""
    columns = [DivClass(m=0, l=1)] * (scroll.base_dim + 1)
    columns += [DivClass(m=1, l=-a) for a in scroll.twists]
    return build_matrix(columns, list(names) if names else default_names(scroll))


# ---------------------------------------------------------------- sections


def _grading(vectors: Sequence[Vector]) -> Vector:
    """Integer functional positive on every column, built from the two extreme rays."""
    try:
        ccw_most, cw_most = cone_extremes(vectors)
    except ValueError as e:
        raise UnboundedEnumerationError(f"Section enumeration is unbounded: {e}")
    phi = (ccw_most[1] - cw_most[1], cw_most[0] - ccw_most[0])
    if any(phi[0] * v[0] + phi[1] * v[1] <= 0 for v in vectors):
        raise UnboundedEnumerationError("Section enumeration is unbounded: no positive grading")
    return phi


def _groups(mat: WeightMatrix) -> List[Tuple[Vector, List[int]]]:
    """Identical columns grouped together, groups in walk order."""
    grouped: Dict[Vector, List[int]] = {}
    for index, vector in enumerate(mat.vectors):
        grouped.setdefault(vector, []).append(index)
    return [(v, grouped[v]) for v in sorted(grouped, key=walk_key)]


def _group_totals(mat: WeightMatrix, cls: DivClass) -> Iterator[Exponents]:
    """Yield total exponents per column group summing to the class.

    The two extreme groups are solved exactly; the middle ones are bounded by
    the grading functional.
    """
    groups = _groups(mat)
    vectors = [v for v, _ in groups]
    phi = _grading(mat.vectors)
    weight = [phi[0] * v[0] + phi[1] * v[1] for v in vectors]
    budget = phi[0] * cls.m + phi[1] * cls.l
    if budget < 0:
        return

    first, last = vectors[0], vectors[-1]
    det = cross(first, last)
    middle = range(1, len(vectors) - 1)

    def solve(position: int, rest: Vector, room: int, chosen: List[int]) -> Iterator[Exponents]:
        if position == len(vectors) - 1:
            s_first, r1 = divmod(cross(rest, last), det)
            s_last, r2 = divmod(cross(first, rest), det)
            if r1 == 0 and r2 == 0 and s_first >= 0 and s_last >= 0:
                yield (s_first, *chosen, s_last)
            return
        vector = vectors[position]
        for s in range(room // weight[position] + 1):
            yield from solve(
                position + 1,
                (rest[0] - s * vector[0], rest[1] - s * vector[1]),
                room - s * weight[position],
                chosen + [s],
            )

    yield from solve(middle.start, cls.vector, budget, [])


def _canonical_key(exponents: Exponents) -> Tuple[int, Exponents]:
    return (sum(exponents), tuple(reversed(exponents)))


def sections(mat: WeightMatrix, cls: DivClass) -> List[Exponents]:
    """Exponent vectors e ≥ 0 with Σ e_i·column_i = cls.

    Canonical order: by total degree, ties broken lexicographically reading the
    exponents from the last coordinate (so on F(0,1,2,2) the sections of M
    come out as x, uy, vy, u^2z, uvz, v^2z, u^2t, uvt, v^2t).
    """
    groups = _groups(mat)
    found: List[Exponents] = []
    for totals in _group_totals(mat, cls):
        spreads = [compositions(total, len(columns)) for total, (_, columns) in zip(totals, groups)]
        for choice in product(*[list(spread) for spread in spreads]):
            exponents = [0] * mat.size
            for part, (_, columns) in zip(choice, groups):
                for index, power in zip(columns, part):
                    exponents[index] = power
            found.append(tuple(exponents))
    found.sort(key=_canonical_key)
    logger.debug("Sections enumerated", extra={"class": str(cls), "count": len(found)})
    return found


def section_texts(mat: WeightMatrix, cls: DivClass) -> List[str]:
    """Sections rendered as monomials in the coordinate names."""
    return [format_monomial(e, mat.names) for e in sections(mat, cls)]


def section_count(mat: WeightMatrix, cls: DivClass) -> int:
    """Number of sections, counted group by group without listing them."""
    groups = _groups(mat)
    total = 0
    for totals in _group_totals(mat, cls):
        count = 1
        for s, (_, columns) in zip(totals, groups):
            count *= math.comb(s + len(columns) - 1, len(columns) - 1)
        total += count
    return total


def standard_section_count(scroll: StandardScroll, cls: DivClass) -> int:
    """Closed form for h0(F, mM + lL) on a standard scroll.

    Sum over fibre monomials of degree m of the dimension of the base forms of
    degree l + Σ a_i f_i.
    """
    if cls.m < 0:
        return 0
    return sum(
        plane_dim(cls.l + sum(a * f for a, f in zip(scroll.twists, fibre)), scroll.base_dim + 1)
        for fibre in compositions(cls.m, scroll.fibre_rank)
    )


# ---------------------------------------------------------------- chambers


def walk(mat: WeightMatrix) -> ChamberWalk:
    """Chamber walk from the base edge towards the far edge of the useful cone.

    The useful cone runs from the ray of the second column to the ray of the
    second-to-last column in walk order (counted with multiplicity).
    """
    rays = sorted({primitive(v) for v in mat.vectors}, key=walk_key)
    position = {ray: i for i, ray in enumerate(rays)}
    column_position = [position[primitive(v)] for v in mat.vectors]
    ordered = sorted(range(mat.size), key=lambda i: (column_position[i], i))

    start = column_position[ordered[1]]
    stop = column_position[ordered[-2]]
    if stop <= start:
        raise DegenerateScrollError(
            "Degenerate scroll: the useful cone is a single ray (product of projective spaces)"
        )

    ray_columns = tuple(
        RayColumns(
            ray=DivClass.from_vector(ray),
            columns=tuple(i for i in range(mat.size) if column_position[i] == k),
        )
        for k, ray in enumerate(rays)
    )
    chambers = tuple(
        Chamber(
            lo_ray=DivClass.from_vector(rays[k]),
            hi_ray=DivClass.from_vector(rays[k + 1]),
            left_block=tuple(i for i in range(mat.size) if column_position[i] <= k),
            right_block=tuple(i for i in range(mat.size) if column_position[i] >= k + 1),
        )
        for k in range(start, stop)
    )
    logger.debug("Chamber walk computed", extra={"chambers": len(chambers), "rays": len(rays)})
    return ChamberWalk(
        rays=ray_columns,
        chambers=chambers,
        terminal_wall=DivClass.from_vector(rays[stop]),
    )


def chambers(mat: WeightMatrix) -> List[Chamber]:
    """Chambers of the useful cone in walk order; the terminal wall is in walk()."""
    return list(walk(mat).chambers)


def semistable_locus(mat: WeightMatrix, chamber: Chamber) -> str:
    """Describe the semistable locus of a chamber as a product of punctured blocks."""
    left = ",".join(mat.names[i] for i in chamber.left_block)
    right = ",".join(mat.names[i] for i in chamber.right_block)
    return (
        f"(C^{len(chamber.left_block)} \\ 0) x (C^{len(chamber.right_block)} \\ 0)"
        f" in ({left} | {right})"
    )


# ---------------------------------------------------------------- basis changes


def make_basis_change(matrix: BasisChangeLike) -> BasisChange:
    """Validate a 2x2 integer matrix as a unimodular basis change."""
    change = matrix if isinstance(matrix, BasisChange) else BasisChange(
        matrix=validate_basis_change(matrix)
    )
    if abs(change.det) != 1:
        raise NonUnimodularError(f"Basis change {change.matrix} has determinant {change.det}")
    return change


def transform_class(basis_change: BasisChangeLike, cls: DivClass) -> DivClass:
    """Image of a class under the basis change."""
    return make_basis_change(basis_change).apply(cls)


def row_operate(
    mat: WeightMatrix, basis_change: BasisChangeLike
) -> WeightMatrix:
    """Apply a unimodular basis change to every column; names are kept.

    The basis change acts on (m, l) column vectors, i.e. on the hand-written
    layout with the M row on top.
    """
    change = make_basis_change(basis_change)
    columns = [change.apply(column) for column in mat.columns]
    logger.debug("Row operation applied", extra={"basis_change": change.matrix})
    return build_matrix(columns, mat.names)


# ---------------------------------------------------------------- extensions


def extend(mat: WeightMatrix, new_class: DivClass, name: str) -> WeightMatrix:
    """Add a coordinate of the given class, keeping columns in walk order.

    The new column goes right after the last column not strictly past it in
    the walk. Rays beyond the base edge are rejected.
    """
    if new_class.is_zero:
        raise InvalidMatrixError("Cannot extend by the zero class")
    ccw_most, _ = cone_extremes(mat.vectors)
    if cross(ccw_most, new_class.vector) > 0:
        raise InvalidMatrixError(
            f"Extension class {new_class} lies beyond the base edge"
            f" {DivClass.from_vector(ccw_most)}"
        )

    columns = mat.columns
    slot = 0
    for index, column in enumerate(columns):
        if walk_compare(new_class.vector, column.vector) != -1:
            slot = index + 1
    names = list(mat.names)
    columns.insert(slot, new_class)
    names.insert(slot, name)
    logger.debug("Scroll extended", extra={"class": str(new_class), "name": name, "slot": slot})
    return build_matrix(columns, names)
