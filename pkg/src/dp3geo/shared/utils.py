"""Shared utility functions: exact rank-2 lattice arithmetic and documents."""

import functools
import math
from typing import Iterable, Sequence, Tuple

from pydantic import BaseModel

Vector = Tuple[int, int]


def cross(first: Vector, second: Vector) -> int:
    """Return the 2x2 determinant first x second (positive if second is counterclockwise)."""
    return first[0] * second[1] - first[1] * second[0]


def dot(first: Vector, second: Vector) -> int:
    """Return the Euclidean pairing of two lattice vectors."""
    return first[0] * second[0] + first[1] * second[1]


def primitive(vector: Vector) -> Vector:
    """Return the primitive lattice vector on the ray of a nonzero vector."""
    g = math.gcd(vector[0], vector[1])
    if g == 0:
        raise ValueError("The zero vector has no ray")
    return (vector[0] // g, vector[1] // g)


def same_ray(first: Vector, second: Vector) -> bool:
    """Check whether two nonzero vectors point along the same ray."""
    return cross(first, second) == 0 and dot(first, second) > 0


def walk_compare(first: Vector, second: Vector) -> int:
    """Clockwise comparator for vectors inside one open half-plane.

    Returns -1 when ``second`` lies clockwise of ``first`` (so ``first`` is
    walked earlier), 1 for the converse and 0 on a common ray.
    """
    turn = cross(first, second)
    if turn < 0:
        return -1
    if turn > 0:
        return 1
    return 0


walk_key = functools.cmp_to_key(walk_compare)


def sign(value: int) -> int:
    """Return -1, 0 or 1."""
    return (value > 0) - (value < 0)


def plane_dim(degree: int, variables: int) -> int:
    """Dimension of the degree-``degree`` forms in ``variables`` variables (0 below degree 0)."""
    if degree < 0:
        return 0
    return math.comb(degree + variables - 1, variables - 1)


def compositions(total: int, parts: int) -> Iterable[Tuple[int, ...]]:
    """Yield exponent tuples of length ``parts`` summing to ``total``, largest first entry first."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for tail in compositions(total - head, parts - 1):
            yield (head,) + tail


def determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of a 2x2 integer matrix."""
    return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]


def dump_document(model: BaseModel) -> str:
    """Serialize a pydantic document deterministically."""
    return model.model_dump_json(indent=2) + "\n"


def format_class(m: int, l: int) -> str:
    """Render mM + lL the way classes are written by hand, e.g. 3M - 2L."""

    def term(coeff: int, symbol: str) -> str:
        magnitude = abs(coeff)
        return symbol if magnitude == 1 else f"{magnitude}{symbol}"

    if m == 0 and l == 0:
        return "0"
    text = ""
    if m:
        text = ("-" if m < 0 else "") + term(m, "M")
    if l:
        if text:
            text += " - " if l < 0 else " + "
        elif l < 0:
            text = "-"
        text += term(l, "L")
    return text


def format_monomial(exponents: Sequence[int], names: Sequence[str]) -> str:
    """Render an exponent vector as a monomial such as x^2y (1 for the constant)."""
    parts = []
    for power, name in zip(exponents, names):
        if power == 1:
            parts.append(name)
        elif power > 1:
            parts.append(f"{name}^{power}")
    return "".join(parts) or "1"


def cone_extremes(vectors: Sequence[Vector]) -> Tuple[Vector, Vector]:
    """Return the counterclockwise-most and clockwise-most rays of a strictly convex set.

    Raises ValueError when the vectors do not fit in an open half-plane.
    """
    ccw_most = next(
        (p for p in vectors if all(cross(p, w) < 0 or same_ray(p, w) for w in vectors)), None
    )
    cw_most = next(
        (q for q in vectors if all(cross(q, w) > 0 or same_ray(q, w) for w in vectors)), None
    )
    if ccw_most is None or cw_most is None:
        raise ValueError("column rays do not lie in a strictly convex cone")
    return primitive(ccw_most), primitive(cw_most)
