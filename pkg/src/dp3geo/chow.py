"""
Intersection numbers on standard scrolls.

The Chow ring of F(a_0,...,a_n) over P^k is Z[L,M]/(L^(k+1), Π(M - a_i L)),
with the degree map normalized by M^n L^k = 1. In lex order with M > L the two
relations have coprime leading terms, so division by them gives a normal form.
"""

import functools
import re
from tokenize import TokenError
from typing import Iterable, Tuple, Union

from aws_lambda_powertools import Logger
from sympy import Poly, Symbol, SympifyError
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)
from sympy.polys.domains import ZZ
from sympy.polys.orderings import lex
from sympy.polys.polyerrors import BasePolynomialError
from sympy.polys.rings import PolyElement, ring

from dp3geo.shared.constants import (
    DP3_FIBRE_RANK,
    K2_IFF,
    K2_SUFFICIENT_ONLY,
    SERVICE_NAME,
)
from dp3geo.shared.exceptions import DegreeOverflowError, ValidationError
from dp3geo.shared.models import (
    ChowExpr,
    CycleClass,
    DivClass,
    FamilyParams,
    K2Report,
    StandardScroll,
)

logger = Logger(service=SERVICE_NAME, child=True)

_RING, _M, _L = ring("M,L", ZZ, lex)

_EXPRESSION_CHARS = re.compile(r"^[0-9ML+\-*^() ]+$")
_TRANSFORMATIONS = standard_transformations + (convert_xor, implicit_multiplication_application)
_SYMBOLS = {"M": Symbol("M"), "L": Symbol("L")}


def family_scroll(fam: FamilyParams) -> StandardScroll:
    """The ambient scroll F(0,a,b,c) over P¹ of a family."""
    return StandardScroll(base_dim=1, twists=fam.twists)


def class_expr(cls: DivClass) -> ChowExpr:
    """A divisor class as a linear Chow expression."""
    return ChowExpr(terms=((1, 0, cls.m), (0, 1, cls.l)))


def product(factors: Iterable[ChowExpr]) -> ChowExpr:
    """Product of Chow expressions (no reduction)."""
    result = _RING.one
    for factor in factors:
        result *= _to_ring(factor)
    return _from_ring(result)


def _to_ring(expr: ChowExpr) -> PolyElement:
    return _RING.from_dict({(m, l): c for m, l, c in expr.terms})


def _from_ring(poly: PolyElement) -> ChowExpr:
    return ChowExpr(terms=tuple((m, l, int(c)) for (m, l), c in poly.terms()))


@functools.lru_cache(maxsize=256)
def _relations(base_dim: int, twists: Tuple[int, ...]) -> Tuple[PolyElement, PolyElement]:
    fibre = _RING.one
    for a in twists:
        fibre *= _M - a * _L
    return _L ** (base_dim + 1), fibre


def normal_form(scroll: StandardScroll, expr: ChowExpr) -> ChowExpr:
    """Reduce modulo the scroll relations; every surviving monomial is M^i L^j, i ≤ n, j ≤ k."""
    if expr.degree > scroll.dim:
        raise DegreeOverflowError(
            f"Expression of degree {expr.degree} exceeds dim {scroll} = {scroll.dim}"
        )
    remainder = _to_ring(expr).rem(list(_relations(scroll.base_dim, scroll.twists)))
    return _from_ring(remainder)


def reduce(scroll: StandardScroll, expr: ChowExpr) -> Union[int, ChowExpr]:
    """Intersection number of a top-degree expression, otherwise its normal form."""
    reduced = normal_form(scroll, expr)
    if not expr.is_zero and expr.is_homogeneous and expr.degree == scroll.dim:
        value = reduced.coefficient(scroll.fibre_rank - 1, scroll.base_dim)
        logger.debug("Intersection number computed", extra={"scroll": str(scroll), "value": value})
        return value
    return reduced


def parse_expression(text: str) -> ChowExpr:
    """Parse an integer polynomial in M and L, e.g. ``(M-L)(M^3-5M^2L)``."""
    cleaned = text.replace("−", "-").replace("·", "*")
    if not cleaned.strip() or not _EXPRESSION_CHARS.match(cleaned):
        raise ValidationError(f"Invalid Chow expression '{text}': only M, L, integers, + - * ^ ( )")
    try:
        expr = parse_expr(cleaned, local_dict=dict(_SYMBOLS), transformations=_TRANSFORMATIONS)
        poly = Poly(expr, _SYMBOLS["M"], _SYMBOLS["L"], domain="ZZ")
    except (SympifyError, SyntaxError, TokenError, TypeError, BasePolynomialError) as e:
        logger.error("Expression parsing failed", extra={"expression": text, "error": str(e)})
        raise ValidationError(f"Invalid Chow expression '{text}'")
    return ChowExpr(terms=tuple((m, l, int(c)) for (m, l), c in poly.terms()))


def gamma(scroll: StandardScroll) -> ChowExpr:
    """The negative section cut out by all fibre coordinates but the first, in normal form."""
    if scroll.base_dim != 1:
        raise ValidationError("The negative section Γ is defined for scrolls over P¹")
    factors = [ChowExpr(terms=((1, 0, 1), (0, 1, -a))) for a in scroll.twists[1:]]
    return normal_form(scroll, product(factors))


def to_cycle_class(scroll: StandardScroll, expr: ChowExpr) -> CycleClass:
    """Write a 1-cycle on a 4-fold scroll over P¹ in the basis (Γ, M²L)."""
    if scroll.base_dim != 1 or scroll.fibre_rank != DP3_FIBRE_RANK:
        raise ValidationError("1-cycles are written in (Γ, M²L) on 4-fold scrolls over P¹ only")
    reduced = normal_form(scroll, expr)
    if not reduced.is_zero and (reduced.degree != 3 or not reduced.is_homogeneous):
        raise ValidationError(f"'{expr}' is not a 1-cycle (degree 3) on {scroll}")
    # M³ = Γ - g·M²L where Γ = M³ + g·M²L
    g = gamma(scroll).coefficient(2, 1)
    m3 = reduced.coefficient(3, 0)
    return CycleClass(gamma_coeff=m3, m2l_coeff=reduced.coefficient(2, 1) - g * m3)


def anticanonical_on_X(fam: FamilyParams) -> DivClass:
    """-K_X = M + (2 - d - n)L, restricted from F by adjunction."""
    return DivClass(m=1, l=2 - fam.d - fam.n)


def ambient_anticanonical(scroll: StandardScroll) -> DivClass:
    """-K_F as the sum of the column classes."""
    return DivClass(m=scroll.fibre_rank, l=scroll.base_dim + 1 - scroll.degree)


def kx_squared(fam: FamilyParams) -> K2Report:
    """K_X² pushed to F as (-K)²·X, in the basis (Γ, M²L)."""
    scroll = family_scroll(fam)
    minus_k = class_expr(anticanonical_on_X(fam))
    cycle = to_cycle_class(scroll, product([minus_k, minus_k, class_expr(DivClass(m=3, l=fam.n))]))
    return K2Report(
        cycle=cycle,
        interior=3 * fam.d + 5 * fam.n < 12,
        certainty=K2_IFF if fam.n < 0 else K2_SUFFICIENT_ONLY,
    )


def _dot_gamma(fam: FamilyParams, cls: DivClass) -> int:
    scroll = family_scroll(fam)
    value = reduce(scroll, product([class_expr(cls), gamma(scroll)]))
    return value if isinstance(value, int) else 0


def mk_dot_gamma(fam: FamilyParams) -> int:
    """-K·Γ, equal to 2 - d - n."""
    return _dot_gamma(fam, anticanonical_on_X(fam))


def x_dot_gamma(fam: FamilyParams) -> int:
    """X·Γ, equal to n."""
    return _dot_gamma(fam, DivClass(m=3, l=fam.n))
