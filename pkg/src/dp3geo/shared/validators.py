"""Input validators for dp3geo."""

import json
import re
from typing import Any, Callable, Dict, List, Sequence, Tuple, TypeVar

from aws_lambda_powertools import Logger
from pydantic import BaseModel, ValidationError

from dp3geo.shared.constants import FIBRE_NAMES_4, SERVICE_NAME
from dp3geo.shared.exceptions import InvalidMatrixError
from dp3geo.shared.exceptions import ValidationError as Dp3ValidationError
from dp3geo.shared.models import (
    CoverSpec,
    DivClass,
    DivisibilityProfile,
    FamilyParams,
    Monomial,
    WeightMatrix,
)
from dp3geo.shared.utils import Vector, format_monomial

logger = Logger(service=SERVICE_NAME, child=True)

ModelT = TypeVar("ModelT", bound=BaseModel)

_CLASS_PAIR = re.compile(r"^\s*(-?\d+)\s*:\s*(-?\d+)\s*(?::\s*(\S+)\s*)?$")
_CLASS_TERM = re.compile(r"([+-]?)\s*(\d*)\s*([ML])")
_MONOMIAL_TERM = re.compile(r"([xyzt])(?:\^(\d+))?")


def _flatten(error: ValidationError) -> str:
    messages = []
    for err in error.errors():
        location = ".".join(str(part) for part in err["loc"])
        messages.append(f"{location}: {err['msg']}" if location else err["msg"])
    return ", ".join(messages)


def build(model: Callable[..., ModelT], what: str, **data: Any) -> ModelT:
    """Construct a model, converting pydantic errors into the domain ValidationError."""
    try:
        return model(**data)
    except ValidationError as e:
        logger.error("Input validation failed", extra={"model": what, "errors": _flatten(e)})
        raise Dp3ValidationError(f"Invalid {what}: {_flatten(e)}")


def build_matrix(columns: Sequence[DivClass], names: Sequence[str]) -> WeightMatrix:
    """Construct a WeightMatrix, raising InvalidMatrixError on broken invariants."""
    try:
        return WeightMatrix.from_columns(list(columns), list(names))
    except ValidationError as e:
        logger.error("Weight matrix validation failed", extra={"errors": _flatten(e)})
        raise InvalidMatrixError(f"Invalid weight matrix: {_flatten(e)}")


def validate_family(n: int, a: int, b: int, c: int) -> FamilyParams:
    """Validate the structural part of a family: 0 ≤ a ≤ b ≤ c."""
    return build(FamilyParams, "family", n=n, a=a, b=b, c=c)


def parse_class(text: str) -> Tuple[DivClass, str]:
    """Parse ``m:l[:name]`` or an expression such as ``3M-2L``.

    Returns the class and the optional name ("" when absent).
    """
    match = _CLASS_PAIR.match(text)
    if match:
        return DivClass(m=int(match.group(1)), l=int(match.group(2))), match.group(3) or ""

    compact = text.replace(" ", "").replace("−", "-")
    pos, m, l = 0, 0, 0
    for term in _CLASS_TERM.finditer(compact):
        if term.start() != pos:
            break
        coeff = int(term.group(2)) if term.group(2) else 1
        coeff = -coeff if term.group(1) == "-" else coeff
        if term.group(3) == "M":
            m += coeff
        else:
            l += coeff
        pos = term.end()
    if pos == 0 or pos != len(compact):
        raise Dp3ValidationError(f"Cannot parse divisor class '{text}' (use m:l or e.g. 3M-2L)")
    return DivClass(m=m, l=l), ""


def parse_int_list(text: str, what: str) -> List[int]:
    """Parse a comma-separated integer list."""
    try:
        return [int(part) for part in text.replace("−", "-").split(",") if part.strip()]
    except ValueError:
        raise Dp3ValidationError(f"Invalid {what}: expected comma-separated integers, got '{text}'")


def parse_monomial(text: str) -> Monomial:
    """Parse a cubic fibre monomial written in x, y, z, t (e.g. x^2t, xyz)."""
    compact = text.replace(" ", "")
    exponents = dict.fromkeys(FIBRE_NAMES_4, 0)
    pos = 0
    for term in _MONOMIAL_TERM.finditer(compact):
        if term.start() != pos:
            break
        exponents[term.group(1)] += int(term.group(2) or 1)
        pos = term.end()
    if pos == 0 or pos != len(compact):
        raise Dp3ValidationError(f"Cannot parse fibre monomial '{text}'")
    monomial = (exponents["x"], exponents["y"], exponents["z"], exponents["t"])
    if sum(monomial) != 3:
        raise Dp3ValidationError(f"Fibre monomial '{text}' is not cubic")
    return monomial


def validate_profile(data: Dict[str, Any]) -> DivisibilityProfile:
    """Validate a profile payload {"powers": {monomial: power}, "vanishing": [monomial]}.

    A flat {monomial: power} map is accepted as the powers part. Monomial
    spellings are normalized (x2y and x^2y are the same key).
    """
    if not isinstance(data, dict):
        raise Dp3ValidationError("Profile must be a JSON object")
    if "powers" in data or "vanishing" in data:
        powers = data.get("powers", {})
        vanishing = data.get("vanishing", [])
    else:
        powers, vanishing = data, []

    normalized = {}
    for key, power in powers.items():
        if not isinstance(power, int) or isinstance(power, bool):
            raise Dp3ValidationError(f"Profile power for '{key}' must be an integer")
        normalized[format_monomial(parse_monomial(_caret(key)), FIBRE_NAMES_4)] = power
    zeros = tuple(format_monomial(parse_monomial(_caret(key)), FIBRE_NAMES_4) for key in vanishing)

    profile = build(DivisibilityProfile, "profile", powers=normalized, vanishing=zeros)
    logger.debug("Profile validated", extra={"powers": len(normalized), "vanishing": len(zeros)})
    return profile


def load_profile(path: str) -> DivisibilityProfile:
    """Read a profile JSON file."""
    try:
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as e:
        raise Dp3ValidationError(f"Cannot read profile file {path}: {e.strerror}")
    except json.JSONDecodeError as e:
        raise Dp3ValidationError(f"Invalid JSON in profile file {path}: {e.msg}")
    return validate_profile(data)


def parse_overrides(items: Sequence[str]) -> Dict[int, int]:
    """Parse ``n=value`` overrides for h0(λ(n))."""
    overrides = {}
    for item in items:
        key, sep, value = item.partition("=")
        try:
            if not sep:
                raise ValueError
            overrides[int(key)] = int(value)
        except ValueError:
            raise Dp3ValidationError(f"Invalid override '{item}' (expected N=V)")
    return overrides


def validate_cover(d: int, e: int, overrides: Dict[int, int]) -> CoverSpec:
    """Validate the cover data of a theta computation."""
    return build(CoverSpec, "cover", d=d, e=e, p_overrides=overrides)


def validate_basis_change(matrix: Sequence[Sequence[int]]) -> Tuple[Vector, Vector]:
    """Check the shape of a 2x2 integer matrix."""
    if len(matrix) != 2 or any(len(row) != 2 for row in matrix):
        raise Dp3ValidationError("A basis change must be a 2x2 integer matrix")
    return (int(matrix[0][0]), int(matrix[0][1])), (int(matrix[1][0]), int(matrix[1][1]))


def _caret(text: str) -> str:
    # accept x2y as well as x^2y
    return re.sub(r"([xyzt])(\d+)", r"\1^\2", text)
