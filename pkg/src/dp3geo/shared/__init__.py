"""Shared layer of dp3geo: configuration, models, validation and errors."""

from .config import Config
from .exceptions import Dp3GeoError, ValidationError
from .models import (
    DivClass,
    FamilyParams,
    StandardScroll,
    WeightMatrix,
)
from .validators import build_matrix, validate_family

__all__ = [
    "Config",
    "Dp3GeoError",
    "ValidationError",
    "DivClass",
    "FamilyParams",
    "StandardScroll",
    "WeightMatrix",
    "build_matrix",
    "validate_family",
]
