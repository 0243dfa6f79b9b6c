"""dP3 fibration geography, 2-ray games on toric scrolls and determinantal numerology."""

from dp3geo import shared  # noqa: F401  (configures the parent logger first)

__version__ = "1.0.0"
