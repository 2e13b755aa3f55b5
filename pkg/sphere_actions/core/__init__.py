"""Core enumerations, exceptions and constants."""

from .enums import *
from .exceptions import *
from .constants import *

__all__ = [
    # Enums
    "VerdictKind", "VCShape", "ManifoldLabel", "GroupFamily",
    "ClassificationStatus",
    # Exceptions
    "SphereActionsError", "ValidationError", "FreeGroupError", "LatticeError",
    "TwistedGroupError", "DecisionError", "ClassificationError",
    # Constants
    "DEFAULT_SEED", "WITNESS_LENGTH_CAP", "DEFAULT_MAX_COVER_INDEX",
]
