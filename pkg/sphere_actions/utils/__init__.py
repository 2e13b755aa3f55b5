"""
Utilities for sphere_actions.

Modules:
- validation: Validator base class and algebra-specific checks
- serialization: word/matrix text forms and JSON payload codecs (import directly)
"""

from .validation import Validator, AlgebraValidator

__all__ = ['Validator', 'AlgebraValidator']
