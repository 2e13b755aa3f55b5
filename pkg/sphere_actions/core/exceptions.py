"""Custom exceptions for the sphere_actions decision procedures."""


class SphereActionsError(Exception):
    """Base exception for all sphere_actions errors."""

    def __init__(self, message: str, error_code: str = None, context: dict = None):
        super().__init__(message)
        self.message = message
        self.error_code = error_code
        self.context = context or {}

    def __str__(self):
        base_msg = self.message
        if self.error_code:
            base_msg = f"[{self.error_code}] {base_msg}"
        if self.context:
            context_str = ", ".join(f"{k}={v}" for k, v in self.context.items())
            base_msg = f"{base_msg} (Context: {context_str})"
        return base_msg

    @property
    def location(self) -> str:
        """JSON path or text position the error points at, if known."""
        return str(self.context.get("at", "$"))


# Validation Exceptions
class ValidationError(SphereActionsError):
    """Errors related to input validation."""
    pass


class InvalidInputError(ValidationError):
    """Invalid input provided."""
    pass


class RangeValidationError(ValidationError):
    """Value outside valid range."""
    pass


class TypeValidationError(ValidationError):
    """Invalid type provided."""
    pass


class ParseError(ValidationError):
    """Word or matrix text could not be parsed."""
    pass


class SchemaError(ValidationError):
    """JSON payload does not match the command schema."""
    pass


# Free Group Exceptions
class FreeGroupError(SphereActionsError):
    """Errors related to free group arithmetic."""
    pass


class RankMismatchError(FreeGroupError):
    """Operands live in free groups of different rank."""
    pass


class GeneratorIndexError(FreeGroupError):
    """Generator index outside 1..rank."""
    pass


# Lattice Exceptions
class LatticeError(SphereActionsError):
    """Errors related to integer lattice computations."""
    pass


class NotAnInvolutionError(LatticeError):
    """Matrix or automorphism does not square to the identity."""
    pass


class NotUnimodularError(LatticeError):
    """Matrix determinant is not +1 or -1."""
    pass


class NotCanonicalError(LatticeError):
    """Matrix is not literally in A(k,r,s) block form."""
    pass


class NormalFormError(LatticeError):
    """Smith normal form post-condition failed."""
    pass


class CanonicalFormError(LatticeError):
    """Conjugator to A(k,r,s) failed verification."""
    pass


# Twisted Group Exceptions
class TwistedGroupError(SphereActionsError):
    """Errors related to semidirect products with Z2."""
    pass


class InvalidOrientationError(TwistedGroupError):
    """Orientation does not extend to a homomorphism of the semidirect product."""
    pass


class MalformedClaimError(TwistedGroupError):
    """Decomposition claim does not partition the generators."""
    pass


class IdentityElementError(TwistedGroupError):
    """Operation is undefined on the identity element."""
    pass


class EmptyFactorListError(TwistedGroupError):
    """Free product requested over no factors."""
    pass


# Decision Exceptions
class DecisionError(SphereActionsError):
    """Errors related to realizability decisions."""
    pass


class WitnessError(DecisionError):
    """A witness failed re-verification."""
    pass


# Classification Exceptions
class ClassificationError(SphereActionsError):
    """Errors related to virtually cyclic classification and covers."""
    pass


class UnsupportedCoverError(ClassificationError):
    """Cover label has no finite-group covering actions to enumerate."""
    pass


class IndexBoundError(ClassificationError):
    """Requested index exceeds the configured bound."""
    pass


class InfiniteIndexError(ClassificationError):
    """Subgroup is not of finite index."""
    pass


class NotNormalError(ClassificationError):
    """Subgroup is not normal in the ambient group."""
    pass


class QuotientIdentificationError(ClassificationError):
    """Finite quotient falls outside the cyclic/dihedral families."""
    pass


# Utility functions for exception handling
def raise_if_rank_mismatch(left: int, right: int, operation: str = "operation"):
    """Raise RankMismatchError if two ranks differ."""
    if left != right:
        raise RankMismatchError(
            f"Cannot perform {operation} across ranks {left} and {right}",
            error_code="RANK_MISMATCH",
            context={"left": left, "right": right, "operation": operation}
        )


def raise_if_invalid_generator(index: int, rank: int, context: str = ""):
    """Raise GeneratorIndexError if index is not in 1..rank."""
    if not isinstance(index, int) or isinstance(index, bool) or not 1 <= index <= rank:
        raise GeneratorIndexError(
            f"Generator index {index} outside 1..{rank}",
            error_code="BAD_GENERATOR",
            context={"index": index, "rank": rank, "context": context}
        )
