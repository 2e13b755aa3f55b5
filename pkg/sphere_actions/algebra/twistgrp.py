"""The semidirect product F ⋊_θ Z2 and the structures built on it.

Multiplication convention, fixed throughout the package:

    (g, ε) · (g', ε') = (g · θ^ε(g'), ε ⊕ ε')

so the Z2 coordinate twists whatever stands to its right.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

from ..core.exceptions import (
    EmptyFactorListError, IdentityElementError, InvalidOrientationError,
    MalformedClaimError, NotAnInvolutionError, raise_if_rank_mismatch
)
from ..utils.validation import AlgebraValidator
from .freeword import (
    FreeAutomorphism, Word, abelianization_matrix, apply_aut, generators,
    invert, is_involution, multiply, reindex
)
from .intlat import IntMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TwistedGroup:
    """F_rank ⋊_θ Z2 for an involutive automorphism θ."""

    rank: int
    theta: FreeAutomorphism

    def __post_init__(self):
        AlgebraValidator.validate_rank(self.rank)
        raise_if_rank_mismatch(self.rank, self.theta.rank, "twisted group")
        if not is_involution(self.theta):
            raise NotAnInvolutionError(
                "theta does not square to the identity",
                error_code="NOT_INVOLUTION",
                context={"theta": [str(image) for image in self.theta.images]}
            )

    @classmethod
    def from_theta(cls, theta: FreeAutomorphism) -> "TwistedGroup":
        return cls(theta.rank, theta)

    @property
    def rho(self) -> IntMatrix:
        return abelianization_matrix(self.theta)

    def identity(self) -> "SemidirectElement":
        return SemidirectElement(Word.identity(self.rank), 0)

    def twist(self, g: Word, bit: int) -> Word:
        """θ^bit(g)."""
        return apply_aut(self.theta, g) if bit else g


@dataclass(frozen=True)
class SemidirectElement:
    word: Word
    bit: int = 0

    def __post_init__(self):
        AlgebraValidator.validate_bit(self.bit, "bit")

    @property
    def is_identity(self) -> bool:
        return self.word.is_identity and self.bit == 0

    def __str__(self) -> str:
        return f"({self.word or 'e'}, {self.bit})"


@dataclass(frozen=True)
class OrientationHom:
    """φ on the free generators; φ(e, 1) = 1 is implicit."""

    values: Tuple[int, ...]

    def __post_init__(self):
        values = tuple(self.values)
        AlgebraValidator.validate_bit_vector(values, len(values), "phi")
        object.__setattr__(self, "values", values)

    @classmethod
    def zero(cls, rank: int) -> "OrientationHom":
        return cls((0,) * rank)

    @property
    def rank(self) -> int:
        return len(self.values)

    def of_word(self, g: Word) -> int:
        """φ(g, 0), read off the exponent sums."""
        return sum(e * v for e, v in zip(g.abelianization(), self.values)) % 2


def _check_element(G: TwistedGroup, a: SemidirectElement) -> None:
    raise_if_rank_mismatch(G.rank, a.word.rank, "semidirect element")


def sd_multiply(G: TwistedGroup, a: SemidirectElement, b: SemidirectElement) -> SemidirectElement:
    _check_element(G, a)
    _check_element(G, b)
    return SemidirectElement(multiply(a.word, G.twist(b.word, a.bit)), a.bit ^ b.bit)


def sd_invert(G: TwistedGroup, a: SemidirectElement) -> SemidirectElement:
    _check_element(G, a)
    return SemidirectElement(G.twist(invert(a.word), a.bit), a.bit)


def has_order_two(G: TwistedGroup, a: SemidirectElement) -> bool:
    if a.is_identity:
        raise IdentityElementError(
            "Order-two test is undefined on the identity", error_code="IDENTITY"
        )
    return sd_multiply(G, a, a).is_identity


def twisted_conjugate(G: TwistedGroup, h: Word, g: Word) -> Word:
    """h · g · θ(h)^-1; preserves solutions of θ(g) = g^-1."""
    return multiply(multiply(h, g), invert(apply_aut(G.theta, h)))


def orientation_violations(G: TwistedGroup, phi: OrientationHom) -> List[int]:
    """Generators x_j with φ(θ(x_j)) != φ(x_j), 1-based."""
    raise_if_rank_mismatch(G.rank, phi.rank, "orientation")
    return [
        j for j in range(1, G.rank + 1)
        if phi.of_word(G.theta.image_of(j)) != phi.values[j - 1]
    ]


def validate_orientation(G: TwistedGroup, phi: OrientationHom) -> bool:
    return not orientation_violations(G, phi)


def require_orientation(G: TwistedGroup, phi: OrientationHom) -> None:
    """Raise InvalidOrientationError naming the offending generators."""
    violations = orientation_violations(G, phi)
    if violations:
        raise InvalidOrientationError(
            f"phi does not extend to a homomorphism; violated at generators {violations}",
            error_code="INVALID_ORIENTATION",
            context={"violations": violations, "at": f"$.phi[{violations[0] - 1}]"}
        )


def evaluate_orientation(G: TwistedGroup, phi: OrientationHom, a: SemidirectElement) -> int:
    require_orientation(G, phi)
    _check_element(G, a)
    return (phi.of_word(a.word) + a.bit) % 2


def projection_orientation(G: TwistedGroup) -> OrientationHom:
    """φ = 0 on F: the projection onto Z2, which is always realizable."""
    return OrientationHom.zero(G.rank)


# Free products with Z2


@dataclass(frozen=True)
class EmbeddingReport:
    """Where each factor landed inside the free-product presentation."""

    factor_ranks: Tuple[int, ...]
    offsets: Tuple[int, ...]
    new_generators: Tuple[int, ...] = field(default_factory=tuple)
    distinguished: int = 0

    def to_dict(self) -> dict:
        return {
            "distinguished": self.distinguished,
            "factor_ranks": list(self.factor_ranks),
            "new_generators": list(self.new_generators),
            "offsets": list(self.offsets),
        }


def free_product_with_z2(factors: Sequence[TwistedGroup]) -> Tuple[TwistedGroup, EmbeddingReport]:
    """Present the free product of the F_i ⋊ Z2 as a single F ⋊_θ Z2.

    Factor generators come first, in factor order, followed by one new letter
    per factor after the first. The first factor keeps its θ; a generator g of
    factor j >= 1 goes to x_j^-1 · θ_j(g) · x_j, and x_j itself is inverted.
    """
    factors = list(factors)
    if not factors:
        raise EmptyFactorListError("Free product needs at least one factor", error_code="EMPTY")
    ranks = tuple(factor.rank for factor in factors)
    offsets = tuple(sum(ranks[:i]) for i in range(len(ranks)))
    if len(factors) == 1:
        return factors[0], EmbeddingReport(ranks, offsets)

    base = sum(ranks)
    rank = base + len(factors) - 1
    new_generators = tuple(base + j for j in range(1, len(factors)))

    images: List[Word] = []
    for j, factor in enumerate(factors):
        for image in factor.theta.images:
            moved = reindex(image, offsets[j], rank)
            if j:
                x_j = Word.generator(rank, new_generators[j - 1])
                moved = multiply(multiply(invert(x_j), moved), x_j)
            images.append(moved)
    images.extend(Word.generator(rank, index, -1) for index in new_generators)

    group = TwistedGroup(rank, FreeAutomorphism(rank, tuple(images)))
    logger.debug("Free product of %d factors has rank %d", len(factors), rank)
    return group, EmbeddingReport(ranks, offsets, new_generators)


def combine_orientations(report: EmbeddingReport, phis: Sequence[OrientationHom]) -> OrientationHom:
    """Orientation on the free product: factor values kept, new letters get 0.

    Each new letter is the image of a product of two torsion elements, both of
    which reverse orientation.
    """
    AlgebraValidator.validate_list_length(phis, len(report.factor_ranks),
                                          len(report.factor_ranks), "phis")
    values: List[int] = []
    for rank, phi in zip(report.factor_ranks, phis):
        raise_if_rank_mismatch(rank, phi.rank, "factor orientation")
        values.extend(phi.values)
    values.extend(0 for _ in report.new_generators)
    return OrientationHom(tuple(values))


# Dyer-Scott decompositions


@dataclass(frozen=True)
class LambdaBlock:
    """x_λ with θ(x_λ) = x_λ^-1 and conjugated letters y_j ↦ x_λ^-1 y_j x_λ."""
    pivot: int
    conjugated: Tuple[int, ...] = ()


@dataclass(frozen=True)
class DyerScottClaim:
    fixed: Tuple[int, ...] = ()
    swaps: Tuple[Tuple[int, int], ...] = ()
    lambdas: Tuple[LambdaBlock, ...] = ()

    def indices(self) -> List[int]:
        out = list(self.fixed)
        for pair in self.swaps:
            out.extend(pair)
        for block in self.lambdas:
            out.append(block.pivot)
            out.extend(block.conjugated)
        return out


def _check_partition(G: TwistedGroup, claim: DyerScottClaim) -> None:
    indices = claim.indices()
    for pair in claim.swaps:
        if len(pair) != 2:
            raise MalformedClaimError(
                f"Swap entry {pair} is not a pair", error_code="BAD_SWAP", context={"pair": pair}
            )
    if sorted(indices) != list(range(1, G.rank + 1)):
        raise MalformedClaimError(
            f"Claim does not partition generators 1..{G.rank}",
            error_code="NOT_A_PARTITION", context={"indices": sorted(indices)}
        )


def verify_dyer_scott(G: TwistedGroup, claim: DyerScottClaim) -> bool:
    """True iff θ acts on the claimed free factors exactly as the claim says."""
    _check_partition(G, claim)
    x = generators(G.rank)
    theta = G.theta

    for i in claim.fixed:
        if theta.image_of(i) != x[i - 1]:
            return False
    for a, b in claim.swaps:
        if theta.image_of(a) != x[b - 1] or theta.image_of(b) != x[a - 1]:
            return False
    for block in claim.lambdas:
        pivot = x[block.pivot - 1]
        if theta.image_of(block.pivot) != invert(pivot):
            return False
        for j in block.conjugated:
            if theta.image_of(j) != multiply(multiply(invert(pivot), x[j - 1]), pivot):
                return False
    return True


def standard_involution(k: int, r: int, s: int) -> FreeAutomorphism:
    """Generator-level θ with ρ(θ) = A(k, r, s): swap pairs, fixed letters, inverted letters."""
    rank = 2 * k + r + s
    images: List[Word] = []
    for i in range(k):
        images.append(Word.generator(rank, 2 * i + 2))
        images.append(Word.generator(rank, 2 * i + 1))
    images.extend(Word.generator(rank, 2 * k + i) for i in range(1, r + 1))
    images.extend(Word.generator(rank, 2 * k + r + i, -1) for i in range(1, s + 1))
    return FreeAutomorphism(rank, tuple(images))


def standard_claim(k: int, r: int, s: int) -> DyerScottClaim:
    return DyerScottClaim(
        fixed=tuple(range(2 * k + 1, 2 * k + r + 1)),
        swaps=tuple((2 * i + 1, 2 * i + 2) for i in range(k)),
        lambdas=tuple(LambdaBlock(2 * k + r + i) for i in range(1, s + 1)),
    )
