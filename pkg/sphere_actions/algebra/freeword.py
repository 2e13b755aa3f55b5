"""Exact arithmetic in finite-rank free groups.

Words are kept freely reduced at all times, so equality of group elements is
equality of letter sequences. Generators are 1-indexed (x1, ..., xm) and every
value carries its rank; binary operations refuse to mix ranks.
"""

from dataclasses import dataclass
from typing import Iterable, List, NamedTuple, Sequence, Tuple

import numpy as np

from ..core.exceptions import raise_if_invalid_generator, raise_if_rank_mismatch
from ..utils.validation import AlgebraValidator
from .intlat import IntMatrix


class Letter(NamedTuple):
    """A generator x_i (sign +1) or its inverse (sign -1)."""
    generator_index: int
    sign: int

    def inverse(self) -> "Letter":
        return Letter(self.generator_index, -self.sign)

    @property
    def order_key(self) -> Tuple[int, int]:
        """Enumeration order: by index, the generator before its inverse."""
        return (self.generator_index, 0 if self.sign > 0 else 1)

    def __str__(self) -> str:
        if self.sign > 0:
            return f"x{self.generator_index}"
        return f"x{self.generator_index}^-1"


def _free_reduce(letters: Iterable[Letter]) -> Tuple[Letter, ...]:
    stack: List[Letter] = []
    for letter in letters:
        if stack and stack[-1].generator_index == letter.generator_index \
                and stack[-1].sign == -letter.sign:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """A freely reduced word in F_rank."""

    rank: int
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        AlgebraValidator.validate_rank(self.rank)
        letters = tuple(Letter(*letter) for letter in self.letters)
        for letter in letters:
            raise_if_invalid_generator(letter.generator_index, self.rank, "word")
            AlgebraValidator.validate_sign(letter.sign)
        object.__setattr__(self, "letters", _free_reduce(letters))

    @classmethod
    def identity(cls, rank: int) -> "Word":
        return cls(rank, ())

    @classmethod
    def generator(cls, rank: int, index: int, sign: int = 1) -> "Word":
        return cls(rank, (Letter(index, sign),))

    @classmethod
    def from_codes(cls, rank: int, codes: Iterable[int]) -> "Word":
        """Signed-int letters: +i is x_i, -i is x_i^-1."""
        return cls(rank, tuple(Letter(abs(c), 1 if c > 0 else -1) for c in codes))

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __str__(self) -> str:
        return " ".join(str(letter) for letter in self.letters)

    def abelianization(self) -> Tuple[int, ...]:
        """Exponent-sum vector (|g|_{x_1}, ..., |g|_{x_m})."""
        sums = [0] * self.rank
        for letter in self.letters:
            sums[letter.generator_index - 1] += letter.sign
        return tuple(sums)


def reduce(letters: Sequence[Letter], rank: int) -> Word:
    """Free reduction of a letter sequence into a Word of the given rank."""
    return Word(rank, tuple(letters))


def multiply(u: Word, v: Word) -> Word:
    raise_if_rank_mismatch(u.rank, v.rank, "multiply")
    return Word(u.rank, u.letters + v.letters)


def invert(u: Word) -> Word:
    return Word(u.rank, tuple(letter.inverse() for letter in reversed(u.letters)))


def power(u: Word, exponent: int) -> Word:
    if exponent < 0:
        return power(invert(u), -exponent)
    return Word(u.rank, u.letters * exponent)


def exponent_sum(g: Word, i: int) -> int:
    """Signed count of occurrences of x_i in g."""
    raise_if_invalid_generator(i, g.rank, "exponent_sum")
    return sum(letter.sign for letter in g.letters if letter.generator_index == i)


def random_word(rank: int, max_length: int, rng: np.random.Generator) -> Word:
    """Uniform length in [0, max_length], then uniformly random letters; reduced afterwards."""
    if rank == 0:
        return Word.identity(0)
    length = int(rng.integers(0, max_length + 1))
    indices = rng.integers(1, rank + 1, size=length)
    signs = rng.choice((1, -1), size=length)
    return Word(rank, tuple(Letter(int(i), int(s)) for i, s in zip(indices, signs)))


@dataclass(frozen=True)
class FreeAutomorphism:
    """Endomorphism of F_rank given by the images of x_1, ..., x_rank.

    The involution property is checked on demand by is_involution, not here.
    """

    rank: int
    images: Tuple[Word, ...]

    def __post_init__(self):
        AlgebraValidator.validate_rank(self.rank)
        images = tuple(self.images)
        AlgebraValidator.validate_list_length(images, self.rank, self.rank, "images")
        for image in images:
            raise_if_rank_mismatch(self.rank, image.rank, "automorphism image")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, rank: int) -> "FreeAutomorphism":
        return cls(rank, tuple(Word.generator(rank, i) for i in range(1, rank + 1)))

    def image_of(self, i: int) -> Word:
        raise_if_invalid_generator(i, self.rank, "image_of")
        return self.images[i - 1]

    @property
    def max_image_length(self) -> int:
        return max((len(image) for image in self.images), default=0)

    def __call__(self, g: Word) -> Word:
        return apply_aut(self, g)


def _letter_image(theta: FreeAutomorphism, letter: Letter) -> Tuple[Letter, ...]:
    image = theta.images[letter.generator_index - 1].letters
    if letter.sign > 0:
        return image
    return tuple(l.inverse() for l in reversed(image))


def apply_aut(theta: FreeAutomorphism, g: Word) -> Word:
    raise_if_rank_mismatch(theta.rank, g.rank, "apply_aut")
    letters: List[Letter] = []
    for letter in g.letters:
        letters.extend(_letter_image(theta, letter))
    return Word(theta.rank, tuple(letters))


def compose(theta: FreeAutomorphism, theta_prime: FreeAutomorphism) -> FreeAutomorphism:
    """theta ∘ theta_prime: apply theta_prime first."""
    raise_if_rank_mismatch(theta.rank, theta_prime.rank, "compose")
    return FreeAutomorphism(
        theta.rank, tuple(apply_aut(theta, image) for image in theta_prime.images)
    )


def is_involution(theta: FreeAutomorphism) -> bool:
    square = compose(theta, theta)
    return all(
        square.images[i - 1] == Word.generator(theta.rank, i)
        for i in range(1, theta.rank + 1)
    )


def abelianization_matrix(theta: FreeAutomorphism) -> IntMatrix:
    """rho(theta): entry (i, j) is the x_i-exponent of theta(x_j)."""
    columns = [image.abelianization() for image in theta.images]
    return IntMatrix.from_columns(columns, theta.rank)


def reindex(g: Word, offset: int, rank: int) -> Word:
    """Shift generator indices by offset into a free group of larger rank."""
    return Word(rank, tuple(Letter(l.generator_index + offset, l.sign) for l in g.letters))


def generators(rank: int) -> List[Word]:
    return [Word.generator(rank, i) for i in range(1, rank + 1)]


def ordered_letters(rank: int) -> List[Letter]:
    """All 2·rank letters in enumeration order."""
    return sorted(
        (Letter(i, s) for i in range(1, rank + 1) for s in (1, -1)),
        key=lambda letter: letter.order_key,
    )

