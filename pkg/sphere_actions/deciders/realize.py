"""Realizability deciders for pairs (θ, φ).

A pair is unrealizable exactly when some g in F satisfies θ(g) = g^-1 with
φ(g, 0) = 1: then (g, 1) is an orientation-preserving element of order two.
Such a g abelianizes into ker(ρ(θ) + I), so φ vanishing on that kernel rules
every witness out. When it does not vanish, a witness is searched for and
reported; a negative verdict always carries one.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from ..algebra.freeword import Word, apply_aut, invert, ordered_letters
from ..algebra.intlat import IntMatrix, LatticeBasis, kernel_lattice, match_canonical_form
from ..algebra.twistgrp import OrientationHom, TwistedGroup, require_orientation
from ..core.constants import DEFAULT_WITNESS_LENGTH, WITNESS_LENGTH_CAP, WITNESS_WORD_BUDGET
from ..core.enums import VerdictKind
from ..core.exceptions import (
    NotCanonicalError, RangeValidationError, WitnessError
)

logger = logging.getLogger(__name__)


@dataclass
class WitnessSearchConfig:
    """Bounds for the witness search behind a negative verdict."""

    max_length: int = WITNESS_LENGTH_CAP
    word_budget: Optional[int] = WITNESS_WORD_BUDGET

    def validate(self) -> None:
        if self.max_length < 1:
            raise RangeValidationError(
                "max_length must be at least 1", error_code="BAD_MAX_LENGTH",
                context={"max_length": self.max_length}
            )
        if self.word_budget is not None and self.word_budget <= 0:
            raise RangeValidationError(
                "word_budget must be positive", error_code="BAD_BUDGET",
                context={"word_budget": self.word_budget}
            )


def is_witness(G: TwistedGroup, phi: OrientationHom, g: Word) -> bool:
    """θ(g) = g^-1 and φ(g, 0) = 1."""
    return apply_aut(G.theta, g) == invert(g) and phi.of_word(g) == 1


@dataclass(frozen=True)
class Verdict:
    """Realizable, NotRealizable(witness) or Unknown(budget)."""

    kind: VerdictKind
    witness: Optional[Word] = None
    kernel_basis: Tuple[Tuple[int, ...], ...] = ()
    budget: int = 0

    @classmethod
    def realizable(cls, kernel: Optional[LatticeBasis] = None, budget: int = 0) -> "Verdict":
        return cls(VerdictKind.REALIZABLE, None, kernel.vectors if kernel else (), budget)

    @classmethod
    def not_realizable(cls, G: TwistedGroup, phi: OrientationHom, witness: Word,
                       kernel: Optional[LatticeBasis] = None, budget: int = 0) -> "Verdict":
        """Build a negative verdict after re-checking the witness."""
        if not is_witness(G, phi, witness):
            logger.error("Witness %s failed re-verification", witness)
            raise WitnessError(
                f"'{witness}' does not satisfy θ(g) = g^-1 with φ(g) = 1",
                error_code="BAD_WITNESS", context={"witness": str(witness)}
            )
        return cls(VerdictKind.NOT_REALIZABLE, witness, kernel.vectors if kernel else (), budget)

    @classmethod
    def unknown(cls, kernel: LatticeBasis, budget: int) -> "Verdict":
        return cls(VerdictKind.UNKNOWN, None, kernel.vectors, budget)

    @property
    def is_decided(self) -> bool:
        return self.kind is not VerdictKind.UNKNOWN

    def to_dict(self) -> dict:
        out = {
            "verdict": self.kind.value,
            "kernel_basis": [list(v) for v in self.kernel_basis],
            "budget": self.budget,
        }
        if self.witness is not None:
            out["witness"] = str(self.witness)
        return out


@dataclass
class _SearchOutcome:
    witness: Optional[Word] = None
    exhausted_length: int = 0
    words_examined: int = 0
    budget_hit: bool = False


class _WitnessSearch:
    """Depth-first enumeration of reduced words in length-lexicographic order.

    Letters are coded as signed ints (+i for x_i, -i for x_i^-1). The image
    θ(g) is kept as a reduced stack and updated letter by letter, with an undo
    log so backtracking costs the same as extending.
    """

    def __init__(self, G: TwistedGroup, phi: OrientationHom, word_budget: Optional[int]):
        self.rank = G.rank
        self.codes = [l.generator_index * l.sign for l in ordered_letters(G.rank)]
        self.images = {}
        for code in self.codes:
            image = G.theta.images[abs(code) - 1]
            letters = [l.generator_index * l.sign for l in image.letters]
            self.images[code] = letters if code > 0 else [-c for c in reversed(letters)]
        self.parity = {code: phi.values[abs(code) - 1] for code in self.codes}
        self.word_budget = word_budget
        self.examined = 0

    def run(self, min_length: int, max_length: int) -> _SearchOutcome:
        outcome = _SearchOutcome(exhausted_length=min_length - 1)
        if self.rank == 0:
            outcome.exhausted_length = max_length
            return outcome
        for length in range(min_length, max_length + 1):
            word: List[int] = []
            image: List[int] = []
            found = self._extend(word, image, 0, length)
            outcome.words_examined = self.examined
            if found is not None:
                outcome.witness = found
                return outcome
            if self._over_budget():
                outcome.budget_hit = True
                return outcome
            outcome.exhausted_length = length
            logger.debug("Witness search exhausted length %d (%d words)", length, self.examined)
        return outcome

    def _over_budget(self) -> bool:
        return self.word_budget is not None and self.examined > self.word_budget

    def _extend(self, word: List[int], image: List[int], parity: int, length: int) -> Optional[Word]:
        if len(word) == length:
            self.examined += 1
            if parity == 1 and image == [-c for c in reversed(word)]:
                return Word.from_codes(self.rank, word)
            return None
        for code in self.codes:
            if word and word[-1] == -code:
                continue
            if self._over_budget():
                return None
            undo = _push_reduced(image, self.images[code])
            word.append(code)
            found = self._extend(word, image, parity ^ self.parity[code], length)
            word.pop()
            _undo(image, undo)
            if found is not None:
                return found
        return None


def _push_reduced(stack: List[int], letters: List[int]) -> List[Tuple[bool, int]]:
    log = []
    for c in letters:
        if stack and stack[-1] == -c:
            log.append((False, stack.pop()))
        else:
            stack.append(c)
            log.append((True, c))
    return log


def _undo(stack: List[int], log: List[Tuple[bool, int]]) -> None:
    for pushed, c in reversed(log):
        if pushed:
            stack.pop()
        else:
            stack.append(c)


def find_witness(G: TwistedGroup, phi: OrientationHom, max_length: int = DEFAULT_WITNESS_LENGTH,
                 word_budget: Optional[int] = None) -> Optional[Word]:
    """First solution of θ(g) = g^-1, φ(g) = 1 of length <= max_length.

    Without a word budget the search is exhaustive, so None means no such word
    of that length exists.
    """
    if max_length < 1:
        raise RangeValidationError("max_length must be at least 1", error_code="BAD_MAX_LENGTH")
    return _WitnessSearch(G, phi, word_budget).run(1, max_length).witness


def _odd_kernel_vectors(kernel: LatticeBasis, phi: OrientationHom) -> List[Tuple[int, ...]]:
    return [v for v in kernel.vectors
            if sum(a * b for a, b in zip(v, phi.values)) % 2]


def realizable_general(G: TwistedGroup, phi: OrientationHom,
                       config: Optional[WitnessSearchConfig] = None) -> Verdict:
    """Kernel test on ker(ρ(θ) + I), backed by a witness search when it fails."""
    config = config or WitnessSearchConfig()
    config.validate()
    require_orientation(G, phi)

    kernel = kernel_lattice(G.rho + IntMatrix.identity(G.rank))
    odd = _odd_kernel_vectors(kernel, phi)
    if not odd:
        logger.info("Realizable: φ vanishes on a kernel of rank %d", kernel.dimension)
        return Verdict.realizable(kernel)

    logger.debug("φ is odd on kernel vectors %s; searching for a witness", odd)
    search = _WitnessSearch(G, phi, config.word_budget)
    cap = config.max_length
    stage = min(max(1, 2 * G.theta.max_image_length), cap)
    searched = 0
    while True:
        outcome = search.run(searched + 1, stage)
        if outcome.witness is not None:
            logger.info("Not realizable: witness %s", outcome.witness)
            return Verdict.not_realizable(G, phi, outcome.witness, kernel, stage)
        searched = outcome.exhausted_length
        if outcome.budget_hit or stage >= cap:
            break
        stage = min(2 * stage, cap)

    logger.warning("No witness up to length %d (%d words); verdict unknown",
                   searched, search.examined)
    return Verdict.unknown(kernel, searched)


def realizable_canonical(G: TwistedGroup, phi: OrientationHom) -> Verdict:
    """Fast path for θ whose abelianization matrix is literally A(k, r, s).

    φ must vanish on the -1 block. A generator x_l there with φ(x_l) = 1 is a
    witness when θ(x_l) = x_l^-1 holds as words; otherwise the general decider
    takes over.
    """
    require_orientation(G, phi)
    invariants = match_canonical_form(G.rho)
    if invariants is None:
        raise NotCanonicalError(
            f"ρ(θ) = {G.rho} is not in A(k,r,s) block form",
            error_code="NOT_CANONICAL", context={"matrix": str(G.rho)}
        )
    for l in invariants.minus_block:
        if phi.values[l - 1] != 1:
            continue
        x_l = Word.generator(G.rank, l)
        if G.theta.image_of(l) == invert(x_l):
            return Verdict.not_realizable(G, phi, x_l)
        logger.debug("x%d is not inverted at word level; using the general decider", l)
        return realizable_general(G, phi)
    return Verdict.realizable()
