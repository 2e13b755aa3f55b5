"""Symbolic check of the explicit action used to realize a pair (θ, φ).

Points are pairs (t, s): t in F stands for a translate of a fixed vertex in
the universal cover and s = ±1 for the sphere coordinate. Elements act by

    (g, 0) ∘ (t, s) = (θ(g) t,       sgn(g) s)
    (g, 1) ∘ (t, s) = (θ(g) θ(t),  -sgn(g) s)

with sgn(g) = (-1)^φ(g, 0).
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from ..algebra.freeword import Word, apply_aut, invert, multiply, random_word
from ..algebra.twistgrp import (
    OrientationHom, SemidirectElement, TwistedGroup, require_orientation, sd_multiply
)
from ..core.constants import DEFAULT_ACTION_SAMPLES, DEFAULT_SEED, DEFAULT_WORD_LENGTH
from ..core.exceptions import RangeValidationError
from .realize import find_witness, is_witness

logger = logging.getLogger(__name__)

Point = Tuple[Word, int]


@dataclass
class ActionModelConfig:
    samples: int = DEFAULT_ACTION_SAMPLES
    max_length: int = DEFAULT_WORD_LENGTH
    seed: int = DEFAULT_SEED

    def validate(self) -> None:
        if self.samples <= 0:
            raise RangeValidationError("samples must be positive", error_code="BAD_SAMPLES",
                                       context={"samples": self.samples})
        if self.max_length < 1:
            raise RangeValidationError("max_length must be at least 1",
                                       error_code="BAD_MAX_LENGTH",
                                       context={"max_length": self.max_length})


@dataclass
class ActionModelReport:
    samples: int
    seed: int
    max_length: int
    axiom_failures: List[str] = field(default_factory=list)
    freeness_failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.axiom_failures and not self.freeness_failures

    def to_dict(self) -> dict:
        return {
            "axiom_failures": list(self.axiom_failures),
            "freeness_failures": list(self.freeness_failures),
            "max_length": self.max_length,
            "passed": self.passed,
            "samples": self.samples,
            "seed": self.seed,
        }


def act(G: TwistedGroup, phi: OrientationHom, a: SemidirectElement, point: Point) -> Point:
    t, s = point
    sign = -1 if phi.of_word(a.word) else 1
    moved = apply_aut(G.theta, a.word)
    if a.bit == 0:
        return multiply(moved, t), sign * s
    return multiply(moved, apply_aut(G.theta, t)), -sign * s


_CASES = {(0, 0): "(0,0)", (1, 0): "(i)", (0, 1): "(ii)", (1, 1): "(iii)"}


def _label(a: SemidirectElement) -> str:
    return f"({a.word or 'e'},{'1_2' if a.bit else '0'})"


def verify_action_model(G: TwistedGroup, phi: OrientationHom,
                        config: Optional[ActionModelConfig] = None) -> ActionModelReport:
    """Random checks of the composition law, the identity and freeness.

    Freeness is certified by the witness system g θ(g) = e, φ(g) = 1, not by
    observed fixed points: with φ θ-invariant, the only (g, 1) that fixes t in F
    is g = θ(t) t^-1, and it has φ(g) = 0, so it flips the sphere coordinate.
    Sampled g solving the system are reported, and so is the first solution of
    the exhaustive short-word search. A sampled fixed point outside the system
    would mean the model itself is wrong and is reported as an axiom failure.
    """
    config = config or ActionModelConfig()
    config.validate()
    require_orientation(G, phi)
    rng = np.random.default_rng(config.seed)
    report = ActionModelReport(config.samples, config.seed, config.max_length)
    identity = G.identity()

    def draw() -> Word:
        return random_word(G.rank, config.max_length, rng)

    for _ in range(config.samples):
        g, h, t = draw(), draw(), draw()
        point = (t, int(rng.choice((1, -1))))

        if act(G, phi, identity, point) != point:
            report.axiom_failures.append(f"identity moves ({t or 'e'},{point[1]})")

        for (e1, e2), case in _CASES.items():
            a, b = SemidirectElement(g, e1), SemidirectElement(h, e2)
            left = act(G, phi, sd_multiply(G, a, b), point)
            right = act(G, phi, a, act(G, phi, b, point))
            if left != right:
                report.axiom_failures.append(f"case {case}: {_label(a)}·{_label(b)}")

        flip = SemidirectElement(g, 1)
        if act(G, phi, flip, point) == point and not is_witness(G, phi, g):
            report.axiom_failures.append(f"fixed point of {_label(flip)} outside the system")
        stabilizer = SemidirectElement(multiply(apply_aut(G.theta, t), invert(t)), 1)
        if act(G, phi, stabilizer, point) != (t, -point[1]):
            report.axiom_failures.append(
                f"{_label(stabilizer)} does not flip ({t or 'e'},{point[1]})")
        if is_witness(G, phi, g):
            report.freeness_failures.append(_label(flip))

    witness = find_witness(G, phi, config.max_length)
    if witness is not None:
        report.freeness_failures.append(_label(SemidirectElement(witness, 1)))
    report.freeness_failures = list(dict.fromkeys(report.freeness_failures))
    report.axiom_failures = list(dict.fromkeys(report.axiom_failures))

    if report.passed:
        logger.info("Action model passed %d samples (seed %d)", config.samples, config.seed)
    else:
        logger.info("Action model: %d axiom failures, %d freeness failures",
                    len(report.axiom_failures), len(report.freeness_failures))
    return report
