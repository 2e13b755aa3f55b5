import numpy as np
import pytest

from sphere_actions.algebra.freeword import FreeAutomorphism, Word
from sphere_actions.algebra.twistgrp import TwistedGroup
from sphere_actions.core.constants import DEFAULT_SEED
from sphere_actions.utils.serialization import parse_word


@pytest.fixture
def rng():
    return np.random.default_rng(DEFAULT_SEED)


def make_group(rank, images):
    """TwistedGroup from word strings, e.g. make_group(2, ["x2", "x1"])."""
    words = tuple(parse_word(text, rank) for text in images)
    return TwistedGroup(rank, FreeAutomorphism(rank, words))


def w(text, rank):
    return parse_word(text, rank)


@pytest.fixture
def inversion():
    """F1 with x1 -> x1^-1: the infinite dihedral group."""
    return make_group(1, ["x1^-1"])


@pytest.fixture
def swap():
    return make_group(2, ["x2", "x1"])


@pytest.fixture
def conjugating():
    """x1 -> x1^-1, x2 -> x1^-1 x2 x1: a single lambda block with one conjugated letter."""
    return make_group(2, ["x1^-1", "x1^-1 x2 x1"])


@pytest.fixture
def empty_word():
    return Word.identity(0)
