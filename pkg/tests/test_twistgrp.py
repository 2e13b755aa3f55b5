import itertools

import pytest

from sphere_actions.algebra.freeword import (
    FreeAutomorphism, Word, abelianization_matrix, apply_aut, invert, is_involution,
    multiply, random_word
)
from sphere_actions.algebra.intlat import CanonicalInvolution, IntMatrix
from sphere_actions.algebra.twistgrp import (
    DyerScottClaim, LambdaBlock, OrientationHom, SemidirectElement, TwistedGroup,
    combine_orientations, evaluate_orientation, free_product_with_z2, has_order_two,
    orientation_violations, projection_orientation, require_orientation, sd_invert,
    sd_multiply, standard_claim, standard_involution, twisted_conjugate, validate_orientation,
    verify_dyer_scott
)
from sphere_actions.core.exceptions import (
    EmptyFactorListError, IdentityElementError, InvalidOrientationError, MalformedClaimError,
    NotAnInvolutionError, RankMismatchError
)

from conftest import make_group, w


def test_non_involution_is_rejected():
    with pytest.raises(NotAnInvolutionError):
        make_group(2, ["x1 x2", "x2"])


def test_rank_mismatch_is_rejected():
    with pytest.raises(RankMismatchError):
        TwistedGroup(2, FreeAutomorphism.identity(1))


def test_multiplication_twists_the_right_factor(conjugating):
    G = conjugating
    a = SemidirectElement(w("x2", 2), 1)
    b = SemidirectElement(w("x2", 2), 0)
    assert sd_multiply(G, a, b) == SemidirectElement(w("x2 x1^-1 x2 x1", 2), 1)
    assert sd_multiply(G, b, a) == SemidirectElement(w("x2 x2", 2), 1)


def test_group_axioms_on_random_elements(conjugating, rng):
    G = conjugating
    e = G.identity()
    for _ in range(100):
        a, b, c = (SemidirectElement(random_word(2, 6, rng), int(rng.integers(0, 2)))
                   for _ in range(3))
        assert sd_multiply(G, sd_multiply(G, a, b), c) == sd_multiply(G, a, sd_multiply(G, b, c))
        assert sd_multiply(G, a, e) == a == sd_multiply(G, e, a)
        assert sd_multiply(G, a, sd_invert(G, a)).is_identity
        assert sd_multiply(G, sd_invert(G, a), a).is_identity


def test_has_order_two(inversion):
    G = inversion
    assert has_order_two(G, SemidirectElement(w("x1", 1), 1))
    assert has_order_two(G, SemidirectElement(Word.identity(1), 1))
    assert not has_order_two(G, SemidirectElement(w("x1", 1), 0))
    with pytest.raises(IdentityElementError):
        has_order_two(G, G.identity())


def test_twisted_conjugate_preserves_inverted_elements(conjugating, rng):
    G = conjugating
    g = w("x1", 2)
    assert apply_aut(G.theta, g) == invert(g)
    for _ in range(30):
        h = random_word(2, 5, rng)
        moved = twisted_conjugate(G, h, g)
        assert apply_aut(G.theta, moved) == invert(moved)


def test_orientation_validation(swap):
    assert validate_orientation(swap, OrientationHom((1, 1)))
    assert validate_orientation(swap, OrientationHom((0, 0)))
    assert orientation_violations(swap, OrientationHom((1, 0))) == [1, 2]
    with pytest.raises(InvalidOrientationError) as excinfo:
        require_orientation(swap, OrientationHom((1, 0)))
    assert excinfo.value.context["violations"] == [1, 2]
    assert excinfo.value.location == "$.phi[0]"


def test_orientation_rank_must_match(swap):
    with pytest.raises(RankMismatchError):
        orientation_violations(swap, OrientationHom((1,)))


def test_evaluate_orientation(inversion):
    phi = OrientationHom((1,))
    assert evaluate_orientation(inversion, phi, SemidirectElement(w("x1", 1), 0)) == 1
    assert evaluate_orientation(inversion, phi, SemidirectElement(w("x1", 1), 1)) == 0
    assert evaluate_orientation(inversion, phi, SemidirectElement(Word.identity(1), 1)) == 1


def test_evaluate_orientation_is_a_homomorphism(conjugating, rng):
    G = conjugating
    phi = OrientationHom((0, 1))
    for _ in range(50):
        a, b = (SemidirectElement(random_word(2, 6, rng), int(rng.integers(0, 2)))
                for _ in range(2))
        total = evaluate_orientation(G, phi, a) + evaluate_orientation(G, phi, b)
        assert evaluate_orientation(G, phi, sd_multiply(G, a, b)) == total % 2


def test_projection_orientation_is_valid(conjugating):
    phi = projection_orientation(conjugating)
    assert phi.values == (0, 0)
    assert validate_orientation(conjugating, phi)


def test_free_product_of_two_z2_is_infinite_dihedral():
    z2 = TwistedGroup(0, FreeAutomorphism.identity(0))
    group, report = free_product_with_z2([z2, z2])
    assert group.rank == 1
    assert group.theta.images == (w("x1^-1", 1),)
    assert report.new_generators == (1,)


def test_free_product_conjugates_later_factors():
    z2 = TwistedGroup(0, FreeAutomorphism.identity(0))
    fixed = make_group(1, ["x1"])
    group, report = free_product_with_z2([z2, fixed, z2])
    assert group.rank == 3
    assert report.offsets == (0, 0, 1)
    assert report.new_generators == (2, 3)
    assert [str(image) for image in group.theta.images] == ["x2^-1 x1 x2", "x2^-1", "x3^-1"]
    assert is_involution(group.theta)


def test_free_product_single_factor_is_unchanged(swap):
    group, report = free_product_with_z2([swap])
    assert group is swap
    assert report.new_generators == ()


def test_free_product_requires_factors():
    with pytest.raises(EmptyFactorListError):
        free_product_with_z2([])


@pytest.mark.parametrize("shapes", [
    [(0, 0, 1), (1, 0, 0)],
    [(0, 1, 1), (0, 0, 0), (0, 2, 0)],
    [(1, 0, 0), (1, 0, 0)],
])
def test_free_product_abelianization_is_block_diagonal(shapes):
    factors = [TwistedGroup.from_theta(standard_involution(*s)) for s in shapes]
    group, _ = free_product_with_z2(factors)
    blocks = [f.rho for f in factors] + [-IntMatrix.identity(len(factors) - 1)]
    assert abelianization_matrix(group.theta) == IntMatrix.block_diagonal(blocks)


def test_combine_orientations_gives_new_generators_zero(swap, inversion):
    group, report = free_product_with_z2([swap, inversion])
    phi = combine_orientations(report, [OrientationHom((1, 1)), OrientationHom((0,))])
    assert phi.values == (1, 1, 0, 0)
    assert validate_orientation(group, phi)


def test_combine_orientations_checks_factor_ranks(swap, inversion):
    _, report = free_product_with_z2([swap, inversion])
    with pytest.raises(RankMismatchError):
        combine_orientations(report, [OrientationHom((1,)), OrientationHom((0, 0))])


@pytest.mark.parametrize("k, r, s", [(1, 0, 0), (0, 2, 1), (1, 1, 1), (2, 0, 0)])
def test_standard_involution_realizes_block_form(k, r, s):
    theta = standard_involution(k, r, s)
    assert is_involution(theta)
    assert abelianization_matrix(theta) == CanonicalInvolution(k, r, s).matrix()
    assert verify_dyer_scott(TwistedGroup.from_theta(theta), standard_claim(k, r, s))


def test_dyer_scott_with_conjugated_letters(conjugating):
    claim = DyerScottClaim(lambdas=(LambdaBlock(1, (2,)),))
    assert verify_dyer_scott(conjugating, claim)
    assert not verify_dyer_scott(conjugating, DyerScottClaim(lambdas=(LambdaBlock(2, (1,)),)))
    assert not verify_dyer_scott(conjugating, DyerScottClaim(fixed=(2,), lambdas=(LambdaBlock(1),)))


def test_dyer_scott_swap(swap):
    assert verify_dyer_scott(swap, DyerScottClaim(swaps=((1, 2),)))
    assert not verify_dyer_scott(swap, DyerScottClaim(fixed=(1, 2)))


@pytest.mark.parametrize("claim", [
    DyerScottClaim(fixed=(1,)),
    DyerScottClaim(fixed=(1, 1)),
    DyerScottClaim(fixed=(1, 2, 3)),
])
def test_dyer_scott_rejects_non_partitions(swap, claim):
    with pytest.raises(MalformedClaimError):
        verify_dyer_scott(swap, claim)


def test_all_orientations_of_standard_forms_are_enumerated():
    G = TwistedGroup.from_theta(standard_involution(1, 1, 0))
    valid = [bits for bits in itertools.product((0, 1), repeat=3)
             if validate_orientation(G, OrientationHom(bits))]
    assert valid == [(0, 0, 0), (0, 0, 1), (1, 1, 0), (1, 1, 1)]


def test_flip_elements_have_order_two_exactly_when_g_theta_g_cancels(conjugating, rng):
    G = conjugating
    samples = [random_word(2, 6, rng) for _ in range(150)]
    samples += [twisted_conjugate(G, random_word(2, 4, rng), w("x1", 2)) for _ in range(50)]
    hits = 0
    for g in samples:
        cancels = multiply(g, apply_aut(G.theta, g)).is_identity
        assert has_order_two(G, SemidirectElement(g, 1)) == cancels
        hits += cancels
    assert hits >= 50
