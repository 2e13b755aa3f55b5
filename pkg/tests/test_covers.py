import json
from pathlib import Path

import pytest

from sphere_actions.core.enums import GroupFamily, ManifoldLabel, VCShape
from sphere_actions.core.exceptions import (
    IndexBoundError, InfiniteIndexError, InvalidInputError, NotNormalError,
    UnsupportedCoverError
)
from sphere_actions.deciders.covers import (
    AmbientGroupElement, FiniteGroupLabel, SubgroupKey, enumerate_covers,
    free_involution_rows, identify_finite_quotient, is_normal, parametrized_subgroups,
    search_subgroups, subgroup_key
)

GOLDEN = Path(__file__).parent / "data" / "covers_golden.json"


def _rows(cover, max_index):
    return [[str(row.group), row.base.value, row.index]
            for row in enumerate_covers(cover, max_index)]


def _e(t, flip, shape):
    return AmbientGroupElement(t, flip, shape)


def test_dihedral_multiplication():
    D = VCShape.Z_SEMI_Z2
    t, s = _e(1, 0, D), _e(0, 1, D)
    assert s * t == _e(-1, 1, D)
    assert t * s == _e(1, 1, D)
    assert (s * t * s) == t.inverse()
    assert (s * s) == _e(0, 0, D)


def test_z_times_z2_is_abelian():
    P = VCShape.Z_X_Z2
    a, b = _e(3, 1, P), _e(-2, 1, P)
    assert a * b == b * a


def test_flip_is_rejected_in_z():
    with pytest.raises(InvalidInputError):
        _e(0, 1, VCShape.Z)


@pytest.mark.parametrize("shape, generators, expected", [
    (VCShape.Z, [(5, 0)], FiniteGroupLabel(GroupFamily.CYCLIC, 5)),
    (VCShape.Z_X_Z2, [(3, 0)], FiniteGroupLabel(GroupFamily.CYCLIC, 6)),
    (VCShape.Z_X_Z2, [(4, 0)], FiniteGroupLabel(GroupFamily.CYCLIC_TIMES_Z2, 4)),
    (VCShape.Z_X_Z2, [(2, 0)], FiniteGroupLabel(GroupFamily.CYCLIC_TIMES_Z2, 2)),
    (VCShape.Z_X_Z2, [(1, 1)], FiniteGroupLabel(GroupFamily.CYCLIC, 2)),
    (VCShape.Z_SEMI_Z2, [(3, 0)], FiniteGroupLabel(GroupFamily.DIHEDRAL, 3)),
    (VCShape.Z_SEMI_Z2, [(2, 0)], FiniteGroupLabel(GroupFamily.CYCLIC_TIMES_Z2, 2)),
    (VCShape.Z_SEMI_Z2, [(1, 0)], FiniteGroupLabel(GroupFamily.CYCLIC, 2)),
    (VCShape.Z_SEMI_Z2, [(2, 0), (1, 1)], FiniteGroupLabel(GroupFamily.CYCLIC, 2)),
])
def test_identify_finite_quotient(shape, generators, expected):
    assert identify_finite_quotient(shape, [_e(t, f, shape) for t, f in generators]) == expected


def test_infinite_index_is_rejected():
    with pytest.raises(InfiniteIndexError):
        subgroup_key(VCShape.Z_SEMI_Z2, [_e(0, 1, VCShape.Z_SEMI_Z2)])


def test_non_normal_subgroup_is_rejected():
    D = VCShape.Z_SEMI_Z2
    key = subgroup_key(D, [_e(3, 0, D), _e(0, 1, D)])
    assert key == SubgroupKey(D, 3, 0)
    assert not is_normal(key)
    with pytest.raises(NotNormalError):
        identify_finite_quotient(D, key.generators())


def test_normalization():
    assert FiniteGroupLabel(GroupFamily.CYCLIC_TIMES_Z2, 5).normalized() == \
        FiniteGroupLabel(GroupFamily.CYCLIC, 10)
    assert FiniteGroupLabel(GroupFamily.DIHEDRAL, 1).normalized() == \
        FiniteGroupLabel(GroupFamily.CYCLIC, 2)
    assert FiniteGroupLabel(GroupFamily.DIHEDRAL, 2).normalized() == \
        FiniteGroupLabel(GroupFamily.CYCLIC_TIMES_Z2, 2)
    assert FiniteGroupLabel(GroupFamily.DIHEDRAL, 4).normalized().family is GroupFamily.DIHEDRAL


@pytest.mark.parametrize("cover", ["S1xS2n", "S1twistS2n", "S1xRP2n", "RPsharpRP"])
def test_covering_table_matches_golden(cover):
    golden = json.loads(GOLDEN.read_text())
    assert golden["max_index"] == 12
    assert _rows(ManifoldLabel(cover), 12) == golden["covers"][cover]


def test_rp_sharp_rp_is_only_doubly_covered():
    rows = enumerate_covers(ManifoldLabel.RP_SHARP_RP, 8)
    assert [(str(r.group), r.base, r.index) for r in rows] == \
        [("Cyclic(2)", ManifoldLabel.RP_SHARP_RP, 2)]


def test_no_cyclic_of_order_divisible_by_four_gives_s1_x_rp2n():
    rows = enumerate_covers(ManifoldLabel.S1_X_S2N, 48)
    bad = [r for r in rows if r.base is ManifoldLabel.S1_X_RP2N
           and r.group.family is GroupFamily.CYCLIC and r.group.k % 4 == 0]
    assert bad == []
    assert any(r.base is ManifoldLabel.S1_X_RP2N and str(r.group) == "CyclicTimesZ2(4)"
               for r in rows)


def test_rows_are_sorted_and_orders_match_indices():
    rows = enumerate_covers(ManifoldLabel.S1_X_S2N, 48)
    assert rows == sorted(rows, key=lambda r: r.sort_key())
    assert all(r.group.order == r.index for r in rows)


def test_cover_bounds():
    with pytest.raises(UnsupportedCoverError):
        enumerate_covers(ManifoldLabel.RP2N, 8)
    with pytest.raises(IndexBoundError):
        enumerate_covers(ManifoldLabel.S1_X_S2N, 49)
    for bound in (0, -3):
        with pytest.raises(IndexBoundError):
            enumerate_covers(ManifoldLabel.S1_X_S2N, bound)
    assert enumerate_covers(ManifoldLabel.S1_X_S2N, 1) == []


def test_free_involutions():
    rows = free_involution_rows()
    assert {r.base for r in rows[ManifoldLabel.S1_X_S2N]} == {
        ManifoldLabel.S1_X_S2N, ManifoldLabel.S1_TWIST_S2N, ManifoldLabel.S1_X_RP2N,
        ManifoldLabel.RP_SHARP_RP,
    }
    assert [r.base for r in rows[ManifoldLabel.S1_TWIST_S2N]] == [ManifoldLabel.S1_X_RP2N]
    assert [r.base for r in rows[ManifoldLabel.S1_X_RP2N]] == [ManifoldLabel.S1_X_RP2N]
    assert [r.base for r in rows[ManifoldLabel.RP_SHARP_RP]] == [ManifoldLabel.RP_SHARP_RP]


@pytest.mark.parametrize("shape", [VCShape.Z, VCShape.Z_X_Z2, VCShape.Z_SEMI_Z2])
def test_parametrization_matches_closure_search(shape):
    max_index = 6
    closed_form = {k for k in parametrized_subgroups(shape, max_index)}
    searched = search_subgroups(shape, max_index, box=6)
    assert closed_form == searched


def test_subgroup_key_matches_parametrization():
    P = VCShape.Z_X_Z2
    assert subgroup_key(P, [_e(4, 0, P), _e(2, 1, P)]) == SubgroupKey(P, 4, 2)
    assert subgroup_key(P, [_e(3, 1, P)]) == SubgroupKey(P, 6, 3)
    assert subgroup_key(P, [_e(3, 1, P)]).index == 6


def _redundant_generators(key, rng):
    """The generators of N plus random products of them and multiples of (d, 0)."""
    base = key.generators()
    pool = base + [g.inverse() for g in base]
    extra = []
    for _ in range(int(rng.integers(1, 5))):
        product = pool[int(rng.integers(0, len(pool)))]
        for _ in range(int(rng.integers(0, 4))):
            product = product * pool[int(rng.integers(0, len(pool)))]
        extra.append(product)
        extra.append(_e(key.d * int(rng.integers(-3, 4)), 0, key.shape))
    generators = base + extra
    return [generators[i] for i in rng.permutation(len(generators))]


@pytest.mark.parametrize("shape", [VCShape.Z, VCShape.Z_X_Z2, VCShape.Z_SEMI_Z2])
def test_quotient_ignores_redundant_generators(shape, rng):
    for key in parametrized_subgroups(shape, 12):
        if not is_normal(key):
            continue
        expected = identify_finite_quotient(shape, key.generators())
        for _ in range(5):
            generators = _redundant_generators(key, rng)
            assert subgroup_key(shape, generators) == key
            assert identify_finite_quotient(shape, generators) == expected
