"""Finite groups acting freely on the manifolds with infinite fundamental group.

A finite G acting freely on a cover M' with quotient M is the same as a
normal subgroup N of π1(M) with quotient G and N ≅ π1(M') (orientation
included). The ambient groups are Z, Z ⊕ Z2 and the infinite dihedral group.
Their elements are pairs (t, ε) with

    (t, ε) · (t', ε') = (t + σ^ε t', ε ⊕ ε'),   σ = +1 for Z ⊕ Z2, -1 for D∞.

Finite-index subgroups have a closed form, recorded as a SubgroupKey: the
translation subgroup dZ plus, optionally, the flips (j + dZ, 1).

Note: from the cover S1xS2n the quotient S1xRP2n arises with group
Z_m ⊕ Z2, which is cyclic only for odd m. No Cyclic(4k) appears there.
"""

import logging
from collections import deque
from dataclasses import dataclass
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from ..core.constants import (
    DEFAULT_MAX_COVER_INDEX, MAX_COVER_INDEX_BOUND, SUBGROUP_SEARCH_BOX, SUBGROUP_SEARCH_INDEX
)
from ..core.enums import GroupFamily, ManifoldLabel, VCShape
from ..core.exceptions import (
    IndexBoundError, InfiniteIndexError, InvalidInputError, NotNormalError,
    QuotientIdentificationError, UnsupportedCoverError
)

logger = logging.getLogger(__name__)

AMBIENT_SHAPES = (VCShape.Z, VCShape.Z_X_Z2, VCShape.Z_SEMI_Z2)


def _twist_sign(shape: VCShape) -> int:
    return -1 if shape is VCShape.Z_SEMI_Z2 else 1


@dataclass(frozen=True)
class AmbientGroupElement:
    translation: int
    flip: int = 0
    shape: VCShape = VCShape.Z

    def __post_init__(self):
        if self.shape not in AMBIENT_SHAPES:
            raise InvalidInputError(f"{self.shape.value} is not an ambient group",
                                    error_code="BAD_SHAPE")
        if self.flip not in (0, 1) or (self.shape is VCShape.Z and self.flip):
            raise InvalidInputError(f"Bad flip {self.flip} for {self.shape.value}",
                                    error_code="BAD_FLIP")

    def __mul__(self, other: "AmbientGroupElement") -> "AmbientGroupElement":
        sign = _twist_sign(self.shape) if self.flip else 1
        return AmbientGroupElement(self.translation + sign * other.translation,
                                   self.flip ^ other.flip, self.shape)

    def inverse(self) -> "AmbientGroupElement":
        sign = _twist_sign(self.shape) if self.flip else 1
        return AmbientGroupElement(-sign * self.translation, self.flip, self.shape)

    def to_list(self) -> List[int]:
        return [self.translation, self.flip]


def ambient_generators(shape: VCShape) -> List[AmbientGroupElement]:
    gens = [AmbientGroupElement(1, 0, shape)]
    if shape is not VCShape.Z:
        gens.append(AmbientGroupElement(0, 1, shape))
    return gens


@dataclass(frozen=True)
class SubgroupKey:
    """N = <(d, 0)> or N = <(d, 0), (j, 1)> inside the ambient group."""

    shape: VCShape
    d: int
    flip_offset: Optional[int] = None

    @property
    def index(self) -> int:
        if self.shape is VCShape.Z or self.flip_offset is not None:
            return self.d
        return 2 * self.d

    def generators(self) -> List[AmbientGroupElement]:
        gens = [AmbientGroupElement(self.d, 0, self.shape)]
        if self.flip_offset is not None:
            gens.append(AmbientGroupElement(self.flip_offset, 1, self.shape))
        return gens

    def contains(self, g: AmbientGroupElement) -> bool:
        if g.flip == 0:
            return g.translation % self.d == 0
        return self.flip_offset is not None and (g.translation - self.flip_offset) % self.d == 0

    def representative(self, g: AmbientGroupElement) -> Tuple[int, int]:
        """Canonical label of the coset g N."""
        if g.flip and self.flip_offset is not None:
            g = g * AmbientGroupElement(self.flip_offset, 1, self.shape)
        return (g.translation % self.d, g.flip)

    def subgroup_shape(self) -> VCShape:
        """Isomorphism type of N itself."""
        if self.flip_offset is None:
            return VCShape.Z
        if self.shape is VCShape.Z_SEMI_Z2:
            return VCShape.Z_SEMI_Z2
        return VCShape.Z_X_Z2 if self.flip_offset == 0 else VCShape.Z

    def infinite_generator(self) -> AmbientGroupElement:
        """Generator of N when N is infinite cyclic."""
        if self.flip_offset:
            return AmbientGroupElement(self.flip_offset, 1, self.shape)
        return AmbientGroupElement(self.d, 0, self.shape)


def subgroup_key(shape: VCShape, generators: Sequence[AmbientGroupElement]) -> SubgroupKey:
    """Closed-form description of the subgroup generated by the given elements."""
    shifts = [g.translation for g in generators if g.flip == 0]
    flips = [g.translation for g in generators if g.flip == 1]
    d = 0
    for c in shifts:
        d = gcd(d, c)
    if flips:
        first = flips[0]
        for a in flips[1:]:
            d = gcd(d, a - first)
        if shape is VCShape.Z_X_Z2:
            d = gcd(d, 2 * first)
    if d == 0:
        raise InfiniteIndexError(
            "Generators span a subgroup of infinite index",
            error_code="INFINITE_INDEX",
            context={"generators": [g.to_list() for g in generators]}
        )
    return SubgroupKey(shape, d, flips[0] % d if flips else None)


def is_normal(key: SubgroupKey) -> bool:
    """Conjugate each generator of N by each ambient generator and test membership."""
    for s in ambient_generators(key.shape):
        for n in key.generators():
            for conjugator in (s, s.inverse()):
                if not key.contains(conjugator * n * conjugator.inverse()):
                    return False
    return True


def require_normal(key: SubgroupKey) -> None:
    if not is_normal(key):
        raise NotNormalError(
            f"Subgroup {key} is not normal", error_code="NOT_NORMAL",
            context={"d": key.d, "flip_offset": key.flip_offset}
        )


@dataclass(frozen=True)
class FiniteGroupLabel:
    family: GroupFamily
    k: int

    @property
    def order(self) -> int:
        return self.k if self.family is GroupFamily.CYCLIC else 2 * self.k

    def normalized(self) -> "FiniteGroupLabel":
        """One spelling per isomorphism class."""
        if self.family is GroupFamily.CYCLIC_TIMES_Z2 and self.k % 2:
            return FiniteGroupLabel(GroupFamily.CYCLIC, 2 * self.k)
        if self.family is GroupFamily.DIHEDRAL and self.k == 1:
            return FiniteGroupLabel(GroupFamily.CYCLIC, 2)
        if self.family is GroupFamily.DIHEDRAL and self.k == 2:
            return FiniteGroupLabel(GroupFamily.CYCLIC_TIMES_Z2, 2)
        return self

    def sort_key(self) -> Tuple[str, int]:
        return (self.family.value, self.k)

    def to_dict(self) -> dict:
        return {"family": self.family.value, "k": self.k}

    def __str__(self) -> str:
        return f"{self.family.value}({self.k})"


def _natural_quotient(key: SubgroupKey) -> FiniteGroupLabel:
    """π/N as it falls out of the parametrization, before normalization."""
    if key.shape is VCShape.Z or key.flip_offset is not None:
        return FiniteGroupLabel(GroupFamily.CYCLIC, key.d)
    if key.shape is VCShape.Z_X_Z2:
        return FiniteGroupLabel(GroupFamily.CYCLIC_TIMES_Z2, key.d)
    return FiniteGroupLabel(GroupFamily.DIHEDRAL, key.d)


def _coset_table(key: SubgroupKey) -> np.ndarray:
    """Multiplication table of π/N from breadth-first coset enumeration."""
    reps: Dict[Tuple[int, int], AmbientGroupElement] = {}
    start = AmbientGroupElement(0, 0, key.shape)
    reps[key.representative(start)] = start
    queue = deque([start])
    generators = ambient_generators(key.shape)
    while queue:
        g = queue.popleft()
        for s in generators:
            h = g * s
            label = key.representative(h)
            if label not in reps:
                reps[label] = h
                queue.append(h)
        if len(reps) > 2 * MAX_COVER_INDEX_BOUND + 2:
            raise InfiniteIndexError("Coset enumeration did not close", error_code="NO_CLOSURE")

    labels = list(reps)
    position = {label: i for i, label in enumerate(labels)}
    n = len(labels)
    table = np.zeros((n, n), dtype=int)
    for a, la in enumerate(labels):
        for b, lb in enumerate(labels):
            table[a, b] = position[key.representative(reps[la] * reps[lb])]
    return table


def _element_orders(table: np.ndarray) -> List[int]:
    identity = 0
    orders = []
    for a in range(len(table)):
        power, order = a, 1
        while power != identity:
            power = table[power, a]
            order += 1
        orders.append(order)
    return orders


def _classify_table(table: np.ndarray) -> FiniteGroupLabel:
    n = len(table)
    abelian = bool((table == table.T).all())
    orders = _element_orders(table)
    exponent = int(np.lcm.reduce(orders))
    involutions = sum(1 for o in orders if o == 2)
    if abelian and exponent == n:
        return FiniteGroupLabel(GroupFamily.CYCLIC, n)
    if abelian and n % 2 == 0 and exponent == n // 2:
        return FiniteGroupLabel(GroupFamily.CYCLIC_TIMES_Z2, n // 2).normalized()
    if not abelian and n % 2 == 0 and involutions >= n // 2:
        return FiniteGroupLabel(GroupFamily.DIHEDRAL, n // 2).normalized()
    raise QuotientIdentificationError(
        f"Quotient of order {n} is not cyclic, Z_k x Z2 or dihedral",
        error_code="UNKNOWN_QUOTIENT",
        context={"order": n, "abelian": abelian, "exponent": exponent, "involutions": involutions}
    )


def identify_finite_quotient(shape: VCShape, generators: Sequence[AmbientGroupElement]
                             ) -> FiniteGroupLabel:
    key = subgroup_key(shape, generators)
    require_normal(key)
    label = _classify_table(_coset_table(key))
    if label.order != key.index:
        raise QuotientIdentificationError(
            f"Quotient order {label.order} differs from index {key.index}",
            error_code="ORDER_MISMATCH"
        )
    return label


# Base manifolds with their realizable orientation: (shape, φ(t), φ(flip)).
BASES: Tuple[Tuple[ManifoldLabel, VCShape, int, int], ...] = (
    (ManifoldLabel.S1_X_S2N, VCShape.Z, 0, 0),
    (ManifoldLabel.S1_TWIST_S2N, VCShape.Z, 1, 0),
    (ManifoldLabel.S1_X_RP2N, VCShape.Z_X_Z2, 0, 1),
    (ManifoldLabel.RP_SHARP_RP, VCShape.Z_SEMI_Z2, 0, 1),
)


def cover_label(key: SubgroupKey, phi_t: int, phi_flip: int) -> ManifoldLabel:
    """Homotopy type of the cover whose fundamental group is N."""
    kind = key.subgroup_shape()
    if kind is VCShape.Z_X_Z2:
        return ManifoldLabel.S1_X_RP2N
    if kind is VCShape.Z_SEMI_Z2:
        return ManifoldLabel.RP_SHARP_RP
    g = key.infinite_generator()
    restricted = (phi_t * g.translation + phi_flip * g.flip) % 2
    return ManifoldLabel.S1_TWIST_S2N if restricted else ManifoldLabel.S1_X_S2N


def parametrized_subgroups(shape: VCShape, max_index: int) -> List[SubgroupKey]:
    """Every subgroup of index <= max_index, normal or not."""
    keys: List[SubgroupKey] = []
    for d in range(1, max_index + 1):
        if shape is VCShape.Z:
            keys.append(SubgroupKey(shape, d))
            continue
        offsets: Iterable[int]
        if shape is VCShape.Z_X_Z2:
            offsets = sorted({0, d // 2}) if d % 2 == 0 else [0]
        else:
            offsets = range(d)
        keys.extend(SubgroupKey(shape, d, j) for j in offsets)
        if 2 * d <= max_index:
            keys.append(SubgroupKey(shape, d))
    return [key for key in keys if key.index <= max_index]


@dataclass(frozen=True)
class CoverRow:
    group: FiniteGroupLabel
    base: ManifoldLabel
    index: int
    raw_group: FiniteGroupLabel

    def sort_key(self) -> tuple:
        return (self.index, self.group.sort_key(), self.base.value)

    def to_dict(self) -> dict:
        return {
            "base": self.base.value,
            "group": self.group.to_dict(),
            "index": self.index,
            "raw_group": self.raw_group.to_dict(),
        }


def enumerate_covers(cover: ManifoldLabel, max_index: int = DEFAULT_MAX_COVER_INDEX
                     ) -> List[CoverRow]:
    """All (G, M, |G|) with G finite acting freely on `cover` with quotient M."""
    if cover is ManifoldLabel.RP2N:
        raise UnsupportedCoverError(
            "RP2n has finite fundamental group; no finite group acts freely on it here",
            error_code="UNSUPPORTED_COVER", context={"cover": cover.value}
        )
    if not 1 <= max_index <= MAX_COVER_INDEX_BOUND:
        raise IndexBoundError(
            f"max_index {max_index} is outside 1..{MAX_COVER_INDEX_BOUND}",
            error_code="INDEX_BOUND", context={"max_index": max_index}
        )

    rows: Dict[Tuple[FiniteGroupLabel, ManifoldLabel, int], CoverRow] = {}
    for base, shape, phi_t, phi_flip in BASES:
        for key in parametrized_subgroups(shape, max_index):
            if key.index < 2 or not is_normal(key):
                continue
            if cover_label(key, phi_t, phi_flip) is not cover:
                continue
            group = identify_finite_quotient(shape, key.generators())
            raw = _natural_quotient(key)
            if raw.normalized() != group:
                raise QuotientIdentificationError(
                    f"Coset table gives {group}, parametrization gives {raw}",
                    error_code="QUOTIENT_MISMATCH"
                )
            rows.setdefault((group, base, key.index), CoverRow(group, base, key.index, raw))

    ordered = sorted(rows.values(), key=CoverRow.sort_key)
    logger.info("%d covering rows for %s up to index %d", len(ordered), cover.value, max_index)
    return ordered


def free_involution_rows(max_index: int = 2) -> Dict[ManifoldLabel, List[CoverRow]]:
    """Index-two rows per cover: the free involutions and their quotients."""
    out = {}
    for cover in ManifoldLabel:
        if cover is ManifoldLabel.RP2N:
            continue
        out[cover] = [row for row in enumerate_covers(cover, max(2, max_index)) if row.index == 2]
    return out


def _closure(shape: VCShape, generators: Sequence[AmbientGroupElement], window: int
             ) -> Set[Tuple[int, int]]:
    step = list(generators) + [g.inverse() for g in generators]
    seen = {(0, 0)}
    queue = deque([AmbientGroupElement(0, 0, shape)])
    while queue:
        g = queue.popleft()
        for s in step:
            h = g * s
            label = (h.translation, h.flip)
            if abs(h.translation) <= window and label not in seen:
                seen.add(label)
                queue.append(h)
    return seen


def _key_from_elements(shape: VCShape, elements: Set[Tuple[int, int]]) -> Optional[SubgroupKey]:
    shifts = [t for t, e in elements if e == 0 and t > 0]
    if not shifts:
        return None
    d = min(shifts)
    flips = [t % d for t, e in elements if e == 1]
    return SubgroupKey(shape, d, min(flips) if flips else None)


def search_subgroups(shape: VCShape, max_index: int = SUBGROUP_SEARCH_INDEX,
                     box: int = SUBGROUP_SEARCH_BOX) -> Set[SubgroupKey]:
    """Subgroups of index <= max_index found by closing up one or two generators.

    Independent of subgroup_key; used to cross-check parametrized_subgroups.
    """
    flips = (0,) if shape is VCShape.Z else (0, 1)
    candidates = [AmbientGroupElement(t, e, shape)
                  for t in range(-box, box + 1) for e in flips if (t, e) != (0, 0)]
    window = 4 * box
    found: Set[SubgroupKey] = set()
    for i, first in enumerate(candidates):
        for second in [None] + candidates[i + 1:]:
            generators = [first] if second is None else [first, second]
            key = _key_from_elements(shape, _closure(shape, generators, window))
            if key is not None and key.index <= max_index:
                found.add(key)
    logger.debug("Closure search found %d subgroups of %s", len(found), shape.value)
    return found
