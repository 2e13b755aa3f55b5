"""Reproduce the classification tables and canonical-form results end to end."""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable, Iterator, List, Set, Tuple

import numpy as np

from ..algebra.freeword import abelianization_matrix, is_involution
from ..algebra.intlat import (
    CanonicalInvolution, IntMatrix, canonicalize_involution, involution_invariants,
    random_unimodular
)
from ..algebra.twistgrp import (
    OrientationHom, TwistedGroup, free_product_with_z2, standard_involution,
    validate_orientation
)
from ..core.constants import DEFAULT_SEED, MAX_COVER_INDEX_BOUND
from ..core.enums import (
    ClassificationStatus, GroupFamily, ManifoldLabel, VCShape, VerdictKind
)
from ..core.exceptions import SphereActionsError
from ..deciders.action_model import ActionModelConfig, verify_action_model
from ..deciders.classify import VCGroupSpec, classify_vc
from ..deciders.covers import FiniteGroupLabel, enumerate_covers
from ..deciders.realize import find_witness, realizable_canonical, realizable_general

logger = logging.getLogger(__name__)


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"checked": self.checked, "failures": self.failures[:20],
                "name": self.name, "passed": self.passed}


def canonical_shapes(max_rank: int) -> Iterator[CanonicalInvolution]:
    for m in range(1, max_rank + 1):
        for k in range(m // 2 + 1):
            for r in range(m - 2 * k + 1):
                yield CanonicalInvolution(k, r, m - 2 * k - r)


def canonical_fixtures(max_rank: int = 3) -> Iterator[Tuple[CanonicalInvolution, TwistedGroup,
                                                          OrientationHom]]:
    """Standard θ for every A(k, r, s) of rank <= max_rank with every valid φ."""
    for shape in canonical_shapes(max_rank):
        group = TwistedGroup.from_theta(standard_involution(shape.k, shape.r, shape.s))
        for bits in itertools.product((0, 1), repeat=shape.m):
            phi = OrientationHom(bits)
            if validate_orientation(group, phi):
                yield shape, group, phi


def _expected_kind(shape: CanonicalInvolution, phi: OrientationHom) -> VerdictKind:
    if any(phi.values[l - 1] for l in shape.minus_block):
        return VerdictKind.NOT_REALIZABLE
    return VerdictKind.REALIZABLE


def check_canonical_agreement() -> SuiteResult:
    result = SuiteResult("canonical three-way agreement")
    for shape, group, phi in canonical_fixtures():
        result.checked += 1
        expected = _expected_kind(shape, phi)
        fast = realizable_canonical(group, phi).kind
        general = realizable_general(group, phi).kind
        searched = (VerdictKind.NOT_REALIZABLE if find_witness(group, phi, 4) is not None
                    else VerdictKind.REALIZABLE)
        if not fast is general is searched is expected:
            result.failures.append(
                f"A{(shape.k, shape.r, shape.s)} phi={phi.values}: "
                f"{fast.value}/{general.value}/{searched.value}, expected {expected.value}"
            )
    return result


def check_canonical_round_trip(trials: int = 200, seed: int = DEFAULT_SEED) -> SuiteResult:
    result = SuiteResult("canonical form round trip")
    rng = np.random.default_rng(seed)
    shapes = list(canonical_shapes(6))
    for _ in range(trials):
        shape = shapes[int(rng.integers(0, len(shapes)))]
        Q, Q_inv = random_unimodular(shape.m, 12, rng)
        M = Q @ shape.matrix() @ Q_inv
        result.checked += 1
        try:
            found = involution_invariants(M)
            invariants, P = canonicalize_involution(M)
        except SphereActionsError as e:
            result.failures.append(f"{M}: {e}")
            continue
        if found != shape or invariants != shape:
            result.failures.append(f"{M}: got {found}, expected {shape}")
        elif P.inverse() @ M @ P != shape.matrix():
            result.failures.append(f"{M}: conjugator {P} does not verify")
    return result


VC_TABLE = {
    (VCShape.Z2, None, 1): ManifoldLabel.RP2N,
    (VCShape.Z2, None, 0): None,
    (VCShape.Z, 0, None): ManifoldLabel.S1_X_S2N,
    (VCShape.Z, 1, None): ManifoldLabel.S1_TWIST_S2N,
    (VCShape.Z_X_Z2, 0, 1): ManifoldLabel.S1_X_RP2N,
    (VCShape.Z_X_Z2, 1, 1): ManifoldLabel.S1_X_RP2N,
    (VCShape.Z_X_Z2, 0, 0): None,
    (VCShape.Z_X_Z2, 1, 0): None,
    (VCShape.Z_SEMI_Z2, 0, 1): ManifoldLabel.RP_SHARP_RP,
    (VCShape.Z_SEMI_Z2, 1, 1): None,
    (VCShape.Z_SEMI_Z2, 0, 0): None,
    (VCShape.Z_SEMI_Z2, 1, 0): None,
}


def check_vc_table() -> SuiteResult:
    result = SuiteResult("virtually cyclic table")
    for (shape, phi_z, phi_torsion), expected in VC_TABLE.items():
        result.checked += 1
        outcome = classify_vc(VCGroupSpec(shape, phi_z, phi_torsion))
        wanted = (ClassificationStatus.REALIZABLE if expected
                  else ClassificationStatus.NOT_REALIZABLE)
        if outcome.status is not wanted or outcome.orbit_space is not expected:
            result.failures.append(f"{shape.value} phi_z={phi_z} phi_t={phi_torsion}: "
                                   f"{outcome.to_dict()}")
    return result


Row = Tuple[FiniteGroupLabel, ManifoldLabel, int]


def expected_cover_rows(cover: ManifoldLabel, max_index: int) -> Set[Row]:
    """The covering table written out family by family."""
    cyclic = lambda k: FiniteGroupLabel(GroupFamily.CYCLIC, k)
    rows: Set[Row] = set()
    indices = range(2, max_index + 1)
    if cover is ManifoldLabel.S1_X_S2N:
        rows |= {(cyclic(m), ManifoldLabel.S1_X_S2N, m) for m in indices}
        rows |= {(cyclic(m), ManifoldLabel.S1_TWIST_S2N, m) for m in indices if m % 2 == 0}
        for d in range(1, max_index // 2 + 1):
            rows.add((FiniteGroupLabel(GroupFamily.CYCLIC_TIMES_Z2, d).normalized(),
                      ManifoldLabel.S1_X_RP2N, 2 * d))
            rows.add((FiniteGroupLabel(GroupFamily.DIHEDRAL, d).normalized(),
                      ManifoldLabel.RP_SHARP_RP, 2 * d))
    elif cover is ManifoldLabel.S1_TWIST_S2N:
        rows |= {(cyclic(m), ManifoldLabel.S1_TWIST_S2N, m) for m in indices if m % 2}
        rows |= {(cyclic(m), ManifoldLabel.S1_X_RP2N, m) for m in indices if m % 2 == 0}
    elif cover is ManifoldLabel.S1_X_RP2N:
        rows |= {(cyclic(m), ManifoldLabel.S1_X_RP2N, m) for m in indices}
    elif cover is ManifoldLabel.RP_SHARP_RP:
        rows.add((cyclic(2), ManifoldLabel.RP_SHARP_RP, 2))
    return rows


def check_cover_table(max_index: int = MAX_COVER_INDEX_BOUND) -> SuiteResult:
    result = SuiteResult("covering table")
    for cover in ManifoldLabel:
        if cover is ManifoldLabel.RP2N:
            continue
        rows = enumerate_covers(cover, max_index)
        got = {(row.group, row.base, row.index) for row in rows}
        want = expected_cover_rows(cover, max_index)
        result.checked += len(want)
        for row in sorted(want - got, key=str):
            result.failures.append(f"{cover.value}: missing {row[0]} -> {row[1].value} [{row[2]}]")
        for row in sorted(got - want, key=str):
            result.failures.append(f"{cover.value}: extra {row[0]} -> {row[1].value} [{row[2]}]")
        for row in rows:
            if row.group.order != row.index:
                result.failures.append(f"{cover.value}: |{row.group}| != {row.index}")
            if (cover is ManifoldLabel.S1_X_S2N and row.base is ManifoldLabel.S1_X_RP2N
                    and row.group.family is GroupFamily.CYCLIC and row.group.k % 4 == 0):
                result.failures.append(f"{cover.value}: forbidden {row.group} -> S1xRP2n")
    return result


def _free_product_factors() -> List[TwistedGroup]:
    shapes = [CanonicalInvolution(0, 0, 0)] + list(canonical_shapes(2))
    return [TwistedGroup.from_theta(standard_involution(s.k, s.r, s.s)) for s in shapes]


def check_free_products(max_factors: int = 3) -> SuiteResult:
    result = SuiteResult("free products with Z2")
    factors = _free_product_factors()
    for n in range(1, max_factors + 1):
        for combo in itertools.product(factors, repeat=n):
            result.checked += 1
            group, _ = free_product_with_z2(combo)
            expected_rank = sum(f.rank for f in combo) + n - 1
            blocks = [f.rho for f in combo] + [-IntMatrix.identity(n - 1)]
            label = [f.rank for f in combo]
            if group.rank != expected_rank:
                result.failures.append(f"{label}: rank {group.rank} != {expected_rank}")
            elif not is_involution(group.theta):
                result.failures.append(f"{label}: theta is not an involution")
            elif abelianization_matrix(group.theta) != IntMatrix.block_diagonal(blocks):
                result.failures.append(f"{label}: abelianization is not block diagonal")
    return result


def check_action_model(samples: int = 1000, seed: int = DEFAULT_SEED) -> SuiteResult:
    result = SuiteResult("action model")
    config = ActionModelConfig(samples=samples, max_length=4, seed=seed)
    for shape, group, phi in canonical_fixtures():
        result.checked += 1
        report = verify_action_model(group, phi, config)
        expected = _expected_kind(shape, phi)
        if report.axiom_failures:
            result.failures.append(f"A{(shape.k, shape.r, shape.s)} phi={phi.values}: "
                                   f"{report.axiom_failures[0]}")
        elif (expected is VerdictKind.REALIZABLE) != (not report.freeness_failures):
            result.failures.append(f"A{(shape.k, shape.r, shape.s)} phi={phi.values}: "
                                   f"freeness {report.freeness_failures[:1]}")
    return result


SUITES: List[Callable[[], SuiteResult]] = [
    check_canonical_agreement,
    check_canonical_round_trip,
    check_vc_table,
    check_cover_table,
    check_free_products,
    check_action_model,
]


def run_selfcheck() -> List[SuiteResult]:
    results = []
    for suite in SUITES:
        outcome = suite()
        logger.info("%s: %d checked, %s", outcome.name, outcome.checked,
                    "ok" if outcome.passed else f"{len(outcome.failures)} failures")
        for failure in outcome.failures[:20]:
            logger.warning("%s: %s", outcome.name, failure)
        results.append(outcome)
    return results
