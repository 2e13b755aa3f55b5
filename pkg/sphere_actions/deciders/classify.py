"""Virtually cyclic groups acting freely on an even-dimensional homotopy sphere.

The only candidates are Z2, Z, Z ⊕ Z2 and the infinite dihedral group
Z ⋊ Z2. The orientation is recorded by its value on the infinite generator
(phi_z) and on the torsion generator (phi_torsion). Each decision is checked
against the general realizability decider on the matching twisted group:

    Z2      -> rank 0 free group
    Z       -> F1, checked inside F1 ⋊ id
    Z ⊕ Z2  -> F1 ⋊ id
    Z ⋊ Z2  -> F1 ⋊ (x -> x^-1)

Z = F1 is the index-2 subgroup F1 x 0 of F1 ⋊ id, and a free action restricts
to a free action of any subgroup. A Realizable verdict for F1 ⋊ id with
φ(x1) = phi_z therefore realizes Z with the same orientation on its generator.
"""

import logging
from dataclasses import dataclass
from typing import Optional

from ..algebra.freeword import FreeAutomorphism, Word
from ..algebra.twistgrp import OrientationHom, TwistedGroup
from ..core.enums import ClassificationStatus, ManifoldLabel, VCShape, VerdictKind
from ..core.exceptions import ClassificationError
from .realize import realizable_general

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VCGroupSpec:
    """A virtually cyclic group together with its orientation bits."""

    shape: VCShape
    phi_z: Optional[int] = None
    phi_torsion: Optional[int] = None


@dataclass(frozen=True)
class ClassificationResult:
    status: ClassificationStatus
    orbit_space: Optional[ManifoldLabel] = None
    reason: str = ""
    witness: Optional[str] = None

    def to_dict(self) -> dict:
        out = {
            "status": self.status.value,
            "orbit_space": self.orbit_space.value if self.orbit_space else None,
            "reason": self.reason,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _is_bit(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool) and value in (0, 1)


def _invalid(reason: str) -> ClassificationResult:
    return ClassificationResult(ClassificationStatus.INVALID_INPUT, reason=reason)


def _check_fields(spec: VCGroupSpec) -> Optional[ClassificationResult]:
    if not isinstance(spec.shape, VCShape):
        return _invalid(f"unknown shape {spec.shape!r}")
    wanted = {"phi_z": spec.shape.has_infinite_generator,
              "phi_torsion": spec.shape.has_torsion}
    for name, needed in wanted.items():
        value = getattr(spec, name)
        if needed and not _is_bit(value):
            return _invalid(f"{name} must be 0 or 1 for shape {spec.shape.value}")
        if not needed and value is not None:
            return _invalid(f"shape {spec.shape.value} has no {name}")
    return None


def _table(spec: VCGroupSpec) -> ClassificationResult:
    realizable = ClassificationStatus.REALIZABLE
    rejected = ClassificationStatus.NOT_REALIZABLE
    shape = spec.shape

    if shape.has_torsion and spec.phi_torsion == 0:
        return ClassificationResult(
            rejected, reason="an element of order two preserving orientation has a fixed point"
        )
    if shape is VCShape.Z2:
        return ClassificationResult(realizable, ManifoldLabel.RP2N, "Z2 with nontrivial φ")
    if shape is VCShape.Z:
        if spec.phi_z:
            return ClassificationResult(realizable, ManifoldLabel.S1_TWIST_S2N,
                                        "Z reversing orientation")
        return ClassificationResult(realizable, ManifoldLabel.S1_X_S2N,
                                    "Z preserving orientation")
    if shape is VCShape.Z_X_Z2:
        return ClassificationResult(realizable, ManifoldLabel.S1_X_RP2N,
                                    "Z ⊕ Z2 with orientation-reversing torsion")
    if spec.phi_z:
        return ClassificationResult(
            rejected, reason="t is inverted by the flip and reverses orientation", witness="t"
        )
    return ClassificationResult(realizable, ManifoldLabel.RP_SHARP_RP,
                                "infinite dihedral with φ trivial on Z")


def _encoding(spec: VCGroupSpec) -> TwistedGroup:
    if spec.shape is VCShape.Z2:
        return TwistedGroup(0, FreeAutomorphism.identity(0))
    if spec.shape is VCShape.Z_SEMI_Z2:
        return TwistedGroup(1, FreeAutomorphism(1, (Word.generator(1, 1, -1),)))
    return TwistedGroup(1, FreeAutomorphism.identity(1))


def _cross_check(spec: VCGroupSpec, result: ClassificationResult) -> None:
    if spec.shape.has_torsion and spec.phi_torsion == 0:
        return
    group = _encoding(spec)
    phi = OrientationHom((spec.phi_z,) if group.rank else ())
    expected = realizable_general(group, phi).kind
    agrees = (expected is VerdictKind.REALIZABLE) == (result.status is ClassificationStatus.REALIZABLE)
    if not agrees:
        logger.error("Classification of %s disagrees with the decider (%s)", spec, expected)
        raise ClassificationError(
            f"Table entry for {spec.shape.value} contradicts the realizability decider",
            error_code="TABLE_MISMATCH",
            context={"shape": spec.shape.value, "decider": expected.value}
        )


def classify_vc(spec: VCGroupSpec) -> ClassificationResult:
    """Orbit-space homotopy type, or the reason no free action exists."""
    problem = _check_fields(spec)
    if problem is not None:
        return problem
    result = _table(spec)
    _cross_check(spec, result)
    logger.info("%s -> %s", spec.shape.value, result.orbit_space.value if result.orbit_space
                else result.status.value)
    return result
