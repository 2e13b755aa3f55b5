"""Core enumerations for sphere_actions."""

from enum import Enum


class VerdictKind(Enum):
    """Outcome of a realizability decision."""
    REALIZABLE = "realizable"
    NOT_REALIZABLE = "not_realizable"
    UNKNOWN = "unknown"


class VCShape(Enum):
    """Isomorphism types of non-trivial virtually cyclic groups acting on Σ(2n)."""
    Z2 = "Z2"
    Z = "Z"
    Z_X_Z2 = "ZxZ2"
    Z_SEMI_Z2 = "ZsemiZ2"

    @property
    def has_infinite_generator(self) -> bool:
        return self is not VCShape.Z2

    @property
    def has_torsion(self) -> bool:
        return self is not VCShape.Z


class ManifoldLabel(Enum):
    """Homotopy types of orbit spaces Σ(2n)/G for virtually cyclic G."""
    RP2N = "RP2n"
    S1_X_S2N = "S1xS2n"
    S1_TWIST_S2N = "S1twistS2n"
    S1_X_RP2N = "S1xRP2n"
    RP_SHARP_RP = "RPsharpRP"

    @property
    def pretty(self) -> str:
        return {
            ManifoldLabel.RP2N: "RP^{2n}",
            ManifoldLabel.S1_X_S2N: "S^1 x S^{2n}",
            ManifoldLabel.S1_TWIST_S2N: "S^1 ~x S^{2n}",
            ManifoldLabel.S1_X_RP2N: "S^1 x RP^{2n}",
            ManifoldLabel.RP_SHARP_RP: "RP^{2n+1} # RP^{2n+1}",
        }[self]


class GroupFamily(Enum):
    """Families of finite groups that act freely on the four infinite-π₁ manifolds."""
    CYCLIC = "Cyclic"
    CYCLIC_TIMES_Z2 = "CyclicTimesZ2"
    DIHEDRAL = "Dihedral"


class ClassificationStatus(Enum):
    """Outcome of classifying a virtually cyclic group with orientation data."""
    REALIZABLE = "realizable"
    NOT_REALIZABLE = "not_realizable"
    INVALID_INPUT = "invalid_input"
