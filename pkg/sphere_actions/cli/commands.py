"""Subcommand implementations.

Each command takes the parsed input and the argparse namespace and returns a
CommandResult: the JSON payload, its exit code and a plain-text rendering.
"""

from dataclasses import dataclass
from typing import Any, Callable, Dict

from ..algebra.intlat import canonicalize_involution
from ..algebra.twistgrp import (
    combine_orientations, free_product_with_z2, require_orientation, verify_dyer_scott
)
from ..core.constants import EXIT_DECIDED, EXIT_INVALID_INPUT, EXIT_UNKNOWN
from ..core.enums import ClassificationStatus, ManifoldLabel, VerdictKind
from ..core.exceptions import SchemaError
from ..deciders.action_model import ActionModelConfig, verify_action_model
from ..deciders.classify import VCGroupSpec, classify_vc
from ..deciders.covers import enumerate_covers
from ..deciders.realize import WitnessSearchConfig, realizable_general
from ..utils.serialization import (
    format_matrix, parse_claim, parse_matrix, parse_shape, parse_twisted_group,
    list_field, require_field, twisted_group_to_dict
)


@dataclass
class CommandResult:
    payload: Dict[str, Any]
    exit_code: int = EXIT_DECIDED
    text: str = ""


def _group_with_phi(payload: Any, at: str = "$"):
    group, phi = parse_twisted_group(payload, at)
    if phi is None:
        raise SchemaError("Missing field 'phi'", error_code="MISSING_FIELD",
                          context={"at": f"{at}.phi"})
    require_orientation(group, phi)
    return group, phi


def cmd_realizable(payload: Any, args) -> CommandResult:
    group, phi = _group_with_phi(payload)
    config = WitnessSearchConfig(max_length=args.max_witness_length, word_budget=args.word_budget)
    verdict = realizable_general(group, phi, config)
    out = verdict.to_dict()
    out["seed"] = args.seed
    code = EXIT_UNKNOWN if verdict.kind is VerdictKind.UNKNOWN else EXIT_DECIDED

    lines = [f"verdict: {verdict.kind.value}"]
    if verdict.witness is not None:
        lines.append(f"witness: {verdict.witness}")
    lines.append(f"kernel of rho+I: {[list(v) for v in verdict.kernel_basis]}")
    lines.append(f"search length: {verdict.budget}")
    return CommandResult(out, code, "\n".join(lines))


def cmd_canonical_form(text: str, args) -> CommandResult:
    M = parse_matrix(text)
    if not M.is_square:
        raise SchemaError(f"Matrix of shape {M.shape} is not square", error_code="NOT_SQUARE",
                          context={"at": "$"})
    invariants, P = canonicalize_involution(M)
    conjugated = P.inverse() @ M @ P
    out = dict(invariants.to_dict())
    out["P"] = P.to_lists()
    out["P_inv_M_P"] = conjugated.to_lists()
    out["verified"] = conjugated == invariants.matrix() and P.is_unimodular()
    text_out = (f"(k, r, s) = ({invariants.k}, {invariants.r}, {invariants.s})\n"
                f"P = {format_matrix(P)}\nP^-1 M P = {format_matrix(conjugated)}")
    return CommandResult(out, EXIT_DECIDED, text_out)


def cmd_classify_vc(payload: Any, args) -> CommandResult:
    shape = parse_shape(require_field(payload, "shape", "$"))
    spec = VCGroupSpec(shape, payload.get("phi_z"), payload.get("phi_torsion"))
    result = classify_vc(spec)
    code = EXIT_INVALID_INPUT if result.status is ClassificationStatus.INVALID_INPUT else EXIT_DECIDED
    if result.orbit_space is not None:
        text = f"{shape.value}: orbit space {result.orbit_space.pretty}"
    else:
        text = f"{shape.value}: {result.status.value} ({result.reason})"
    return CommandResult(result.to_dict(), code, text)


def cmd_covers(cover: str, args) -> CommandResult:
    try:
        label = ManifoldLabel(cover)
    except ValueError:
        raise SchemaError(f"Unknown manifold label {cover!r}", error_code="BAD_LABEL",
                          context={"at": "$.cover"})
    rows = enumerate_covers(label, args.max_index)
    out = {"cover": label.value, "max_index": args.max_index,
           "rows": [row.to_dict() for row in rows]}
    lines = [f"{'index':>5}  {'group':<18} base"]
    lines.extend(f"{row.index:>5}  {str(row.group):<18} {row.base.pretty}" for row in rows)
    return CommandResult(out, EXIT_DECIDED, "\n".join(lines))


def cmd_free_product(payload: Any, args) -> CommandResult:
    entries = list_field(payload, "$")
    parsed = [parse_twisted_group(entry, f"$[{i}]") for i, entry in enumerate(entries)]
    group, report = free_product_with_z2([g for g, _ in parsed])
    phis = [phi for _, phi in parsed]
    phi = None
    if phis and all(p is not None for p in phis):
        phi = combine_orientations(report, phis)
    out = {"embedding": report.to_dict(), "group": twisted_group_to_dict(group, phi)}
    text = "\n".join(
        [f"rank {group.rank}"]
        + [f"theta(x{i}) = {image or 'e'}" for i, image in enumerate(group.theta.images, 1)]
    )
    return CommandResult(out, EXIT_DECIDED, text)


def cmd_verify_dyer_scott(payload: Any, args) -> CommandResult:
    group, _ = parse_twisted_group(require_field(payload, "group", "$"), "$.group")
    claim = parse_claim(require_field(payload, "claim", "$"), "$.claim")
    holds = verify_dyer_scott(group, claim)
    return CommandResult({"holds": holds}, EXIT_DECIDED,
                         "decomposition holds" if holds else "decomposition fails")


def cmd_verify_action(payload: Any, args) -> CommandResult:
    group, phi = _group_with_phi(payload)
    config = ActionModelConfig(samples=args.samples, max_length=args.max_length, seed=args.seed)
    report = verify_action_model(group, phi, config)
    lines = [f"samples: {report.samples} (seed {report.seed})",
             f"passed: {report.passed}"]
    lines.extend(f"axiom failure: {f}" for f in report.axiom_failures)
    lines.extend(f"fixed point: {f}" for f in report.freeness_failures)
    return CommandResult(report.to_dict(), EXIT_DECIDED, "\n".join(lines))


# Commands whose input is read as JSON; the rest take raw text or a label.
JSON_COMMANDS: Dict[str, Callable[[Any, Any], CommandResult]] = {
    "realizable": cmd_realizable,
    "classify-vc": cmd_classify_vc,
    "free-product": cmd_free_product,
    "verify-dyer-scott": cmd_verify_dyer_scott,
    "verify-action": cmd_verify_action,
}

TEXT_COMMANDS: Dict[str, Callable[[str, Any], CommandResult]] = {
    "canonical-form": cmd_canonical_form,
}

