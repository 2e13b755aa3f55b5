"""Text and JSON codecs for words, matrices and command payloads.

Every parse error carries the offending location in context["at"]: a JSON
path such as $.theta[1] for payloads, or a token position for text.
"""

import re
from typing import Any, List, Optional, Tuple

from ..algebra.freeword import FreeAutomorphism, Letter, Word
from ..algebra.intlat import IntMatrix
from ..algebra.twistgrp import DyerScottClaim, LambdaBlock, OrientationHom, TwistedGroup
from ..core.constants import MATRIX_ROW_SEPARATOR, WORD_TOKEN_PATTERN
from ..core.enums import VCShape
from ..core.exceptions import (
    NotAnInvolutionError, ParseError, SchemaError, SphereActionsError
)

_TOKEN = re.compile(WORD_TOKEN_PATTERN)


def parse_word(text: str, rank: int, at: str = "$") -> Word:
    """'x1 x2^-1 x1' -> Word; the empty string is the identity."""
    if not isinstance(text, str):
        raise SchemaError(f"Expected a word string at {at}", error_code="NOT_A_STRING",
                          context={"at": at})
    letters = []
    for position, token in enumerate(text.split()):
        match = _TOKEN.match(token)
        if not match:
            raise ParseError(f"Bad word token '{token}'", error_code="BAD_TOKEN",
                             context={"at": at, "token": token, "position": position})
        index = int(match.group(1))
        if index > rank:
            raise ParseError(f"Generator x{index} exceeds rank {rank}",
                             error_code="BAD_GENERATOR",
                             context={"at": at, "token": token, "position": position})
        letters.append(Letter(index, -1 if match.group(3) == "-1" else 1))
    return Word(rank, tuple(letters))


def format_word(word: Word) -> str:
    return str(word)


def parse_matrix(text: str, at: str = "$") -> IntMatrix:
    """'1 0; 1 -1' -> IntMatrix."""
    rows: List[List[int]] = []
    for i, chunk in enumerate(text.strip().split(MATRIX_ROW_SEPARATOR)):
        row = []
        for j, token in enumerate(chunk.split()):
            try:
                row.append(int(token))
            except ValueError:
                raise ParseError(f"Bad matrix entry '{token}'", error_code="BAD_ENTRY",
                                 context={"at": f"{at}[{i}][{j}]", "token": token})
        rows.append(row)
    if rows == [[]]:
        rows = []
    width = len(rows[0]) if rows else 0
    for i, row in enumerate(rows):
        if len(row) != width or not row:
            raise ParseError(f"Row {i} has {len(row)} entries, expected {width}",
                             error_code="RAGGED_MATRIX", context={"at": f"{at}[{i}]"})
    return IntMatrix(tuple(tuple(row) for row in rows), width)


def format_matrix(M: IntMatrix) -> str:
    return str(M)


def require_field(payload: Any, key: str, at: str) -> Any:
    if not isinstance(payload, dict):
        raise SchemaError(f"Expected an object at {at}", error_code="NOT_AN_OBJECT",
                          context={"at": at})
    if key not in payload:
        raise SchemaError(f"Missing field '{key}'", error_code="MISSING_FIELD",
                          context={"at": f"{at}.{key}"})
    return payload[key]


def int_field(value: Any, at: str, minimum: Optional[int] = None) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise SchemaError(f"Expected an integer at {at}", error_code="NOT_AN_INT",
                          context={"at": at})
    if minimum is not None and value < minimum:
        raise SchemaError(f"Expected an integer >= {minimum} at {at}",
                          error_code="OUT_OF_RANGE", context={"at": at})
    return value


def list_field(value: Any, at: str, length: Optional[int] = None) -> list:
    if not isinstance(value, list):
        raise SchemaError(f"Expected a list at {at}", error_code="NOT_A_LIST", context={"at": at})
    if length is not None and len(value) != length:
        raise SchemaError(f"Expected {length} entries at {at}, got {len(value)}",
                          error_code="BAD_LENGTH", context={"at": at})
    return value


def parse_twisted_group(payload: Any, at: str = "$"
                        ) -> Tuple[TwistedGroup, Optional[OrientationHom]]:
    """{"rank": m, "theta": [word, ...], "phi": [bit, ...]}; phi is optional."""
    rank = int_field(require_field(payload, "rank", at), f"{at}.rank", minimum=0)
    images = list_field(require_field(payload, "theta", at), f"{at}.theta", rank)
    words = tuple(parse_word(text, rank, f"{at}.theta[{i}]") for i, text in enumerate(images))
    try:
        group = TwistedGroup(rank, FreeAutomorphism(rank, words))
    except NotAnInvolutionError as e:
        e.context["at"] = f"{at}.theta"
        raise

    phi = None
    if "phi" in payload:
        bits = list_field(payload["phi"], f"{at}.phi", rank)
        for i, bit in enumerate(bits):
            if bit not in (0, 1) or isinstance(bit, bool):
                raise SchemaError(f"phi entries are bits, got {bit!r}",
                                  error_code="NOT_A_BIT", context={"at": f"{at}.phi[{i}]"})
        phi = OrientationHom(tuple(bits))
    return group, phi


def twisted_group_to_dict(G: TwistedGroup, phi: Optional[OrientationHom] = None) -> dict:
    out = {"rank": G.rank, "theta": [format_word(image) for image in G.theta.images]}
    if phi is not None:
        out["phi"] = list(phi.values)
    return out


def parse_claim(payload: Any, at: str = "$") -> DyerScottClaim:
    """{"fixed": [i, ...], "swaps": [[i, j], ...], "lambdas": [{"pivot": i, "conjugated": [...]}]}"""
    if not isinstance(payload, dict):
        raise SchemaError(f"Expected an object at {at}", error_code="NOT_AN_OBJECT",
                          context={"at": at})
    fixed = tuple(int_field(v, f"{at}.fixed[{i}]")
                  for i, v in enumerate(list_field(payload.get("fixed", []), f"{at}.fixed")))
    swaps = []
    for i, pair in enumerate(list_field(payload.get("swaps", []), f"{at}.swaps")):
        pair = list_field(pair, f"{at}.swaps[{i}]", 2)
        swaps.append(tuple(int_field(v, f"{at}.swaps[{i}][{j}]") for j, v in enumerate(pair)))
    lambdas = []
    for i, block in enumerate(list_field(payload.get("lambdas", []), f"{at}.lambdas")):
        where = f"{at}.lambdas[{i}]"
        pivot = int_field(require_field(block, "pivot", where), f"{where}.pivot")
        conjugated = list_field(block.get("conjugated", []), f"{where}.conjugated")
        lambdas.append(LambdaBlock(pivot, tuple(
            int_field(v, f"{where}.conjugated[{j}]") for j, v in enumerate(conjugated))))
    return DyerScottClaim(fixed, tuple(swaps), tuple(lambdas))


def parse_shape(value: Any, at: str = "$.shape") -> VCShape:
    try:
        return VCShape(value)
    except ValueError:
        raise SchemaError(f"Unknown shape {value!r}", error_code="BAD_SHAPE",
                          context={"at": at, "allowed": [s.value for s in VCShape]})


def error_envelope(error: SphereActionsError) -> dict:
    return {"error": str(error.message), "at": error.location}
