import pytest

from sphere_actions.algebra.intlat import IntMatrix
from sphere_actions.core.exceptions import (
    InvalidInputError, ParseError, RangeValidationError, SchemaError
)
from sphere_actions.utils.serialization import (
    error_envelope, parse_claim, parse_matrix, parse_shape, parse_twisted_group, parse_word,
    twisted_group_to_dict
)
from sphere_actions.utils.validation import AlgebraValidator


def test_parse_word():
    g = parse_word("x1 x2^-1 x1^1", 2)
    assert str(g) == "x1 x2^-1 x1"
    assert parse_word("", 3).is_identity
    assert parse_word("x1 x1^-1", 1).is_identity


@pytest.mark.parametrize("text", ["x0", "x1^2", "y1", "x1^-", "x3"])
def test_parse_word_rejects_bad_tokens(text):
    with pytest.raises(ParseError) as excinfo:
        parse_word(text, 2, at="$.theta[1]")
    assert excinfo.value.location == "$.theta[1]"
    assert excinfo.value.context["position"] == 0


def test_parse_matrix():
    assert parse_matrix("1 0; 1 -1") == IntMatrix(((1, 0), (1, -1)))
    assert parse_matrix("  ") == IntMatrix((), 0)
    with pytest.raises(ParseError):
        parse_matrix("1 a; 0 1")
    with pytest.raises(ParseError) as excinfo:
        parse_matrix("1 0; 1")
    assert excinfo.value.location == "$[1]"


def test_twisted_group_round_trip():
    payload = {"rank": 2, "theta": ["x1^-1", "x1^-1 x2 x1"], "phi": [0, 1]}
    group, phi = parse_twisted_group(payload)
    assert twisted_group_to_dict(group, phi) == payload


def test_twisted_group_without_phi():
    group, phi = parse_twisted_group({"rank": 1, "theta": ["x1"]})
    assert phi is None
    assert twisted_group_to_dict(group) == {"rank": 1, "theta": ["x1"]}


@pytest.mark.parametrize("payload, at", [
    ([], "$"),
    ({"rank": -1, "theta": []}, "$.rank"),
    ({"rank": True, "theta": []}, "$.rank"),
    ({"rank": 1, "theta": "x1"}, "$.theta"),
    ({"rank": 1, "theta": ["x1", "x1"]}, "$.theta"),
    ({"rank": 1, "theta": ["x1"], "phi": [True]}, "$.phi[0]"),
])
def test_twisted_group_schema_errors(payload, at):
    with pytest.raises(SchemaError) as excinfo:
        parse_twisted_group(payload)
    assert excinfo.value.location == at


def test_parse_claim():
    claim = parse_claim({"fixed": [3], "swaps": [[1, 2]],
                         "lambdas": [{"pivot": 4, "conjugated": [5]}]})
    assert claim.indices() == [3, 1, 2, 4, 5]
    with pytest.raises(SchemaError) as excinfo:
        parse_claim({"swaps": [[1, 2, 3]]}, "$.claim")
    assert excinfo.value.location == "$.claim.swaps[0]"


def test_parse_shape():
    with pytest.raises(SchemaError) as excinfo:
        parse_shape("Q8")
    assert "ZsemiZ2" in excinfo.value.context["allowed"]


def test_error_envelope():
    error = SchemaError("Missing field 'phi'", error_code="MISSING_FIELD", context={"at": "$.phi"})
    assert error_envelope(error) == {"error": "Missing field 'phi'", "at": "$.phi"}


def test_algebra_validator():
    AlgebraValidator.validate_bit_vector((0, 1, 1), 3)
    with pytest.raises(RangeValidationError):
        AlgebraValidator.validate_bit_vector((0, 2), 2)
    with pytest.raises(RangeValidationError):
        AlgebraValidator.validate_rank(-1)
    with pytest.raises(InvalidInputError):
        AlgebraValidator.validate_sign(0)
