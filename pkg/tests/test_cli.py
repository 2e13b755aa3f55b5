import io
import json

import pytest

from sphere_actions.cli.main import build_parser, main
from sphere_actions.cli.selfcheck import (
    check_free_products, check_vc_table, expected_cover_rows
)
from sphere_actions.core.enums import ManifoldLabel


def _run(argv, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def _run_json(argv, capsys, monkeypatch, payload):
    code, out = _run(argv, capsys, json.dumps(payload), monkeypatch)
    return code, json.loads(out)


def test_realizable_negative_with_witness(capsys, monkeypatch):
    code, out = _run_json(["realizable"], capsys, monkeypatch,
                          {"rank": 1, "theta": ["x1^-1"], "phi": [1]})
    assert code == 0
    assert out["verdict"] == "not_realizable"
    assert out["witness"] == "x1"
    assert out["seed"] == 20240917


def test_realizable_positive(capsys, monkeypatch):
    code, out = _run_json(["realizable", "--seed", "5"], capsys, monkeypatch,
                          {"rank": 1, "theta": ["x1"], "phi": [1]})
    assert code == 0
    assert out["verdict"] == "realizable"
    assert out["seed"] == 5


def test_realizable_invalid_orientation(capsys, monkeypatch):
    code, out = _run_json(["realizable"], capsys, monkeypatch,
                          {"rank": 2, "theta": ["x2", "x1"], "phi": [1, 0]})
    assert code == 1
    assert out["at"] == "$.phi[0]"
    assert "violated at generators [1, 2]" in out["error"]


def test_realizable_unknown_exits_two(capsys, monkeypatch):
    code, out = _run_json(["realizable", "--word-budget", "3"], capsys, monkeypatch,
                          {"rank": 2, "theta": ["x2^-1 x1^-1 x2", "x2^-1"], "phi": [1, 0]})
    assert code == 2
    assert out["verdict"] == "unknown"


def test_realizable_reads_a_file(tmp_path, capsys):
    path = tmp_path / "group.json"
    path.write_text(json.dumps({"rank": 2, "theta": ["x2", "x1"], "phi": [1, 1]}))
    code, out = _run(["realizable", str(path)], capsys)
    assert code == 0
    assert json.loads(out)["verdict"] == "realizable"


@pytest.mark.parametrize("payload, at", [
    ({"rank": 1, "theta": ["x1"]}, "$.phi"),
    ({"rank": 1, "theta": ["x2"], "phi": [0]}, "$.theta[0]"),
    ({"rank": 1, "theta": ["y1"], "phi": [0]}, "$.theta[0]"),
    ({"rank": 2, "theta": ["x1 x2", "x2"], "phi": [0, 0]}, "$.theta"),
    ({"rank": 1, "theta": ["x1"], "phi": [2]}, "$.phi[0]"),
    ({"theta": ["x1"], "phi": [0]}, "$.rank"),
])
def test_schema_errors_carry_a_location(payload, at, capsys, monkeypatch):
    code, out = _run_json(["realizable"], capsys, monkeypatch, payload)
    assert code == 1
    assert out["at"] == at
    assert set(out) == {"error", "at"}


def test_malformed_json(capsys, monkeypatch):
    code, out = _run(["realizable"], capsys, "{not json", monkeypatch)
    assert code == 1
    assert json.loads(out)["at"] == "$"


def test_canonical_form(capsys):
    code, out = _run(["canonical-form", "--matrix", "1 0; 1 -1"], capsys)
    out = json.loads(out)
    assert code == 0
    assert (out["k"], out["r"], out["s"]) == (1, 0, 0)
    assert out["P_inv_M_P"] == [[0, 1], [1, 0]]
    assert out["verified"] is True


def test_canonical_form_single_entry(capsys, monkeypatch):
    code, out = _run(["canonical-form"], capsys, "-1", monkeypatch)
    assert code == 0
    assert json.loads(out) == {"k": 0, "r": 0, "s": 1, "P": [[1]], "P_inv_M_P": [[-1]],
                               "verified": True}


def test_canonical_form_rejects_non_involution(capsys):
    code, out = _run(["canonical-form", "--matrix", "2 0; 0 1"], capsys)
    assert code == 1
    assert "square to the identity" in json.loads(out)["error"]


def test_classify_vc(capsys, monkeypatch):
    code, out = _run_json(["classify-vc"], capsys, monkeypatch, {"shape": "Z", "phi_z": 1})
    assert code == 0
    assert out["orbit_space"] == "S1twistS2n"


def test_classify_vc_invalid_bits(capsys, monkeypatch):
    code, out = _run_json(["classify-vc"], capsys, monkeypatch,
                          {"shape": "ZsemiZ2", "phi_z": 1})
    assert code == 1
    assert out["status"] == "invalid_input"


def test_classify_vc_unknown_shape(capsys, monkeypatch):
    code, out = _run_json(["classify-vc"], capsys, monkeypatch, {"shape": "Z3"})
    assert code == 1
    assert out["at"] == "$.shape"


def test_covers(capsys):
    code, out = _run(["covers", "RPsharpRP", "--max-index", "8"], capsys)
    rows = json.loads(out)["rows"]
    assert code == 0
    assert len(rows) == 1
    assert rows[0]["group"] == {"family": "Cyclic", "k": 2}
    assert rows[0]["base"] == "RPsharpRP"


def test_covers_pretty_table(capsys):
    code, out = _run(["covers", "S1xRP2n", "--max-index", "3", "--pretty"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split() == ["index", "group", "base"]
    assert "Cyclic(3)" in lines[-1]


def test_covers_rejects_unknown_label_and_bound(capsys):
    assert _run(["covers", "S2n"], capsys)[0] == 1
    code, out = _run(["covers", "S1xS2n", "--max-index", "60"], capsys)
    assert code == 1
    assert "outside 1..48" in json.loads(out)["error"]


@pytest.mark.parametrize("bound", ["0", "-3"])
def test_covers_rejects_index_below_one(capsys, bound):
    code, out = _run(["covers", "S1xS2n", "--max-index", bound], capsys)
    assert code == 1
    assert json.loads(out) == {"at": "$", "error": f"max_index {bound} is outside 1..48"}


def test_free_product_of_two_z2(capsys, monkeypatch):
    payload = [{"rank": 0, "theta": []}, {"rank": 0, "theta": []}]
    code, out = _run_json(["free-product"], capsys, monkeypatch, payload)
    assert code == 0
    assert out["group"] == {"rank": 1, "theta": ["x1^-1"]}


def test_free_product_combines_orientations(capsys, monkeypatch):
    payload = [{"rank": 1, "theta": ["x1"], "phi": [1]}, {"rank": 0, "theta": [], "phi": []}]
    code, out = _run_json(["free-product"], capsys, monkeypatch, payload)
    assert code == 0
    assert out["group"] == {"rank": 2, "theta": ["x1", "x2^-1"], "phi": [1, 0]}
    assert out["embedding"]["new_generators"] == [2]


def test_verify_dyer_scott(capsys, monkeypatch):
    payload = {"group": {"rank": 2, "theta": ["x1^-1", "x1^-1 x2 x1"]},
               "claim": {"lambdas": [{"pivot": 1, "conjugated": [2]}]}}
    code, out = _run_json(["verify-dyer-scott"], capsys, monkeypatch, payload)
    assert code == 0
    assert out == {"holds": True}


def test_verify_dyer_scott_malformed_claim(capsys, monkeypatch):
    payload = {"group": {"rank": 2, "theta": ["x2", "x1"]}, "claim": {"fixed": [1]}}
    code, _ = _run_json(["verify-dyer-scott"], capsys, monkeypatch, payload)
    assert code == 1


def test_verify_action(capsys, monkeypatch):
    code, out = _run_json(["verify-action", "--samples", "50", "--seed", "3"], capsys,
                          monkeypatch, {"rank": 1, "theta": ["x1^-1"], "phi": [1]})
    assert code == 0
    assert out["seed"] == 3
    assert out["passed"] is False
    assert out["freeness_failures"]


def test_output_is_deterministic(capsys, monkeypatch):
    payload = {"rank": 2, "theta": ["x1^-1", "x1^-1 x2 x1"], "phi": [0, 1]}
    first = _run_json(["verify-action", "--samples", "30"], capsys, monkeypatch, payload)
    second = _run_json(["verify-action", "--samples", "30"], capsys, monkeypatch, payload)
    assert first == second


def test_parser_lists_every_subcommand():
    parser = build_parser()
    actions = [a for a in parser._actions if a.dest == "command"]
    assert set(actions[0].choices) == {
        "realizable", "canonical-form", "classify-vc", "covers", "free-product",
        "verify-dyer-scott", "verify-action", "selfcheck",
    }


def test_selfcheck_suites_that_run_quickly():
    assert check_vc_table().passed
    free = check_free_products()
    assert free.passed
    assert free.checked == 399


def test_expected_cover_rows_for_rp_sharp_rp():
    rows = expected_cover_rows(ManifoldLabel.RP_SHARP_RP, 48)
    assert len(rows) == 1
