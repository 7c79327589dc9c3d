import json
from fractions import Fraction as F

import pytest

from quarticmoduli import cli
from quarticmoduli.degeneration import make_blowup_chart_point
from quarticmoduli.field import QQ
from quarticmoduli.matrices import make_matrix


def write_json(path, data):
    path.write_text(json.dumps(data))
    return str(path)


def m01_matrix_file(tmp_path):
    m = make_matrix((3, 2, 2), (1, 1, 1), [
        ["x1^2", "0", "0"],
        ["-x2", "0", "x0"],
        ["x1", "-x0", "0"],
    ])
    return write_json(tmp_path / "m01.json", m.to_json_dict())


def test_classify_valid_matrix(tmp_path, capsys):
    code = cli.main(["classify", m01_matrix_file(tmp_path)])
    out = capsys.readouterr().out
    assert code == 0
    assert "label: M01" in out
    assert "quartic: x0^2*x1^2" in out
    assert "line: x0" in out


def test_classify_json_output(tmp_path, capsys):
    code = cli.main(["classify", m01_matrix_file(tmp_path), "--json"])
    data = json.loads(capsys.readouterr().out)
    assert code == 0
    assert data["label"] == "M01"
    assert data["quartic"] == "x0^2*x1^2"


def test_classify_not_stable_exits_two(tmp_path, capsys):
    m = make_matrix((3, 2, 2), (1, 1, 1), [
        ["x0^2", "0", "0"],
        ["x0", "x1", "0"],
        ["0", "0", "0"],
    ])
    path = write_json(tmp_path / "bad.json", m.to_json_dict())
    code = cli.main(["classify", path])
    assert code == 2
    assert "NotStable" in capsys.readouterr().out


def test_classify_res1_shape(tmp_path, capsys):
    m = make_matrix((3, 3), (2, 0), [["x0", "x1^3"], ["x1", "x2^3"]])
    path = write_json(tmp_path / "res1.json", m.to_json_dict())
    code = cli.main(["classify", path])
    out = capsys.readouterr().out
    assert code == 0
    assert "label: M10" in out


def test_classify_malformed_file_exits_one(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code = cli.main(["classify", str(path)])
    assert code == 1
    assert "error:" in capsys.readouterr().err


def test_classify_missing_file_exits_one(tmp_path, capsys):
    code = cli.main(["classify", str(tmp_path / "nope.json")])
    assert code == 1
    assert "error:" in capsys.readouterr().err


def family_file(tmp_path):
    pt = make_blowup_chart_point(
        domain=QQ,
        alpha=F(0),
        beta=F(0),
        gamma=F(0),
        delta=F(1),
        q0_text="x1^2",
        q1_text="0",
        q2_text="0",
        ab_cd=(F(1), F(0), F(0), F(0)),
        chart="a",
        t=F(1),
    )
    data = pt.to_json_dict(t_values=[F(1), F(1, 2), F(0)])
    return write_json(tmp_path / "family.json", data)


def test_limit_traces_family(tmp_path, capsys):
    code = cli.main(["limit", family_file(tmp_path)])
    out = capsys.readouterr().out
    assert code == 0
    assert "t = 1: M00" in out
    assert "t = 1/2: M00" in out
    assert "t = 0" not in out.replace("t -> 0", "")
    assert "limit quartic: x0^2*x1^2 - x1^2*x2^2" in out


def test_limit_json(tmp_path, capsys):
    code = cli.main(["limit", family_file(tmp_path), "--json"])
    data = json.loads(capsys.readouterr().out)
    assert code == 0
    assert [step["label"] for step in data["trace"]] == ["M00", "M00"]
    assert data["limit"]["quartic"] == "x0^2*x1^2 - x1^2*x2^2"


def test_betti_builtin_m(capsys):
    code = cli.main(["betti", "M", "--json"])
    data = json.loads(capsys.readouterr().out)
    assert code == 0
    assert data["coefficients"] == [
        1, 2, 6, 10, 14, 15, 16, 16, 16, 16, 16, 16, 15, 14, 10, 6, 2, 1,
    ]
    assert any("palindromic" in note for note in data["notes"])


def test_betti_projective_space(capsys):
    code = cli.main(["betti", "P5"])
    out = capsys.readouterr().out.strip()
    assert code == 0
    assert out == "1 + q + q^2 + q^3 + q^4 + q^5"


def test_betti_expression_file(tmp_path, capsys):
    expr = {
        "type": "substitute",
        "total": {
            "type": "product",
            "factors": [
                {"type": "projective", "n": 2},
                {"type": "projective", "n": 2},
            ],
        },
        "removed": {"type": "projective", "n": 1},
        "inserted": {"type": "projbundle",
                     "base": {"type": "projective", "n": 1}, "rank": 2},
    }
    path = write_json(tmp_path / "expr.json", expr)
    code = cli.main(["betti", str(path), "--json"])
    data = json.loads(capsys.readouterr().out)
    assert code == 0
    # P2 x P2 - P1 + P1 x P1 = (1,2,3,2,1) - (1,1) + (1,2,1)
    assert data["coefficients"] == [1, 3, 4, 2, 1]


def test_betti_unknown_name_exits_one(capsys):
    code = cli.main(["betti", "XYZ"])
    assert code == 1
    assert "error:" in capsys.readouterr().err


def test_verify_all_passes(capsys):
    code = cli.main(["verify", "--all", "--json"])
    data = json.loads(capsys.readouterr().out)
    assert code == 0
    assert data["all_passed"]
    assert len(data["reports"]) == 7


def test_verify_single_with_alpha(capsys):
    code = cli.main(["verify", "transition", "--alpha", "3"])
    out = capsys.readouterr().out
    assert code == 0
    assert "[pass] transition" in out


def test_verify_unknown_name_exits_one(capsys):
    code = cli.main(["verify", "no-such-check"])
    assert code == 1
    assert "unknown verifier" in capsys.readouterr().err


def test_verify_requires_name_or_all(capsys):
    with pytest.raises(SystemExit):
        cli.main(["verify"])


def test_sample_deterministic(capsys):
    code = cli.main(["sample", "res0", "--field", "101", "--seed", "4",
                     "--count", "30", "--json"])
    first = json.loads(capsys.readouterr().out)
    assert code == 0
    cli.main(["sample", "res0", "--field", "101", "--seed", "4",
              "--count", "30", "--json"])
    second = json.loads(capsys.readouterr().out)
    assert first == second
    assert sum(first["histogram"].values()) == 30


def test_sample_requires_prime_field(capsys):
    code = cli.main(["sample", "res0"])
    assert code == 1
    assert "prime field" in capsys.readouterr().err


def test_sample_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("QML_SEED", "4")
    cli.main(["sample", "res0", "--field", "101", "--count", "30", "--json"])
    via_env = json.loads(capsys.readouterr().out)
    monkeypatch.delenv("QML_SEED")
    cli.main(["sample", "res0", "--field", "101", "--seed", "4",
              "--count", "30", "--json"])
    via_flag = json.loads(capsys.readouterr().out)
    assert via_env == via_flag
