import json

import pytest

from residue.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out) if out else None, err


def test_sing_node(capsys):
    code, out, _ = run_json(capsys, "sing", "--curve", "s^2*(s+1)-t^2")
    assert code == 0
    (pt,) = out["points"]
    assert pt["coords"] == ["0", "0"] and pt["vDim"] == 1 and len(pt["branches"]) == 2
    assert pt["unibranch"] is False


def test_sing_conic_and_cusp(capsys):
    code, out, _ = run_json(capsys, "sing", "--curve", "s^2+t^2-1")
    assert code == 0 and out["points"] == []
    code, out, _ = run_json(capsys, "sing", "--curve", "t^2-s^3")
    assert out["points"][0]["unibranch"] is True


def test_parshin_examples(capsys):
    assert run(capsys, "parshin", "--form", "1/(s*t) ds^dt", "--chain", "t,origin,0")[1] == "1\n"
    c0 = run(capsys, "parshin", "--form", "[ds^dt / node^1]", "--chain", "node,origin,0")[1]
    c1 = run(capsys, "parshin", "--form", "[ds^dt / node^1]", "--chain", "node,origin,1")[1]
    assert c0 == "1/2\n" and c1 == "-1/2\n"
    assert run(capsys, "parshin", "--form", "s ds^dt", "--chain", "node,origin,0")[1] == "0\n"


def test_parshin_traced(capsys):
    args = ("parshin", "--form", "[ds^dt / inode^1]", "--chain", "inode,origin,0")
    code, out, _ = run_json(capsys, *args)
    assert out["value"] == {"ext": "θ^2 + 1", "coeffs": ["0", "-1/2"]}
    assert out["traced"] == "0"
    assert run(capsys, *args, "--traced")[1] == "0\n"


def test_sumcheck_examples(capsys):
    code, out, _ = run_json(capsys, "sumcheck", "--p1", "--form", "1/(s^2-1) ds")
    assert code == 0 and out["total"] == "0" and out["pass"] is True
    code, out, _ = run_json(capsys, "sumcheck", "--form", "1/(s*t) ds^dt", "--point", "0,0")
    assert code == 0 and out["total"] == "0"
    code, out, _ = run_json(capsys, "sumcheck", "--form", "s ds", "--p1")
    assert code == 0 and out["contributions"] == [{"at": "∞", "value": "0"}]


def test_membership_and_fclass(capsys):
    code, out, _ = run_json(capsys, "membership", "--curve", "node", "--class", "[ds^dt / node^1]")
    assert code == 0 and out["membership"]["inL"] is False
    code, out, _ = run_json(capsys, "membership", "--curve", "cusp", "--class", "[ds^dt / cusp^1]")
    assert out["membership"]["inL"] is True
    code, out, _ = run_json(capsys, "fclass", "--curve", "node")
    assert code == 0 and out["fundamentalClass"]["allZero"] is True


def test_report_schema(capsys):
    code, out, _ = run_json(capsys, "membership", "--curve", "node", "--class", "[ds^dt / node^1]")
    assert {"curve", "points", "membership"} <= out.keys()
    assert {"coords", "field", "vDim", "unibranch", "branches"} <= out["points"][0].keys()


def test_curve_definitions(capsys):
    code, out, _ = run_json(
        capsys, "membership", "--curve", "c=t^2-s^5", "--class", "[ds^dt / c^1]"
    )
    assert code == 0 and out["membership"]["inL"] is True


def test_branches(capsys):
    code, out, _ = run_json(capsys, "branches", "--curve", "cusp")
    (b,) = out["branches"]
    assert b["e"] == 2 and b["S"]["coeffs"] == ["1"] and b["S"]["low"] == 2


def test_json_is_deterministic(capsys):
    args = ("sing", "--curve", "node")
    a = run(capsys, *args, "--json")[1]
    b = run(capsys, *args, "--json")[1]
    assert a == b
    assert json.dumps(json.loads(a), sort_keys=True, ensure_ascii=False, indent=2) + "\n" == a


def test_no_floats_in_json(capsys):
    _, out, _ = run(capsys, "sing", "--curve", "node", "--json")

    def walk(x):
        assert not isinstance(x, float)
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        elif isinstance(x, list):
            for v in x:
                walk(v)

    walk(json.loads(out))


def test_prec_double(capsys):
    code, out, _ = run(
        capsys, "parshin", "--form", "[ds^dt / node^2]", "--chain", "node,origin,0", "--prec-double"
    )
    assert code == 0 and "stable" in out
    code, out, _ = run_json(capsys, "fclass", "--curve", "cusp", "--prec-double")
    assert code == 0 and out["precisionDoubled"] is True


def test_emit_series(capsys):
    code, out, err = run(
        capsys, "parshin", "--form", "1/(s*t) ds^dt", "--chain", "t,origin,0", "--emit-series"
    )
    assert code == 0 and out == "1\n"
    (record,) = json.loads(err)
    assert record["normalization"] == "t" and record["tower"]["var"] == "g"


@pytest.mark.parametrize(
    "argv, code",
    [
        (["sing", "--curve", "s^2+"], 2),
        (["parshin", "--form", "1/(s*x) ds^dt", "--chain", "t,origin,0"], 2),
        (["membership", "--class", "[ds^dt / nope^1]"], 2),
        (["sing", "--curve", "t^2-(s^2-2)^2*(s+1)"], 3),
        (["parshin", "--form", "[ds^dt / node^1]", "--chain", "node,origin,5"], 1),
        (["parshin", "--form", "[ds^dt / node^1]", "--chain", "node,1,1,0"], 1),
    ],
)
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_precision_exhaustion_exit_code(capsys, monkeypatch):
    monkeypatch.setenv("RESIDUE_MAX_ESCALATIONS", "0")
    argv = ["parshin", "--form", "[ds^dt / cusp^3]", "--chain", "cusp,origin,0",
            "--prec-inner", "1", "--prec-outer", "1"]
    assert run(capsys, *argv)[0] == 4
    monkeypatch.setenv("RESIDUE_MAX_ESCALATIONS", "4")
    assert run(capsys, *argv)[0] == 0


def test_nonzero_sum_exit_code(capsys, monkeypatch):
    import residue.cli as cli
    from residue.forms import ResidueSum

    monkeypatch.setattr(cli, "global_residue_check_p1", lambda form: ResidueSum(1, (("0", 1),)))
    assert run(capsys, "sumcheck", "--p1", "--form", "1/s ds")[0] == 5
