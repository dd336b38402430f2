"""Command-line interface: grammar, exit codes, and exact serialization."""

import json
from fractions import Fraction

import pytest

from cgk.algebra import AlgebraSpec, Gen
from cgk.cli import (
    diffop_from_json,
    diffop_to_json,
    monomial_from_json,
    monomial_to_json,
    run,
    vector_from_json,
    vector_to_json,
)
from cgk.diffop import parse_diffop
from cgk.invariants import invariant_operator
from cgk.reps import chart, left_action
from cgk.scalars import Scalar
from cgk.singular import singular_closed
from cgk.verma import ModuleVector, PbwMonomial

D1 = AlgebraSpec(1, 1, "mass")
D3 = AlgebraSpec(1, 3, "mass")
EX2 = AlgebraSpec(2, 2, "exotic")


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_pde_emit_latex_example(capsys):
    code, out, _ = invoke(
        capsys, "pde", "emit", "--d", "1", "--two-ell", "3", "--ext", "mass",
        "--q", "1", "--render", "latex",
    )
    assert code == 0
    assert "\\partial_{x_{1}}^{2}" in out
    assert "2 \\mu \\partial_{t}" in out
    assert "\\psi = 0" in out


def test_centerless_search_example(capsys):
    code, out, _ = invoke(
        capsys, "singular", "search", "--d", "1", "--two-ell", "2", "--ext",
        "none", "--kappa", "0", "--level", "2", "--render", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["dimension"] == 1
    assert payload["caveats"] == []
    assert vector_from_json(payload["vectors"][0]) == ModuleVector.of(
        PbwMonomial(0, (2,), ())
    )


def test_jacobi_example_exit_zero(capsys):
    code, out, _ = invoke(
        capsys, "algebra", "jacobi", "--d", "2", "--two-ell", "2", "--ext",
        "exotic", "--render", "json",
    )
    assert code == 0
    assert json.loads(out) == {"ok": True, "failures": []}


def test_verma_act_generic_equals_closed(capsys):
    argv = [
        "verma", "act", "--d", "2", "--two-ell", "3", "--ext", "mass",
        "--gen", "P1+", "--monomial", '{"h":1,"a":[1,0],"b":[0,0]}',
        "--render", "json",
    ]
    code, out, _ = invoke(capsys, *argv)
    assert code == 0
    generic = vector_from_json(json.loads(out)["vector"])
    code, out, _ = invoke(capsys, *argv, "--action", "closed")
    assert code == 0
    closed = vector_from_json(json.loads(out)["vector"])
    expected = ModuleVector.of(PbwMonomial(1, (1, 1), (0, 0))) + ModuleVector.of(
        PbwMonomial(0, (2, 0), (0, 0))
    )
    assert generic == closed == expected


def test_verma_basis_level_and_weight(capsys):
    code, out, _ = invoke(
        capsys, "verma", "basis", "--d", "1", "--two-ell", "1", "--ext", "mass",
        "--level", "2", "--render", "json",
    )
    assert code == 0
    basis = [monomial_from_json(m) for m in json.loads(out)["basis"]]
    assert basis == [PbwMonomial(0, (2,), ()), PbwMonomial(1, (0,), ())]
    code, out, _ = invoke(
        capsys, "verma", "basis", "--d", "1", "--two-ell", "1", "--ext", "mass",
        "--weight", '{"D": "-delta+2", "M": "-mu"}', "--render", "json",
    )
    assert code == 0
    assert [monomial_from_json(m) for m in json.loads(out)["basis"]] == basis


def test_verma_weight_output(capsys):
    code, out, _ = invoke(
        capsys, "verma", "weight", "--d", "2", "--two-ell", "1", "--ext", "mass",
        "--monomial", '{"h":1,"a":[0],"b":[1]}', "--render", "json",
    )
    assert code == 0
    assert json.loads(out)["weight"] == {
        "D": "-delta+3", "J": "-r-1", "M": "-mu",
    }


def test_singular_condition_and_verify(capsys):
    code, out, _ = invoke(
        capsys, "singular", "condition", "--d", "1", "--two-ell", "1", "--ext",
        "mass", "--q", "1", "--render", "json",
    )
    assert code == 0
    assert json.loads(out) == {"q": 1, "condition": "2*delta+1", "delta": "-1/2"}
    code, _, _ = invoke(
        capsys, "singular", "verify", "--d", "1", "--two-ell", "1", "--ext",
        "mass", "--q", "1", "--delta", "auto",
    )
    assert code == 0
    code, _, _ = invoke(
        capsys, "singular", "verify", "--d", "1", "--two-ell", "1", "--ext",
        "mass", "--q", "1", "--delta", "5",
    )
    assert code == 1


def test_pde_check_exit_codes(capsys):
    code, out, _ = invoke(
        capsys, "pde", "check", "--d", "2", "--two-ell", "2", "--ext", "exotic",
        "--q", "1", "--delta", "-2",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] is True
    assert all(entry["ok"] for entry in payload["generators"])
    code, out, _ = invoke(
        capsys, "pde", "check", "--d", "2", "--two-ell", "2", "--ext", "exotic",
        "--q", "1", "--delta", "0",
    )
    assert code == 1
    assert json.loads(out)["ok"] is False


def test_usage_errors_exit_two(capsys):
    cases = [
        ["algebra", "show", "--d", "1", "--two-ell", "1", "--ext", "bogus"],
        ["algebra", "show", "--d", "3", "--two-ell", "1", "--ext", "mass"],
        ["verma", "act", "--d", "1", "--two-ell", "1", "--ext", "mass",
         "--gen", "Q9", "--monomial", '{"h":0,"a":[0]}'],
        ["verma", "act", "--d", "1", "--two-ell", "1", "--ext", "mass",
         "--gen", "H", "--monomial", "not json"],
        ["verma", "basis", "--d", "1", "--two-ell", "1", "--ext", "mass"],
        ["pde", "check", "--d", "1", "--two-ell", "1", "--ext", "mass",
         "--q", "1"],
        ["reps", "right", "--d", "1", "--two-ell", "1", "--ext", "mass",
         "--gen", "C"],
        ["singular", "search", "--d", "1", "--two-ell", "1", "--ext", "mass"],
        ["nonsense"],
    ]
    for argv in cases:
        code = run(argv)
        capsys.readouterr()
        assert code == 2, argv


def test_vector_json_round_trip():
    for spec, q in [(D1, 2), (D3, 1), (EX2, 1)]:
        v = singular_closed(spec, q)
        assert vector_from_json(vector_to_json(v), spec) == v
    mono = PbwMonomial(3, (1, 0), (0, 2))
    assert monomial_from_json(monomial_to_json(mono)) == mono


def test_diffop_json_round_trip():
    ops = [invariant_operator(D3, q) for q in (1, 2)]
    ops += [left_action(EX2, g) for g in (Gen("C"), Gen("D"), Gen("P", 2, "+"))]
    ops.append(parse_diffop("0", chart(D1)))
    ops.append(parse_diffop("(2*delta+1)/mu*d/dx0 - t^2*x0", chart(D1)))
    for op in ops:
        entries = diffop_to_json(op)
        assert diffop_from_json(entries, op.chart) == op
        for entry in entries:
            assert set(entry) == {"coef", "partials"}
            assert all(order >= 1 for order in entry["partials"].values())


def test_reps_json_shape(capsys):
    code, out, _ = invoke(
        capsys, "reps", "left", "--d", "1", "--two-ell", "1", "--ext", "mass",
        "--gen", "C", "--render", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["chart"] == ["t", "x0"]
    op = diffop_from_json(payload["operator"], chart(D1))
    assert op == left_action(D1, Gen("C"))


def test_out_file(tmp_path, capsys):
    target = tmp_path / "result.json"
    code, out, _ = invoke(
        capsys, "singular", "condition", "--d", "1", "--two-ell", "1", "--ext",
        "mass", "--q", "2", "--render", "json", "--out", str(target),
    )
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["delta"] == "1/2"


def test_selftest_with_reduced_caps(capsys, monkeypatch):
    monkeypatch.setenv("CGK_CAPS_LEVEL", "2")
    code, out, _ = invoke(capsys, "selftest")
    assert code == 0
    lines = [line for line in out.strip().splitlines() if line.startswith("[")]
    assert len(lines) == 8
    assert all(line.startswith("[PASS]") for line in lines)
    assert "selftest: PASS" in out


def test_bad_caps_env_rejected(capsys, monkeypatch):
    monkeypatch.setenv("CGK_CAPS_LEVEL", "many")
    code, _, err = invoke(capsys, "selftest")
    assert code == 2
