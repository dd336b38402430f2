"""Command-line front end with exact JSON and LaTeX serialization.

Every subcommand drives one of the library modules; all numbers cross the
boundary as exact rationals or canonical scalar strings, so emitted JSON
re-parses to equal values.  ``cgk selftest`` runs the package's full
acceptance suite (the same runners the test suite uses).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    AlgebraSpec,
    Gen,
    InvalidSpec,
    UnknownGenerator,
    bracket,
    central_element,
    decomposition,
    enumerate_generators,
    jacobi_check,
    parse_gen,
    supported_specs,
)
from .diffop import (
    CoefPoly,
    DiffOp,
    Var,
    VariableMismatch,
    latex_diffop,
    op_power,
    parse_diffop,
    render_diffop,
    render_poly_in_vars,
)
from .invariants import (
    ConditionNotSatisfied,
    divisible_by_condition,
    intertwining_check,
    intertwining_residual,
    invariant_operator,
)
from .reps import UnsupportedGenerator, chart, left_action, rep_check, right_action
from .scalars import (
    DivisionByZero,
    Scalar,
    UnsupportedFamily,
    latex_scalar,
    parse_scalar,
    render_scalar,
)
from .singular import (
    delta_at_condition,
    predicted_weight,
    search_singular,
    singular_closed,
    singular_condition,
    verify_singular,
)
from .verma import (
    InfiniteSelection,
    MissingParameter,
    ModuleVector,
    PbwMonomial,
    act_closed_form,
    act_generic,
    check_monomial,
    level_basis,
    symbolic_params,
    weight_of,
)

DEFAULT_LEVEL_CAP = 4
PARAM_NAMES = ("delta", "mu", "theta", "r", "kappa")


class UsageError(ValueError):
    """Bad command-line input (reported on stderr with exit code 2)."""


@dataclass
class RunConfig:
    """One resolved invocation: family, parameters, caps, output shape."""

    spec: AlgebraSpec
    params: dict | None
    caps: dict = field(default_factory=dict)
    output: str = "text"

    def __post_init__(self):
        if any(v < 1 for v in self.caps.values()):
            raise UsageError("caps must be positive integers")


# --- exact serialization ---------------------------------------------------

def monomial_to_json(m):
    return {"h": m.h, "a": list(m.a), "b": list(m.b)}


def monomial_from_json(data, spec=None):
    try:
        m = PbwMonomial(
            int(data["h"]),
            tuple(int(v) for v in data.get("a", ())),
            tuple(int(v) for v in data.get("b", ())),
        )
    except (KeyError, TypeError) as exc:
        raise UsageError("monomial JSON needs integer fields h, a, b: %s" % exc)
    if spec is not None:
        check_monomial(spec, m)
    return m


def vector_to_json(v):
    return [
        {"monomial": monomial_to_json(m), "coef": render_scalar(c)}
        for m, c in v.items()
    ]


def vector_from_json(entries, spec=None):
    out = ModuleVector.zero()
    for entry in entries:
        out = out + ModuleVector.of(
            monomial_from_json(entry["monomial"], spec),
            parse_scalar(entry["coef"]),
        )
    return out


def diffop_to_json(op):
    entries = []
    for dexpo in sorted(op.terms, key=lambda d: (sum(d), d)):
        partials = {str(v): e for v, e in zip(op.chart, dexpo) if e}
        entries.append(
            {"coef": render_poly_in_vars(op.terms[dexpo]), "partials": partials}
        )
    return entries


def diffop_from_json(entries, ch):
    zero_expo = (0,) * len(ch)
    out = DiffOp.zero(ch)
    for entry in entries:
        lifted = parse_diffop(entry["coef"], ch)
        if any(d != zero_expo for d in lifted.terms):
            raise UsageError("coef %r is not order-zero" % (entry["coef"],))
        poly = lifted.terms.get(zero_expo, CoefPoly.zero(ch))
        dexpo = [0] * len(ch)
        for name, order in entry["partials"].items():
            dexpo[ch.index(Var.parse(name))] += int(order)
        out = out + DiffOp(ch, {tuple(dexpo): poly})
    return out


def weight_to_json(w):
    return {str(g): render_scalar(sc) for g, sc in sorted(w.eigen.items(), key=lambda kv: str(kv[0]))}


def combo_to_json(combo):
    return [{"gen": str(g), "coef": render_scalar(c)} for g, c in combo.items()]


def render_vector(v):
    if v.is_zero():
        return "0"
    parts = []
    for m, c in v.items():
        cs = render_scalar(c)
        if cs == "1":
            parts.append(str(m))
        elif cs == "-1":
            parts.append("-%s" % m)
        else:
            if "+" in cs[1:] or "-" in cs[1:] or "/" in cs:
                cs = "(%s)" % cs
            parts.append("%s*%s" % (cs, m))
    return " + ".join(parts).replace("+ -", "- ")


def render_combo(combo):
    if combo.is_zero:
        return "0"
    parts = []
    for g, c in combo.items():
        cs = render_scalar(c)
        if cs == "1":
            parts.append(str(g))
        elif cs == "-1":
            parts.append("-%s" % g)
        else:
            if "+" in cs[1:] or "-" in cs[1:] or "/" in cs:
                cs = "(%s)" % cs
            parts.append("%s*%s" % (cs, g))
    return " + ".join(parts).replace("+ -", "- ")


# --- argument plumbing -----------------------------------------------------

def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError("not a rational number: %r" % (text,))


def _add_spec_args(sub):
    sub.add_argument("--d", type=int, required=True, help="spatial dimension (1 or 2)")
    sub.add_argument(
        "--two-ell", dest="two_ell", type=int, required=True,
        help="twice the rational label (integers only)",
    )
    sub.add_argument(
        "--ext", required=True, choices=("mass", "exotic", "none"),
        help="central extension",
    )


def _add_param_args(sub, require_delta=False):
    sub.add_argument(
        "--delta", required=require_delta,
        help="scaling weight (rational, or 'auto' with --q)",
    )
    for name in ("mu", "theta", "r", "kappa"):
        sub.add_argument("--%s" % name, type=_fraction, help="family parameter")


def _add_output_args(sub, renders=("text", "json")):
    sub.add_argument("--render", choices=renders, default=renders[0])
    sub.add_argument("--out", help="write the result to FILE instead of stdout")


def _spec_of(args):
    return AlgebraSpec(args.d, args.two_ell, args.ext)


def _params_of(spec, args, q=None):
    provided = {}
    for name in PARAM_NAMES:
        val = getattr(args, name, None)
        if val is None:
            continue
        if name == "delta":
            text = str(val).strip()
            if text == "auto":
                if q is None:
                    raise UsageError("--delta auto needs --q")
                val = delta_at_condition(spec, q)
                if val is None:
                    raise UsageError(
                        "the centerless family has no delta condition root"
                    )
            else:
                try:
                    val = Fraction(text)
                except (ValueError, ZeroDivisionError):
                    raise UsageError("--delta expects a rational or 'auto'")
        provided[name] = val
    if not provided:
        return None
    params = symbolic_params(spec)
    params.update({k: v for k, v in provided.items() if k in params})
    return params


def _config(args, q=None):
    spec = _spec_of(args)
    return RunConfig(
        spec=spec,
        params=_params_of(spec, args, q=q),
        caps={"level": _level_cap()},
        output=getattr(args, "render", "text"),
    )


def _level_cap():
    raw = os.environ.get("CGK_CAPS_LEVEL")
    if raw is None:
        return DEFAULT_LEVEL_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise UsageError("CGK_CAPS_LEVEL must be an integer, got %r" % (raw,))
    if cap < 0:
        raise UsageError("CGK_CAPS_LEVEL must be non-negative")
    return cap


def _emit(args, text):
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _emit_json(args, payload):
    _emit(args, json.dumps(payload, indent=2, sort_keys=True))


# --- subcommand handlers ---------------------------------------------------

def cmd_algebra_show(args):
    cfg = _config(args)
    spec = cfg.spec
    plus, zero, minus = decomposition(spec)
    gens = enumerate_generators(spec)
    brackets = []
    for i, x in enumerate(gens):
        for y in gens[i + 1:]:
            combo = bracket(spec, x, y)
            if not combo.is_zero:
                brackets.append((x, y, combo))
    if cfg.output == "json":
        central = central_element(spec)
        _emit_json(args, {
            "spec": {"d": spec.d, "twoEll": spec.twoEll, "ext": spec.ext},
            "blocks": {
                "plus": [str(g) for g in plus],
                "zero": [str(g) for g in zero],
                "minus": [str(g) for g in minus],
            },
            "central": str(central) if central else None,
            "brackets": [
                {"x": str(x), "y": str(y), "value": combo_to_json(c)}
                for x, y, c in brackets
            ],
        })
        return 0
    lines = [
        "g+ : %s" % ", ".join(map(str, plus)),
        "g0 : %s" % ", ".join(map(str, zero)),
        "g- : %s" % ", ".join(map(str, minus)),
    ]
    for x, y, combo in brackets:
        lines.append("[%s, %s] = %s" % (x, y, render_combo(combo)))
    _emit(args, "\n".join(lines))
    return 0


def cmd_algebra_jacobi(args):
    cfg = _config(args)
    failures = jacobi_check(cfg.spec)
    if cfg.output == "json":
        _emit_json(args, {
            "ok": not failures,
            "failures": [
                {"x": str(x), "y": str(y), "z": str(z),
                 "residual": combo_to_json(r)}
                for x, y, z, r in failures
            ],
        })
    else:
        gens = enumerate_generators(cfg.spec)
        if failures:
            lines = ["jacobi: FAIL (%d triples)" % len(failures)]
            lines += [
                "  [[%s,%s],%s]-cycle residue: %s" % (x, y, z, render_combo(r))
                for x, y, z, r in failures
            ]
            _emit(args, "\n".join(lines))
        else:
            _emit(args, "jacobi: ok (%d generators, all triples close)" % len(gens))
    return 1 if failures else 0


def cmd_verma_act(args):
    cfg = _config(args)
    gen = parse_gen(args.gen)
    mono = monomial_from_json(json.loads(args.monomial), cfg.spec)
    action = act_closed_form if args.action == "closed" else act_generic
    result = action(cfg.spec, gen, ModuleVector.of(mono), params=cfg.params)
    if cfg.output == "json":
        _emit_json(args, {"vector": vector_to_json(result)})
    else:
        _emit(args, render_vector(result))
    return 0


def cmd_verma_basis(args):
    cfg = _config(args)
    if (args.level is None) == (args.weight is None):
        raise UsageError("give exactly one of --level or --weight")
    if args.level is not None:
        constraint = args.level
    else:
        raw = json.loads(args.weight)
        constraint = {key: parse_scalar(val) for key, val in raw.items()}
    monos = level_basis(cfg.spec, constraint, params=cfg.params)
    if cfg.output == "json":
        _emit_json(args, {"basis": [monomial_to_json(m) for m in monos]})
    else:
        _emit(args, "\n".join(str(m) for m in monos) if monos else "(empty)")
    return 0


def cmd_verma_weight(args):
    cfg = _config(args)
    mono = monomial_from_json(json.loads(args.monomial), cfg.spec)
    w = weight_of(cfg.spec, mono, params=cfg.params)
    if cfg.output == "json":
        _emit_json(args, {"weight": weight_to_json(w)})
    else:
        _emit(args, "\n".join(
            "%s -> %s" % (g, render_scalar(sc))
            for g, sc in sorted(w.eigen.items(), key=lambda kv: str(kv[0]))
        ))
    return 0


def cmd_singular_condition(args):
    cfg = _config(args)
    cond = singular_condition(cfg.spec, args.q)
    root = delta_at_condition(cfg.spec, args.q)
    if cfg.output == "json":
        _emit_json(args, {
            "q": args.q,
            "condition": render_scalar(cond),
            "delta": None if root is None else str(root),
        })
    elif root is None:
        _emit(args, "condition: %s = 0 (every level)" % render_scalar(cond))
    else:
        _emit(args, "condition: %s = 0  (delta = %s)" % (render_scalar(cond), root))
    return 0


def cmd_singular_closed(args):
    cfg = _config(args, q=args.q)
    v = singular_closed(cfg.spec, args.q, params=cfg.params)
    if cfg.output == "json":
        _emit_json(args, {"q": args.q, "vector": vector_to_json(v)})
    else:
        _emit(args, render_vector(v))
    return 0


def cmd_singular_verify(args):
    cfg = _config(args, q=args.q)
    v = singular_closed(cfg.spec, args.q, params=cfg.params)
    expected = predicted_weight(cfg.spec, args.q, params=cfg.params)
    report = verify_singular(cfg.spec, v, params=cfg.params, expect_weight=expected)
    if cfg.output == "json":
        _emit_json(args, {
            "q": args.q,
            "ok": report.ok,
            "weight": weight_to_json(report.weight) if report.weight else None,
            "failures": [_failure_json(f) for f in report.failures],
        })
    elif report.ok:
        _emit(args, "verify: PASS (level-%d vector is singular)" % args.q)
    else:
        lines = ["verify: FAIL"]
        lines += ["  %s" % _failure_text(f) for f in report.failures]
        _emit(args, "\n".join(lines))
    return 0 if report.ok else 1


def _failure_json(failure):
    if isinstance(failure, str):
        return {"kind": "degenerate", "detail": failure}
    kind, gen, payload = failure
    if isinstance(payload, ModuleVector):
        detail = vector_to_json(payload)
    elif isinstance(payload, Scalar):
        detail = render_scalar(payload)
    else:
        detail = str(payload)
    return {"kind": kind, "generator": str(gen), "detail": detail}


def _failure_text(failure):
    if isinstance(failure, str):
        return failure
    kind, gen, payload = failure
    if isinstance(payload, ModuleVector):
        detail = render_vector(payload)
    elif isinstance(payload, Scalar):
        detail = render_scalar(payload)
    else:
        detail = str(payload)
    return "%s %s: %s" % (kind, gen, detail)


def cmd_singular_search(args):
    cfg = _config(args, q=args.q)
    if args.level is not None:
        constraint = args.level
    elif args.q is not None:
        constraint = predicted_weight(cfg.spec, args.q, params=cfg.params).eigen
    else:
        raise UsageError("give --level, or --q for the predicted weight space")
    found = search_singular(cfg.spec, constraint, params=cfg.params)
    if cfg.output == "json":
        _emit_json(args, {
            "dimension": len(found),
            "vectors": [vector_to_json(v) for v in found.vectors],
            "caveats": [render_scalar(c) for c in found.caveats],
        })
    else:
        lines = ["kernel dimension: %d" % len(found)]
        lines += ["  %s" % render_vector(v) for v in found.vectors]
        if found.caveats:
            lines.append("valid where none of these vanish: %s"
                         % ", ".join(render_scalar(c) for c in found.caveats))
        _emit(args, "\n".join(lines))
    return 0


def cmd_reps(args):
    cfg = _config(args)
    gen = parse_gen(args.gen)
    if args.action == "left":
        op = left_action(cfg.spec, gen, params=cfg.params)
    else:
        op = right_action(cfg.spec, gen)
    if cfg.output == "json":
        _emit_json(args, {
            "chart": [str(v) for v in op.chart],
            "operator": diffop_to_json(op),
        })
    elif cfg.output == "latex":
        _emit(args, latex_diffop(op))
    else:
        _emit(args, render_diffop(op))
    return 0


def cmd_reps_check(args):
    cfg = _config(args)
    failures = rep_check(cfg.spec, side=args.side, params=cfg.params)
    if cfg.output == "json":
        _emit_json(args, {
            "side": args.side,
            "ok": not failures,
            "failures": [
                {"x": str(x), "y": str(y), "residual": diffop_to_json(r)}
                for x, y, r in failures
            ],
        })
    elif failures:
        lines = ["rep check (%s): FAIL" % args.side]
        lines += [
            "  [%s, %s] residual: %s" % (x, y, render_diffop(r))
            for x, y, r in failures
        ]
        _emit(args, "\n".join(lines))
    else:
        _emit(args, "rep check (%s): ok" % args.side)
    return 1 if failures else 0


def cmd_pde_emit(args):
    cfg = _config(args, q=args.q)
    op = invariant_operator(cfg.spec, args.q, params=cfg.params)
    if cfg.output == "json":
        _emit_json(args, {
            "q": args.q,
            "chart": [str(v) for v in op.chart],
            "operator": diffop_to_json(op),
        })
    elif cfg.output == "latex":
        _emit(args, "%s\\,\\psi = 0" % latex_diffop(op))
    else:
        _emit(args, "(%s) psi = 0" % render_diffop(op))
    return 0


def cmd_pde_check(args):
    cfg = _config(args, q=args.q)
    if cfg.params is None or "delta" not in cfg.params:
        raise UsageError("pde check needs --delta (a rational or 'auto')")
    try:
        failures = intertwining_check(cfg.spec, args.q, cfg.params)
    except ConditionNotSatisfied as exc:
        _emit_json(args, {"q": args.q, "ok": False, "error": str(exc)})
        return 1
    failed = {g: r for g, r in failures}
    report = []
    for gen in enumerate_generators(cfg.spec):
        entry = {"gen": str(gen), "ok": gen not in failed}
        if gen in failed:
            entry["residual"] = diffop_to_json(failed[gen])
        report.append(entry)
    _emit_json(args, {
        "q": args.q,
        "delta": render_scalar(cfg.params["delta"]) if isinstance(
            cfg.params["delta"], Scalar) else str(cfg.params["delta"]),
        "ok": not failures,
        "generators": report,
    })
    return 1 if failures else 0


def cmd_selftest(args):
    lines = []
    all_ok = True
    for name, runner in acceptance_criteria():
        ok, detail = runner()
        all_ok = all_ok and ok
        lines.append("[%s] %s: %s" % ("PASS" if ok else "FAIL", name, detail))
    lines.append("selftest: %s" % ("PASS" if all_ok else "FAIL"))
    _emit(args, "\n".join(lines))
    return 0 if all_ok else 1


# --- acceptance criteria (shared by selftest and the test suite) -----------

def _extended_specs(two_ell_max):
    return [s for s in supported_specs(two_ell_max) if s.ext != "none"]


def _root_params_symbolic(spec, q):
    return {
        "delta": delta_at_condition(spec, q),
        "mu": Scalar.symbol("mu"),
        "theta": Scalar.symbol("theta"),
        "r": Scalar.symbol("r"),
    }


def _root_params_numeric(spec, q):
    return {
        "delta": delta_at_condition(spec, q),
        "mu": 1,
        "theta": 1,
        "r": Fraction(2, 3),
    }


def _singular_cases():
    cases = []
    for two_ell in (1, 3, 5):
        cases += [(AlgebraSpec(1, two_ell, "mass"), q) for q in (1, 2, 3)]
    for two_ell in (1, 3):
        cases += [(AlgebraSpec(2, two_ell, "mass"), q) for q in (1, 2)]
    for two_ell in (2, 4):
        cases += [(AlgebraSpec(2, two_ell, "exotic"), q) for q in (1, 2)]
    return cases


def criterion_jacobi():
    """Structure constants close for every supported family."""
    specs = supported_specs(6)
    for spec in specs:
        failures = jacobi_check(spec)
        if failures:
            return False, "%r: %d failing triples" % (spec, len(failures))
    return True, "all triples close for %d specs (twoEll <= 6)" % len(specs)


def criterion_closed_form():
    """Closed-form planar actions equal the normal-ordering oracle."""
    cap = _level_cap()
    checked = 0
    for spec in [s for s in _extended_specs(5) if s.d == 2]:
        gens = enumerate_generators(spec)
        for level in range(cap + 1):
            for mono in level_basis(spec, level):
                v = ModuleVector.of(mono)
                for gen in gens:
                    if act_closed_form(spec, gen, v) != act_generic(spec, gen, v):
                        return False, "mismatch: %r, %s on %s" % (spec, gen, mono)
                    checked += 1
    return True, "%d actions agree (levels <= %d, twoEll <= 5)" % (checked, cap)


def criterion_singular_verify():
    """Closed-form vectors are singular at the condition root."""
    for spec, q in _singular_cases():
        params = _root_params_symbolic(spec, q)
        v = singular_closed(spec, q, params=params)
        expected = predicted_weight(spec, q, params=params)
        report = verify_singular(spec, v, params=params, expect_weight=expected)
        if not report.ok:
            return False, "%r q=%d: %d failures" % (spec, q, len(report.failures))
        root = delta_at_condition(spec, q)
        if report.weight[Gen("D")] != Scalar.const(Fraction(2 * q) - root):
            return False, "%r q=%d: scaling eigenvalue is not 2q - delta" % (spec, q)
    return True, "%d (family, level) cases verified" % len(_singular_cases())


def criterion_search_matches():
    """Nullspace search finds exactly the closed-form ray."""
    for spec, q in _singular_cases():
        params = _root_params_numeric(spec, q)
        closed = singular_closed(spec, q, params=params)
        weight = predicted_weight(spec, q, params=params)
        found = search_singular(spec, weight.eigen, params=params)
        if len(found) != 1 or found.caveats:
            return False, "%r q=%d: dimension %d (caveats: %d)" % (
                spec, q, len(found), len(found.caveats))
        normalized = closed.scaled(closed.items()[0][1] ** -1)
        if found.vectors[0] != normalized:
            return False, "%r q=%d: kernel is not the closed-form ray" % (spec, q)
    return True, "one-dimensional kernels match for %d cases" % len(_singular_cases())


def criterion_centerless():
    """Centerless kernels: exactly the creation powers, only at kappa=0."""
    spec = AlgebraSpec(1, 2, "none")
    cap = _level_cap()
    free = {"delta": Scalar.symbol("delta"), "kappa": 0}
    for p in range(1, cap + 1):
        found = search_singular(spec, p, params=free)
        want = ModuleVector.of(PbwMonomial(0, (p,), ()))
        if len(found) != 1 or found.vectors[0] != want:
            return False, "kappa=0, level %d: unexpected kernel" % p
        if not verify_singular(spec, found.vectors[0], params=free).ok:
            return False, "kappa=0, level %d: vector fails verification" % p
        for kappa in (1, Fraction(-2), Fraction(7, 3)):
            params = {"delta": Scalar.symbol("delta"), "kappa": kappa}
            if len(search_singular(spec, p, params=params)) != 0:
                return False, "kappa=%s, level %d: kernel not empty" % (kappa, p)
    return True, "levels 1..%d: kernels exist exactly at kappa=0" % cap


def criterion_rep_audit():
    """The weighted realization reproduces every bracket."""
    specs = _extended_specs(5)
    for spec in specs:
        failures = rep_check(spec, side="left")
        if failures:
            return False, "%r: %d failing pairs" % (spec, len(failures))
    return True, "all brackets reproduced for %d extended specs" % len(specs)


def criterion_heat():
    """The lowest line-family hierarchy is the heat hierarchy, verbatim."""
    d1 = AlgebraSpec(1, 1, "mass")
    heat = parse_diffop("2*mu*d/dt + (d/dx0)^2", chart(d1))
    for q in (1, 2, 3):
        if invariant_operator(d1, q) != op_power(heat, q):
            return False, "twoEll=1, q=%d: operator differs" % q
    d3 = AlgebraSpec(1, 3, "mass")
    if invariant_operator(d3, 1) != parse_diffop(
            "2*mu*d/dt + 2*mu*x1*d/dx0 + (d/dx1)^2", chart(d3)):
        return False, "twoEll=3 operator differs"
    d5 = AlgebraSpec(1, 5, "mass")
    if invariant_operator(d5, 1) != parse_diffop(
            "8*mu*d/dt + 8*mu*x1*d/dx0 + 16*mu*x2*d/dx1 + (d/dx2)^2", chart(d5)):
        return False, "twoEll=5 operator differs"
    return True, "heat powers q <= 3 and twoEll in {3, 5} operators verbatim"


def criterion_intertwining():
    """The invariant operator intertwines the shifted realizations."""
    count = 0
    for spec in _extended_specs(5):
        for q in (1, 2):
            failures = intertwining_check(spec, q, _root_params_numeric(spec, q))
            if failures:
                return False, "%r q=%d: %d generators fail" % (spec, q, len(failures))
            residual = intertwining_residual(spec, Gen("C"), q)  # symbolic weight
            cond = singular_condition(spec, q)
            if residual.is_zero():
                return False, "%r q=%d: symbolic residual vanishes" % (spec, q)
            if not divisible_by_condition(residual, cond):
                return False, "%r q=%d: residual not divisible by condition" % (spec, q)
            count += 1
    return True, "%d (family, level) identities hold; residuals track the condition" % count


def acceptance_criteria():
    """The eight acceptance criteria as (name, runner) pairs."""
    return [
        ("jacobi-closure", criterion_jacobi),
        ("closed-form-vs-oracle", criterion_closed_form),
        ("singular-annihilation", criterion_singular_verify),
        ("search-matches-closed-form", criterion_search_matches),
        ("centerless-kernels", criterion_centerless),
        ("left-realization-audit", criterion_rep_audit),
        ("heat-hierarchy-recovery", criterion_heat),
        ("intertwining-identity", criterion_intertwining),
    ]


# --- parser ----------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="cgk",
        description="Exact toolkit for conformal Galilei algebras, their "
                    "lowest-weight modules, and invariant equation hierarchies.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_algebra = sub.add_parser("algebra", help="generators, brackets, audits")
    alg_sub = p_algebra.add_subparsers(dest="action", required=True)
    p = alg_sub.add_parser("show", help="blocks and nonzero brackets")
    _add_spec_args(p)
    _add_output_args(p)
    p.set_defaults(handler=cmd_algebra_show)
    p = alg_sub.add_parser("jacobi", help="audit the structure constants")
    _add_spec_args(p)
    _add_output_args(p)
    p.set_defaults(handler=cmd_algebra_jacobi)

    p_verma = sub.add_parser("verma", help="lowest-weight module calculus")
    verma_sub = p_verma.add_subparsers(dest="action", required=True)
    p = verma_sub.add_parser("act", help="apply a generator to a basis monomial")
    _add_spec_args(p)
    _add_param_args(p)
    p.add_argument("--gen", required=True, help="generator name, e.g. C or P1+")
    p.add_argument("--monomial", required=True,
                   help='JSON monomial {"h": int, "a": [...], "b": [...]}')
    p.add_argument("--action", choices=("generic", "closed"), default="generic")
    _add_output_args(p)
    p.set_defaults(handler=cmd_verma_act)
    p = verma_sub.add_parser("basis", help="enumerate basis monomials")
    _add_spec_args(p)
    _add_param_args(p)
    p.add_argument("--level", type=int, help="grading level")
    p.add_argument("--weight", help='JSON weight constraint {"D": "-delta+2", ...}')
    _add_output_args(p)
    p.set_defaults(handler=cmd_verma_basis)
    p = verma_sub.add_parser("weight", help="diagonal eigenvalues of a monomial")
    _add_spec_args(p)
    _add_param_args(p)
    p.add_argument("--monomial", required=True)
    _add_output_args(p)
    p.set_defaults(handler=cmd_verma_weight)

    p_sing = sub.add_parser("singular", help="singular vectors of the modules")
    sing_sub = p_sing.add_subparsers(dest="action", required=True)
    p = sing_sub.add_parser("condition", help="existence condition and its root")
    _add_spec_args(p)
    p.add_argument("--q", type=int, required=True)
    _add_output_args(p)
    p.set_defaults(handler=cmd_singular_condition)
    p = sing_sub.add_parser("closed", help="closed-form candidate vector")
    _add_spec_args(p)
    _add_param_args(p)
    p.add_argument("--q", type=int, required=True)
    _add_output_args(p)
    p.set_defaults(handler=cmd_singular_closed)
    p = sing_sub.add_parser("verify", help="verify the closed-form vector")
    _add_spec_args(p)
    _add_param_args(p)
    p.add_argument("--q", type=int, required=True)
    _add_output_args(p)
    p.set_defaults(handler=cmd_singular_verify)
    p = sing_sub.add_parser("search", help="exact nullspace search")
    _add_spec_args(p)
    _add_param_args(p)
    p.add_argument("--q", type=int, help="search the level-q predicted weight space")
    p.add_argument("--level", type=int, help="search a whole grading level")
    _add_output_args(p)
    p.set_defaults(handler=cmd_singular_search)

    p_reps = sub.add_parser("reps", help="differential-operator realizations")
    reps_sub = p_reps.add_subparsers(dest="action", required=True)
    for side in ("left", "right"):
        p = reps_sub.add_parser(side, help="%s realization of one generator" % side)
        _add_spec_args(p)
        if side == "left":
            _add_param_args(p)
        p.add_argument("--gen", required=True)
        _add_output_args(p, renders=("text", "json", "latex"))
        p.set_defaults(handler=cmd_reps, action=side)
    p = reps_sub.add_parser("check", help="audit a realization against the brackets")
    _add_spec_args(p)
    _add_param_args(p)
    p.add_argument("--side", choices=("left", "right"), default="left")
    _add_output_args(p)
    p.set_defaults(handler=cmd_reps_check)

    p_pde = sub.add_parser("pde", help="invariant equation hierarchies")
    pde_sub = p_pde.add_subparsers(dest="action", required=True)
    p = pde_sub.add_parser("emit", help="print the level-q invariant equation")
    _add_spec_args(p)
    _add_param_args(p)
    p.add_argument("--q", type=int, required=True)
    _add_output_args(p, renders=("text", "json", "latex"))
    p.set_defaults(handler=cmd_pde_emit)
    p = pde_sub.add_parser("check", help="verify the intertwining identity")
    _add_spec_args(p)
    _add_param_args(p, require_delta=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--out", help="write the result to FILE instead of stdout")
    p.set_defaults(handler=cmd_pde_check)

    p_self = sub.add_parser("selftest", help="run the full acceptance suite")
    p_self.add_argument("--out", help="write the result to FILE instead of stdout")
    p_self.set_defaults(handler=cmd_selftest)

    return parser


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.handler(args)
    except UsageError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return 2
    except (InvalidSpec, UnknownGenerator, UnsupportedGenerator, UnsupportedFamily,
            MissingParameter, InfiniteSelection, DivisionByZero, VariableMismatch,
            ValueError, KeyError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
