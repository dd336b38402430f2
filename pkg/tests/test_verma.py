import random

import pytest

from cgk.algebra import AlgebraSpec, Gen, bracket, decomposition, enumerate_generators
from cgk.scalars import Scalar, UnsupportedFamily
from cgk.verma import (
    InfiniteSelection,
    MissingParameter,
    ModuleVector,
    PbwMonomial,
    Weight,
    act_closed_form,
    act_generic,
    act_word,
    level_basis,
    level_of,
    resolve_params,
    symbolic_params,
    vacuum,
    weight_of,
)

D1 = AlgebraSpec(1, 1, "mass")
D1_5 = AlgebraSpec(1, 5, "mass")
M1 = AlgebraSpec(2, 1, "mass")
M3 = AlgebraSpec(2, 3, "mass")
EX2 = AlgebraSpec(2, 2, "exotic")
EX4 = AlgebraSpec(2, 4, "exotic")
NONE = AlgebraSpec(1, 2, "none")

DELTA = Scalar.symbol("delta")
MU = Scalar.symbol("mu")
R = Scalar.symbol("r")
THETA = Scalar.symbol("theta")
KAPPA = Scalar.symbol("kappa")


def mono(h, a=(), b=()):
    return PbwMonomial(h, tuple(a), tuple(b))


def test_vacuum_and_monomial_shape():
    v = vacuum(D1)
    assert v == ModuleVector.of(mono(0, (0,)))
    assert vacuum(M3).items()[0][0] == mono(0, (0, 0), (0, 0))
    assert vacuum(EX2).items()[0][0] == mono(0, (0, 0), (0,))
    assert vacuum(NONE).items()[0][0] == mono(0, (0,))
    with pytest.raises(ValueError):
        mono(-1, (0,))
    with pytest.raises(ValueError):
        act_generic(D1, Gen("H"), ModuleVector.of(mono(0, (0, 0))))


def test_missing_parameter():
    with pytest.raises(MissingParameter):
        resolve_params(D1, {"delta": 1})
    assert set(symbolic_params(M1)) == {"delta", "mu", "r"}
    assert set(symbolic_params(EX2)) == {"delta", "theta", "r"}
    assert set(symbolic_params(NONE)) == {"delta", "kappa"}
    # numeric values are accepted and coerced
    got = resolve_params(D1, {"delta": 2, "mu": Scalar.const(3)})
    assert got["delta"] == Scalar.const(2)


def test_h_raises_and_c_lowers_on_vacuum():
    for spec in (D1, D1_5, M1, M3, EX2):
        v = act_generic(spec, Gen("H"), vacuum(spec))
        (m, c), = v.items()
        assert m.h == 1 and c == Scalar.const(1)
        # C H |0> = [C, H]|0> = D|0> = -delta |0>
        w = act_generic(spec, Gen("C"), v)
        assert w == vacuum(spec).scaled(-DELTA)


def test_diagonal_eigenvalues():
    # central and rotation eigenvalues on a nontrivial monomial
    m = mono(1, (0, 1), (1, 0))
    v = ModuleVector.of(m)
    assert act_generic(M3, Gen("M"), v) == v.scaled(-MU)
    assert act_generic(M3, Gen("D"), v) == v.scaled(Scalar.const(6) - DELTA)
    assert act_generic(M3, Gen("J"), v) == v.scaled(-R)
    w = weight_of(M3, m)
    assert w[Gen("D")] == Scalar.const(6) - DELTA
    assert w[Gen("J")] == -R
    assert w[Gen("M")] == -MU

    me = mono(0, (1, 1), (1,))
    ve = ModuleVector.of(me)
    assert act_generic(EX2, Gen("Theta"), ve) == ve.scaled(THETA)
    assert act_generic(EX2, Gen("D"), ve) == ve.scaled(Scalar.const(4) - DELTA)
    assert act_generic(EX2, Gen("J"), ve) == ve.scaled(Scalar.const(1) - R)


def test_weight_of_example():
    w = weight_of(M1, mono(1, (0,), (1,)))
    assert w[Gen("D")] == Scalar.const(3) - DELTA
    assert w[Gen("J")] == Scalar.const(-1) - R


def test_closed_form_creation_example():
    # P1+ applied to H|0> picks up a lowering term
    v = act_closed_form(M3, Gen("P", 1, "+"), ModuleVector.of(mono(1, (0, 0), (0, 0))))
    assert v == ModuleVector(
        {
            mono(1, (0, 1), (0, 0)): Scalar.const(1),
            mono(0, (1, 0), (0, 0)): Scalar.const(1),
        }
    )
    assert act_generic(M3, Gen("P", 1, "+"), ModuleVector.of(mono(1, (0, 0), (0, 0)))) == v


def test_closed_form_c_example():
    v = act_closed_form(M1, Gen("C"), ModuleVector.of(mono(1, (1,), (0,))))
    assert v == ModuleVector.of(mono(0, (1,), (0,)), Scalar.const(1) - DELTA)
    assert act_generic(M1, Gen("C"), ModuleVector.of(mono(1, (1,), (0,)))) == v


def test_closed_form_unsupported():
    with pytest.raises(UnsupportedFamily):
        act_closed_form(D1, Gen("H"), vacuum(D1))
    with pytest.raises(UnsupportedFamily):
        act_closed_form(NONE, Gen("C"), vacuum(NONE))


def test_exotic_central_pairing():
    # P(l)- P(l)+ |0> = -I_l * theta |0>  (l = 1: I_1 = -1)
    v = act_word(EX2, [Gen("P", 1, "-"), Gen("P", 1, "+")], vacuum(EX2))
    assert v == vacuum(EX2).scaled(THETA)
    vcf = act_word(
        EX2, [Gen("P", 1, "-"), Gen("P", 1, "+")], vacuum(EX2), action=act_closed_form
    )
    assert vcf == v
    # C P(1)+ P(0)- |0> = 2 theta |0>
    w = act_word(EX2, [Gen("C"), Gen("P", 1, "+"), Gen("P", 0, "-")], vacuum(EX2))
    assert w == vacuum(EX2).scaled(THETA * Scalar.const(2))
    wcf = act_word(
        EX2,
        [Gen("C"), Gen("P", 1, "+"), Gen("P", 0, "-")],
        vacuum(EX2),
        action=act_closed_form,
    )
    assert wcf == w


def test_centerless_explicit_actions():
    # derived once by hand from the brackets; pinned against the oracle
    for h, k in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (2, 3), (3, 2)]:
        v = ModuleVector.of(mono(h, (k,)))
        got_h = act_generic(NONE, Gen("H"), v)
        want_h = ModuleVector(
            {
                mono(h - 1, (k,)): Scalar.const(h) * (DELTA + Scalar.const(2 * k + h - 1)),
                mono(h, (k - 1,)): Scalar.const(2 * k) * KAPPA,
            }
            if h and k
            else (
                {mono(h - 1, (k,)): Scalar.const(h) * (DELTA + Scalar.const(2 * k + h - 1))}
                if h
                else ({mono(h, (k - 1,)): Scalar.const(2 * k) * KAPPA} if k else {})
            )
        )
        assert got_h == want_h, (h, k)

        got_p0 = act_generic(NONE, Gen("P", 0), v)
        want_p0 = ModuleVector.zero()
        if h:
            want_p0 = want_p0 + ModuleVector.of(mono(h - 1, (k,)), Scalar.const(2 * h) * KAPPA)
        if h >= 2:
            want_p0 = want_p0 + ModuleVector.of(mono(h - 2, (k + 1,)), Scalar.const(h * (h - 1)))
        assert got_p0 == want_p0, (h, k)

        got_p1 = act_generic(NONE, Gen("P", 1), v)
        want_p1 = ModuleVector.of(mono(h, (k,)), -KAPPA)
        if h:
            want_p1 = want_p1 + ModuleVector.of(mono(h - 1, (k + 1,)), Scalar.const(-h))
        assert got_p1 == want_p1, (h, k)

        assert act_generic(NONE, Gen("D"), v) == v.scaled(
            -DELTA - Scalar.const(2 * (h + k))
        )


def test_representation_property_generic():
    # [X, Y] acting as X(Y v) - Y(X v) for a spread of pairs and vectors
    rng = random.Random(20260822)
    for spec in (D1, M1, EX2, NONE, AlgebraSpec(1, 3, "mass")):
        gens = enumerate_generators(spec)
        basis = level_basis(spec, 2) + level_basis(spec, 3)
        for _ in range(25):
            x, y = rng.choice(gens), rng.choice(gens)
            m = rng.choice(basis)
            v = ModuleVector.of(m)
            lhs = act_generic(spec, x, act_generic(spec, y, v)) - act_generic(
                spec, y, act_generic(spec, x, v)
            )
            rhs = ModuleVector.zero()
            for gen, coef in bracket(spec, x, y).items():
                rhs = rhs + act_generic(spec, gen, v).scaled(coef)
            assert lhs == rhs, (spec, x, y, m)


def test_weight_additivity_under_creation():
    # acting with a creation generator shifts the D (and J) eigenvalue by
    # the generator's grade: D(g v) = (lambda + c) (g v)
    for spec in (D1, M1, EX2):
        plus = decomposition(spec)[0]
        for g in plus:
            v = act_generic(spec, g, vacuum(spec))
            lam = weight_of(spec, vacuum(spec).items()[0][0])[Gen("D")]
            combo = bracket(spec, Gen("D"), g)
            shift = combo.terms.get(g, Scalar.zero())
            assert act_generic(spec, Gen("D"), v) == v.scaled(lam + shift), (spec, g)


def test_closed_form_matches_generic_sample():
    # acceptance covers the full sweep; here a fast spot check
    for spec in (M1, EX2):
        gens = enumerate_generators(spec)
        basis = [m for p in range(0, 4) for m in level_basis(spec, p)]
        for x in gens:
            for m in basis:
                v = ModuleVector.of(m)
                assert act_closed_form(spec, x, v) == act_generic(spec, x, v), (
                    spec,
                    x,
                    m,
                )


def test_level_of_and_enumeration():
    assert level_of(D1, mono(2, (1,))) == 5
    assert level_of(NONE, mono(2, (3,))) == 5
    assert level_of(EX2, mono(1, (0, 2), (0,))) == 4  # grade-zero factor counts 1
    assert level_basis(D1, 0) == [mono(0, (0,))]
    assert level_basis(D1, 2) == [mono(0, (2,)), mono(1, (0,))]
    assert level_basis(NONE, 2) == [mono(0, (2,)), mono(1, (1,)), mono(2, (0,))]
    assert level_basis(D1, -1) == []
    # levels are exhaustive and disjoint
    seen = set()
    for p in range(0, 5):
        for m in level_basis(M3, p):
            assert level_of(M3, m) == p
            assert m not in seen
            seen.add(m)


def test_level_basis_weight_constraint():
    got = level_basis(D1, {Gen("D"): Scalar.const(2) - DELTA})
    assert got == [mono(0, (2,)), mono(1, (0,))]
    # string keys work too
    got2 = level_basis(D1, {"D": Scalar.const(2) - DELTA})
    assert got2 == got
    # non-integer shift selects nothing
    half_shift = Scalar.const(3) / Scalar.const(2) - DELTA
    assert level_basis(D1, {Gen("D"): half_shift}) == []
    # rotation eigenvalue narrows the planar selection
    full = level_basis(M1, {Gen("D"): Scalar.const(1) - DELTA})
    assert full == [mono(0, (0,), (1,)), mono(0, (1,), (0,))]
    plus_only = level_basis(M1, {Gen("D"): Scalar.const(1) - DELTA, Gen("J"): Scalar.const(1) - R})
    assert plus_only == [mono(0, (1,), (0,))]
    # mismatched central eigenvalue selects nothing
    assert level_basis(M1, {Gen("D"): Scalar.const(1) - DELTA, Gen("M"): MU}) == []


def test_level_basis_infinite_selection():
    with pytest.raises(InfiniteSelection):
        level_basis(EX2, {Gen("D"): Scalar.const(2) - DELTA})
    got = level_basis(EX2, {Gen("D"): Scalar.const(2) - DELTA, Gen("J"): Scalar.const(1) - R})
    # the grade-zero factor compensates the rotation eigenvalue
    assert got == [
        mono(0, (0, 2), (1,)),
        mono(0, (1, 0), (0,)),
        mono(1, (0, 1), (0,)),
    ]
    for m in got:
        w = weight_of(EX2, m)
        assert w[Gen("D")] == Scalar.const(2) - DELTA
        assert w[Gen("J")] == Scalar.const(1) - R


def test_weight_constraint_with_numeric_params():
    got = level_basis(D1, {Gen("D"): Scalar.const(-1)}, params={"delta": 3, "mu": 1})
    assert got == [mono(0, (2,)), mono(1, (0,))]


def test_centerless_weight_includes_g0_only_on_eigenvectors():
    w0 = weight_of(NONE, mono(0, (2,)))
    assert w0[Gen("P", 1)] == -KAPPA
    w1 = weight_of(NONE, mono(1, (0,)))
    assert Gen("P", 1) not in w1
