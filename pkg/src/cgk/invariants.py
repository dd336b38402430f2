"""Invariant operators of the lowest-weight hierarchies and their symmetry.

Each extended family carries a distinguished quadratic creation element
(module :mod:`cgk.singular`) whose level-q power is a singular vector when
the weight sits at the root of a linear condition.  Pushing that element
through the coordinate realization of the creation wing (module
:mod:`cgk.reps`) turns it into a differential operator S; this module
builds S^q, verifies that S^q intertwines the weight-delta and
weight-(delta-2q) realizations exactly, and solves for the order-zero
multipliers that express the same symmetry as commutation relations.
"""

from fractions import Fraction

from .scalars import Scalar, UnsupportedFamily, poly_div_exact
from .algebra import Gen, enumerate_generators
from .verma import resolve_params
from .singular import quadratic_element, singular_condition
from .diffop import DiffOp, CoefPoly, compose, commutator, op_power
from .reps import right_action, left_action


class ConditionNotSatisfied(ValueError):
    """The weight is not at the root the requested check demands."""


class NoMultiplier(ValueError):
    """The commutator is not an order-zero multiple of the operator."""


# Weight shift carried by the q-th power of the invariant operator: the
# target realization replaces delta by delta - 2q.  Fixed once by the
# d=1, twoEll=1, q=1 seed case and applied uniformly.
WEIGHT_SHIFT_PER_Q = -2


def invariant_operator(spec, q, params=None):
    """The q-th power of the family's invariant operator S.

    S is the image of the quadratic creation element under the coordinate
    realization, so its kernel carries the invariant hierarchy at level q.
    Parameters default to symbolic.
    """
    if q < 1:
        raise ValueError("q must be a positive integer")
    base = None
    for word, coef in quadratic_element(spec, params):
        piece = None
        for gen in word:
            op = right_action(spec, gen)
            piece = op if piece is None else compose(piece, op)
        piece = piece.scaled(coef)
        base = piece if base is None else base + piece
    return op_power(base, q)


def _require_extended(spec):
    if spec.ext == "none":
        raise UnsupportedFamily(
            "the centerless family has no weighted realization to intertwine"
        )


def _check_at_root(spec, q, pvals):
    """Raise ConditionNotSatisfied unless pvals pins delta at the root."""
    delta = pvals["delta"]
    if not delta.is_rational():
        raise ConditionNotSatisfied(
            "delta must be specialized to the condition root, got %s" % (delta,)
        )
    residue = singular_condition(spec, q).substitute(
        {"delta": delta.rational_value()}
    )
    if not residue.is_zero:
        raise ConditionNotSatisfied(
            "delta = %s is not a root of the level-%d condition" % (delta, q)
        )


def _shifted(pvals, q):
    out = dict(pvals)
    out["delta"] = pvals["delta"] + Scalar.const(WEIGHT_SHIFT_PER_Q * q)
    return out


def intertwining_residual(spec, gen, q=1, params=None):
    """R(gen) = S^q o pi_L(gen) - pi_L'(gen) o S^q as a DiffOp.

    pi_L' is the realization with delta shifted by -2q; parameters default
    to symbolic, so the residual can be inspected away from the root.
    """
    _require_extended(spec)
    if q < 1:
        raise ValueError("q must be a positive integer")
    pvals = resolve_params(spec, params)
    power = invariant_operator(spec, q, pvals)
    before = left_action(spec, gen, pvals)
    after = left_action(spec, gen, _shifted(pvals, q))
    return compose(power, before) - compose(after, power)


def intertwining_check(spec, q, params):
    """Residual audit over every generator at the condition root.

    Returns a list of (generator, residual DiffOp) pairs for the
    generators whose residual is not exactly zero; empty means the level-q
    operator intertwines the two realizations.
    """
    _require_extended(spec)
    if q < 1:
        raise ValueError("q must be a positive integer")
    pvals = resolve_params(spec, params)
    _check_at_root(spec, q, pvals)
    power = invariant_operator(spec, q, pvals)
    shifted = _shifted(pvals, q)
    failures = []
    for gen in enumerate_generators(spec):
        residual = compose(power, left_action(spec, gen, pvals)) - compose(
            left_action(spec, gen, shifted), power
        )
        if not residual.is_zero():
            failures.append((gen, residual))
    return failures


def divisible_by_condition(op, cond):
    """True when every coefficient of op is divisible by the Scalar cond.

    Divisibility is polynomial: each coefficient's numerator must be an
    exact multiple of cond's numerator.
    """
    if cond.is_zero:
        raise ValueError("divisibility by zero is not defined")
    for poly in op.terms.values():
        for coef in poly.terms.values():
            if poly_div_exact(coef.num, cond.num) is None:
                return False
    return True


def onshell_multiplier(spec, gen, params, q=1):
    """Order-zero lambda with commutator(S^q, pi_L(gen)) = lambda * S^q.

    Requires delta at the level-q condition root.  Returns the multiplier
    as a CoefPoly on the family chart (zero when the commutator vanishes);
    raises NoMultiplier when no order-zero multiplier reproduces the
    commutator exactly.
    """
    _require_extended(spec)
    if q < 1:
        raise ValueError("q must be a positive integer")
    pvals = resolve_params(spec, params)
    _check_at_root(spec, q, pvals)
    power = invariant_operator(spec, q, pvals)
    target = commutator(power, left_action(spec, gen, pvals))
    ch = power.chart
    if target.is_zero():
        return CoefPoly.zero(ch)
    # S^q carries d/dt^q with the constant coefficient lead^q, where lead
    # is the weight on the lone first-order word of the quadratic element;
    # the candidate multiplier is the matching coefficient of the target.
    lead = Scalar.const(1)
    for word, coef in quadratic_element(spec, pvals):
        if len(word) == 1:
            for _ in range(q):
                lead = lead * coef
            break
    t_slot = tuple(q if i == 0 else 0 for i in range(len(ch)))
    candidate = target.terms.get(t_slot, CoefPoly.zero(ch)).scaled(
        Scalar.const(1) / lead
    )
    if compose(DiffOp.of_poly(candidate), power) != target:
        raise NoMultiplier(
            "commutator with %s is not an order-zero multiple of the operator"
            % (gen,)
        )
    return candidate
