"""Exact polynomial-coefficient differential operators.

Operators live on a fixed chart: an ordered tuple of variables
``(t, x0, x1, ..., y0, ...)``.  A coefficient polynomial maps variable
exponent vectors to Scalars; an operator maps derivative multi-indices
to coefficient polynomials, normal-ordered with all coefficients to the
left of all derivatives.  Equality of canonical term maps is exact
operator equality.  Composition uses the Leibniz rule and is the ring
product; the textual grammar (`2*mu*d/dt + (d/dx0)^2`) round-trips.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .scalars import (
    Scalar,
    latex_scalar,
    parse_scalar,
    render_scalar,
)


class VariableMismatch(ValueError):
    """Operands live on different charts (or use variables outside one)."""


@dataclass(frozen=True, order=True)
class Var:
    """A chart variable: t, x(n), or y(n)."""

    kind: str
    n: int = -1

    def __post_init__(self):
        if self.kind not in ("t", "x", "y"):
            raise ValueError("unknown variable kind %r" % (self.kind,))
        if self.kind == "t":
            object.__setattr__(self, "n", -1)
        elif self.n < 0:
            raise ValueError("indexed variable needs a nonnegative index")

    def __str__(self):
        return self.kind if self.kind == "t" else "%s%d" % (self.kind, self.n)

    @classmethod
    def parse(cls, text):
        m = re.fullmatch(r"t|([xy])(\d+)", text)
        if not m:
            raise ValueError("not a variable: %r" % (text,))
        if m.group(1):
            return cls(m.group(1), int(m.group(2)))
        return cls("t")

    def sort_key(self):
        return {"t": 0, "x": 1, "y": 2}[self.kind], self.n


def make_chart(*names):
    """Canonically ordered chart from variable names or Vars."""
    vs = [v if isinstance(v, Var) else Var.parse(v) for v in names]
    vs.sort(key=Var.sort_key)
    if len(set(vs)) != len(vs):
        raise ValueError("duplicate chart variables")
    return tuple(vs)


def _check_chart(a, b):
    if a.chart != b.chart:
        raise VariableMismatch(
            "charts differ: %s vs %s"
            % tuple("(%s)" % ",".join(map(str, o.chart)) for o in (a, b))
        )


def _coerce(val):
    if isinstance(val, Scalar):
        return val
    if isinstance(val, (int, Fraction)):
        return Scalar.const(val)
    raise TypeError("cannot use %r as a coefficient" % (val,))


class CoefPoly:
    """Polynomial in the chart variables with Scalar coefficients."""

    __slots__ = ("chart", "terms")

    def __init__(self, chart, terms=None):
        self.chart = tuple(chart)
        clean = {}
        for expo, coef in (terms or {}).items():
            coef = _coerce(coef)
            if len(expo) != len(self.chart) or any(e < 0 for e in expo):
                raise ValueError("bad exponent vector %r" % (expo,))
            if not coef.is_zero:
                clean[tuple(expo)] = coef
        self.terms = clean

    @classmethod
    def zero(cls, chart):
        return cls(chart)

    @classmethod
    def const(cls, chart, value):
        value = _coerce(value)
        if value.is_zero:
            return cls(chart)
        return cls(chart, {(0,) * len(chart): value})

    @classmethod
    def var(cls, chart, v):
        chart = tuple(chart)
        if v not in chart:
            raise VariableMismatch("%s is not on chart %s" % (v, chart))
        expo = tuple(1 if u == v else 0 for u in chart)
        return cls(chart, {expo: Scalar.const(1)})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        _check_chart(self, other)
        terms = dict(self.terms)
        for expo, coef in other.terms.items():
            terms[expo] = terms.get(expo, Scalar.zero()) + coef
        return CoefPoly(self.chart, terms)

    def __sub__(self, other):
        return self + other.scaled(-1)

    def __neg__(self):
        return self.scaled(-1)

    def scaled(self, coef):
        coef = _coerce(coef)
        return CoefPoly(self.chart, {e: c * coef for e, c in self.terms.items()})

    def __mul__(self, other):
        _check_chart(self, other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prev = out.get(e)
                prod = c1 * c2
                out[e] = prod if prev is None else prev + prod
        return CoefPoly(self.chart, out)

    def derivative(self, i, k=1):
        """k-th partial derivative with respect to chart variable i."""
        out = {}
        for expo, coef in self.terms.items():
            e = expo[i]
            if e < k:
                continue
            fall = 1
            for j in range(k):
                fall *= e - j
            e2 = list(expo)
            e2[i] = e - k
            out[tuple(e2)] = coef * Scalar.const(fall)
        return CoefPoly(self.chart, out)

    def __eq__(self, other):
        return (
            isinstance(other, CoefPoly)
            and self.chart == other.chart
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.chart, frozenset(self.terms.items())))

    def __repr__(self):
        return "CoefPoly(%s)" % (render_poly_in_vars(self),)


class DiffOp:
    """Normal-ordered differential operator: sum of CoefPoly * d^multi."""

    __slots__ = ("chart", "terms")

    def __init__(self, chart, terms=None):
        self.chart = tuple(chart)
        clean = {}
        for dexpo, poly in (terms or {}).items():
            if len(dexpo) != len(self.chart) or any(e < 0 for e in dexpo):
                raise ValueError("bad derivative multi-index %r" % (dexpo,))
            if poly.chart != self.chart:
                raise VariableMismatch("coefficient chart differs from operator chart")
            if not poly.is_zero():
                clean[tuple(dexpo)] = poly
        self.terms = clean

    @classmethod
    def zero(cls, chart):
        return cls(chart)

    @classmethod
    def const(cls, chart, value):
        chart = tuple(chart)
        return cls(chart, {(0,) * len(chart): CoefPoly.const(chart, value)})

    @classmethod
    def of_poly(cls, poly):
        return cls(poly.chart, {(0,) * len(poly.chart): poly})

    @classmethod
    def partial(cls, chart, v, order=1):
        chart = tuple(chart)
        if not isinstance(v, Var):
            v = Var.parse(v)
        if v not in chart:
            raise VariableMismatch("%s is not on chart (%s)" % (v, ",".join(map(str, chart))))
        dexpo = tuple(order if u == v else 0 for u in chart)
        return cls(chart, {dexpo: CoefPoly.const(chart, 1)})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        _check_chart(self, other)
        terms = dict(self.terms)
        for dexpo, poly in other.terms.items():
            cur = terms.get(dexpo)
            terms[dexpo] = poly if cur is None else cur + poly
        return DiffOp(self.chart, terms)

    def __sub__(self, other):
        return self + other.scaled(-1)

    def __neg__(self):
        return self.scaled(-1)

    def scaled(self, coef):
        return DiffOp(self.chart, {d: p.scaled(coef) for d, p in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, DiffOp)
            and self.chart == other.chart
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.chart, frozenset(self.terms.items())))

    def __repr__(self):
        return "DiffOp(%s)" % (render_diffop(self),)


def _subindices(alpha):
    """All multi-indices gamma <= alpha (componentwise)."""
    out = [()]
    for a in alpha:
        out = [g + (i,) for g in out for i in range(a + 1)]
    return out


def compose(a, b):
    """Operator product a . b in canonical normal order (Leibniz rule)."""
    _check_chart(a, b)
    chart = a.chart
    out = {}
    for alpha, pa in a.terms.items():
        for beta, pb in b.terms.items():
            for gamma in _subindices(alpha):
                dq = pb.derivative(0, gamma[0])
                for i in range(1, len(gamma)):
                    if gamma[i]:
                        dq = dq.derivative(i, gamma[i])
                if dq.is_zero():
                    continue
                binom = 1
                for ai, gi in zip(alpha, gamma):
                    binom *= comb(ai, gi)
                dexpo = tuple(ai - gi + bi for ai, gi, bi in zip(alpha, gamma, beta))
                piece = (pa * dq).scaled(binom)
                cur = out.get(dexpo)
                out[dexpo] = piece if cur is None else cur + piece
    return DiffOp(chart, out)


def commutator(a, b):
    """[a, b] = a.b - b.a in canonical form."""
    return compose(a, b) - compose(b, a)


def apply_op(a, p):
    """Apply operator ``a`` to the polynomial ``p`` exactly."""
    if a.chart != p.chart:
        raise VariableMismatch("operator and polynomial charts differ")
    out = CoefPoly.zero(a.chart)
    for alpha, pa in a.terms.items():
        dp = p
        for i, k in enumerate(alpha):
            if k:
                dp = dp.derivative(i, k)
            if dp.is_zero():
                break
        if not dp.is_zero():
            out = out + pa * dp
    return out


def op_power(a, q):
    """q-th composition power (q >= 0)."""
    if q < 0:
        raise ValueError("negative operator power")
    out = DiffOp.const(a.chart, 1)
    for _ in range(q):
        out = compose(out, a)
    return out


# --- text grammar -----------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(d/d(?:t|x\d+|y\d+)|\d+|[A-Za-z_]\w*|\*\*|\^|[-+*/()])"
)


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError("cannot tokenize %r" % (text[pos:],))
            break
        tok = m.group(1)
        out.append("^" if tok == "**" else tok)
        pos = m.end()
    return out


class _OpParser:
    """Recursive-descent parser producing a DiffOp on a fixed chart.

    Multiplication is operator composition; division requires a purely
    scalar divisor; powers take nonnegative integer exponents.
    """

    def __init__(self, tokens, chart):
        self.toks = tokens
        self.i = 0
        self.chart = tuple(chart)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, tok):
        got = self.take()
        if got != tok:
            raise ValueError("expected %r, got %r" % (tok, got))

    def parse(self):
        out = self.expr()
        if self.peek() is not None:
            raise ValueError("trailing input at %r" % (self.peek(),))
        return out

    def expr(self):
        if self.peek() == "-":
            self.take()
            out = -self.term()
        elif self.peek() == "+":
            self.take()
            out = self.term()
        else:
            out = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self):
        out = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            if op == "*":
                out = compose(out, rhs)
            else:
                out = compose(out, _invert_scalar_op(rhs))
        return out

    def factor(self):
        out = self.atom()
        while self.peek() == "^":
            self.take()
            neg = False
            if self.peek() == "-":
                self.take()
                neg = True
            tok = self.take()
            if tok is None or not tok.isdigit():
                raise ValueError("exponent must be an integer")
            n = int(tok)
            if neg:
                out = _invert_scalar_op(op_power_guarded(out, n))
            else:
                out = op_power_guarded(out, n)
        return out

    def atom(self):
        tok = self.take()
        if tok is None:
            raise ValueError("unexpected end of input")
        if tok == "(":
            out = self.expr()
            self.expect(")")
            return out
        if tok.startswith("d/d"):
            return DiffOp.partial(self.chart, tok[3:])
        if tok.isdigit():
            return DiffOp.const(self.chart, int(tok))
        if re.fullmatch(r"t|[xy]\d+", tok):
            return DiffOp.of_poly(CoefPoly.var(self.chart, Var.parse(tok)))
        # parameter symbol
        return DiffOp.const(self.chart, parse_scalar(tok))


def op_power_guarded(a, n):
    return op_power(a, n)


def _invert_scalar_op(a):
    """Inverse of a scalar-valued operator (no derivatives, no variables)."""
    if list(a.terms) not in ([], [(0,) * len(a.chart)]):
        raise ValueError("division by a non-scalar operator")
    if a.is_zero():
        raise ZeroDivisionError("division by zero operator")
    poly = a.terms[(0,) * len(a.chart)]
    if list(poly.terms) != [(0,) * len(a.chart)]:
        raise ValueError("division by a variable-dependent coefficient")
    val = poly.terms[(0,) * len(a.chart)]
    return DiffOp.const(a.chart, val ** -1)


def parse_diffop(text, chart):
    """Parse the operator grammar on the given chart."""
    return _OpParser(_tokenize(text), make_chart(*chart)).parse()


# --- rendering --------------------------------------------------------------

def _scalar_atom(s, latex=False):
    txt = latex_scalar(s) if latex else render_scalar(s)
    stripped = txt[1:] if txt.startswith("-") else txt
    needs = any(c in stripped for c in "+-") or (latex and "\\frac" not in txt and "/" in txt)
    if not latex and "/" in stripped:
        needs = True
    return "(%s)" % txt if needs else txt


def _var_latex(v):
    return "t" if v.kind == "t" else "%s_{%d}" % (v.kind, v.n)


def _piece_text(chart, dexpo, expo, coef, latex=False):
    factors = []
    one = Scalar.const(1)
    minus_one = Scalar.const(-1)
    sign = ""
    body_empty = all(e == 0 for e in expo) and all(d == 0 for d in dexpo)
    if coef == minus_one and not body_empty:
        sign = "-"
    elif not (coef == one and not body_empty):
        factors.append(_scalar_atom(coef, latex))
    for v, e in zip(chart, expo):
        if not e:
            continue
        name = _var_latex(v) if latex else str(v)
        if e == 1:
            factors.append(name)
        else:
            factors.append("%s^{%d}" % (name, e) if latex else "%s^%d" % (name, e))
    for v, d in zip(chart, dexpo):
        if not d:
            continue
        if latex:
            base = "\\partial_{%s}" % (_var_latex(v),)
            factors.append(base if d == 1 else "%s^{%d}" % (base, d))
        else:
            base = "d/d%s" % (v,)
            factors.append(base if d == 1 else "(%s)^%d" % (base, d))
    joiner = " " if latex else "*"
    return sign + joiner.join(factors)


def _render(op, latex=False):
    if not op.terms:
        return "0"
    pieces = []
    for dexpo in sorted(op.terms, key=lambda d: (sum(d), d)):
        poly = op.terms[dexpo]
        for expo in sorted(poly.terms, key=lambda e: (sum(e), e)):
            pieces.append(_piece_text(op.chart, dexpo, expo, poly.terms[expo], latex))
    out = pieces[0]
    for p in pieces[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def render_diffop(op):
    """Text form in the operator grammar (round-trips through parse)."""
    return _render(op, latex=False)


def latex_diffop(op):
    """LaTeX form of the operator."""
    return _render(op, latex=True)


def render_poly_in_vars(p):
    """Text form of a coefficient polynomial (grammar-compatible)."""
    return render_diffop(DiffOp.of_poly(p))
