"""Exact coefficient arithmetic for the toolkit.

Everything downstream (structure constants, module actions, differential
operators) computes over the field of rational functions in the five weight
parameters.  This module provides that field: sparse multivariate polynomials
with Fraction coefficients (ParamPoly), normalized quotients of them (Scalar),
a polynomial gcd so quotients stay canonical, a text grammar, and the integer
constants attached to the central extensions.

Half-integer labels never appear: the label ell is carried as the integer
twoEll and every formula is written in terms of it.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import factorial

SYMBOLS = ("delta", "mu", "r", "theta", "kappa")
NSYM = len(SYMBOLS)

ZERO_EXPO = (0,) * NSYM

_F0 = Fraction(0)
_F1 = Fraction(1)


class DivisionByZero(ZeroDivisionError):
    """Raised when a Scalar division has a zero divisor."""


class UnsupportedFamily(ValueError):
    """Raised when an operation is not defined for the given family."""


def _grlex_key(expo):
    # graded lexicographic; kappa is the most significant tie-breaker
    return (sum(expo), expo[::-1])


class ParamPoly:
    """Sparse polynomial in the parameter symbols over the rationals.

    terms maps an exponent vector (one slot per entry of SYMBOLS) to a
    nonzero Fraction; the zero polynomial has an empty map.  Instances are
    treated as immutable once constructed.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for expo, coef in terms.items():
                coef = Fraction(coef)
                if coef:
                    clean[tuple(expo)] = coef
        self.terms = clean

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def const(cls, value):
        return cls({ZERO_EXPO: Fraction(value)})

    @classmethod
    def symbol(cls, name):
        if name not in SYMBOLS:
            raise ValueError("unknown symbol %r" % (name,))
        i = SYMBOLS.index(name)
        expo = tuple(1 if j == i else 0 for j in range(NSYM))
        return cls({expo: _F1})

    @property
    def is_zero(self):
        return not self.terms

    def is_const(self):
        return not self.terms or set(self.terms) == {ZERO_EXPO}

    def const_value(self):
        """The Fraction value of a constant polynomial."""
        if not self.is_const():
            raise ValueError("not a constant polynomial")
        return self.terms.get(ZERO_EXPO, _F0)

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def leading(self):
        """(exponent, coefficient) of the grlex-leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        expo = max(self.terms, key=_grlex_key)
        return expo, self.terms[expo]

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ParamPoly.const(other)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self):
        return ParamPoly({e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ParamPoly.const(other)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        terms = dict(self.terms)
        for expo, coef in other.terms.items():
            acc = terms.get(expo, _F0) + coef
            if acc:
                terms[expo] = acc
            else:
                terms.pop(expo, None)
        out = ParamPoly.__new__(ParamPoly)
        out.terms = terms
        return out

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ParamPoly.const(other)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ParamPoly.zero()
            out = ParamPoly.__new__(ParamPoly)
            out.terms = {e: c * other for e, c in self.terms.items()}
            return out
        if not isinstance(other, ParamPoly):
            return NotImplemented
        acc = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                expo = tuple(a + b for a, b in zip(e1, e2))
                s = acc.get(expo, _F0) + c1 * c2
                if s:
                    acc[expo] = s
                else:
                    acc.pop(expo, None)
        out = ParamPoly.__new__(ParamPoly)
        out.terms = acc
        return out

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial power wants a nonnegative integer")
        out = ParamPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def substitute(self, assign):
        """Replace symbols by values (Fraction, int, or ParamPoly)."""
        values = {}
        for name, val in assign.items():
            if name not in SYMBOLS:
                raise ValueError("unknown symbol %r" % (name,))
            values[SYMBOLS.index(name)] = (
                val if isinstance(val, ParamPoly) else ParamPoly.const(val)
            )
        out = ParamPoly.zero()
        for expo, coef in self.terms.items():
            term = ParamPoly.const(coef)
            residual = list(expo)
            for i, val in values.items():
                if expo[i]:
                    term = term * val ** expo[i]
                    residual[i] = 0
            out = out + term * ParamPoly({tuple(residual): _F1})
        return out

    def __repr__(self):
        return "ParamPoly(%s)" % (render_poly(self),)


def poly_div_exact(a, b):
    """Quotient a/b when b divides a exactly, else None."""
    if b.is_zero:
        raise DivisionByZero("polynomial division by zero")
    if a.is_zero:
        return ParamPoly.zero()
    eb, cb = b.leading()
    quot = {}
    rem = a
    while rem:
        ea, ca = rem.leading()
        expo = tuple(x - y for x, y in zip(ea, eb))
        if min(expo) < 0:
            return None
        coef = ca / cb
        quot[expo] = coef
        rem = rem - ParamPoly({expo: coef}) * b
    return ParamPoly(quot)


# gcd machinery: recursive content / primitive-part with a primitive
# pseudo-remainder sequence in the top active variable.

def _active_vars(p):
    return [i for i in range(NSYM) if any(e[i] for e in p.terms)]


def _as_univariate(p, v):
    """View p as dict: exponent of symbol v -> ParamPoly in the others."""
    out = {}
    for expo, coef in p.terms.items():
        k = expo[v]
        rest = expo[:v] + (0,) + expo[v + 1:]
        out.setdefault(k, {})[rest] = coef
    return {k: ParamPoly(d) for k, d in out.items()}


def _from_univariate(u, v):
    terms = {}
    for k, poly in u.items():
        for expo, coef in poly.terms.items():
            terms[expo[:v] + (k,) + expo[v + 1:]] = coef
    return ParamPoly(terms)


def _uni_degree(u):
    return max(u) if u else -1


def _uni_scale(u, poly):
    out = {}
    for k, c in u.items():
        prod = c * poly
        if prod:
            out[k] = prod
    return out


def _uni_sub(u, w):
    out = dict(u)
    for k, c in w.items():
        acc = out.get(k, ParamPoly.zero()) - c
        if acc:
            out[k] = acc
        else:
            out.pop(k, None)
    return out


def _uni_shift(u, s):
    return {k + s: c for k, c in u.items()}


def _pseudo_rem(a, b):
    """Pseudo-remainder of univariate views a, b (deg a >= deg b >= 0)."""
    db = _uni_degree(b)
    lb = b[db]
    rem = a
    while rem and _uni_degree(rem) >= db:
        dr = _uni_degree(rem)
        lr = rem[dr]
        rem = _uni_sub(_uni_scale(rem, lb), _uni_scale(_uni_shift(b, dr - db), lr))
    return rem


def _uni_content(u):
    cont = ParamPoly.zero()
    for c in u.values():
        cont = poly_gcd(cont, c)
    return cont


def _uni_div(u, d):
    out = {}
    for k, c in u.items():
        q = poly_div_exact(c, d)
        assert q is not None, "content division must be exact"
        out[k] = q
    return out


def _monic(p):
    if p.is_zero:
        return p
    _, lc = p.leading()
    return p * (1 / lc)


def poly_gcd(a, b):
    """Monic gcd of two ParamPoly over the rationals."""
    if a.is_zero:
        return _monic(b)
    if b.is_zero:
        return _monic(a)
    active = sorted(set(_active_vars(a)) | set(_active_vars(b)))
    if not active:
        return ParamPoly.const(1)
    v = active[-1]
    ua, ub = _as_univariate(a, v), _as_univariate(b, v)
    ca, cb = _uni_content(ua), _uni_content(ub)
    cg = poly_gcd(ca, cb)
    pa, pb = _uni_div(ua, ca), _uni_div(ub, cb)
    if _uni_degree(pa) < _uni_degree(pb):
        pa, pb = pb, pa
    while True:
        rem = _pseudo_rem(pa, pb)
        if not rem:
            break
        cont = _uni_content(rem)
        pa, pb = pb, _uni_div(rem, cont)
    return _monic(_from_univariate(pb, v) * cg)


class Scalar:
    """Canonical quotient of two ParamPoly.

    Normal form: gcd(num, den) = 1 and the denominator is monic under the
    grlex order, so equality is plain structural equality and zero-testing
    inspects the numerator.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, ParamPoly):
            num = ParamPoly.const(num)
        if den is None:
            den = ParamPoly.const(1)
        elif not isinstance(den, ParamPoly):
            den = ParamPoly.const(den)
        if den.is_zero:
            raise DivisionByZero("scalar with zero denominator")
        if num.is_zero:
            den = ParamPoly.const(1)
        elif den.is_const():
            num = num * (1 / den.const_value())
            den = ParamPoly.const(1)
        else:
            g = poly_gcd(num, den)
            if not g.is_const() or g.const_value() != 1:
                num = poly_div_exact(num, g)
                den = poly_div_exact(den, g)
            _, lc = den.leading()
            if lc != 1:
                inv = 1 / lc
                num = num * inv
                den = den * inv
        self.num = num
        self.den = den

    @classmethod
    def zero(cls):
        return cls(0)

    @classmethod
    def one(cls):
        return cls(1)

    @classmethod
    def const(cls, value):
        return cls(ParamPoly.const(value))

    @classmethod
    def symbol(cls, name):
        return cls(ParamPoly.symbol(name))

    @property
    def is_zero(self):
        return self.num.is_zero

    def is_one(self):
        return self.num == ParamPoly.const(1) and self.den == ParamPoly.const(1)

    def is_rational(self):
        return self.num.is_const() and self.den.is_const()

    def rational_value(self):
        """The Fraction value of a parameter-free Scalar."""
        if not self.is_rational():
            raise ValueError("scalar %s is not parameter-free" % (self,))
        return self.num.const_value()

    def __bool__(self):
        return not self.num.is_zero

    def __eq__(self, other):
        other = _coerce_scalar(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        out = Scalar.__new__(Scalar)
        out.num = -self.num
        out.den = self.den
        return out

    def __add__(self, other):
        other = _coerce_scalar(other)
        if other is None:
            return NotImplemented
        return Scalar(self.num * other.den + other.num * self.den,
                      self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_scalar(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce_scalar(other)
        if other is None:
            return NotImplemented
        return Scalar(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_scalar(other)
        if other is None:
            return NotImplemented
        if other.num.is_zero:
            raise DivisionByZero("scalar division by zero")
        return Scalar(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _coerce_scalar(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, k):
        if not isinstance(k, int):
            raise ValueError("scalar power wants an integer")
        if k < 0:
            return Scalar(self.den, self.num) ** (-k)
        return Scalar(self.num ** k, self.den ** k)

    def substitute(self, assign):
        """Specialize symbols; assign maps names to Fraction/int/ParamPoly."""
        return Scalar(self.num.substitute(assign), self.den.substitute(assign))

    def __repr__(self):
        return "Scalar(%s)" % (render_scalar(self),)

    def __str__(self):
        return render_scalar(self)


def _coerce_scalar(value):
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction)):
        return Scalar.const(value)
    if isinstance(value, ParamPoly):
        return Scalar(value)
    return None


def scalar_arith(a, b, op):
    """Field arithmetic entry point: op is one of add, sub, mul, div."""
    table = {
        "add": lambda: a + b,
        "sub": lambda: a - b,
        "mul": lambda: a * b,
        "div": lambda: a / b,
    }
    if op not in table:
        raise ValueError("unknown op %r" % (op,))
    return table[op]()


def central_constant(spec, m):
    """Integer I_m of the central bracket [P(m), P(2l-m)] for spec's family.

    mass:   I_m = (-1)^(m + l + 1/2) (2l-m)! m!   (twoEll odd)
    exotic: I_m = (-1)^m (2l-m)! m!               (twoEll even)
    """
    ext = spec.ext
    two_ell = spec.twoEll
    if ext == "none":
        raise UnsupportedFamily("centerless family has no central constant")
    if not 0 <= m <= two_ell:
        raise ValueError("index m=%r outside 0..%d" % (m, two_ell))
    mag = factorial(two_ell - m) * factorial(m)
    if ext == "mass":
        # m + l + 1/2 = m + (twoEll + 1)/2, an integer since twoEll is odd
        sign = -1 if (m + (two_ell + 1) // 2) % 2 else 1
    elif ext == "exotic":
        sign = -1 if m % 2 else 1
    else:
        raise UnsupportedFamily("unknown extension %r" % (ext,))
    return sign * mag


# text grammar: numbers, the five symbol names, + - * / ^ and parentheses;
# rendering emits e.g. (2*delta+1)/mu and the parser accepts it back.

def _render_poly_term(expo, coef):
    factors = []
    for i, e in enumerate(expo):
        if e == 1:
            factors.append(SYMBOLS[i])
        elif e > 1:
            factors.append("%s^%d" % (SYMBOLS[i], e))
    if not factors:
        return str(coef)
    body = "*".join(factors)
    if coef == 1:
        return body
    if coef == -1:
        return "-" + body
    return "%s*%s" % (coef, body)


def render_poly(p):
    if p.is_zero:
        return "0"
    parts = []
    for expo in sorted(p.terms, key=_grlex_key, reverse=True):
        term = _render_poly_term(expo, p.terms[expo])
        if parts and not term.startswith("-"):
            parts.append("+" + term)
        else:
            parts.append(term)
    return "".join(parts)


def render_scalar(s):
    num = render_poly(s.num)
    if s.den == ParamPoly.const(1):
        return num
    den = render_poly(s.den)
    if len(s.num.terms) > 1:
        num = "(%s)" % num
    if len(s.den.terms) > 1 or "*" in den:
        den = "(%s)" % den
    return "%s/%s" % (num, den)


_TOKEN_RE = re.compile(r"\s*(\d+|[A-Za-z_]\w*|\*\*|[-+*/^()])")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if not match:
            if text[pos:].strip():
                raise ValueError("bad character at %d in %r" % (pos, text))
            break
        tok = match.group(1)
        tokens.append("^" if tok == "**" else tok)
        pos = match.end()
    return tokens


class _ScalarParser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expr(self):
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            value = value * rhs if op == "*" else value / rhs
        return value

    def factor(self):
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take() == "-":
                sign = -sign
        value = self.atom()
        if self.peek() == "^":
            self.take()
            neg = False
            while self.peek() in ("+", "-"):
                neg ^= self.take() == "-"
            tok = self.take()
            if tok is None or not tok.isdigit():
                raise ValueError("exponent must be an integer")
            value = value ** (-int(tok) if neg else int(tok))
        return value * sign if sign < 0 else value

    def atom(self):
        tok = self.take()
        if tok is None:
            raise ValueError("unexpected end of scalar expression")
        if tok == "(":
            value = self.expr()
            if self.take() != ")":
                raise ValueError("missing closing parenthesis")
            return value
        if tok.isdigit():
            return Scalar.const(int(tok))
        if tok in SYMBOLS:
            return Scalar.symbol(tok)
        raise ValueError("unexpected token %r" % (tok,))


def parse_scalar(text):
    """Parse the scalar grammar, e.g. '(2*delta+1)/mu'."""
    parser = _ScalarParser(_tokenize(text))
    value = parser.expr()
    if parser.peek() is not None:
        raise ValueError("trailing input at token %r" % (parser.peek(),))
    return value


_LATEX_SYMBOLS = {
    "delta": r"\delta",
    "mu": r"\mu",
    "r": "r",
    "theta": r"\theta",
    "kappa": r"\kappa",
}


def latex_poly(p):
    if p.is_zero:
        return "0"
    parts = []
    for expo in sorted(p.terms, key=_grlex_key, reverse=True):
        coef = p.terms[expo]
        factors = []
        for i, e in enumerate(expo):
            if e == 1:
                factors.append(_LATEX_SYMBOLS[SYMBOLS[i]])
            elif e > 1:
                factors.append("%s^{%d}" % (_LATEX_SYMBOLS[SYMBOLS[i]], e))
        body = " ".join(factors)
        if not body:
            term = _latex_fraction(coef)
        elif coef == 1:
            term = body
        elif coef == -1:
            term = "-" + body
        else:
            term = "%s %s" % (_latex_fraction(coef), body)
        if parts and not term.startswith("-"):
            parts.append("+" + term)
        else:
            parts.append(term)
    return "".join(parts)


def _latex_fraction(frac):
    if frac.denominator == 1:
        return str(frac.numerator)
    sign = "-" if frac < 0 else ""
    return r"%s\frac{%d}{%d}" % (sign, abs(frac.numerator), frac.denominator)


def latex_scalar(s):
    if s.den == ParamPoly.const(1):
        return latex_poly(s.num)
    return r"\frac{%s}{%s}" % (latex_poly(s.num), latex_poly(s.den))
