"""Lowest-weight modules for the supported families.

A module vector is a finite linear combination of basis monomials.  Each
monomial is a product of creation generators applied to a lowest-weight
vector that every annihilator kills and on which the diagonal generators
act by scalars drawn from the family's parameters.

Two independent implementations of the generator action are provided:

* ``act_generic`` rewrites words of generators into normal order using
  only the structure constants (works for every family), and
* ``act_closed_form`` evaluates explicit per-generator formulas for the
  two planar families.

Their agreement on a shared domain is one of the package's core checks.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .algebra import (
    AlgebraSpec,
    Gen,
    bracket,
    creation_data,
    decomposition,
    normal_position,
    weight_table,
)
from .scalars import Scalar, UnsupportedFamily


class MissingParameter(KeyError):
    """A family parameter needed for the computation was not supplied."""


class InfiniteSelection(ValueError):
    """The requested constraint selects infinitely many basis monomials."""


@dataclass(frozen=True)
class PbwMonomial:
    """Exponent vector of one basis monomial.

    ``h`` counts the leftmost factor (H, or C for the centerless family);
    ``a`` and ``b`` hold the exponents of the two creation strings in
    ascending index order (``b`` is empty when the family has a single
    string).
    """

    h: int
    a: tuple
    b: tuple

    def __post_init__(self):
        if self.h < 0 or any(e < 0 for e in self.a + self.b):
            raise ValueError("negative exponent in %r" % (self,))

    def __str__(self):
        parts = [str(self.h)]
        parts.append(",".join(str(e) for e in self.a))
        parts.append(",".join(str(e) for e in self.b))
        return "|%s>" % ";".join(parts)


def check_monomial(spec, m):
    """Validate that ``m`` has the exponent shape of ``spec``'s module."""
    _, a_gens, b_gens = creation_data(spec)
    if len(m.a) != len(a_gens) or len(m.b) != len(b_gens):
        raise ValueError(
            "monomial %s does not fit %r (want %d+%d exponents)"
            % (m, spec, len(a_gens), len(b_gens))
        )
    return m


def _bump(t, i, step):
    out = list(t)
    out[i] += step
    return tuple(out)


class ModuleVector:
    """Finite linear combination of PbwMonomials with Scalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for mono, coef in (terms or {}).items():
            if not isinstance(coef, Scalar):
                coef = Scalar.const(coef)
            if not coef.is_zero:
                clean[mono] = coef
        self.terms = clean

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def of(cls, mono, coef=1):
        return cls({mono: coef if isinstance(coef, Scalar) else Scalar.const(coef)})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if not isinstance(other, ModuleVector):
            return NotImplemented
        terms = dict(self.terms)
        for mono, coef in other.terms.items():
            terms[mono] = terms.get(mono, Scalar.zero()) + coef
        return ModuleVector(terms)

    def __sub__(self, other):
        return self + other.scaled(Scalar.const(-1))

    def __neg__(self):
        return self.scaled(Scalar.const(-1))

    def scaled(self, coef):
        if not isinstance(coef, Scalar):
            coef = Scalar.const(coef)
        return ModuleVector({m: c * coef for m, c in self.terms.items()})

    def coefficient(self, mono):
        return self.terms.get(mono, Scalar.zero())

    def __eq__(self, other):
        return isinstance(other, ModuleVector) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0].h, kv[0].a, kv[0].b))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join("(%s)*%s" % (c, m) for m, c in self.items())


class Weight:
    """Joint eigenvalue record: maps diagonal generators to Scalars."""

    __slots__ = ("eigen",)

    def __init__(self, eigen):
        self.eigen = {g: (v if isinstance(v, Scalar) else Scalar.const(v))
                      for g, v in eigen.items()}

    def __getitem__(self, gen):
        return self.eigen[gen]

    def __contains__(self, gen):
        return gen in self.eigen

    def __eq__(self, other):
        return isinstance(other, Weight) and self.eigen == other.eigen

    def __repr__(self):
        body = ", ".join(
            "%s: %s" % (g, v) for g, v in sorted(self.eigen.items(), key=lambda kv: str(kv[0]))
        )
        return "Weight{%s}" % body


def required_parameters(spec):
    """Names of the family parameters entering this module's weights."""
    return tuple(sorted({sym for sym, _ in weight_table(spec).values()}))


def symbolic_params(spec):
    """Parameter assignment leaving every family parameter symbolic."""
    return {name: Scalar.symbol(name) for name in required_parameters(spec)}

def resolve_params(spec, params):
    """Coerce a user assignment to Scalars; default is fully symbolic.

    Raises MissingParameter if a required name is absent (extra names are
    ignored so one dict can serve several families).
    """
    if params is None:
        return symbolic_params(spec)
    out = {}
    for name in required_parameters(spec):
        if name not in params:
            raise MissingParameter(
                "parameter %r is required for %r" % (name, spec)
            )
        val = params[name]
        if isinstance(val, (int, Fraction)):
            val = Scalar.const(val)
        out[name] = val
    return out


def vacuum(spec, params=None):
    """The lowest-weight vector as a ModuleVector (single unit monomial)."""
    resolve_params(spec, params)
    _, a_gens, b_gens = creation_data(spec)
    return ModuleVector.of(PbwMonomial(0, (0,) * len(a_gens), (0,) * len(b_gens)))


# --- gradings -------------------------------------------------------------

def _int_bracket_coef(spec, diag, gen):
    """Integer c with [diag, gen] = c * gen (0 when the bracket vanishes)."""
    combo = bracket(spec, diag, gen)
    if not combo.terms:
        return 0
    [(g, c)] = combo.items()
    assert g == gen and c.is_rational()
    val = c.rational_value()
    assert val.denominator == 1
    return int(val)


def _grading(spec):
    """Per-slot grading data for the creation factors.

    Returns (slots, d_top) where slots is a list of
    ``(block, index, gen, dgrade, jgrade, lweight)`` for the a/b strings
    and d_top/j_top describe the leftmost factor.  ``lweight`` is the
    positive level weight used by integer-level enumeration.
    """
    top, a_gens, b_gens = creation_data(spec)
    has_j = any(g.tag == "J" for g in weight_table(spec))
    slots = []
    for block, gens in (("a", a_gens), ("b", b_gens)):
        for i, gen in enumerate(gens):
            d = _int_bracket_coef(spec, Gen("D"), gen)
            j = _int_bracket_coef(spec, Gen("J"), gen) if has_j else 0
            slots.append((block, i, gen, d, j, abs(d) if d else 1))
    d_top = _int_bracket_coef(spec, Gen("D"), top)
    j_top = _int_bracket_coef(spec, Gen("J"), top) if has_j else 0
    return slots, top, d_top, j_top


def _level_weights(spec):
    """(slots, top_weight, slot_weights): positive level weight per factor.

    For the centerless family every factor counts 1.  For the extended
    families a factor counts its scaling grade, except that a grade-zero
    factor counts 1 (so each level is finite-dimensional).
    """
    slots, top, d_top, _ = _grading(spec)
    if spec.ext == "none":
        return slots, 1, [1] * len(slots)
    return slots, d_top, [(d if d > 0 else 1) for _, _, _, d, _, _ in slots]


def level_of(spec, m):
    """Integer level of a basis monomial (see _level_weights)."""
    check_monomial(spec, m)
    slots, top_w, slot_w = _level_weights(spec)
    total = m.h * top_w
    for (block, i, *_), lw in zip(slots, slot_w):
        e = m.a[i] if block == "a" else m.b[i]
        total += e * lw
    return total


def weight_of(spec, m, params=None):
    """Joint diagonal eigenvalues of a basis monomial.

    Central generators and D (and J when present) act diagonally on every
    monomial.  For the centerless family the non-diagonalizable g0
    generator is included only on monomials it actually scales (h == 0).
    """
    check_monomial(spec, m)
    pvals = resolve_params(spec, params)
    table = weight_table(spec)
    slots, _, d_top, j_top = _grading(spec)
    dshift = m.h * d_top
    jshift = m.h * j_top
    for block, i, _, d, j, _ in slots:
        e = m.a[i] if block == "a" else m.b[i]
        dshift += e * d
        jshift += e * j
    eigen = {}
    for gen, (sym, sign) in table.items():
        base = pvals[sym] * Scalar.const(sign)
        if gen.tag == "D":
            eigen[gen] = base + Scalar.const(dshift)
        elif gen.tag == "J":
            eigen[gen] = base + Scalar.const(jshift)
        elif gen == Gen("P", 1) and spec.ext == "none":
            if m.h == 0:
                eigen[gen] = base
        else:  # central: M or Theta
            eigen[gen] = base
    return Weight(eigen)


# --- generic action by normal-ordering words ------------------------------

def _word_of(spec, m):
    """The normal word of a basis monomial (position-descending letters)."""
    top, a_gens, b_gens = creation_data(spec)
    pos = normal_position(spec)
    letters = [(pos[top], top)] * m.h
    for gens, expo in ((a_gens, m.a), (b_gens, m.b)):
        for gen, e in zip(gens, expo):
            letters += [(pos[gen], gen)] * e
    letters.sort(key=lambda pg: -pg[0])
    return tuple(g for _, g in letters)


def _monomial_of(spec, word):
    top, a_gens, b_gens = creation_data(spec)
    h = sum(1 for g in word if g == top)
    a = tuple(sum(1 for g in word if g == gen) for gen in a_gens)
    b = tuple(sum(1 for g in word if g == gen) for gen in b_gens)
    return PbwMonomial(h, a, b)


def act_generic(spec, x, v, params=None):
    """Action of generator ``x`` on vector ``v`` by word rewriting.

    Independent of every closed-form action: prepends ``x`` to each
    monomial's word and normal-orders using only ``algebra.bracket``,
    killing trailing annihilators and converting trailing diagonal
    letters into their eigenvalues.
    """
    pvals = resolve_params(spec, params)
    pos = normal_position(spec)
    table = weight_table(spec)
    eigen = {g: pvals[sym] * Scalar.const(sign) for g, (sym, sign) in table.items()}
    minus = set(decomposition(spec)[2])

    pending = {}

    def push(word, coef):
        if coef.is_zero:
            return
        prev = pending.get(word)
        pending[word] = coef if prev is None else prev + coef

    for mono, coef in v.terms.items():
        check_monomial(spec, mono)
        push((x,) + _word_of(spec, mono), coef)

    out = {}
    while pending:
        word, coef = pending.popitem()
        if coef.is_zero:
            continue
        if not word:
            mono = _monomial_of(spec, word)
            out[mono] = out.get(mono, Scalar.zero()) + coef
            continue
        last = word[-1]
        if pos[last] == 0:  # annihilator meets the lowest-weight vector
            continue
        if pos[last] == 1:  # diagonal letter: eigenvalue times the rest
            push(word[:-1], coef * eigen[last])
            continue
        # find the leftmost adjacent inversion (ascending positions)
        swap_at = None
        for i in range(len(word) - 1):
            if pos[word[i]] < pos[word[i + 1]]:
                swap_at = i
                break
        if swap_at is None:
            mono = _monomial_of(spec, word)
            out[mono] = out.get(mono, Scalar.zero()) + coef
            continue
        i = swap_at
        push(word[:i] + (word[i + 1], word[i]) + word[i + 2:], coef)
        for gen, c in bracket(spec, word[i], word[i + 1]).items():
            push(word[:i] + (gen,) + word[i + 2:], coef * c)
    return ModuleVector(out)


def act_word(spec, gens, v, params=None, action=None):
    """Apply a sequence of generators, rightmost factor first."""
    action = action or act_generic
    for gen in reversed(list(gens)):
        v = action(spec, gen, v, params=params)
    return v


# --- closed-form actions for the planar families --------------------------

def _comb(n, k):
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def _fact(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def _central_mag(two_ell, m):
    """(2l-m)! m! — magnitude of the closing structure constant."""
    return _fact(two_ell - m) * _fact(m)


def _closed_form_mass(spec, x, m, pvals):
    """Planar family with the commuting pair of strings (odd scaling grade)."""
    two_ell = spec.twoEll
    half = (two_ell - 1) // 2     # largest creation index
    halfp = (two_ell + 1) // 2    # smallest annihilator index
    mu = pvals["mu"]
    k, a, b = m.h, m.a, m.b
    out = {}

    def add(h2, a2, b2, coef):
        if isinstance(coef, (int, Fraction)):
            coef = Scalar.const(coef)
        if coef.is_zero or h2 < 0:
            return
        mono = PbwMonomial(h2, a2, b2)
        out[mono] = out.get(mono, Scalar.zero()) + coef

    def sign_I(n):
        # structure constant closing the two strings at total index 2l
        return (-1) ** (n + (two_ell + 1) // 2) * _central_mag(two_ell, n)

    dshift = 2 * k + sum((two_ell - 2 * n) * (a[n] + b[n]) for n in range(half + 1))

    if x == Gen("M"):
        add(k, a, b, -mu)
    elif x == Gen("D"):
        add(k, a, b, Scalar.const(dshift) - pvals["delta"])
    elif x == Gen("J"):
        jshift = sum(a[n] - b[n] for n in range(half + 1))
        add(k, a, b, Scalar.const(jshift) - pvals["r"])
    elif x == Gen("H"):
        add(k + 1, a, b, 1)
    elif x == Gen("C"):
        add(k - 1, a, b,
            Scalar.const(k) * (Scalar.const(k - 1 + dshift - 2 * k) - pvals["delta"]))
        if a[half] and b[half]:
            coef = mu * Scalar.const(
                -halfp * a[half] * b[half] * sign_I(halfp))
            add(k, _bump(a, half, -1), _bump(b, half, -1), coef)
        for n in range(half):
            if a[n]:
                add(k, _bump(_bump(a, n, -1), n + 1, 1), b, (two_ell - n) * a[n])
            if b[n]:
                add(k, a, _bump(_bump(b, n, -1), n + 1, 1), (two_ell - n) * b[n])
    elif x.tag == "P" and x.n <= half:  # creation
        for i in range(0, min(k, x.n) + 1):
            coef = _fact(i) * _comb(k, i) * _comb(x.n, i)
            if x.sign == "+":
                add(k - i, _bump(a, x.n - i, 1), b, coef)
            else:
                add(k - i, a, _bump(b, x.n - i, 1), coef)
    elif x.tag == "P":  # annihilator, n >= l + 1/2
        n = x.n
        same, other = (a, b) if x.sign == "+" else (b, a)
        for i in range(0, n - halfp + 1):
            j = two_ell - n + i  # index lowered in the opposite string
            if j > half or not other[j]:
                continue
            coef = mu * Scalar.const(
                -_fact(i) * _comb(k, i) * _comb(n, i) * other[j] * sign_I(n - i))
            if x.sign == "+":
                add(k - i, a, _bump(b, j, -1), coef)
            else:
                add(k - i, _bump(a, j, -1), b, coef)
        for i in range(n - half, k + 1):
            coef = _fact(i) * _comb(k, i) * _comb(n, i)
            if x.sign == "+":
                add(k - i, _bump(a, n - i, 1), b, coef)
            else:
                add(k - i, a, _bump(b, n - i, 1), coef)
    else:
        raise UnsupportedFamily("no closed-form action for %s on %r" % (x, spec))
    return ModuleVector(out)


def _closed_form_exotic(spec, x, m, pvals):
    """Planar family with the antisymmetric extension (even scaling grade)."""
    two_ell = spec.twoEll
    ell = two_ell // 2
    theta = pvals["theta"]
    h, a, b = m.h, m.a, m.b
    out = {}

    def add(h2, a2, b2, coef):
        if isinstance(coef, (int, Fraction)):
            coef = Scalar.const(coef)
        if coef.is_zero or h2 < 0:
            return
        mono = PbwMonomial(h2, a2, b2)
        out[mono] = out.get(mono, Scalar.zero()) + coef

    def mag_I(n):
        return (-1) ** n * _central_mag(two_ell, n)

    dshift = 2 * h + sum(2 * (ell - n) * (a[n] + b[n]) for n in range(ell))

    if x == Gen("Theta"):
        add(h, a, b, theta)
    elif x == Gen("D"):
        add(h, a, b, Scalar.const(dshift) - pvals["delta"])
    elif x == Gen("J"):
        jshift = sum(a[n] - b[n] for n in range(ell)) + a[ell]
        add(h, a, b, Scalar.const(jshift) - pvals["r"])
    elif x == Gen("H"):
        add(h + 1, a, b, 1)
    elif x == Gen("C"):
        add(h - 1, a, b,
            Scalar.const(h) * (Scalar.const(h - 1 + dshift - 2 * h) - pvals["delta"]))
        if a[ell] and b[ell - 1]:
            coef = theta * Scalar.const(ell * a[ell] * b[ell - 1] * mag_I(ell + 1))
            add(h, _bump(a, ell, -1), _bump(b, ell - 1, -1), coef)
        for n in range(ell):
            if a[n]:
                add(h, _bump(_bump(a, n, -1), n + 1, 1), b, (two_ell - n) * a[n])
        for n in range(ell - 1):
            if b[n]:
                add(h, a, _bump(_bump(b, n, -1), n + 1, 1), (two_ell - n) * b[n])
    elif x.tag == "P" and x.sign == "+" and x.n <= ell:  # creation
        for i in range(0, min(h, x.n) + 1):
            add(h - i, _bump(a, x.n - i, 1), b,
                _fact(i) * _comb(h, i) * _comb(x.n, i))
    elif x.tag == "P" and x.sign == "-" and x.n <= ell - 1:  # creation
        for i in range(0, min(h, x.n) + 1):
            add(h - i, a, _bump(b, x.n - i, 1),
                _fact(i) * _comb(h, i) * _comb(x.n, i))
    elif x.tag == "P" and x.sign == "+":  # annihilator, n >= l + 1
        n = x.n
        for i in range(0, n - ell):
            j = two_ell - n + i
            if j > ell - 1 or not b[j]:
                continue
            coef = theta * Scalar.const(
                _fact(i) * _comb(h, i) * _comb(n, i) * b[j] * mag_I(n - i))
            add(h - i, a, _bump(b, j, -1), coef)
        for i in range(n - ell, h + 1):
            add(h - i, _bump(a, n - i, 1), b,
                _fact(i) * _comb(h, i) * _comb(n, i))
    elif x.tag == "P":  # sign "-", annihilator, n >= l
        n = x.n
        for i in range(0, n - ell + 1):
            j = two_ell - n + i
            if j > ell or not a[j]:
                continue
            coef = theta * Scalar.const(
                -_fact(i) * _comb(h, i) * _comb(n, i) * a[j] * mag_I(n - i))
            add(h - i, _bump(a, j, -1), b, coef)
        for i in range(n - ell + 1, h + 1):
            add(h - i, a, _bump(b, n - i, 1),
                _fact(i) * _comb(h, i) * _comb(n, i))
    else:
        raise UnsupportedFamily("no closed-form action for %s on %r" % (x, spec))
    return ModuleVector(out)


def act_closed_form(spec, x, v, params=None):
    """Action of ``x`` on ``v`` by the explicit per-generator formulas.

    Available for the two planar extended families; other families raise
    UnsupportedFamily (use ``act_generic`` there).
    """
    if spec.d != 2:
        raise UnsupportedFamily(
            "closed-form actions cover the planar extended families only"
        )
    pvals = resolve_params(spec, params)
    impl = _closed_form_mass if spec.ext == "mass" else _closed_form_exotic
    total = ModuleVector.zero()
    for mono, coef in v.terms.items():
        check_monomial(spec, mono)
        total = total + impl(spec, x, mono, pvals).scaled(coef)
    return total


# --- basis enumeration -----------------------------------------------------

def _enumerate_by_level(spec, p):
    """All basis monomials of integer level exactly p (sorted)."""
    slots, top_w, slot_w = _level_weights(spec)
    lweights = [top_w] + slot_w
    sols = []

    def rec(i, rest, acc):
        if i == len(lweights):
            if rest == 0:
                sols.append(tuple(acc))
            return
        w = lweights[i]
        if i == len(lweights) - 1 and rest % w == 0:
            sols.append(tuple(acc) + (rest // w,))
            return
        for e in range(rest // w + 1):
            rec(i + 1, rest - e * w, acc + [e])

    rec(0, p, [])
    out = []
    for sol in sols:
        h = sol[0]
        a = [0] * sum(1 for blk, *_ in slots if blk == "a")
        b = [0] * sum(1 for blk, *_ in slots if blk == "b")
        for (blk, idx, *_), e in zip(slots, sol[1:]):
            (a if blk == "a" else b)[idx] = e
        out.append(PbwMonomial(h, tuple(a), tuple(b)))
    out.sort(key=lambda m: (m.h, m.a, m.b))
    return out


def _as_int(scalar, what):
    if not scalar.is_rational():
        raise ValueError("%s is not a number: %s" % (what, scalar))
    val = scalar.rational_value()
    if val.denominator != 1:
        return None
    return int(val)


def level_basis(spec, constraint, params=None):
    """Basis monomials selected by a level or a weight constraint.

    ``constraint`` is either a non-negative integer level, or a Weight /
    dict keyed by diagonal generators (Gen or tag string).  A weight
    constraint must pin the scaling eigenvalue; when the family has a
    grade-zero creation factor, the rotation eigenvalue must be pinned
    too, otherwise the selection is infinite (InfiniteSelection).
    Returns a sorted list (possibly empty).
    """
    if isinstance(constraint, int):
        if constraint < 0:
            return []
        return _enumerate_by_level(spec, constraint)

    if isinstance(constraint, Weight):
        eigen = dict(constraint.eigen)
    else:
        eigen = {}
        for key, val in dict(constraint).items():
            gen = key if isinstance(key, Gen) else Gen(key)
            eigen[gen] = val if isinstance(val, Scalar) else Scalar.const(val)

    pvals = resolve_params(spec, params)
    table = weight_table(spec)
    for gen in eigen:
        if gen not in table:
            raise ValueError("%s is not a diagonal generator of %r" % (gen, spec))
    if Gen("D") not in eigen:
        raise ValueError("a weight constraint must pin the D eigenvalue")
    sym, sign = table[Gen("D")]
    dshift_s = eigen[Gen("D")] - pvals[sym] * Scalar.const(sign)
    dshift = _as_int(dshift_s, "scaling shift")
    if dshift is None:
        return []

    jshift = None
    if Gen("J") in eigen:
        symj, signj = table[Gen("J")]
        jshift_s = eigen[Gen("J")] - pvals[symj] * Scalar.const(signj)
        jshift = _as_int(jshift_s, "rotation shift")
        if jshift is None:
            return []

    # a pinned central eigenvalue is monomial-independent: match or empty
    only_h0 = False
    for gen in eigen:
        if gen.tag in ("M", "Theta"):
            symc, signc = table[gen]
            if eigen[gen] != pvals[symc] * Scalar.const(signc):
                return []
        elif gen.tag == "P":  # centerless g0 generator: diagonal only at h=0
            symc, signc = table[gen]
            if eigen[gen] != pvals[symc] * Scalar.const(signc):
                return []
            only_h0 = True

    slots, top, d_top, j_top = _grading(spec)
    # all non-zero scaling grades share one sign within each family
    nonzero = [(d, j, ("top", None)) for d, j in [(d_top, j_top)]]
    nonzero += [((d, j, (blk, idx))) for blk, idx, _, d, j, _ in slots if d != 0]
    zero_slots = [(blk, idx, j) for blk, idx, _, d, j, _ in slots if d == 0]
    assert len(zero_slots) <= 1, "at most one grade-zero creation factor"
    if zero_slots and jshift is None:
        raise InfiniteSelection(
            "the scaling eigenvalue alone leaves a grade-zero factor free"
        )

    if dshift and all(d * dshift < 0 for d, _, _ in nonzero):
        return []

    out = []
    budget = abs(dshift)

    def rec(i, rest, acc):
        if i == len(nonzero):
            if rest != 0:
                return
            h = 0
            a = [0] * sum(1 for blk, *_ in slots if blk == "a")
            b = [0] * sum(1 for blk, *_ in slots if blk == "b")
            jsum = 0
            for (d, j, (blk, idx)), e in zip(nonzero, acc):
                jsum += j * e
                if blk == "top":
                    h = e
                elif blk == "a":
                    a[idx] = e
                else:
                    b[idx] = e
            if zero_slots:
                blk, idx, jz = zero_slots[0]
                need = jshift - jsum
                if jz == 0 or need * jz < 0 or need % jz:
                    if need != 0:
                        return
                    e0 = 0
                else:
                    e0 = need // jz
                (a if blk == "a" else b)[idx] = e0
            elif jshift is not None and jsum != jshift:
                return
            out.append(PbwMonomial(h, tuple(a), tuple(b)))
            return
        d, _, _ = nonzero[i]
        w = abs(d)
        for e in range(rest // w + 1):
            rec(i + 1, rest - e * w, acc + [e])

    rec(0, budget, [])
    if only_h0:
        out = [m for m in out if m.h == 0]
    out.sort(key=lambda m: (m.h, m.a, m.b))
    return out
