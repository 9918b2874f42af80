"""Exact arithmetic over Q: polynomials, rational functions, parsing, and
the two difference operators (q-dilation and tau-shift) with their
compatible derivations.

Coefficients are :class:`fractions.Fraction`. Polynomials are dense and
immutable; rational functions are kept reduced with a monic denominator so
that ``==`` is structural equality.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import InvalidParameterError, ParseError, SizeError, ZeroInputError

MAX_DEGREE = 10_000

# Degree of the zero polynomial.  Behaves correctly under deg(fg) = deg f + deg g
# and compares below every integer.
NEG_INF = float("-inf")

_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_fraction(x) -> Fraction:
    if type(x) is Fraction:
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def render_rational(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


class Poly:
    """Dense univariate polynomial in ``z`` with rational coefficients.

    ``coeffs[i]`` is the coefficient of ``z**i``; the tuple never ends in a zero.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        if len(cs) > MAX_DEGREE + 1:
            raise SizeError(f"polynomial degree {len(cs) - 1} exceeds {MAX_DEGREE}")
        self.coeffs = tuple(cs)
        self._hash = None

    @classmethod
    def _make(cls, cs: list) -> "Poly":
        # trusted constructor: cs already holds Fractions
        while cs and not cs[-1]:
            cs.pop()
        if len(cs) > MAX_DEGREE + 1:
            raise SizeError(f"polynomial degree {len(cs) - 1} exceeds {MAX_DEGREE}")
        p = object.__new__(cls)
        p.coeffs = tuple(cs)
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls._make([as_fraction(c)])

    @classmethod
    def monomial(cls, c, n: int) -> "Poly":
        return cls._make([_ZERO] * n + [as_fraction(c)])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Poly":
        p = ONE_POLY
        for r in roots:
            p = p * cls._make([-as_fraction(r), _ONE])
        return p

    # -- basic queries -------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else _ZERO

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.constant(other).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("Poly", self.coeffs))
        return self._hash

    def sort_key(self):
        return (len(self.coeffs), tuple(reversed(self.coeffs)))

    def __repr__(self):
        return f"Poly({render_poly(self)!r})"

    def __str__(self):
        return render_poly(self)

    # -- ring operations -----------------------------------------------

    def __neg__(self):
        return Poly._make([-c for c in self.coeffs])

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        cs = list(a)
        for i, c in enumerate(b):
            cs[i] += c
        return Poly._make(cs)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = as_fraction(other)
            if not c:
                return ZERO_POLY
            return Poly._make([x * c for x in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO_POLY
        cs = [_ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    cs[i + j] += x * y
        return Poly._make(cs)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        if self.coeffs and (len(self.coeffs) - 1) * n > MAX_DEGREE:
            raise SizeError(f"power would exceed degree {MAX_DEGREE}")
        result, base = ONE_POLY, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __divmod__(self, other: "Poly"):
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        b = other.coeffs
        db = len(b) - 1
        r = list(self.coeffs)
        if len(r) <= db:
            return ZERO_POLY, self
        inv = 1 / b[-1]
        q = [_ZERO] * (len(r) - db)
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            if c:
                c = c * inv
                q[k - db] = c
                off = k - db
                for j in range(db):
                    r[off + j] -= c * b[j]
            r[k] = _ZERO
        return Poly._make(q), Poly._make(r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def monic(self) -> "Poly":
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        return self * (1 / self.coeffs[-1])

    # -- calculus and substitutions --------------------------------------

    def __call__(self, x):
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly._make([i * c for i, c in enumerate(self.coeffs)][1:])

    def euler(self) -> "Poly":
        """z * d/dz"""
        return Poly._make([i * c for i, c in enumerate(self.coeffs)])

    def scale(self, c) -> "Poly":
        """p(c z)"""
        c = as_fraction(c)
        out, pw = [], _ONE
        for x in self.coeffs:
            out.append(x * pw)
            pw *= c
        return Poly._make(out)

    def shift(self, t) -> "Poly":
        """p(z + t)"""
        t = as_fraction(t)
        if not t:
            return self
        cs = list(self.coeffs)
        n = len(cs)
        # repeated synthetic division (Taylor shift)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                cs[j] += t * cs[j + 1]
        return Poly._make(cs)

    def content(self) -> Fraction:
        """Positive rational c with self / c a primitive integer polynomial."""
        if not self.coeffs:
            return _ONE
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, c.numerator * (den // c.denominator))
        return Fraction(g, den)

    def integer_coeffs(self) -> list:
        """Primitive integer coefficient list (low to high), positive leading term."""
        c = self.content()
        if self.lc < 0:
            c = -c
        return [int(x / c) for x in self.coeffs]


ZERO_POLY = Poly._make([])
ONE_POLY = Poly._make([_ONE])
Z_POLY = Poly._make([_ZERO, _ONE])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero only when both inputs are zero)."""
    while b:
        a, b = b, (a % b).monic()
    return a.monic()


def poly_xgcd(a: Poly, b: Poly):
    """Return (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = ONE_POLY, ZERO_POLY
    t0, t1 = ZERO_POLY, ONE_POLY
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    inv = 1 / r0.lc
    return r0 * inv, s0 * inv, t0 * inv


def squarefree_decomposition(p: Poly):
    """Yun's algorithm: list of (s_i, i) with p = lc * prod s_i**i, s_i monic
    squarefree, pairwise coprime and nonconstant."""
    if p.degree < 1:
        return []
    out = []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p.exact_div(a).monic()
    c = dp.exact_div(a)
    d = c - b.derivative()
    i = 1
    while b.degree >= 1:
        a = poly_gcd(b, d)
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        if a.degree >= 1:
            out.append((a, i))
        i += 1
    return out


@lru_cache(maxsize=4096)
def _factor_integer_poly(coeffs: tuple) -> tuple:
    from sympy import Poly as SymPoly, Symbol

    x = Symbol("x")
    _, facs = SymPoly(list(reversed(coeffs)), x, domain="ZZ").factor_list()
    out = []
    for f, e in facs:
        cs = [Fraction(int(c)) for c in reversed(f.all_coeffs())]
        out.append((tuple(cs), e))
    return tuple(out)


def irreducible_factors(p: Poly):
    """Monic irreducible factors of p over Q with multiplicities, sorted."""
    if p.degree < 1:
        return []
    facs = _factor_integer_poly(tuple(p.integer_coeffs()))
    out = [(Poly._make(list(cs)).monic(), e) for cs, e in facs]
    out.sort(key=lambda fe: fe[0].sort_key())
    return out


def rational_roots(p: Poly) -> list:
    return sorted(-f[0] for f, _ in irreducible_factors(p) if f.degree == 1)


# -- rational functions ------------------------------------------------------


class RatFunc:
    """Reduced quotient num/den with den monic; the field Q(z)."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        if not isinstance(num, Poly):
            num = Poly.constant(num)
        if den is None:
            den = ONE_POLY
        elif not isinstance(den, Poly):
            den = Poly.constant(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            num, den = ZERO_POLY, ONE_POLY
        elif den.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
        lc = den.lc
        if lc != 1:
            inv = 1 / lc
            num, den = num * inv, den * inv
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _make(cls, num: Poly, den: Poly) -> "RatFunc":
        f = object.__new__(cls)
        f.num, f.den, f._hash = num, den, None
        return f

    @classmethod
    def const(cls, c) -> "RatFunc":
        return cls._make(Poly.constant(c), ONE_POLY)

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFunc":
        return cls._make(p, ONE_POLY)

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def is_constant(self) -> bool:
        return self.den.degree == 0 and self.num.degree <= 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num[0]

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, Poly):
            return self.den.degree == 0 and self.num == other
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.num[0] == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("RatFunc", self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"RatFunc({render(self)!r})"

    def __str__(self):
        return render(self)

    @staticmethod
    def _coerce(x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, Poly):
            return RatFunc._make(x, ONE_POLY)
        return RatFunc.const(x)

    def __neg__(self):
        return RatFunc._make(-self.num, self.den)

    def __add__(self, other):
        o = RatFunc._coerce(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        if self.den.degree == 0:
            return RatFunc._make(self.num * o.den + o.num, o.den)
        if o.den.degree == 0:
            return RatFunc._make(self.num + o.num * self.den, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-RatFunc._coerce(other))

    def __rsub__(self, other):
        return RatFunc._coerce(other) - self

    def __mul__(self, other):
        o = RatFunc._coerce(other)
        if o.is_constant():
            c = o.num[0]
            return RatFunc._make(self.num * c, self.den) if c else ZERO
        if self.is_constant():
            return o * self
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * RatFunc._coerce(other).inverse()

    def __rtruediv__(self, other):
        return RatFunc._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc._make(self.num ** n, self.den ** n)

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def derive(self, kind: "Derivation") -> "RatFunc":
        return derive(self, kind)

    def sigma(self, action) -> "RatFunc":
        return action.apply(self)


ZERO = RatFunc._make(ZERO_POLY, ONE_POLY)
ONE = RatFunc._make(ONE_POLY, ONE_POLY)
Z = RatFunc._make(Z_POLY, ONE_POLY)


# -- derivations and difference operators ----------------------------------


class Derivation(str, enum.Enum):
    EULER = "euler"  # z d/dz, commutes with z -> qz
    PLAIN = "plain"  # d/dz, commutes with z -> z + tau


def derive(f: RatFunc, kind: Derivation = Derivation.PLAIN) -> RatFunc:
    kind = Derivation(kind)
    n, d = f.num, f.den
    if d.degree == 0:
        out = RatFunc._make(n.derivative(), ONE_POLY)
    else:
        out = RatFunc(n.derivative() * d - n * d.derivative(), d * d)
    if kind is Derivation.EULER:
        out = out * Z
    return out


def derive_n(f: RatFunc, n: int, kind: Derivation) -> RatFunc:
    for _ in range(n):
        f = derive(f, kind)
    return f


def log_derivative(a: RatFunc, kind: Derivation = Derivation.PLAIN) -> RatFunc:
    """(d a) / a for the selected derivation."""
    if not a:
        raise ZeroInputError("log-derivative of zero")
    kind = Derivation(kind)
    n, d = a.num, a.den
    # n'/n - d'/d
    out = RatFunc(n.derivative() * d - n * d.derivative(), n * d)
    if kind is Derivation.EULER:
        out = out * Z
    return out


@dataclass(frozen=True)
class QScale:
    """The automorphism f(z) -> f(qz), |q| != 1."""

    q: Fraction

    def __post_init__(self):
        q = as_fraction(self.q)
        object.__setattr__(self, "q", q)
        if q == 0 or abs(q.numerator) == q.denominator:
            raise InvalidParameterError(f"q must be nonzero with |q| != 1, got {render_rational(q)}")

    derivation = Derivation.EULER
    kind = "q"

    def apply(self, f: RatFunc) -> RatFunc:
        f = RatFunc._coerce(f)
        den = f.den.scale(self.q)
        lc = den.lc
        return RatFunc._make(f.num.scale(self.q) * (1 / lc), den * (1 / lc))

    def apply_poly(self, p: Poly) -> Poly:
        return p.scale(self.q)

    def to_json(self):
        return {"q": render_rational(self.q)}

    def __str__(self):
        return f"q={render_rational(self.q)}"


@dataclass(frozen=True)
class TauShift:
    """The automorphism f(z) -> f(z + tau), tau != 0."""

    tau: Fraction

    def __post_init__(self):
        t = as_fraction(self.tau)
        object.__setattr__(self, "tau", t)
        if t == 0:
            raise InvalidParameterError("tau must be nonzero")

    derivation = Derivation.PLAIN
    kind = "tau"

    def apply(self, f: RatFunc) -> RatFunc:
        f = RatFunc._coerce(f)
        return RatFunc._make(f.num.shift(self.tau), f.den.shift(self.tau))

    def apply_poly(self, p: Poly) -> Poly:
        return p.shift(self.tau)

    def to_json(self):
        return {"tau": render_rational(self.tau)}

    def __str__(self):
        return f"tau={render_rational(self.tau)}"


def sigma_apply(f: RatFunc, action) -> RatFunc:
    return action.apply(f)


def action_from_json(d: dict):
    if "q" in d:
        return QScale(as_fraction(d["q"]))
    if "tau" in d:
        return TauShift(as_fraction(d["tau"]))
    raise InvalidParameterError("expected a 'q' or 'tau' entry")


# -- partial fractions -------------------------------------------------------


@dataclass(frozen=True)
class PoleTerm:
    den: Poly  # monic squarefree
    power: int
    numerator: Poly  # degree < deg(den)


@dataclass(frozen=True)
class PartialFraction:
    poly_part: Poly
    terms: tuple

    def reconstruct(self) -> RatFunc:
        out = RatFunc.from_poly(self.poly_part)
        for t in self.terms:
            out = out + RatFunc(t.numerator, t.den ** t.power)
        return out


def squarefree_refined_factors(p: Poly):
    """Squarefree factors of p, with linear factors at rational roots split off."""
    out = []
    for s, m in squarefree_decomposition(p):
        rest = s
        for r in rational_roots(s):
            lin = Poly._make([-r, _ONE])
            out.append((lin, m))
            rest = rest.exact_div(lin)
        if rest.degree >= 1:
            out.append((rest.monic(), m))
    out.sort(key=lambda fm: (fm[0].sort_key(), fm[1]))
    return out


def partial_fractions_over(f: RatFunc, factors: Sequence) -> PartialFraction:
    """Partial fractions of f relative to a factorisation of its denominator.

    ``factors`` is a sequence of (F, m) with F monic squarefree, pairwise
    coprime, and prod F**m == f.den.
    """
    poly_part, rem = divmod(f.num, f.den)
    terms = []
    for F, m in factors:
        Fm = F ** m
        cof = f.den.exact_div(Fm)
        g, s, _ = poly_xgcd(cof % Fm, Fm)
        if g != ONE_POLY:
            raise ValueError("denominator factors are not coprime")
        A = (rem * s) % Fm
        # base-F expansion A = sum T_i F**i
        digits = []
        for _ in range(m):
            A, T = divmod(A, F)
            digits.append(T)
        for i, T in enumerate(digits):
            if T:
                terms.append(PoleTerm(F, m - i, T))
    return PartialFraction(poly_part, tuple(terms))


def partial_fractions(f: RatFunc) -> PartialFraction:
    return partial_fractions_over(f, squarefree_refined_factors(f.den))


# -- rendering and parsing ---------------------------------------------------


def render_poly(p: Poly) -> str:
    if not p:
        return "0"
    parts = []
    for e in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[e]
        if not c:
            continue
        mag = abs(c)
        if e == 0:
            body = render_rational(mag)
        else:
            mono = "z" if e == 1 else f"z^{e}"
            body = mono if mag == 1 else f"{render_rational(mag)}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


def _n_terms(p: Poly) -> int:
    return sum(1 for c in p.coeffs if c)


def render(f) -> str:
    """Canonical text form; parse(render(f)) == f."""
    if isinstance(f, Poly):
        return render_poly(f)
    if isinstance(f, (int, Fraction)):
        return render_rational(as_fraction(f))
    if f.den.degree == 0:
        return render_poly(f.num)
    num = render_poly(f.num)
    if _n_terms(f.num) > 1:
        num = f"({num})"
    den = render_poly(f.den)
    if _n_terms(f.den) > 1:
        den = f"({den})"
    return f"{num}/{den}"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self):
        t = self.text
        while self.pos < len(t) and t[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _digits(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError("expected digits", start)
        return int(self.text[start:self.pos])

    def parse(self) -> RatFunc:
        if not self.text.strip():
            raise ParseError("empty expression", 0)
        value = self.expr()
        self._skip()
        if self.pos != len(self.text):
            raise ParseError(f"unexpected character {self.text[self.pos]!r}", self.pos)
        return value

    def expr(self) -> RatFunc:
        sign = 1
        if self._peek() in "+-" and self._peek():
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
        value = self.term()
        if sign < 0:
            value = -value
        while self._peek() in ("+", "-") and self._peek():
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> RatFunc:
        value = self.factor()
        while self._peek() in ("*", "/") and self._peek():
            op = self.text[self.pos]
            at = self.pos
            self.pos += 1
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                if not rhs:
                    raise ParseError("division by zero", at)
                value = value / rhs
        return value

    def factor(self) -> RatFunc:
        base_at = self.pos
        value = self.base()
        if self._peek() == "^":
            self.pos += 1
            self._skip()
            at = self.pos
            sign = 1
            if self._peek() in ("+", "-") and self._peek():
                sign = -1 if self.text[self.pos] == "-" else 1
                self.pos += 1
            e = sign * self._digits()
            deg = max(value.num.degree, value.den.degree, 0)
            if deg * abs(e) > MAX_DEGREE:
                raise SizeError(f"exponent {e} would exceed degree {MAX_DEGREE}")
            if e < 0 and not value:
                raise ParseError("division by zero", at)
            if e == 0 and not value:
                raise ParseError("0^0 is undefined", base_at)
            value = value ** e
        return value

    def base(self) -> RatFunc:
        c = self._peek()
        if not c:
            raise ParseError("unexpected end of input", self.pos)
        if c == "z":
            self.pos += 1
            return Z
        if c == "(":
            self.pos += 1
            value = self.expr()
            if self._peek() != ")":
                raise ParseError("expected ')'", self.pos)
            self.pos += 1
            return value
        if c.isdigit():
            n = self._digits()
            save = self.pos
            if self._peek() == "/":
                self.pos += 1
                if self._peek().isdigit():
                    at = self.pos
                    d = self._digits()
                    if d == 0:
                        raise ParseError("zero denominator in rational literal", at)
                    return RatFunc.const(Fraction(n, d))
                self.pos = save
            return RatFunc.const(n)
        raise ParseError(f"unexpected character {c!r}", self.pos)


def parse(text: str) -> RatFunc:
    """Parse an expression in z (integers, p/q literals, + - * / ^, parentheses)."""
    return _Parser(text).parse()
