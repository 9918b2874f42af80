"""Operator-generic machinery shared by the q-dilation and tau-shift cases:
standard forms, reduction modulo the image of (sigma - 1), the delta rank,
and multiplicative relation lattices.

Everything here takes the difference operator as an ``action`` object
(:class:`QScale` or :class:`TauShift`); the public entry points with the
operator-specific conventions live in :mod:`qgalois` and :mod:`shiftgalois`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import ZeroInputError
from .exactalg import (
    ONE_POLY,
    ZERO,
    ZERO_POLY,
    Z_POLY,
    Poly,
    QScale,
    RatFunc,
    derive,
    irreducible_factors,
    log_derivative,
    partial_fractions_over,
    render,
)
from .linalg import integer_kernel, hermite_normal_form, nullspace, primitive_integer_vector, rank
from .spiral import (
    FactoredRatFunc,
    divisor_of,
    factor_squarefree,
    kernel_of_divisors,
    member_poly,
    orbit_position,
    spiral_refine,
)


# -- standard form -----------------------------------------------------------


@dataclass(frozen=True)
class StandardForm:
    """a = standard_part * sigma(gauge) / gauge, standard_part standard."""

    standard_part: FactoredRatFunc
    gauge: RatFunc

    def to_json(self):
        return {"standardPart": self.standard_part.to_json(), "abar": render(self.standard_part.to_ratfunc()),
                "g": render(self.gauge)}


def standard_form(a: RatFunc, action) -> StandardForm:
    if not a:
        raise ZeroInputError("standard form of zero")
    is_q = isinstance(action, QScale)
    fac = factor_squarefree(a, extract_z=is_q)
    dec = spiral_refine(fac, action)
    unit = fac.unit
    # exponent of each member polynomial inside the gauge g
    gauge_exp = {}
    rep_factors = []
    for cls in dec.classes:
        rep = cls.representative
        for m in cls.members:
            unit *= m.scale ** m.multiplicity
            k, e = m.level, m.multiplicity
            if k > 0:
                for j in range(1, k + 1):
                    P = member_poly(rep, j, action)
                    gauge_exp[P] = gauge_exp.get(P, 0) - e
            elif k < 0:
                for j in range(k + 1, 1):
                    P = member_poly(rep, j, action)
                    gauge_exp[P] = gauge_exp.get(P, 0) + e
        if cls.total_multiplicity:
            rep_factors.append((rep, cls.total_multiplicity))
    num, den = ONE_POLY, ONE_POLY
    for P, e in gauge_exp.items():
        if e > 0:
            num = num * P ** e
        elif e < 0:
            den = den * P ** (-e)
    gauge = RatFunc._make(num, den)
    abar = FactoredRatFunc(unit, fac.z_exponent, tuple(sorted(rep_factors, key=lambda pe: pe[0].sort_key())))
    return StandardForm(abar, gauge)


def coboundary_ratio(g: RatFunc, action) -> RatFunc:
    """sigma(g) / g"""
    return action.apply(g) / g


# -- canonical residues modulo (sigma - 1) K --------------------------------


@dataclass(frozen=True)
class CanonicalResidue:
    """constant + sum residues[(rep, l)] / rep**l; zero iff in (sigma-1)K."""

    constant_term: Fraction = Fraction(0)
    residues: dict = field(default_factory=dict)

    def is_zero(self) -> bool:
        return not self.constant_term and not self.residues

    def reconstruct(self) -> RatFunc:
        out = RatFunc.const(self.constant_term)
        for (rep, l), T in self._sorted_items():
            out = out + RatFunc(T, rep ** l)
        return out

    def _sorted_items(self):
        return sorted(self.residues.items(), key=lambda kv: (kv[0][0].sort_key(), kv[0][1]))

    def coordinates(self) -> dict:
        out = {}
        if self.constant_term:
            out[("const",)] = self.constant_term
        for (rep, l), T in self.residues.items():
            for i, c in enumerate(T.coeffs):
                if c:
                    out[(rep, l, i)] = c
        return out

    def __add__(self, other: "CanonicalResidue"):
        res = dict(self.residues)
        for k, T in other.residues.items():
            s = res.get(k, ZERO_POLY) + T
            if s:
                res[k] = s
            else:
                res.pop(k, None)
        return CanonicalResidue(self.constant_term + other.constant_term, res)

    def scale(self, c) -> "CanonicalResidue":
        c = Fraction(c)
        if not c:
            return CanonicalResidue()
        return CanonicalResidue(self.constant_term * c, {k: T * c for k, T in self.residues.items()})

    def __eq__(self, other):
        return (
            isinstance(other, CanonicalResidue)
            and self.constant_term == other.constant_term
            and self.residues == other.residues
        )

    def __hash__(self):
        return hash((self.constant_term, frozenset(self.residues.items())))

    def to_json(self):
        return {
            "constantTerm": render(self.constant_term),
            "residues": [
                {"class": render(rep), "power": l, "numerator": render(T)} for (rep, l), T in self._sorted_items()
            ],
        }


def _solve_shift_polynomial(p: Poly, tau: Fraction) -> Poly:
    """K with K(z + tau) - K(z) = p and K(0) = 0."""
    K = ZERO_POLY
    rest = p
    while rest:
        n = rest.degree
        c = rest.lc / ((n + 1) * tau)
        mono = Poly.monomial(c, n + 1)
        K = K + mono
        rest = rest - (mono.shift(tau) - mono)
    return K


def _assemble(poly_part: Poly, pieces: dict) -> RatFunc:
    """poly_part + sum pieces[(P, l)] / P**l, the P monic and pairwise coprime."""
    by_poly = {}
    for (P, l), N in pieces.items():
        if N:
            by_poly.setdefault(P, []).append((l, N))
    if not by_poly:
        return RatFunc.from_poly(poly_part)
    blocks = []
    for P, items in by_poly.items():
        L = max(l for l, _ in items)
        num = ZERO_POLY
        for l, N in items:
            num = num + N * P ** (L - l)
        if num:
            blocks.append((P ** L, num))
    den = ONE_POLY
    for D, _ in blocks:
        den = den * D
    num = poly_part * den
    for D, N in blocks:
        num = num + N * den.exact_div(D)
    return RatFunc(num, den)


def reduce_mod_image(b: RatFunc, action):
    """(residue, k) with b = residue.reconstruct() + sigma(k) - k exactly.

    The residue is a normal form of b in K / (sigma - 1)K: every pole term is
    transported along its orbit to the representative level, polynomial
    terms killed where possible, and k carries no constant term.
    """
    if not b:
        return CanonicalResidue(), ZERO
    is_q = isinstance(action, QScale)
    factors = irreducible_factors(b.den)
    pf = partial_fractions_over(b, factors)
    pieces = {}
    residues = {}

    def add(d, key, T):
        s = d.get(key, ZERO_POLY) + T
        if s:
            d[key] = s
        else:
            d.pop(key, None)

    const = Fraction(0)
    if is_q:
        q = action.q
        const = pf.poly_part[0]
        K = Poly([Fraction(0)] + [c / (q ** n - 1) for n, c in enumerate(pf.poly_part.coeffs) if n >= 1])
    else:
        K = _solve_shift_polynomial(pf.poly_part, action.tau)

    for t in pf.terms:
        F, l, T = t.den, t.power, t.numerator
        if is_q and F == Z_POLY:
            # nu / z^l = (sigma - 1)(nu / ((q^-l - 1) z^l))
            add(pieces, (Z_POLY, l), T * (1 / (action.q ** (-l) - 1)))
            continue
        rep, j = orbit_position(F, action)
        d = rep.degree
        while j > 0:
            add(pieces, (member_poly(rep, j, action), l), -T)
            if is_q:
                T = T.scale(action.q) * (action.q ** (-d * l))
            else:
                T = T.shift(action.tau)
            j -= 1
        while j < 0:
            if is_q:
                S = T.scale(1 / action.q) * (action.q ** (d * l))
            else:
                S = T.shift(-action.tau)
            add(pieces, (member_poly(rep, j + 1, action), l), S)
            T = S
            j += 1
        add(residues, (rep, l), T)
    return CanonicalResidue(const, residues), _assemble(K, pieces)


def is_coboundary(b: RatFunc, action) -> bool:
    return reduce_mod_image(b, action)[0].is_zero()


# -- delta: rank modulo (sigma - 1) K ------------------------------------------


@dataclass(frozen=True)
class DeltaResult:
    delta: int
    residues: tuple
    telescopers: tuple
    # each dependency is (lambda vector, k) with sum lambda_i b_i = sigma(k) - k
    dependencies: tuple


def delta_dimension(bs, action) -> DeltaResult:
    bs = list(bs)
    reduced = [reduce_mod_image(b, action) for b in bs]
    residues = [r for r, _ in reduced]
    coords = [r.coordinates() for r in residues]
    keys = sorted({k for c in coords for k in c}, key=_coord_key)
    if not keys:
        delta, deps = 0, [[Fraction(int(i == j)) for i in range(len(bs))] for j in range(len(bs))]
    else:
        # columns are the b_i; a dependency is a null vector of this matrix
        rows = [[c.get(k, Fraction(0)) for c in coords] for k in keys]
        delta = rank(rows)
        deps = nullspace(rows)
    out = []
    for v in deps:
        lam = [Fraction(x) for x in primitive_integer_vector(v)]
        k = ZERO
        for li, (_, ki) in zip(lam, reduced):
            if li:
                k = k + ki * li
        out.append((tuple(lam), k))
    return DeltaResult(delta, tuple(residues), tuple(k for _, k in reduced), tuple(out))


def _coord_key(k):
    if k == ("const",):
        return (0,)
    rep, l, i = k
    return (1, rep.sort_key(), l, i)


def log_derivative_jets(a: RatFunc, N: int, derivation):
    """[d^j (d a / a) for j in 0..N-1]"""
    out = []
    f = log_derivative(a, derivation)
    for _ in range(N):
        out.append(f)
        f = derive(f, derivation)
    return out


# -- multiplicative relations --------------------------------------------------


@lru_cache(maxsize=4096)
def _factor_int(n: int) -> tuple:
    from sympy import factorint

    return tuple(sorted(factorint(n).items())) if n > 1 else ()


def prime_exponents(x: Fraction) -> dict:
    x = abs(Fraction(x))
    out = dict(_factor_int(x.numerator))
    for p, e in _factor_int(x.denominator):
        out[p] = out.get(p, 0) - e
    return out


def multiplicative_lattice(scalars, int_rows=(), base=None):
    """HNF basis of {r in Z^n : sum r_i row = 0 for every row and
    prod scalars_i**r_i in base**Z (exactly 1 when base is None)}."""
    n = len(scalars)
    vecs = [prime_exponents(s) for s in scalars]
    bvec = prime_exponents(base) if base is not None else {}
    primes = sorted({p for v in vecs for p in v} | set(bvec))
    nb = 1 if base is not None else 0
    width = n + nb + 1
    rows = []
    for r in int_rows:
        rows.append(list(r) + [0] * (nb + 1))
    for p in primes:
        row = [v.get(p, 0) for v in vecs]
        if nb:
            row.append(-bvec.get(p, 0))
        row.append(0)
        rows.append(row)
    sign = [int(Fraction(s) < 0) for s in scalars]
    if nb:
        sign.append(-int(Fraction(base) < 0))
    sign.append(-2)
    rows.append(sign)
    ker = integer_kernel(rows, ncols=width)
    return hermite_normal_form([v[:n] for v in ker])


def family_data(as_, action):
    """Standard forms and divisors of a family, over a shared class universe."""
    forms = [standard_form(a, action) for a in as_]
    divs = [divisor_of(a, action) for a in as_]
    return forms, divs


def relation_from_forms(as_, forms, r, action):
    """(mu, z_power, h) with prod a_i^r_i = mu z^z_power sigma(h)/h, read off
    the standard forms when r lies in the divisor kernel."""
    mu = Fraction(1)
    zp = 0
    h = RatFunc.const(1)
    for ri, f in zip(r, forms):
        if ri:
            mu *= f.standard_part.unit ** ri
            zp += ri * f.standard_part.z_exponent
            h = h * f.gauge ** ri
    return mu, zp, h
