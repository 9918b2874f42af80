"""Orbit bookkeeping for zeros and poles.

Under z -> qz a root c moves along the q-spiral c*q^Z; under z -> z + tau it
moves along c + tau*Z.  Irreducible factors over Q are grouped into classes
(one per Galois orbit of spirals) and each class gets a canonical
representative:

* q-mode: the product of root magnitudes of the representative lies in
  (rho^d, 1] with rho = min(|q|, 1/|q|) and d the degree;
* tau-mode: the mean of the roots, divided by tau, lies in (0, 1].

A member at level k is the factor whose roots are those of the
representative moved k steps along the orbit: ``rep(q^-k z)`` made monic
(scale ``q^(k d)``), resp. ``rep(z - k tau)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import ZeroInputError
from .exactalg import (
    ONE_POLY,
    Poly,
    QScale,
    RatFunc,
    TauShift,
    Z_POLY,
    irreducible_factors,
    render,
    squarefree_refined_factors,
)
from .linalg import integer_kernel


@dataclass(frozen=True)
class FactoredRatFunc:
    """unit * z**z_exponent * prod(p**e for p, e in factors)."""

    unit: Fraction
    z_exponent: int
    factors: tuple

    def to_ratfunc(self) -> RatFunc:
        num, den = Poly.constant(self.unit), ONE_POLY
        if self.z_exponent > 0:
            num = num * Z_POLY ** self.z_exponent
        elif self.z_exponent < 0:
            den = den * Z_POLY ** (-self.z_exponent)
        for p, e in self.factors:
            if e > 0:
                num = num * p ** e
            else:
                den = den * p ** (-e)
        return RatFunc(num, den)

    def is_constant(self) -> bool:
        return self.z_exponent == 0 and not self.factors

    def to_json(self):
        return {
            "unit": render(self.unit),
            "zExponent": self.z_exponent,
            "factors": [{"p": render(p), "e": e} for p, e in self.factors],
        }


def _strip_z(p: Poly):
    k = 0
    while k < len(p.coeffs) and not p.coeffs[k]:
        k += 1
    return Poly(p.coeffs[k:]), k


def factor_squarefree(f: RatFunc, extract_z: bool = True) -> FactoredRatFunc:
    """Squarefree, pairwise coprime factorisation with rational roots split off.

    With ``extract_z`` (the q-mode convention) the power of z is pulled out
    into ``z_exponent``; otherwise z is an ordinary factor.
    """
    if not f:
        raise ZeroInputError("cannot factor the zero rational function")
    num, den = f.num, f.den
    unit = num.lc
    r = 0
    if extract_z:
        num, a = _strip_z(num)
        den, b = _strip_z(den)
        r = a - b
    factors = [(p, m) for p, m in squarefree_refined_factors(num.monic())]
    factors += [(p, -m) for p, m in squarefree_refined_factors(den)]
    factors.sort(key=lambda pe: (pe[0].sort_key(), pe[1]))
    return FactoredRatFunc(unit, r, tuple(factors))


# -- orbit positions -----------------------------------------------------------


def _in_annulus(c: Fraction, d: int, qabs: Fraction) -> bool:
    rho = qabs if qabs < 1 else 1 / qabs
    return rho ** d < c <= 1


@lru_cache(maxsize=65536)
def orbit_position(F: Poly, action):
    """(representative, level) of a monic irreducible factor F.

    In q-mode F must not be z.
    """
    d = F.degree
    if isinstance(action, QScale):
        if F == Z_POLY:
            raise ValueError("z has no q-spiral class")
        q = action.q
        qabs = abs(q)
        c = abs(F[0])
        # estimate k from logs, then correct exactly
        x = (math.log(c.numerator) - math.log(c.denominator)) / (
            d * (math.log(qabs.numerator) - math.log(qabs.denominator))
        )
        k = math.ceil(x) if qabs > 1 else math.floor(x)
        for _ in range(64):
            val = c / qabs ** (k * d)
            if _in_annulus(val, d, qabs):
                break
            too_big = val > 1
            # val shrinks as k grows iff |q| > 1
            k += (1 if too_big else -1) if qabs > 1 else (-1 if too_big else 1)
        else:  # pragma: no cover - the log estimate is off by at most one
            raise ArithmeticError("failed to locate annulus level")
        rep = F.scale(q ** k).monic()
        return rep, k
    tau = action.tau
    mean = -F[d - 1] / d
    k = math.ceil(mean / tau) - 1
    return F.shift(k * tau), k


def member_poly(rep: Poly, level: int, action) -> Poly:
    if isinstance(action, QScale):
        return rep.scale(action.q ** (-level)).monic()
    return rep.shift(-level * action.tau)


def member_scale(rep: Poly, level: int, action) -> Fraction:
    """c_k with member(z) = c_k * rep(q^-k z) (1 in tau-mode)."""
    if isinstance(action, QScale):
        return action.q ** (level * rep.degree)
    return Fraction(1)


@dataclass(frozen=True)
class Member:
    level: int
    scale: Fraction
    multiplicity: int
    poly: Poly


@dataclass(frozen=True)
class SpiralClass:
    representative: Poly
    members: tuple

    @property
    def total_multiplicity(self) -> int:
        return sum(m.multiplicity for m in self.members)

    @property
    def levels(self):
        return [m.level for m in self.members]


@dataclass(frozen=True)
class SpiralDecomposition:
    action: object
    classes: tuple

    def class_of(self, rep: Poly):
        for c in self.classes:
            if c.representative == rep:
                return c
        raise KeyError(rep)

    def to_factors(self):
        """The (member, multiplicity) list this decomposition was built from."""
        out = [(m.poly, m.multiplicity) for c in self.classes for m in c.members]
        out.sort(key=lambda pe: (pe[0].sort_key(), pe[1]))
        return tuple(out)


def spiral_refine(fac: FactoredRatFunc, action) -> SpiralDecomposition:
    """Group the zeros and poles of ``fac`` (away from z = 0 in q-mode) into
    orbit classes.

    Factors are first split into irreducibles over Q.  An irreducible never
    has two roots on one orbit (norm resp. trace argument), so after the
    split every factor sits at exactly one level of exactly one class.
    """
    acc = {}
    for p, e in fac.factors:
        for F, m in irreducible_factors(p):
            if isinstance(action, QScale) and F == Z_POLY:
                continue
            rep, k = orbit_position(F, action)
            levels = acc.setdefault(rep, {})
            levels[k] = levels.get(k, 0) + e * m
    classes = []
    for rep in sorted(acc, key=Poly.sort_key):
        members = tuple(
            Member(k, member_scale(rep, k, action), e, member_poly(rep, k, action))
            for k, e in sorted(acc[rep].items())
            if e
        )
        if members:
            classes.append(SpiralClass(rep, members))
    return SpiralDecomposition(action, tuple(classes))


# -- divisors --------------------------------------------------------------------


class Divisor:
    """Finitely supported map class-representative -> integer.

    Multiplicities are weighted by the degree of the representative.
    """

    __slots__ = ("entries",)

    def __init__(self, entries=None):
        self.entries = {k: v for k, v in (entries or {}).items() if v}

    def __getitem__(self, rep) -> int:
        return self.entries.get(rep, 0)

    def is_zero(self) -> bool:
        return not self.entries

    def support(self):
        return sorted(self.entries, key=Poly.sort_key)

    def __add__(self, other: "Divisor") -> "Divisor":
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) + v
        return Divisor(out)

    def __neg__(self):
        return Divisor({k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, n: int):
        return Divisor({k: n * v for k, v in self.entries.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Divisor) and self.entries == other.entries

    def __hash__(self):
        return hash(frozenset(self.entries.items()))

    def __repr__(self):
        inner = ", ".join(f"{render(k)}: {v}" for k, v in self.to_pairs())
        return f"Divisor({{{inner}}})"

    def to_pairs(self):
        return [(k, self.entries[k]) for k in self.support()]

    def to_json(self):
        return [{"class": render(k), "multiplicity": v} for k, v in self.to_pairs()]


def orbit_divisor(dec: SpiralDecomposition, fac: FactoredRatFunc | None = None) -> Divisor:
    """div_E (q-mode; the part at 0 is ignored) or div_tau (tau-mode)."""
    return Divisor({c.representative: c.total_multiplicity * c.representative.degree for c in dec.classes})


def divisor_of(a: RatFunc, action) -> Divisor:
    fac = factor_squarefree(a, extract_z=isinstance(action, QScale))
    return orbit_divisor(spiral_refine(fac, action), fac)


def kernel_of_divisors(divs):
    """HNF basis of {r in Z^n : sum r_i div_i = 0}; empty iff Z-independent."""
    divs = list(divs)
    universe = sorted({k for d in divs for k in d.entries}, key=Poly.sort_key)
    rows = [[d[k] for d in divs] for k in universe]
    return integer_kernel(rows, ncols=len(divs))


def is_standard(fac: FactoredRatFunc, action) -> bool:
    """No class has members at two different levels."""
    return all(len(c.members) <= 1 for c in spiral_refine(fac, action).classes)
