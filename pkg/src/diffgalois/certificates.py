"""Verdicts and the witnesses that back them.

Every witness can re-prove itself by exact substitution (``verify``) and
round-trips through JSON with all rational functions as canonical strings.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .exactalg import (
    ZERO,
    Z,
    QScale,
    RatFunc,
    action_from_json,
    as_fraction,
    parse,
    render,
)


class VerdictKind(str, enum.Enum):
    ALGEBRAIC = "Algebraic"
    HYPERALGEBRAIC_ORDER1 = "HyperalgebraicOrder1"
    HYPERALGEBRAIC_ORDER2 = "HyperalgebraicOrder2"
    HYPERTRANSCENDENT = "Hypertranscendent"
    INDEPENDENT = "Independent"
    DEPENDENT = "Dependent"

    @property
    def order(self):
        return {
            VerdictKind.ALGEBRAIC: 0,
            VerdictKind.HYPERALGEBRAIC_ORDER1: 1,
            VerdictKind.HYPERALGEBRAIC_ORDER2: 2,
        }.get(self)


def _r(f) -> str:
    return render(f)


def _p(s: str) -> RatFunc:
    return parse(s)


@dataclass(frozen=True)
class CoboundaryWitness:
    """a = mu * z^r * sigma(g) / g  (r = 0 in the shift case)."""

    a: RatFunc
    action: object
    mu: Fraction
    r: int
    g: RatFunc

    type = "CoboundaryWitness"

    def verify(self) -> bool:
        rhs = self.action.apply(self.g) / self.g * self.mu * Z ** self.r
        return rhs == self.a

    def to_json(self):
        return {"type": self.type, "a": _r(self.a), **self.action.to_json(), "mu": _r(self.mu), "r": self.r,
                "g": _r(self.g)}

    @classmethod
    def from_json(cls, d):
        return cls(_p(d["a"]), action_from_json(d), as_fraction(d["mu"]), int(d["r"]), _p(d["g"]))


@dataclass(frozen=True)
class TorsionWitness:
    """lam**n == q**s with n >= 1 (q = 1 encodes roots of unity)."""

    lam: Fraction
    q: Fraction
    n: int
    s: int

    type = "TorsionWitness"

    def verify(self) -> bool:
        return self.n >= 1 and self.lam ** self.n == self.q ** self.s

    def to_json(self):
        return {"type": self.type, "lambda": _r(self.lam), "q": _r(self.q), "n": self.n, "s": self.s}

    @classmethod
    def from_json(cls, d):
        return cls(as_fraction(d["lambda"]), as_fraction(d["q"]), int(d["n"]), int(d["s"]))


@dataclass(frozen=True)
class TelescoperWitness:
    """sum lambda_i b_i == sigma(k) - k."""

    bs: tuple
    action: object
    lambdas: tuple
    k: RatFunc

    type = "TelescoperWitness"

    def verify(self) -> bool:
        lhs = ZERO
        for lam, b in zip(self.lambdas, self.bs):
            if lam:
                lhs = lhs + b * lam
        return len(self.lambdas) == len(self.bs) and lhs == self.action.apply(self.k) - self.k

    def to_json(self):
        return {"type": self.type, "bs": [_r(b) for b in self.bs], **self.action.to_json(),
                "lambda": [_r(x) for x in self.lambdas], "k": _r(self.k)}

    @classmethod
    def from_json(cls, d):
        return cls(tuple(_p(b) for b in d["bs"]), action_from_json(d),
                   tuple(as_fraction(x) for x in d["lambda"]), _p(d["k"]))


@dataclass(frozen=True)
class RelationWitness:
    """prod a_i**r_i == mu * z^z_power * sigma(h) / h."""

    as_: tuple
    action: object
    r: tuple
    mu: Fraction
    z_power: int
    h: RatFunc

    type = "RelationWitness"

    def verify(self) -> bool:
        if not any(self.r) or len(self.r) != len(self.as_):
            return False
        lhs = RatFunc.const(1)
        for a, ri in zip(self.as_, self.r):
            if ri:
                lhs = lhs * a ** ri
        rhs = self.action.apply(self.h) / self.h * self.mu * Z ** self.z_power
        return lhs == rhs

    def to_json(self):
        return {"type": self.type, "as": [_r(a) for a in self.as_], **self.action.to_json(), "r": list(self.r),
                "mu": _r(self.mu), "zPower": self.z_power, "h": _r(self.h)}

    @classmethod
    def from_json(cls, d):
        return cls(tuple(_p(a) for a in d["as"]), action_from_json(d), tuple(int(x) for x in d["r"]),
                   as_fraction(d["mu"]), int(d["zPower"]), _p(d["h"]))


@dataclass(frozen=True)
class StandardFormWitness:
    """a == abar * sigma(g) / g with abar standard."""

    a: RatFunc
    action: object
    abar: RatFunc
    g: RatFunc

    type = "StandardFormWitness"

    def verify(self) -> bool:
        from .spiral import factor_squarefree, is_standard

        if self.abar * (self.action.apply(self.g) / self.g) != self.a:
            return False
        fac = factor_squarefree(self.abar, extract_z=isinstance(self.action, QScale))
        return is_standard(fac, self.action)

    def to_json(self):
        return {"type": self.type, "a": _r(self.a), **self.action.to_json(), "abar": _r(self.abar),
                "g": _r(self.g)}

    @classmethod
    def from_json(cls, d):
        return cls(_p(d["a"]), action_from_json(d), _p(d["abar"]), _p(d["g"]))


@dataclass(frozen=True)
class ReductionWitness:
    """b == residue + sigma(k) - k, residue the canonical reconstruction."""

    b: RatFunc
    action: object
    residue: RatFunc
    k: RatFunc

    type = "ReductionWitness"

    def verify(self) -> bool:
        return self.b == self.residue + self.action.apply(self.k) - self.k

    def to_json(self):
        return {"type": self.type, "b": _r(self.b), **self.action.to_json(), "residue": _r(self.residue),
                "k": _r(self.k)}

    @classmethod
    def from_json(cls, d):
        return cls(_p(d["b"]), action_from_json(d), _p(d["residue"]), _p(d["k"]))


@dataclass(frozen=True)
class DeltaEvidence:
    """delta(bs) == delta; re-checked by recomputing the reduction."""

    bs: tuple
    action: object
    delta: int

    type = "DeltaEvidence"

    def verify(self) -> bool:
        from .difference import delta_dimension

        return delta_dimension(self.bs, self.action).delta == self.delta

    def to_json(self):
        return {"type": self.type, "bs": [_r(b) for b in self.bs], **self.action.to_json(), "delta": self.delta}

    @classmethod
    def from_json(cls, d):
        return cls(tuple(_p(b) for b in d["bs"]), action_from_json(d), int(d["delta"]))


@dataclass(frozen=True)
class NonzeroClassEvidence:
    """A class of the standard part with nonzero multiplicity: div(a) != 0."""

    a: RatFunc
    action: object
    representative: RatFunc
    multiplicity: int

    type = "NonzeroClassEvidence"

    def verify(self) -> bool:
        from .spiral import divisor_of

        div = divisor_of(self.a, self.action)
        return self.multiplicity != 0 and div[self.representative.num] == self.multiplicity

    def to_json(self):
        return {"type": self.type, "a": _r(self.a), **self.action.to_json(),
                "class": _r(self.representative), "multiplicity": self.multiplicity}

    @classmethod
    def from_json(cls, d):
        return cls(_p(d["a"]), action_from_json(d), _p(d["class"]), int(d["multiplicity"]))


WITNESS_TYPES = {
    cls.type: cls
    for cls in (
        CoboundaryWitness,
        TorsionWitness,
        TelescoperWitness,
        RelationWitness,
        StandardFormWitness,
        ReductionWitness,
        DeltaEvidence,
        NonzeroClassEvidence,
    )
}


def witness_from_json(d):
    return WITNESS_TYPES[d["type"]].from_json(d)


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    witnesses: tuple = ()
    flags: dict = field(default_factory=dict)

    def verify(self) -> bool:
        return all(w.verify() for w in self.witnesses)

    def witness(self, cls):
        return next((w for w in self.witnesses if isinstance(w, cls)), None)

    def to_json(self):
        out = {"kind": self.kind.value, "flags": dict(self.flags)}
        if self.kind.order is not None:
            out["order"] = self.kind.order
        return out
