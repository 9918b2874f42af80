"""The shift operator sigma_tau(f)(z) = f(z + tau) with the derivation d/dz,
and the Gamma / polygamma / m^z family built on it.

Unlike the q-case there is no z^r term: the polynomial part of any b lies
in the image of sigma_tau - 1, and first-order solutions are hyperalgebraic
of order at most one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .certificates import (
    CoboundaryWitness,
    DeltaEvidence,
    NonzeroClassEvidence,
    RelationWitness,
    TelescoperWitness,
    Verdict,
    VerdictKind,
)
from .difference import (
    StandardForm,
    delta_dimension as _delta_dimension,
    family_data,
    log_derivative_jets,
    multiplicative_lattice,
    reduce_mod_image as _reduce,
    relation_from_forms,
    standard_form as _standard_form,
)
from .errors import InvalidParameterError, ZeroInputError
from .exactalg import ONE_POLY, Derivation, Poly, RatFunc, TauShift, as_fraction
from .spiral import divisor_of, kernel_of_divisors


def _action(tau) -> TauShift:
    return tau if isinstance(tau, TauShift) else TauShift(as_fraction(tau))


def _nonzero(a):
    if not a:
        raise ZeroInputError("a must be nonzero")


def shift_standard_form(a: RatFunc, tau=1) -> StandardForm:
    return _standard_form(a, _action(tau))


def shift_coboundary_test(a: RatFunc, tau=1):
    """Witness (mu, h) with a = mu sigma_tau(h)/h, or None when div_tau(a) != 0."""
    act = _action(tau)
    _nonzero(a)
    sf = _standard_form(a, act)
    if sf.standard_part.factors:
        return None
    return CoboundaryWitness(a, act, sf.standard_part.unit, 0, sf.gauge)


def shift_reduce_mod_image(b: RatFunc, tau=1):
    return _reduce(b, _action(tau))


def shift_delta_dimension(bs, tau=1):
    act = _action(tau)
    bs = tuple(bs)
    res = _delta_dimension(bs, act)
    return res.delta, [TelescoperWitness(bs, act, lam, k) for lam, k in res.dependencies]


def shift_classify(a: RatFunc, tau=1) -> Verdict:
    """Algebraic iff a = zeta sigma(g)/g with zeta = +-1 (the only roots of
    unity in Q); order 1 iff a = mu sigma(g)/g; hypertranscendent otherwise."""
    act = _action(tau)
    _nonzero(a)
    sf = _standard_form(a, act)
    if sf.standard_part.factors:
        jets = tuple(log_derivative_jets(a, 2, Derivation.PLAIN))
        rep, m = sf.standard_part.factors[0]
        evidence = (
            DeltaEvidence(jets, act, _delta_dimension(jets, act).delta),
            NonzeroClassEvidence(a, act, RatFunc.from_poly(rep), m * rep.degree),
        )
        return Verdict(VerdictKind.HYPERTRANSCENDENT, evidence)
    cob = CoboundaryWitness(a, act, sf.standard_part.unit, 0, sf.gauge)
    if abs(cob.mu) == 1:
        return Verdict(VerdictKind.ALGEBRAIC, (cob,), {"rootOfUnity": True})
    return Verdict(VerdictKind.HYPERALGEBRAIC_ORDER1, (cob,), {"rootOfUnity": False})


def _exact_lattice(forms, divs):
    universe = sorted({k for d in divs for k in d.entries}, key=Poly.sort_key)
    rows = [[d[k] for d in divs] for k in universe]
    return multiplicative_lattice([f.standard_part.unit for f in forms], rows)


def shift_algebraic_relations(as_, tau=1):
    """HNF basis of {r : prod a_i^r_i = sigma_tau(h)/h}, no scalar slack."""
    act = _action(tau)
    as_ = tuple(as_)
    for a in as_:
        _nonzero(a)
    return _exact_lattice(*family_data(as_, act))


def shift_independence_verdict(as_, tau=1) -> Verdict:
    """Independent iff the periodic divisors are Z-independent.

    When dependent, the witness relation is taken from the sub-lattice with
    mu = 1 if that is nontrivial (then the f_i themselves are algebraically
    dependent), else from the first HNF vector of the divisor kernel.
    """
    act = _action(tau)
    as_ = tuple(as_)
    for a in as_:
        _nonzero(a)
    forms, divs = family_data(as_, act)
    kernel = kernel_of_divisors(divs)
    alg = _exact_lattice(forms, divs)
    flags = {"algebraicallyDependent": bool(alg)}
    if not kernel:
        return Verdict(VerdictKind.INDEPENDENT, (), flags)
    r = alg[0] if alg else kernel[0]
    mu, _, h = relation_from_forms(as_, forms, r, act)
    flags["kernel"] = [list(v) for v in kernel]
    return Verdict(VerdictKind.DEPENDENT, (RelationWitness(as_, act, tuple(r), mu, 0, h),), flags)


def shift_galois_report(as_, N: int, tau=1):
    from .qgalois import galois_report_for

    return galois_report_for(as_, N, _action(tau))


# -- Gamma, polygamma and m^z ----------------------------------------------------


@dataclass(frozen=True)
class GammaProblem:
    """Gamma(z + alpha_i), Gamma(n_j z) and optionally m^z, all with tau = 1.

    Their multipliers are a_i = z + alpha_i, a'_j = prod_{i<n_j} (n_j z + i)
    and a_0 = m.
    """

    alphas: tuple = ()
    ns: tuple = ()
    m: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(as_fraction(x) for x in self.alphas))
        object.__setattr__(self, "ns", tuple(int(n) for n in self.ns))
        for n in self.ns:
            if n < 2:
                raise InvalidParameterError(f"multiplication factors must be >= 2, got {n}")
        if self.m is not None:
            m = as_fraction(self.m)
            if m.denominator != 1 or m < 2:
                raise InvalidParameterError(f"exponential base must be an integer >= 2, got {self.m}")
            object.__setattr__(self, "m", int(m))
        if not (self.alphas or self.ns or self.m is not None):
            raise InvalidParameterError("empty Gamma problem")

    def gamma_multipliers(self):
        out = [RatFunc.from_poly(Poly([a, 1])) for a in self.alphas]
        for n in self.ns:
            p = ONE_POLY
            for i in range(n):
                p = p * Poly([i, n])
            out.append(RatFunc.from_poly(p))
        return out

    def multipliers(self):
        """Gamma parts first, then m."""
        out = self.gamma_multipliers()
        if self.m is not None:
            out.append(RatFunc.const(self.m))
        return out

    def labels(self):
        out = [f"Gamma(z + {x})" if x else "Gamma(z)" for x in self.alphas] + [f"Gamma({n}z)" for n in self.ns]
        if self.m is not None:
            out.append(f"{self.m}^z")
        return out

    def to_json(self):
        out = {"alphas": [str(x) for x in self.alphas], "ns": list(self.ns)}
        if self.m is not None:
            out["m"] = self.m
        return out


@dataclass(frozen=True)
class GammaReport:
    alg_independent: bool
    hyper_independent: bool
    witness: RelationWitness | None
    divisor_kernel: tuple
    algebraic_lattice: tuple

    def to_json(self):
        out = {
            "algIndependent": self.alg_independent,
            "hyperIndependent": self.hyper_independent,
            "divisorKernel": [list(v) for v in self.divisor_kernel],
            "algebraicLattice": [list(v) for v in self.algebraic_lattice],
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def gamma_application(p: GammaProblem) -> GammaReport:
    """hyperIndependent: the periodic divisors of the Gamma multipliers are
    Z-independent (m^z plays no role, it is hyperalgebraic anyway).
    algIndependent: no r with prod a^r = sigma(h)/h over all multipliers
    including m, i.e. divisor relation plus the exact scalar equation."""
    act = TauShift(Fraction(1))
    gammas = p.gamma_multipliers()
    hyper_kernel = kernel_of_divisors([divisor_of(a, act) for a in gammas]) if gammas else []
    as_ = tuple(p.multipliers())
    forms, divs = family_data(as_, act)
    alg = _exact_lattice(forms, divs)
    witness = None
    if hyper_kernel or alg:
        if hyper_kernel:
            r = list(hyper_kernel[0]) + [0] * (len(as_) - len(gammas))
        else:
            r = alg[0]
        mu, _, h = relation_from_forms(as_, forms, r, act)
        witness = RelationWitness(as_, act, tuple(r), mu, 0, h)
    return GammaReport(not alg, not hyper_kernel, witness, tuple(map(tuple, hyper_kernel)), tuple(map(tuple, alg)))
