"""Decision procedures for first-order q-difference equations sigma_q(f) = a f
over Q(z), with the derivation z d/dz.

Summary of the criteria implemented here (a in Q(z)*, |q| != 1):

* f is algebraic over C_E(z) iff a = lam * sigma(g)/g with lam of finite
  order in Q*/q^Z;
* f, df are dependent iff a = mu * sigma(g)/g;
* f, df, d^2 f are dependent iff a = mu * z^r * sigma(g)/g;
* otherwise f is hypertranscendent.

Solutions f_1..f_n of a diagonal system are, together with all their
derivatives, algebraically independent iff the elliptic divisors div_E(a_i)
are Z-linearly independent.

The delta rank is computed over Q. For inputs in Q(z) the coordinates of
the canonical residues are rational, and the rank of a rational matrix does
not change under extension of scalars to C, so this equals the C-dimension
of the span modulo (sigma_q - 1)C(z).
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
    TorsionWitness,
    Verdict,
    VerdictKind,
)
from .difference import (
    CanonicalResidue,
    StandardForm,
    delta_dimension as _delta_dimension,
    family_data,
    log_derivative_jets,
    multiplicative_lattice,
    prime_exponents,
    reduce_mod_image as _reduce,
    relation_from_forms,
    standard_form as _standard_form,
)
from .errors import ZeroInputError
from .exactalg import Z, Derivation, QScale, RatFunc, as_fraction
from .spiral import kernel_of_divisors


def _action(q) -> QScale:
    return q if isinstance(q, QScale) else QScale(as_fraction(q))


def _nonzero(a: RatFunc):
    if not a:
        raise ZeroInputError("a must be nonzero")


def standard_form(a: RatFunc, q) -> StandardForm:
    """a = abar * sigma_q(g)/g with abar standard and its classes on the
    fundamental annulus; a zero or pole at 0 stays in abar as z^r."""
    return _standard_form(a, _action(q))


def monomial_coboundary_test(a: RatFunc, q):
    """Witness (mu, r, h) with a = mu z^r sigma_q(h)/h, or None when
    div_E(a) != 0."""
    act = _action(q)
    _nonzero(a)
    sf = _standard_form(a, act)
    if sf.standard_part.factors:
        return None
    return CoboundaryWitness(a, act, sf.standard_part.unit, sf.standard_part.z_exponent, sf.gauge)


def torsion_test(lam, q):
    """(n, s) with lam^n = q^s, n >= 1 minimal, or None if lam has infinite
    order in Q*/q^Z."""
    lam, q = as_fraction(lam), as_fraction(q)
    if not lam:
        raise ZeroInputError("lambda must be nonzero")
    QScale(q)
    vl, vq = prime_exponents(lam), prime_exponents(q)
    primes = set(vl) | set(vq)
    # lam = +-q^t with t = s/n rational, read off any prime of q
    p0 = next(iter(vq))
    t = Fraction(vl.get(p0, 0), vq[p0])
    if any(Fraction(vl.get(p, 0)) != t * vq.get(p, 0) for p in primes):
        return None
    n, s = t.denominator, t.numerator
    if lam ** n != q ** s:
        n, s = 2 * n, 2 * s
    return TorsionWitness(lam, q, n, s)


def reduce_mod_image(b: RatFunc, q):
    """(CanonicalResidue, k) with b = residue + sigma_q(k) - k."""
    return _reduce(b, _action(q))


def is_q_coboundary(b: RatFunc, q) -> bool:
    return reduce_mod_image(b, q)[0].is_zero()


def delta_dimension(bs, q):
    """(delta, dependencies): the Q-rank of bs in Q(z)/(sigma_q - 1)Q(z),
    and one telescoper witness per independent linear relation."""
    act = _action(q)
    bs = tuple(bs)
    res = _delta_dimension(bs, act)
    deps = [TelescoperWitness(bs, act, lam, k) for lam, k in res.dependencies]
    return res.delta, deps


def _hypertranscendence_evidence(a: RatFunc, act, sf: StandardForm):
    jets = tuple(log_derivative_jets(a, 2, Derivation.EULER))
    delta, _ = delta_dimension(jets, act)
    rep, m = sf.standard_part.factors[0]
    return [
        DeltaEvidence(jets, act, delta),
        NonzeroClassEvidence(a, act, RatFunc.from_poly(rep), m * rep.degree),
    ]


def classify_first_order(a: RatFunc, q) -> Verdict:
    act = _action(q)
    _nonzero(a)
    sf = _standard_form(a, act)
    if sf.standard_part.factors:
        return Verdict(VerdictKind.HYPERTRANSCENDENT, tuple(_hypertranscendence_evidence(a, act, sf)))
    cob = CoboundaryWitness(a, act, sf.standard_part.unit, sf.standard_part.z_exponent, sf.gauge)
    if cob.r != 0:
        return Verdict(VerdictKind.HYPERALGEBRAIC_ORDER2, (cob,), {"torsion": False})
    tor = torsion_test(cob.mu, act.q)
    if tor is not None:
        return Verdict(VerdictKind.ALGEBRAIC, (cob, tor), {"torsion": True})
    return Verdict(VerdictKind.HYPERALGEBRAIC_ORDER1, (cob,), {"torsion": False})


def _family(as_, act):
    as_ = tuple(as_)
    for a in as_:
        _nonzero(a)
    forms, divs = family_data(as_, act)
    return as_, forms, divs


def algebraic_relations(as_, q):
    """HNF basis of {r : prod a_i^r_i = sigma_q(h)/h for some h}: the
    relations among the f_i themselves (no derivatives)."""
    act = _action(q)
    as_, forms, divs = _family(as_, act)
    return _algebraic_lattice(forms, divs, act)


def _algebraic_lattice(forms, divs, act):
    universe = sorted({k for d in divs for k in d.entries}, key=lambda p: p.sort_key())
    rows = [[d[k] for d in divs] for k in universe]
    rows.append([f.standard_part.z_exponent for f in forms])
    scalars = [f.standard_part.unit for f in forms]
    return multiplicative_lattice(scalars, rows, base=act.q)


def _relation_witness(as_, forms, r, act, absorb_q=False):
    mu, zp, h = relation_from_forms(as_, forms, r, act)
    if absorb_q and zp == 0:
        tor = torsion_test(mu, act.q)
        if tor is not None and tor.n == 1:
            # mu = q^s = sigma(z^s)/z^s
            h = h * Z ** tor.s
            mu = Fraction(1)
    return RelationWitness(tuple(as_), act, tuple(r), mu, zp, h)


def independence_verdict(as_, q) -> Verdict:
    """Independent iff the div_E(a_i) are Z-independent; otherwise a
    relation prod a_i^r_i = mu z^m sigma_q(h)/h from the first HNF kernel
    vector.  The flag ``algebraicallyDependent`` reports whether the f_i
    themselves (without derivatives) satisfy a relation."""
    act = _action(q)
    as_, forms, divs = _family(as_, act)
    kernel = kernel_of_divisors(divs)
    alg = _algebraic_lattice(forms, divs, act)
    flags = {"algebraicallyDependent": bool(alg)}
    if not kernel:
        return Verdict(VerdictKind.INDEPENDENT, (), flags)
    witnesses = [_relation_witness(as_, forms, kernel[0], act)]
    if alg and list(alg[0]) != list(kernel[0]):
        witnesses.append(_relation_witness(as_, forms, alg[0], act, absorb_q=True))
    flags["kernel"] = [list(v) for v in kernel]
    return Verdict(VerdictKind.DEPENDENT, tuple(witnesses), flags)


@dataclass(frozen=True)
class GaloisReport:
    independent: bool
    delta: int
    unipotent_dim: int
    reductive_dim: int | None
    t: int | None
    verdict: Verdict
    n: int
    N: int

    def to_json(self):
        out = {"independent": self.independent, "deltaN": self.delta, "unipotentDim": self.unipotent_dim,
               "n": self.n, "N": self.N}
        if self.reductive_dim is not None:
            out["reductiveDim"] = self.reductive_dim
        if self.t is not None:
            out["tN"] = self.t
        return out


def galois_report_for(as_, N: int, act) -> GaloisReport:
    """Shared by both operators: delta_N over the log-derivative jets,
    unipotent radical of dimension delta_N, and t_N = delta_N + n whenever
    the f_i are algebraically independent (no multiplicative relation)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    as_ = tuple(as_)
    jets = [j for a in as_ for j in log_derivative_jets(a, N, act.derivation)]
    delta = _delta_dimension(jets, act).delta
    if isinstance(act, QScale):
        verdict = independence_verdict(as_, act)
    else:
        from .shiftgalois import shift_independence_verdict

        verdict = shift_independence_verdict(as_, act)
    alg_dep = verdict.flags["algebraicallyDependent"]
    reductive = None if alg_dep else len(as_)
    t = None if alg_dep else delta + len(as_)
    return GaloisReport(verdict.kind is VerdictKind.INDEPENDENT, delta, delta, reductive, t, verdict, len(as_), N)


def galois_report(as_, N: int, q) -> GaloisReport:
    return galois_report_for(as_, N, _action(q))
