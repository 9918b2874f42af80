from fractions import Fraction

import pytest

from diffgalois.certificates import RelationWitness, VerdictKind
from diffgalois.errors import InvalidParameterError, ZeroInputError
from diffgalois.exactalg import ONE, ZERO, Poly, RatFunc, TauShift, parse
from diffgalois.shiftgalois import (
    GammaProblem,
    gamma_application,
    shift_classify,
    shift_coboundary_test,
    shift_delta_dimension,
    shift_galois_report,
    shift_independence_verdict,
    shift_reduce_mod_image,
    shift_standard_form,
)
from diffgalois.spiral import divisor_of, factor_squarefree, is_standard

from corpora import random_gauge, random_poly, random_ratfunc, rng_for
from oracles import delta_oracle, to_sympy

T1 = TauShift(1)


class TestStandardForm:
    def test_adjacent_roots_merge(self):
        a = parse("z*(z+1)")
        sf = shift_standard_form(a, 1)
        abar = sf.standard_part.to_ratfunc()
        # both roots lie on the orbit of 1 (band 0 < c <= 1); abar carries it twice
        assert abar == parse("(z-1)^2")
        assert abar * T1.apply(sf.gauge) / sf.gauge == a
        assert is_standard(factor_squarefree(abar, extract_z=False), T1)

    def test_already_standard(self):
        sf = shift_standard_form(parse("z-1/2"), 1)
        assert sf.gauge == ONE

    def test_full_telescoping(self):
        h = parse("z^2+1")
        assert shift_standard_form(T1.apply(h) / h, 1).standard_part.to_ratfunc() == ONE

    def test_roundtrip_random(self):
        rng = rng_for(3)
        for tau in (Fraction(1), Fraction(2, 3)):
            act = TauShift(tau)
            for _ in range(40):
                abar = random_ratfunc(rng, 3)
                if not is_standard(factor_squarefree(abar, extract_z=False), act):
                    continue
                g = random_gauge(rng)
                sf = shift_standard_form(abar * act.apply(g) / g, act)
                out = sf.standard_part.to_ratfunc()
                assert out * act.apply(sf.gauge) / sf.gauge == abar * act.apply(g) / g
                assert divisor_of(out, act) == divisor_of(abar, act)


class TestCoboundary:
    def test_examples(self):
        w = shift_coboundary_test(parse("(z+1)/z"), 1)
        assert w.mu == 1 and w.r == 0 and w.verify()
        w = shift_coboundary_test(parse("5"), 1)
        assert (w.mu, w.g) == (5, ONE)
        assert shift_coboundary_test(parse("z"), 1) is None


class TestReduce:
    def test_constant_is_image(self):
        res, tel = shift_reduce_mod_image(ONE, 1)
        assert res.is_zero() and tel == parse("z")

    def test_one_over_z(self):
        res, _ = shift_reduce_mod_image(parse("1/z"), 1)
        assert not res.is_zero()
        assert shift_delta_dimension([parse("1/z")], 1)[0] == 1

    @pytest.mark.parametrize("tau", [Fraction(1), Fraction(2, 3), Fraction(-3)])
    def test_polynomials_are_killed(self, tau):
        act = TauShift(tau)
        rng = rng_for(17)
        for _ in range(50):
            p = RatFunc(random_poly(rng, rng.randint(0, 10)))
            res, tel = shift_reduce_mod_image(p, act)
            assert res.is_zero() and res.constant_term == 0
            assert act.apply(tel) - tel == p

    def test_random_coboundaries(self):
        rng = rng_for(19)
        for tau in (Fraction(1), Fraction(2, 3)):
            act = TauShift(tau)
            for _ in range(40):
                k = random_ratfunc(rng, 4)
                res, tel = shift_reduce_mod_image(act.apply(k) - k, act)
                assert res.is_zero() and act.apply(tel) - tel == act.apply(k) - k

    def test_delta_against_oracle(self):
        cases = [["1/z", "1/(z+1)"], ["1/z", "1/(z+1/2)", "z^3"], ["1/z^2", "1/(z-3)^2", "1/(z^2+1)"],
                 ["1/(z^2+1)", "1/((z+1)^2+1)", "z/(z^2+1)"]]
        for texts in cases:
            for tau in (1, Fraction(2, 3)):
                bs = [parse(t) for t in texts]
                assert shift_delta_dimension(bs, tau)[0] == delta_oracle([to_sympy(t) for t in texts], tau=tau)


class TestClassify:
    @pytest.mark.parametrize(
        "text, kind",
        [("z", VerdictKind.HYPERTRANSCENDENT), ("2", VerdictKind.HYPERALGEBRAIC_ORDER1),
         ("-1", VerdictKind.ALGEBRAIC), ("1", VerdictKind.ALGEBRAIC), ("-(z+1)/z", VerdictKind.ALGEBRAIC),
         ("3*(z+2)/z", VerdictKind.HYPERALGEBRAIC_ORDER1), ("z^2+1", VerdictKind.HYPERTRANSCENDENT)],
    )
    def test_kinds(self, text, kind):
        v = shift_classify(parse(text), 1)
        assert v.kind is kind and v.verify()

    def test_no_order_two(self):
        rng = rng_for(23)
        for _ in range(100):
            assert shift_classify(random_ratfunc(rng, 3), T1).kind is not VerdictKind.HYPERALGEBRAIC_ORDER2

    def test_gauge_invariance(self):
        rng = rng_for(29)
        for _ in range(40):
            a, g = random_ratfunc(rng, 2), random_gauge(rng)
            assert shift_classify(a, T1).kind is shift_classify(a * T1.apply(g) / g, T1).kind

    def test_zero(self):
        with pytest.raises(ZeroInputError):
            shift_classify(ZERO, 1)


class TestIndependence:
    def test_distinct_classes(self):
        v = shift_independence_verdict([parse("z+1/3"), parse("z+1/2")], 1)
        assert v.kind is VerdictKind.INDEPENDENT

    def test_shifted_pair(self):
        v = shift_independence_verdict([parse("z"), parse("z+1")], 1)
        w = v.witness(RelationWitness)
        assert v.kind is VerdictKind.DEPENDENT and w.r == (1, -1) and w.mu == 1 and v.verify()
        # z / (z + 1) = sigma(h)/h with h = 1/z
        assert w.h == parse("1/z")

    def test_scalar_relation(self):
        v = shift_independence_verdict([parse("2"), parse("8")], 1)
        w = v.witness(RelationWitness)
        assert w.r == (3, -1) and w.mu == 1 and w.h == ONE
        assert v.flags["algebraicallyDependent"]

    def test_divisor_relation_without_scalar_relation(self):
        v = shift_independence_verdict([parse("z"), parse("3*(z+1)")], 1)
        assert v.kind is VerdictKind.DEPENDENT and not v.flags["algebraicallyDependent"]
        assert v.witness(RelationWitness).mu == Fraction(1, 3)


class TestGamma:
    def test_distribution_relation(self):
        rep = gamma_application(GammaProblem(("1/3", "2/3", "0"), (3,)))
        assert not rep.hyper_independent
        assert rep.witness.r == (1, 1, 1, -1) and rep.witness.verify()

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_full_distribution_is_dependent(self, n):
        rep = gamma_application(GammaProblem(tuple(Fraction(i, n) for i in range(n)), (n,)))
        assert not rep.hyper_independent and rep.witness.verify()

    def test_half(self):
        rep = gamma_application(GammaProblem(("1/2",), (2,)))
        assert rep.hyper_independent and rep.alg_independent

    def test_m_scalar_check(self):
        rep = gamma_application(GammaProblem((), (2,), 4))
        assert rep.alg_independent and rep.hyper_independent

    def test_m_completes_the_distribution_relation(self):
        # Gamma(z)Gamma(z+1/2) = c 2^(-2z) Gamma(2z): with m = 4 the f_i are algebraically dependent
        rep = gamma_application(GammaProblem(("0", "1/2"), (2,), 4))
        assert not rep.alg_independent and not rep.hyper_independent
        assert rep.algebraic_lattice == ((1, 1, -1, 1),)

    @pytest.mark.parametrize("kwargs", [{"ns": (1,)}, {"alphas": ("0",), "m": 1}, {}, {"ns": (2,), "m": "3/2"}])
    def test_validation(self, kwargs):
        with pytest.raises(InvalidParameterError):
            GammaProblem(**kwargs)

    def test_multiplier_encoding(self):
        p = GammaProblem((), (3,))
        assert p.gamma_multipliers()[0] == parse("3*z*(3*z+1)*(3*z+2)")
        # Gamma(3z) satisfies Gamma(3z + 3) = (3z)(3z+1)(3z+2) Gamma(3z)


def test_galois_report_gamma():
    rep = shift_galois_report([parse("z")], 1, 1)
    assert (rep.delta, rep.reductive_dim, rep.t) == (1, 1, 2)
    assert shift_galois_report([parse("z")], 4, 1).t == 5
