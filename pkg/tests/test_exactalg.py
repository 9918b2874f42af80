from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from diffgalois.errors import InvalidParameterError, ParseError, SizeError, ZeroInputError
from diffgalois.exactalg import (
    ONE,
    Z,
    ZERO,
    Derivation,
    Poly,
    QScale,
    RatFunc,
    TauShift,
    derive,
    irreducible_factors,
    log_derivative,
    parse,
    partial_fractions,
    poly_gcd,
    poly_xgcd,
    rational_roots,
    render,
    squarefree_decomposition,
)

small = st.fractions(min_value=-20, max_value=20, max_denominator=6)
polys = st.lists(small, max_size=6).map(Poly)
nonzero_polys = polys.filter(bool)
ratfuncs = st.tuples(polys, nonzero_polys).map(lambda nd: RatFunc(*nd))


class TestParse:
    @pytest.mark.parametrize(
        "text, expected",
        [
            ("2/3^2", RatFunc.const(Fraction(4, 9))),
            ("-z + 1", RatFunc(Poly([1, -1]))),
            ("1/z", Z.inverse()),
            ("(z-1)*(z+1)", RatFunc(Poly([-1, 0, 1]))),
            ("z^-2", Z ** -2),
            ("6/4", RatFunc.const(Fraction(3, 2))),
            ("  z ", Z),
        ],
    )
    def test_values(self, text, expected):
        assert parse(text) == expected

    @pytest.mark.parametrize(
        "text, position",
        [("1-*z", 2), ("2z", 1), ("(z", 2), ("", 0), ("z/0", 1), ("1/0", 2), ("z+", 2), ("z$", 1)],
    )
    def test_errors_carry_position(self, text, position):
        with pytest.raises(ParseError) as info:
            parse(text)
        assert info.value.position == position
        assert f"position {position}" in str(info.value)

    def test_size_guard(self):
        with pytest.raises(SizeError):
            parse("z^20000")

    def test_zero_to_zero(self):
        with pytest.raises(ParseError):
            parse("0^0")

    @settings(max_examples=200, deadline=None)
    @given(ratfuncs)
    def test_render_parse_roundtrip(self, f):
        assert parse(render(f)) == f


class TestRender:
    @pytest.mark.parametrize(
        "text, rendered",
        [
            ("1/3*z^2 - 2/3", "1/3*z^2 - 2/3"),
            ("(z-1)/(z^2+1)", "(z - 1)/(z^2 + 1)"),
            ("2/(2*z)", "1/z"),
            ("0", "0"),
            ("-z", "-z"),
            ("z/(3*z - 3)", "1/3*z/(z - 1)"),
        ],
    )
    def test_canonical(self, text, rendered):
        assert render(parse(text)) == rendered


class TestPoly:
    @settings(max_examples=200, deadline=None)
    @given(polys, nonzero_polys)
    def test_divmod(self, a, b):
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.degree < b.degree

    @settings(max_examples=150, deadline=None)
    @given(nonzero_polys, nonzero_polys)
    def test_xgcd(self, a, b):
        g, s, t = poly_xgcd(a, b)
        assert s * a + t * b == g
        assert g == poly_gcd(a, b)
        assert not a % g and not b % g

    @settings(max_examples=100, deadline=None)
    @given(polys, small)
    def test_shift_and_scale_are_substitutions(self, p, c):
        for x in (Fraction(0), Fraction(1, 3), Fraction(-2)):
            assert p.shift(c)(x) == p(x + c)
            assert p.scale(c)(x) == p(c * x)

    def test_degree_of_zero(self):
        assert Poly().degree == float("-inf")
        assert Poly().degree < -10**9

    def test_squarefree(self):
        p = parse("(z-1)^3*(z+2)*(z^2+1)^2").num
        parts = squarefree_decomposition(p)
        rebuilt = Poly([1])
        for f, m in parts:
            rebuilt = rebuilt * f ** m
        assert rebuilt == p.monic()
        assert {m for _, m in parts} == {1, 2, 3}

    def test_irreducible_factors(self):
        p = parse("(z^2-2)*(2*z-1)^2*(z^2+z+1)").num
        facs = irreducible_factors(p)
        assert [(render(RatFunc(f)), e) for f, e in facs] == [
            ("z - 1/2", 2), ("z^2 - 2", 1), ("z^2 + z + 1", 1)]

    def test_rational_roots(self):
        assert rational_roots(parse("(3*z-1)*(z+2)*(z^2+1)").num) == [Fraction(-2), Fraction(1, 3)]


class TestRatFunc:
    @settings(max_examples=150, deadline=None)
    @given(ratfuncs, ratfuncs)
    def test_field_axioms(self, f, g):
        assert f + g - g == f
        if g:
            assert f * g / g == f

    def test_monic_denominator(self):
        f = parse("3/(2*z+4)")
        assert f.den.lc == 1 and f == RatFunc(Poly([Fraction(3, 2)]), Poly([2, 1]))

    @settings(max_examples=100, deadline=None)
    @given(ratfuncs, ratfuncs)
    def test_leibniz(self, f, g):
        for kind in Derivation:
            assert derive(f * g, kind) == derive(f, kind) * g + f * derive(g, kind)

    def test_euler_derivation(self):
        assert derive(parse("z^3"), Derivation.EULER) == parse("3*z^3")
        assert derive(parse("1/z"), Derivation.PLAIN) == parse("-1/z^2")

    def test_log_derivative(self):
        assert log_derivative(parse("1-z"), Derivation.EULER) == parse("z/(z-1)")
        with pytest.raises(ZeroInputError):
            log_derivative(ZERO)

    @settings(max_examples=100, deadline=None)
    @given(ratfuncs)
    def test_partial_fractions_reconstruct(self, f):
        pf = partial_fractions(f)
        assert pf.reconstruct() == f
        for t in pf.terms:
            assert t.numerator.degree < t.den.degree


class TestActions:
    @pytest.mark.parametrize("q", [1, -1, 0, "-3/-3"])
    def test_bad_q(self, q):
        with pytest.raises((InvalidParameterError, ValueError)):
            QScale(q)

    def test_bad_tau(self):
        with pytest.raises(InvalidParameterError):
            TauShift(0)

    @settings(max_examples=100, deadline=None)
    @given(ratfuncs, ratfuncs)
    def test_actions_are_ring_morphisms_commuting_with_derivation(self, f, g):
        for act in (QScale(Fraction(2)), QScale(Fraction(-1, 3)), TauShift(Fraction(2, 3))):
            assert act.apply(f * g) == act.apply(f) * act.apply(g)
            assert act.apply(f + g) == act.apply(f) + act.apply(g)
            d = act.derivation
            assert act.apply(derive(f, d)) == derive(act.apply(f), d)

    def test_apply(self):
        assert QScale(2).apply(parse("1/(z-1)")) == parse("1/(2*z-1)")
        assert TauShift(1).apply(parse("z^2")) == parse("(z+1)^2")
        assert QScale(2).apply(ONE) == ONE
