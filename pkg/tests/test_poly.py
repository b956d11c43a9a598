import random
from fractions import Fraction

import pytest

from valclosure.valfield import QpAdic, RationalFunctionTAdic, FiniteFieldTrivial
from valclosure.poly import (Poly, parse_poly, parse_element, gcd_monic,
                             extended_gcd, squarefree_part,
                             squarefree_decomposition, clear_denominators,
                             content_primitive, BothZero, ZeroPolynomial,
                             DivisionByZeroPoly, PolyParseError)

Q5 = QpAdic(5)
RT = RationalFunctionTAdic()


def P(text, field=Q5, vars=None):
    return parse_poly(text, field, vars)


class TestBasics:
    def test_parse_and_print_roundtrip(self):
        for s in ["3*X^2 - 1/2*X*Y + 4", "X^2 - 5", "X*Y*Z - 1", "0", "7"]:
            p = P(s)
            assert P(repr(p)) == p

    def test_parse_t(self):
        p = parse_poly("X^2 + t*X - (1+t)/(1-t)", RT)
        assert p.degree("X") == 2
        with pytest.raises(PolyParseError):
            parse_poly("X + t", Q5)

    def test_parse_element(self):
        assert parse_element("3/4", Q5).a == Fraction(3, 4)
        e = parse_element("(2+3*t)/(1-t)", RT)
        assert e.value().q == 0

    def test_arithmetic(self):
        x = Poly.var(Q5, "X")
        p = (x + 1) * (x - 1)
        assert p == P("X^2 - 1")
        assert (p - p).is_zero()
        assert P("X^2 - 1").degree("X") == 2

    def test_substitute_evaluate(self):
        p = P("X^2 - 2")
        assert p.evaluate({"X": Q5.element(3)}).a == 7
        q = p.substitute({"X": P("Y + 1")})
        assert q == P("Y^2 + 2*Y - 1")

    def test_degree_and_coeffs(self):
        p = P("3*X^2*Y - X + Y^2")
        assert p.degree("X") == 2
        assert p.degree("Y") == 2
        assert p.coeff_of("X", 2) == P("3*Y")
        assert p.coeffs_in("X")[0] == P("Y^2")

    def test_derivative(self):
        assert P("X^3 - 2*X").derivative("X") == P("3*X^2 - 2")
        assert P("X*Y").derivative("Y") == P("X")


class TestDivision:
    def test_divrem_examples(self):
        q, r = P("X^2 + 1").divrem(P("X"), "X")
        assert q == P("X") and r == P("1")

    def test_divrem_roundtrip_random(self):
        rng = random.Random(5)
        x = Poly.var(Q5, "X")
        for _ in range(200):
            a = _rand_upoly(rng, Q5, "X", 6)
            b = _rand_upoly(rng, Q5, "X", 3)
            if b.is_zero():
                continue
            if not b.leading_coeff("X").is_constant():
                continue
            q, r = a.divrem(b, "X")
            assert q * b + r == a
            assert r.is_zero() or r.degree("X") < b.degree("X")

    def test_pseudo_divrem_matches_divrem(self):
        rng = random.Random(6)
        for _ in range(100):
            a = _rand_upoly(rng, RT, "X", 5)
            b = _rand_upoly(rng, RT, "X", 3)
            if b.is_zero() or a.is_zero():
                continue
            q, r = a.pseudo_divrem(b, "X")
            lc = b.leading_coeff("X").as_element()
            k = max(0, a.degree("X") - b.degree("X") + 1)
            scale = Poly.const(RT, lc) ** k
            q2, r2 = (a * scale).divrem(b, "X")
            assert q == q2 and r == r2

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZeroPoly):
            P("X").divrem(P("0"), "X")


class TestGcd:
    def test_examples(self):
        assert gcd_monic(P("X^2 - 1"), P("X - 1")) == P("X - 1")
        assert gcd_monic(P("X^2 + 1"), P("1")) == P("1")
        a = P("(X - 2)^2 * (X - 3)")
        b = P("(X - 2) * (X - 5)")
        assert gcd_monic(a, b) == P("X - 2")

    def test_gcd_divides_and_bezout(self):
        rng = random.Random(7)
        for field in (Q5, RT):
            for _ in range(60):
                c = _rand_upoly(rng, field, "X", 3, monic=True)
                a = c * _rand_upoly(rng, field, "X", 2, monic=True)
                b = c * _rand_upoly(rng, field, "X", 2, monic=True)
                g = gcd_monic(a, b)
                # divides both exactly
                assert a.divrem(g, "X")[1].is_zero()
                assert b.divrem(g, "X")[1].is_zero()
                # extended certificate: u*a + w*b = g2, and g | g2, g2 | g
                g2, u, w = extended_gcd(a, b)
                assert u * a + w * b == g2
                assert g2 == g

    def test_gcd_over_qt_denominators(self):
        a = parse_poly("(1/(1-t))*X^2 - t/(1-t)", RT)   # (X^2 - t)/(1-t)
        b = parse_poly("X^2 - t", RT)
        assert gcd_monic(a, b) == b

    def test_both_zero(self):
        with pytest.raises(BothZero):
            gcd_monic(P("0"), P("0"))


class TestSquarefree:
    def test_char0_examples(self):
        p = P("(X - 1)^3 * (X + 2)")
        assert squarefree_part(p) == P("(X - 1) * (X + 2)")
        sf = P("(X - 1) * (X + 2)")
        assert squarefree_part(sf) == sf
        with pytest.raises(ZeroPolynomial):
            squarefree_part(P("0"))

    def test_char0_gcd_property(self):
        rng = random.Random(8)
        for _ in range(50):
            roots = [rng.randint(-4, 4) for _ in range(rng.randint(1, 4))]
            mults = [rng.randint(1, 3) for _ in roots]
            x = Poly.var(Q5, "X")
            p = Poly.const(Q5, 1)
            for r, m in zip(roots, mults):
                p = p * (x - Poly.const(Q5, r)) ** m
            s = squarefree_part(p)
            assert gcd_monic(s, s.derivative("X")) == P("1")
            assert p.divrem(s, "X")[1].is_zero()
            for r in set(roots):
                lin = x - Poly.const(Q5, r)
                assert s.divrem(lin, "X")[1].is_zero()

    def test_char_p_paper_shape(self):
        # (X^5 - c)^2 = X^10 - 2c X^5 + c^2 over F_5 -> X - c^(1/5)
        F5 = FiniteFieldTrivial(5)
        c = F5.element(2)
        x = Poly.var(F5, "X")
        p = (x ** 5 - Poly.const(F5, c)) ** 2
        s = squarefree_part(p)
        croot = F5.pth_root(c)
        assert s == x - Poly.const(F5, croot)
        assert (croot ** 5) == c

    def test_char_p_double_loop(self):
        # Q1(X^p)^2 * Q2(X^(p^2)) with p = 3 exercises both loops
        F3 = FiniteFieldTrivial(3)
        x = Poly.var(F3, "X")
        q1_xp = x ** 3 - Poly.const(F3, 1)          # Q1 = X - 1 at X^3
        q2_xp2 = x ** 9 - Poly.const(F3, 2)         # Q2 = X - 2 at X^9
        p = q1_xp ** 2 * q2_xp2
        s = squarefree_part(p)
        # roots: cube roots of 1 (i.e. 1) and ninth roots of 2 (i.e. 2^(1/9))
        r1 = F3.element(1)
        r2 = F3.pth_root(F3.pth_root(F3.element(2)))
        expected = (x - Poly.const(F3, r1)) * (x - Poly.const(F3, r2))
        assert s == expected

    def test_yun_decomposition(self):
        p = P("(X - 1)^3 * (X + 2) * (X - 4)^2")
        dec = squarefree_decomposition(p)
        assert dict((m, f) for f, m in dec) == {
            1: P("X + 2"), 2: P("X - 4"), 3: P("X - 1")}
        rebuilt = Poly.const(Q5, 1)
        for f, m in dec:
            rebuilt = rebuilt * f ** m
        assert rebuilt == p


class TestContent:
    def test_clear_denominators(self):
        p = P("1/2*X + 1/3")
        q = clear_denominators(p)
        assert all(c.a.denominator == 1 for c in q.coeffs.values())

    def test_content_primitive(self):
        p = P("4*X^2 + 6")
        c, prim = content_primitive(p)
        assert Poly.const(Q5, c) * prim == p
        assert c.a == 2

    def test_content_primitive_qt(self):
        p = parse_poly("t^2*X + t^3", RT)
        c, prim = content_primitive(p)
        assert Poly.const(RT, c) * prim == p
        assert prim == parse_poly("X + t", RT)


def _rand_upoly(rng, field, var, maxdeg, monic=False):
    d = rng.randint(0, maxdeg)
    coeffs = []
    for i in range(d + 1):
        if isinstance(field, RationalFunctionTAdic):
            from valclosure.valfield import RatFuncElem
            c = RatFuncElem(field, [rng.randint(-3, 3) for _ in range(2)])
        else:
            c = field.element(Fraction(rng.randint(-6, 6)))
        coeffs.append(Poly.const(field, c))
    p = Poly.from_coeff_list(field, var, coeffs)
    if monic:
        p = p + Poly.var(field, var) ** (d + 1)
    return p
