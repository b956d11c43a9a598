import random
from fractions import Fraction

import pytest

from valclosure.valfield import (GammaValue, INF, gv, compare_gamma_combination,
                                 QpAdic, RationalFunctionTAdic, FiniteFieldTrivial,
                                 NegativeValue, Unsupported)


Q5 = QpAdic(5)
RT = RationalFunctionTAdic()


class TestGammaValue:
    def test_order(self):
        assert gv(1) < gv(2)
        assert gv("1/2") < gv(1)
        assert gv(3) < INF
        assert not (INF < INF)
        assert INF == INF
        assert gv(Fraction(3, 2)) == gv("3/2")

    def test_addition(self):
        assert gv(1) + gv("1/2") == gv("3/2")
        assert gv(7) + INF == INF
        assert INF + INF == INF

    def test_scale(self):
        assert gv("1/2").scale(3) == gv("3/2")
        assert INF.scale(Fraction(2, 7)) == INF
        with pytest.raises(ValueError):
            gv(1).scale(-1)

    def test_compare_combination(self):
        # 3*1 + 2*2 = 7 = 7*1
        assert compare_gamma_combination([(3, gv(1)), (2, gv(2))], [(7, gv(1))]) == "="
        assert compare_gamma_combination([(1, INF)], [(100, gv(5))]) == ">"
        assert compare_gamma_combination([(3, gv("1/2"))], [(2, gv("3/4"))]) == "="


class TestQpAdic:
    def test_value_examples(self):
        assert Q5.value(Q5.element(50)) == gv(2)
        assert Q5.value(Q5.element(0)) == INF
        assert Q5.value(Q5.element(Fraction(1, 5))) == gv(-1)
        assert Q5.value(Q5.element(Fraction(7, 3))) == gv(0)

    def test_residue(self):
        assert Q5.residue(Q5.element(7)) == 2
        assert Q5.residue(Q5.element(Fraction(1, 2))) == 3  # 1/2 = 3 mod 5
        assert Q5.residue(Q5.element(10)) == 0
        with pytest.raises(NegativeValue):
            Q5.residue(Q5.element(Fraction(1, 5)))

    def test_arithmetic_axioms(self):
        rng = random.Random(1)
        for _ in range(1000):
            x = Q5.element(Fraction(rng.randint(-50, 50), rng.randint(1, 50)))
            y = Q5.element(Fraction(rng.randint(-50, 50), rng.randint(1, 50)))
            assert (x * y).value() == x.value() + y.value()
            s = (x + y).value()
            m = min(x.value(), y.value())
            assert s >= m
            if x.value() != y.value():
                assert s == m

    def test_residue_homomorphism(self):
        rng = random.Random(2)
        p = 5
        for _ in range(300):
            x = Q5.element(Fraction(rng.randint(-50, 50), rng.choice([1, 2, 3, 7, 11])))
            y = Q5.element(Fraction(rng.randint(-50, 50), rng.choice([1, 2, 3, 7, 11])))
            assert Q5.residue(x + y) == (Q5.residue(x) + Q5.residue(y)) % p
            assert Q5.residue(x * y) == (Q5.residue(x) * Q5.residue(y)) % p

    def test_requires_prime(self):
        with pytest.raises(ValueError):
            QpAdic(6)


class TestRationalFunction:
    def test_value(self):
        t = RT.t()
        x = t ** 3 / (RT.one() + t)
        assert x.value() == gv(3)
        assert RT.zero().value() == INF
        assert RT.element("t^3/(1+t)").value() == gv(3)

    def test_residue(self):
        x = RT.element("(2+t)/(1-t)")
        assert RT.residue(x) == Fraction(2)
        assert RT.residue(RT.t()) == Fraction(0)
        with pytest.raises(NegativeValue):
            RT.residue(RT.one() / RT.t())

    def test_arithmetic_axioms(self):
        rng = random.Random(3)
        def rand_elem():
            num = [Fraction(rng.randint(-5, 5)) for _ in range(rng.randint(1, 4))]
            den = [Fraction(rng.randint(-5, 5)) for _ in range(rng.randint(1, 3))]
            if not any(den):
                den = [Fraction(1)]
            from valclosure.valfield import RatFuncElem
            return RatFuncElem(RT, num, den)
        for _ in range(1000):
            x, y = rand_elem(), rand_elem()
            assert (x * y).value() == x.value() + y.value()
            s = (x + y).value()
            m = min(x.value(), y.value())
            assert s >= m
            if x.value() != y.value():
                assert s == m

    def test_residue_homomorphism(self):
        rng = random.Random(4)
        from valclosure.valfield import RatFuncElem
        for _ in range(300):
            x = RatFuncElem(RT, [rng.randint(-4, 4) for _ in range(3)],
                            [1, rng.randint(-4, 4)])
            y = RatFuncElem(RT, [rng.randint(-4, 4) for _ in range(3)],
                            [1, rng.randint(-4, 4)])
            assert RT.residue(x + y) == RT.residue(x) + RT.residue(y)
            assert RT.residue(x * y) == RT.residue(x) * RT.residue(y)


class TestFiniteField:
    def test_prime_field(self):
        F5 = FiniteFieldTrivial(5)
        two = F5.element(2)
        assert F5.pth_root(two) == two  # Frobenius is the identity on F_p
        assert (two ** 5) == two
        assert F5.value(two) == gv(0)
        assert F5.value(F5.zero()) == INF

    def test_extension_field(self):
        F9 = FiniteFieldTrivial(3, 2)
        g = F9.generator()
        # Frobenius cubing inverts the pth root
        for c in F9.residue_enumeration():
            r = F9.pth_root(c)
            assert r ** 3 == c
        # field axioms spot check
        assert (g + g + g).is_zero()
        inv = g.inverse()
        assert g * inv == F9.one()
        assert len(set(F9.residue_enumeration())) == 9

    def test_unsupported(self):
        with pytest.raises(Unsupported):
            Q5.pth_root(Q5.element(2))

    def test_modulus_deterministic(self):
        a = FiniteFieldTrivial(3, 2).modulus
        b = FiniteFieldTrivial(3, 2).modulus
        assert a == b
        # x^2 + 1 is the least irreducible over F_3 with constant-first order:
        # candidates x^2, x^2+1 -> (1, 0, 1)
        assert a == (1, 0, 1)
