"""Exact multivariate polynomial arithmetic over a valued field instance.

Polynomials are sparse maps from exponent vectors to field elements with a
fixed, ordered variable tuple.  Every univariate algorithm (division, GCD,
squarefree part) designates a main variable; the remaining variables ride
along inside the coefficients.

The GCD is computed with the subresultant polynomial remainder sequence on
denominator-cleared inputs, then normalized monic, so that coefficient
growth stays polynomial even over Q(t).
"""

from fractions import Fraction

from .valfield import (FieldElem, QElem, RatFuncElem, GFqElem,
                       RationalFunctionTAdic, _tp_trim, _tp_mul, _tp_divmod,
                       _tp_gcd)


class DivisionByZeroPoly(ZeroDivisionError):
    pass


class BothZero(ValueError):
    pass


class ZeroPolynomial(ValueError):
    pass


class NotSquarefree(ValueError):
    pass


class Poly:
    """Sparse multivariate polynomial with exact field coefficients."""

    __slots__ = ("field", "vars", "coeffs")

    def __init__(self, field, vars, coeffs):
        # canonical form: no zero coefficients, unused variables dropped,
        # variables sorted by name so equality is structural
        clean = {e: c for e, c in coeffs.items() if not c.is_zero()}
        used = [i for i in range(len(vars)) if any(e[i] for e in clean)]
        order = sorted(used, key=lambda i: vars[i])
        if order != list(range(len(vars))):
            vars = tuple(vars[i] for i in order)
            clean = {tuple(e[i] for i in order): c for e, c in clean.items()}
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "vars", tuple(vars))
        object.__setattr__(self, "coeffs", clean)

    # -- constructors -------------------------------------------------------

    @staticmethod
    def const(field, c):
        if not isinstance(c, FieldElem):
            c = field.element(c)
        return Poly(field, (), {(): c})

    @staticmethod
    def var(field, name):
        return Poly(field, (name,), {(1,): field.one()})

    @staticmethod
    def from_coeff_list(field, var, coeffs):
        """Dense univariate constructor; coeffs[i] multiplies var**i."""
        x = Poly.var(field, var)
        out = Poly.const(field, 0)
        for i, c in enumerate(coeffs):
            if not isinstance(c, Poly):
                c = Poly.const(field, c)
            out = out + c * x ** i
        return out

    def _aligned_coeffs(self, vars):
        """Coefficient dict with exponent keys padded to the given variables."""
        if self.vars == tuple(vars):
            return dict(self.coeffs)
        idx = [vars.index(v) for v in self.vars]
        out = {}
        for e, c in self.coeffs.items():
            key = [0] * len(vars)
            for i, ev in zip(idx, e):
                key[i] = ev
            out[tuple(key)] = c
        return out

    def _merge_vars(self, other):
        vs = list(self.vars)
        for v in other.vars:
            if v not in vs:
                vs.append(v)
        return tuple(vs)

    # -- queries -------------------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return all(all(x == 0 for x in e) for e in self.coeffs)

    def as_element(self):
        if not self.coeffs:
            return self.field.zero()
        if not self.is_constant():
            raise ValueError("not a constant polynomial: %s" % self)
        return next(iter(self.coeffs.values()))

    def degree(self, var):
        if var not in self.vars:
            return 0 if self.coeffs else -1
        i = self.vars.index(var)
        return max((e[i] for e in self.coeffs), default=-1)

    def total_degree(self):
        return max((sum(e) for e in self.coeffs), default=-1)

    def coeff_of(self, var, k):
        """The coefficient of var**k, a polynomial in the other variables."""
        if var not in self.vars:
            return self if k == 0 else Poly.const(self.field, 0)
        i = self.vars.index(var)
        rest = self.vars[:i] + self.vars[i + 1:]
        out = {}
        for e, c in self.coeffs.items():
            if e[i] == k:
                out[e[:i] + e[i + 1:]] = c
        return Poly(self.field, rest, out)

    def coeffs_in(self, var):
        """Dense list of coefficients [c_0, ..., c_d] as polynomials."""
        d = self.degree(var)
        if d < 0:
            return []
        return [self.coeff_of(var, k) for k in range(d + 1)]

    def leading_coeff(self, var):
        return self.coeff_of(var, self.degree(var))

    def is_monic(self, var):
        lc = self.leading_coeff(var)
        return lc.is_constant() and not lc.is_zero() and lc.as_element() == self.field.one()

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(self.field, other)
        vs = self._merge_vars(other)
        out = self._aligned_coeffs(vs)
        for e, c in other._aligned_coeffs(vs).items():
            out[e] = out.get(e, self.field.zero()) + c
        return Poly(self.field, vs, out)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Poly) else -Poly.const(self.field, other))

    def __neg__(self):
        return Poly(self.field, self.vars, {e: -c for e, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, FieldElem):
            return Poly(self.field, self.vars,
                        {e: c * other for e, c in self.coeffs.items()})
        if not isinstance(other, Poly):
            other = Poly.const(self.field, other)
        vs = self._merge_vars(other)
        a, b = self._aligned_coeffs(vs), other._aligned_coeffs(vs)
        out = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                key = tuple(x + y for x, y in zip(e1, e2))
                prod = c1 * c2
                if key in out:
                    out[key] = out[key] + prod
                else:
                    out[key] = prod
        return Poly(self.field, vs, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative polynomial power")
        out = Poly.const(self.field, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c):
        if not isinstance(c, FieldElem):
            c = self.field.element(c)
        return self * c

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.vars == other.vars
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.vars, frozenset(self.coeffs.items())))

    # -- substitution ----------------------------------------------------------

    def substitute(self, subs):
        """Substitute variables by polynomials or field elements."""
        subs = {v: (s if isinstance(s, Poly) else Poly.const(self.field, s))
                for v, s in subs.items()}
        out = Poly.const(self.field, 0)
        for e, c in self.coeffs.items():
            term = Poly.const(self.field, c)
            for v, ev in zip(self.vars, e):
                if ev == 0:
                    continue
                base = subs.get(v, Poly.var(self.field, v))
                term = term * base ** ev
            out = out + term
        return out

    def evaluate(self, subs):
        """Full evaluation to a field element; all variables must be bound."""
        r = self.substitute(subs)
        return r.as_element()

    def derivative(self, var):
        if var not in self.vars:
            return Poly.const(self.field, 0)
        i = self.vars.index(var)
        out = {}
        for e, c in self.coeffs.items():
            if e[i] == 0:
                continue
            key = e[:i] + (e[i] - 1,) + e[i + 1:]
            factor = self.field.element(e[i])
            out[key] = out.get(key, self.field.zero()) + c * factor
        return Poly(self.field, self.vars, out)

    # -- division ---------------------------------------------------------------

    def divrem(self, other, var):
        """Exact division with remainder in the main variable.

        Requires the divisor's leading coefficient in ``var`` to be a nonzero
        constant (always true for monic divisors and for univariate division
        over the field).
        """
        if other.is_zero():
            raise DivisionByZeroPoly("division by the zero polynomial")
        db = other.degree(var)
        if db <= 0 and other.is_constant():
            inv = self.field.one() / other.as_element()
            return self * inv, Poly.const(self.field, 0)
        lc = other.leading_coeff(var)
        if not lc.is_constant():
            raise DivisionByZeroPoly(
                "leading coefficient of divisor in %s is not invertible" % var)
        lc_inv = self.field.one() / lc.as_element()
        q = Poly.const(self.field, 0)
        r = self
        xv = Poly.var(self.field, var)
        while not r.is_zero() and r.degree(var) >= db:
            dr = r.degree(var)
            t = r.leading_coeff(var) * lc_inv * xv ** (dr - db)
            q = q + t
            r = r - t * other
            if not r.is_zero() and r.degree(var) == dr:
                raise RuntimeError("division failed to reduce degree")
        return q, r

    def pseudo_divrem(self, other, var):
        """Pseudo-division: lc(B)^(deg A - deg B + 1) * A = Q*B + R."""
        if other.is_zero():
            raise DivisionByZeroPoly("pseudo-division by the zero polynomial")
        da, db = self.degree(var), other.degree(var)
        if da < db:
            return Poly.const(self.field, 0), self
        lc = other.leading_coeff(var)
        q = Poly.const(self.field, 0)
        r = self
        xv = Poly.var(self.field, var)
        for _ in range(da - db + 1):
            if r.is_zero() or r.degree(var) < db:
                q = q * lc
                r = r * lc
                continue
            dr = r.degree(var)
            t = r.leading_coeff(var) * xv ** (dr - db)
            q = q * lc + t
            r = r * lc - t * other
        return q, r

    def monic(self, var):
        if self.is_zero():
            raise ZeroPolynomial("cannot normalize the zero polynomial")
        lc = self.leading_coeff(var)
        if not lc.is_constant():
            raise DivisionByZeroPoly("leading coefficient in %s is not constant" % var)
        inv = self.field.one() / lc.as_element()
        return self * inv

    # -- printing -----------------------------------------------------------------

    def __repr__(self):
        if not self.coeffs:
            return "0"
        def order(item):
            e, _ = item
            return (-sum(e), tuple(-x for x in e))
        parts = []
        for e, c in sorted(self.coeffs.items(), key=order):
            monos = []
            for v, ev in zip(self.vars, e):
                if ev == 1:
                    monos.append(v)
                elif ev > 1:
                    monos.append("%s^%d" % (v, ev))
            cs = repr(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            if monos and cs == "1":
                body = "*".join(monos)
            elif monos:
                if any(ch in cs for ch in "+- ") and not cs.startswith("("):
                    cs = "(%s)" % cs
                body = cs + "*" + "*".join(monos)
            else:
                body = cs
            parts.append(("-" if neg else "+", body))
        sign, body = parts[0]
        s = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            s += " %s %s" % (sign, body)
        return s


# ---------------------------------------------------------------------------
# Content and denominator clearing (instance specific)
# ---------------------------------------------------------------------------

def clear_denominators(P):
    """Scale P by a constant so all coefficients are 'integral'; returns new P.

    Integral means integer for p-adic rationals, polynomial (denominator 1)
    for Q(t), and is a no-op over finite fields.
    """
    if P.is_zero():
        return P
    some = next(iter(P.coeffs.values()))
    if isinstance(some, QElem):
        lcm = 1
        for c in P.coeffs.values():
            d = c.a.denominator
            g = _int_gcd(lcm, d)
            lcm = lcm // g * d
        return P * P.field.element(lcm)
    if isinstance(some, RatFuncElem):
        lcm = (Fraction(1),)
        for c in P.coeffs.values():
            g = _tp_gcd(lcm, c.den)
            lcm = _tp_mul(_tp_divmod(lcm, g)[0], c.den)
        return P * RatFuncElem(P.field, lcm)
    return P


def _int_gcd(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def content_primitive(P, var=None):
    """Split P as content * primitive over the instance's natural subring."""
    if P.is_zero():
        return P.field.zero(), P
    some = next(iter(P.coeffs.values()))
    if isinstance(some, QElem):
        num_gcd = 0
        den_lcm = 1
        for c in P.coeffs.values():
            num_gcd = _int_gcd(num_gcd, c.a.numerator)
            d = c.a.denominator
            g = _int_gcd(den_lcm, d)
            den_lcm = den_lcm // g * d
        cont = P.field.element(Fraction(num_gcd, den_lcm))
        return cont, P * (P.field.one() / cont)
    if isinstance(some, RatFuncElem):
        cleared = clear_denominators(P)
        g = ()
        for c in cleared.coeffs.values():
            g = _tp_gcd(g, c.num) if g else tuple(c.num)
        if g and g[-1] != 1:
            inv = 1 / g[-1]
            g = tuple(x * inv for x in g)
        cont_cleared = RatFuncElem(P.field, g)
        prim = cleared * (P.field.one() / cont_cleared)
        scale = next(iter(P.coeffs.values())) / next(iter(prim.coeffs.values())) \
            if False else None
        # content of the original = cleared content divided by the clearing factor
        e0 = next(iter(P.coeffs))
        cont = P.coeffs[e0] / prim.coeffs[_match_key(prim, P, e0)]
        return cont, prim
    # finite field: contents are trivial
    return P.field.one(), P


def _match_key(prim, orig, e_orig):
    # map an exponent key of orig to the corresponding key of prim (same vars set)
    ov, pv = orig.vars, prim.vars
    key = [0] * len(pv)
    for v, e in zip(ov, e_orig):
        if v in pv:
            key[pv.index(v)] = e
        elif e:
            raise KeyError("variable mismatch")
    return tuple(key)


# ---------------------------------------------------------------------------
# GCD via the subresultant PRS
# ---------------------------------------------------------------------------

def gcd_monic(A, B, var=None):
    """Monic GCD of two univariate polynomials over the field.

    Computed fraction-free with the subresultant remainder sequence after
    clearing denominators, then normalized monic at the end.
    """
    if A.is_zero() and B.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    if var is None:
        var = _only_var(A, B)
    if A.is_zero():
        return B.monic(var) if B.degree(var) > 0 else Poly.const(B.field, 1)
    if B.is_zero():
        return A.monic(var) if A.degree(var) > 0 else Poly.const(A.field, 1)
    field = A.field
    if A.degree(var) < B.degree(var):
        A, B = B, A
    if B.degree(var) == 0:
        return Poly.const(field, 1)
    A = content_primitive(clear_denominators(A), var)[1]
    B = content_primitive(clear_denominators(B), var)[1]
    g = field.one()
    h = field.one()
    while True:
        delta = A.degree(var) - B.degree(var)
        _, R = A.pseudo_divrem(B, var)
        if R.is_zero():
            break
        if R.degree(var) == 0:
            return Poly.const(field, 1)
        divisor = g * h ** delta
        A, B = B, _exact_scale_div(R, divisor)
        g = A.leading_coeff(var).as_element() if A.leading_coeff(var).is_constant() \
            else _lc_elem(A, var)
        if delta >= 1:
            h_new = g ** delta
            for _ in range(delta - 1):
                h_new = h_new / h
            h = h_new
    return B.monic(var)


def _lc_elem(P, var):
    lc = P.leading_coeff(var)
    if not lc.is_constant():
        raise DivisionByZeroPoly("gcd with non-constant parameter leading coefficient")
    return lc.as_element()


def _exact_scale_div(P, c):
    return P * (P.field.one() / c)


def _only_var(*polys):
    vs = set()
    for p in polys:
        vs.update(p.vars)
    if len(vs) > 1:
        raise ValueError("ambiguous main variable among %s" % sorted(vs))
    if not vs:
        raise ValueError("no variable present")
    return next(iter(vs))


def extended_gcd(A, B, var=None):
    """(g, u, w) with u*A + w*B = g, g the monic gcd (univariate over the field)."""
    if A.is_zero() and B.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    if var is None:
        var = _only_var(A, B)
    field = A.field
    one = Poly.const(field, 1)
    zero = Poly.const(field, 0)
    r0, r1 = A, B
    s0, s1 = one, zero
    t0, t1 = zero, one
    while not r1.is_zero():
        q, r = r0.divrem(r1, var)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    lc = r0.leading_coeff(var).as_element() if r0.degree(var) >= 0 else r0.as_element()
    inv = field.one() / lc
    return r0 * inv, s0 * inv, t0 * inv


# ---------------------------------------------------------------------------
# Squarefree part and decomposition
# ---------------------------------------------------------------------------

def squarefree_part(P, var=None):
    """Monic polynomial with the same roots as P, each of multiplicity one.

    Characteristic 0 uses P/gcd(P, P'); over F_q the multiplicity-stripping
    loop extracts p-th roots whenever the running polynomial is a polynomial
    in X^p.
    """
    if P.is_zero():
        raise ZeroPolynomial("squarefree part of the zero polynomial")
    if var is None:
        var = _only_var(P)
    field = P.field
    if P.degree(var) <= 0:
        return Poly.const(field, 1)
    if field.characteristic == 0:
        g = gcd_monic(P, P.derivative(var), var)
        q, r = P.divrem(g, var)
        assert r.is_zero()
        return q.monic(var)
    return _squarefree_part_char_p(P.monic(var), var)


def _poly_pth_root(P, var):
    field = P.field
    p = field.characteristic
    out = {}
    i = P.vars.index(var)
    for e, c in P.coeffs.items():
        assert e[i] % p == 0
        key = e[:i] + (e[i] // p,) + e[i + 1:]
        out[key] = field.pth_root(c)
    return Poly(field, P.vars, out)


def _is_poly_in_xp(P, var):
    p = P.field.characteristic
    if var not in P.vars:
        return True
    i = P.vars.index(var)
    return all(e[i] % p == 0 for e in P.coeffs)


def _squarefree_part_char_p(P, var):
    field = P.field
    one = Poly.const(field, 1)
    P1 = one
    while P.degree(var) > 0:
        R = P
        while True:
            if _is_poly_in_xp(R, var):
                R = _poly_pth_root(R, var)
            else:
                g = gcd_monic(R, R.derivative(var), var)
                if g.degree(var) <= 0:
                    break
                R = R.divrem(g, var)[0]
        P1 = P1 * R
        while True:
            g = gcd_monic(P, R, var)
            if g.degree(var) <= 0:
                break
            P = P.divrem(g, var)[0]
    return P1.monic(var)


def squarefree_decomposition(P, var=None):
    """Yun decomposition [(S_i, i)] with P = lc * prod S_i^i  (char 0 only)."""
    if P.is_zero():
        raise ZeroPolynomial("decomposition of the zero polynomial")
    if var is None:
        var = _only_var(P)
    field = P.field
    if field.characteristic != 0:
        raise NotImplementedError("Yun decomposition requires characteristic 0")
    P = P.monic(var)
    if P.degree(var) == 0:
        return []
    dP = P.derivative(var)
    G = gcd_monic(P, dP, var)
    if G.degree(var) == 0:
        return [(P, 1)]
    C = P.divrem(G, var)[0]
    D = dP.divrem(G, var)[0] - C.derivative(var)
    out = []
    i = 1
    while C.degree(var) > 0:
        A = gcd_monic(C, D, var) if not D.is_zero() else C.monic(var)
        if A.degree(var) > 0:
            out.append((A.monic(var), i))
        C = C.divrem(A, var)[0]
        D = D.divrem(A, var)[0] - C.derivative(var)
        i += 1
    return out


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

class PolyParseError(ValueError):
    def __init__(self, msg, pos):
        super().__init__("%s (at position %d)" % (msg, pos))
        self.pos = pos


class _Tokens:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch):
        self.skip_ws()
        if self.text.startswith(ch, self.pos):
            self.pos += len(ch)
            return True
        return False

    def ident(self):
        self.skip_ws()
        start = self.pos
        while (self.pos < len(self.text)
               and (self.text[self.pos].isalnum() or self.text[self.pos] == "_")):
            self.pos += 1
        return self.text[start:self.pos]

    def integer(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise PolyParseError("expected an integer", self.pos)
        return int(self.text[start:self.pos])


def parse_poly(text, field, vars=None):
    """Parse polynomial text like ``3*X^2 - 1/2*X*Y + t`` into a Poly.

    ``t`` always denotes the base-field parameter of the rational-function
    instance.  If ``vars`` is given, all other identifiers must come from it;
    otherwise variables are collected in order of first appearance.
    """
    toks = _Tokens(text)
    seen = []

    def atom():
        if toks.take("("):
            e = expr()
            if not toks.take(")"):
                raise PolyParseError("expected ')'", toks.pos)
            return e
        if toks.take("-"):
            return -atom()
        if toks.take("+"):
            return atom()
        ch = toks.peek()
        if ch.isdigit():
            return Poly.const(field, field.element(toks.integer()))
        if ch.isalpha() or ch == "_":
            name = toks.ident()
            if name == "t":
                if not isinstance(field, RationalFunctionTAdic):
                    raise PolyParseError(
                        "'t' is reserved for the rational-function instance", toks.pos)
                return Poly.const(field, field.t())
            if name == "oo":
                raise PolyParseError("'oo' is not a field element", toks.pos)
            if vars is not None and name not in vars:
                raise PolyParseError("unknown variable %r" % name, toks.pos)
            if name not in seen:
                seen.append(name)
            return Poly.var(field, name)
        raise PolyParseError("unexpected character %r" % ch, toks.pos)

    def power():
        base = atom()
        if toks.take("^") or toks.take("**"):
            n = toks.integer()
            return base ** n
        return base

    def term():
        out = power()
        while True:
            if toks.take("*"):
                out = out * power()
            elif toks.take("/"):
                d = power()
                if not d.is_constant():
                    raise PolyParseError("division by a non-constant", toks.pos)
                out = out * Poly.const(field, field.one() / d.as_element())
            else:
                return out

    def expr():
        out = term()
        while True:
            if toks.take("+"):
                out = out + term()
            elif toks.take("-"):
                out = out - term()
            else:
                return out

    result = expr()
    toks.skip_ws()
    if toks.pos != len(toks.text):
        raise PolyParseError("trailing input %r" % toks.text[toks.pos:], toks.pos)
    return result


def parse_element(text, field):
    """Parse a constant expression (integers, a/b, fractions in t)."""
    p = parse_poly(text, field, vars=())
    return p.as_element()
