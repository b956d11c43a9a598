"""Exact arithmetic in supported base valued fields and their value group.

The value group of every supported instance is a subgroup of (Q, +), so
values are represented directly as exact rationals together with a top
element ``oo`` (the value of 0).  Three kinds of base field are provided:

* ``QpAdic(p)``      -- the rationals with the p-adic valuation,
* ``RationalFunctionTAdic()`` -- rational functions Q(t) with the t-adic
  valuation (order of vanishing at t = 0),
* ``FiniteFieldTrivial(p, k)`` -- F_q with the trivial valuation, used
  only by the characteristic-p paths of dynamic evaluation.

All elements are immutable and arithmetic is exact.
"""

from fractions import Fraction


class NegativeValue(ValueError):
    """Raised when a residue is requested for an element outside the valuation ring."""


class Unsupported(TypeError):
    """Raised when an operation is not available on the configured instance."""


# ---------------------------------------------------------------------------
# The value group Q u {oo}
# ---------------------------------------------------------------------------

class GammaValue:
    """An element of Q u {oo}: the value group common to all instances.

    ``oo`` is absorbing for addition and is the greatest element.  Scalar
    multiples are only defined for positive rational scalars (negative
    multiples of ``oo`` have no meaning in the ordered group).
    """

    __slots__ = ("q",)

    def __init__(self, q=None):
        if q is not None and not isinstance(q, Fraction):
            q = Fraction(q)
        object.__setattr__(self, "q", q)

    def __setattr__(self, *a):
        raise AttributeError("GammaValue is immutable")

    @property
    def is_infinite(self):
        return self.q is None

    @property
    def is_finite(self):
        return self.q is not None

    def __add__(self, other):
        if not isinstance(other, GammaValue):
            other = GammaValue(other)
        if self.q is None or other.q is None:
            return INF
        return GammaValue(self.q + other.q)

    __radd__ = __add__

    def scale(self, r):
        """Multiply by a positive rational scalar; r * oo = oo."""
        r = Fraction(r)
        if r <= 0:
            raise ValueError("scalar multiple of a value must be positive, got %s" % r)
        if self.q is None:
            return INF
        return GammaValue(self.q * r)

    def __eq__(self, other):
        return isinstance(other, GammaValue) and self.q == other.q

    def __lt__(self, other):
        if self.q is None:
            return False
        if other.q is None:
            return True
        return self.q < other.q

    def __le__(self, other):
        return self == other or self < other

    def __gt__(self, other):
        return not (self <= other)

    def __ge__(self, other):
        return not (self < other)

    def __hash__(self):
        return hash(("GammaValue", self.q))

    def __repr__(self):
        return "oo" if self.q is None else str(self.q)

    def sort_key(self):
        # oo sorts last
        return (1, Fraction(0)) if self.q is None else (0, self.q)


INF = GammaValue(None)


def gv(x):
    """Coerce an int/Fraction/str/GammaValue to a GammaValue."""
    if isinstance(x, GammaValue):
        return x
    if isinstance(x, str):
        if x.strip() in ("oo", "inf", "infinity"):
            return INF
        return GammaValue(Fraction(x))
    return GammaValue(x)


def gamma_sum(pairs):
    """Evaluate sum r_i * g_i of scaled values; every r_i must be positive."""
    total = GammaValue(0)
    for r, g in pairs:
        total = total + gv(g).scale(r)
    return total


def compare_gamma_combination(lhs, rhs):
    """Compare sum r_i*g_i with sum s_j*d_j; returns '<', '=' or '>'."""
    a, b = gamma_sum(lhs), gamma_sum(rhs)
    if a == b:
        return "="
    return "<" if a < b else ">"


# ---------------------------------------------------------------------------
# Dense univariate rationals-coefficient polynomials in t (internal helpers
# for the rational-function field).  Coefficient tuples never carry trailing
# zeros; the zero polynomial is the empty tuple.
# ---------------------------------------------------------------------------

def _tp_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _tp_add(a, b):
    n = max(len(a), len(b))
    return _tp_trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                     for i in range(n)])


def _tp_neg(a):
    return tuple(-x for x in a)


def _tp_mul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _tp_trim(out)


def _tp_divmod(a, b):
    if not b:
        raise ZeroDivisionError("division by zero polynomial in t")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    r = list(a)
    inv = 1 / b[-1]
    while len(r) >= len(b):
        c = r[-1] * inv
        k = len(r) - len(b)
        q[k] = c
        for i in range(len(b)):
            r[k + i] -= c * b[i]
        while r and r[-1] == 0:
            r.pop()
    return _tp_trim(q), _tp_trim(r)


def _tp_gcd(a, b):
    while b:
        a, b = b, _tp_divmod(a, b)[1]
    if a:
        inv = 1 / a[-1]
        a = tuple(x * inv for x in a)
    return a


def _tp_ord(a):
    for i, x in enumerate(a):
        if x:
            return i
    return None


def _tp_str(a, var="t"):
    if not a:
        return "0"
    parts = []
    for i, c in enumerate(a):
        if not c:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            mono = var if i == 1 else "%s^%d" % (var, i)
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append("%s*%s" % (c, mono))
    s = parts[0]
    for p in parts[1:]:
        s += " - " + p[1:] if p.startswith("-") else " + " + p
    return s


# ---------------------------------------------------------------------------
# Field elements
# ---------------------------------------------------------------------------

class FieldElem:
    """Common base: exact element of a configured instance."""

    __slots__ = ("field",)

    def is_zero(self):
        raise NotImplementedError

    def value(self):
        raise NotImplementedError

    def __sub__(self, other):
        return self + (-other)

    def __pow__(self, n):
        if n < 0:
            return (self ** (-n)).inverse()
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self):
        return self.field.one() / self

    def __bool__(self):
        return not self.is_zero()


class QElem(FieldElem):
    """A rational number carrying the p-adic valuation of its instance."""

    __slots__ = ("a",)

    def __init__(self, field, a):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "a", a if isinstance(a, Fraction) else Fraction(a))

    def _make(self, a):
        return QElem(self.field, a)

    def __add__(self, other):
        return self._make(self.a + other.a)

    def __neg__(self):
        return self._make(-self.a)

    def __mul__(self, other):
        return self._make(self.a * other.a)

    def __truediv__(self, other):
        if other.a == 0:
            raise ZeroDivisionError("division by zero in Q")
        return self._make(self.a / other.a)

    def __eq__(self, other):
        return isinstance(other, QElem) and self.a == other.a and self.field is other.field

    def __hash__(self):
        return hash(("QElem", self.field.p, self.a))

    def is_zero(self):
        return self.a == 0

    def value(self):
        if self.a == 0:
            return INF
        p = self.field.p
        v = 0
        n = self.a.numerator
        while n % p == 0:
            n //= p
            v += 1
        d = self.a.denominator
        while d % p == 0:
            d //= p
            v -= 1
        return GammaValue(v)

    def residue(self):
        v = self.value()
        if v < GammaValue(0):
            raise NegativeValue("residue of %s: value %s < 0" % (self, v))
        p = self.field.p
        if v > GammaValue(0):
            return 0
        num = self.a.numerator % p
        den = self.a.denominator % p
        return (num * pow(den, -1, p)) % p

    def __repr__(self):
        return str(self.a)


class RatFuncElem(FieldElem):
    """A reduced fraction of polynomials in t over Q, with the t-adic valuation."""

    __slots__ = ("num", "den")

    def __init__(self, field, num, den=(Fraction(1),)):
        num = _tp_trim(Fraction(x) for x in num)
        den = _tp_trim(Fraction(x) for x in den)
        if not den:
            raise ZeroDivisionError("zero denominator in Q(t)")
        g = _tp_gcd(num, den)
        if g and len(g) > 1 or (g and g[0] != 1):
            num = _tp_divmod(num, g)[0]
            den = _tp_divmod(den, g)[0]
        # normalize: monic denominator
        if den[-1] != 1:
            inv = 1 / den[-1]
            num = tuple(x * inv for x in num)
            den = tuple(x * inv for x in den)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def _make(self, num, den):
        return RatFuncElem(self.field, num, den)

    def __add__(self, other):
        return self._make(_tp_add(_tp_mul(self.num, other.den), _tp_mul(other.num, self.den)),
                          _tp_mul(self.den, other.den))

    def __neg__(self):
        return self._make(_tp_neg(self.num), self.den)

    def __mul__(self, other):
        return self._make(_tp_mul(self.num, other.num), _tp_mul(self.den, other.den))

    def __truediv__(self, other):
        if not other.num:
            raise ZeroDivisionError("division by zero in Q(t)")
        return self._make(_tp_mul(self.num, other.den), _tp_mul(self.den, other.num))

    def __eq__(self, other):
        return (isinstance(other, RatFuncElem) and self.num == other.num
                and self.den == other.den)

    def __hash__(self):
        return hash(("RatFuncElem", self.num, self.den))

    def is_zero(self):
        return not self.num

    def value(self):
        if not self.num:
            return INF
        return GammaValue(_tp_ord(self.num) - _tp_ord(self.den))

    def residue(self):
        v = self.value()
        if v < GammaValue(0):
            raise NegativeValue("residue of %s: value %s < 0" % (self, v))
        if v > GammaValue(0):
            return Fraction(0)
        # reduced fraction: ord(num) == ord(den); cancel the common power of t
        e = _tp_ord(self.num)
        num = self.num[e:]
        den = self.den[e:]
        return num[0] / den[0]

    def __repr__(self):
        if len(self.den) == 1 and self.den[0] == 1:
            n = _tp_str(self.num)
            return n if ("+" not in n and " - " not in n) else "(%s)" % n
        return "(%s)/(%s)" % (_tp_str(self.num), _tp_str(self.den))


class GFqElem(FieldElem):
    """An element of F_q = F_p[g]/(modulus), coefficient tuple of length k."""

    __slots__ = ("coeffs",)

    def __init__(self, field, coeffs):
        c = [x % field.p for x in coeffs]
        c += [0] * (field.k - len(c))
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(c[:field.k]))

    def _make(self, coeffs):
        return GFqElem(self.field, coeffs)

    def __add__(self, other):
        return self._make([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return self._make([-a for a in self.coeffs])

    def __mul__(self, other):
        p, k = self.field.p, self.field.k
        out = [0] * (2 * k - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = (out[i + j] + a * b) % p
        # reduce modulo the defining polynomial (monic of degree k)
        mod = self.field.modulus
        for i in range(2 * k - 2, k - 1, -1):
            c = out[i]
            if c:
                out[i] = 0
                for j in range(k):
                    out[i - k + j] = (out[i - k + j] - c * mod[j]) % p
        return self._make(out[:k])

    def __truediv__(self, other):
        return self * other.inverse()

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("division by zero in F_q")
        # g^(q-2) by the little-Fermat exponent
        return self ** (self.field.p ** self.field.k - 2)

    def __eq__(self, other):
        return isinstance(other, GFqElem) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("GFqElem", self.field.p, self.field.k, self.coeffs))

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def value(self):
        return INF if self.is_zero() else GammaValue(0)

    def residue(self):
        return self

    def __repr__(self):
        if self.field.k == 1:
            return str(self.coeffs[0])
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mono = "g" if i == 1 else "g^%d" % i
                parts.append(mono if c == 1 else "%d*%s" % (c, mono))
        return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# Instances
# ---------------------------------------------------------------------------

def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class ValuedField:
    """Base class for a configured valued field instance."""

    kind = None
    characteristic = None
    residue_characteristic = None
    residue_field_infinite = None

    def zero(self):
        return self.element(0)

    def one(self):
        return self.element(1)

    def element(self, x):
        raise NotImplementedError

    def value(self, x):
        """The valuation of the element; Infinity iff x = 0."""
        return x.value()

    def residue(self, x):
        """Image of an element of the valuation ring in the residue field."""
        return x.residue()

    def pth_root(self, x):
        raise Unsupported("p-th roots only exist on FiniteFieldTrivial instances")

    def __eq__(self, other):
        return type(self) is type(other) and self.__dict__ == other.__dict__

    def __hash__(self):
        return hash((type(self).__name__,) + tuple(sorted(self.__dict__.items())))


class QpAdic(ValuedField):
    """The rationals with the p-adic valuation; residue field F_p."""

    kind = "qp-adic"

    def __init__(self, p):
        if not _is_prime(p):
            raise ValueError("p must be prime, got %s" % p)
        self.p = p
        self.characteristic = 0
        self.residue_characteristic = p
        self.residue_field_infinite = False

    def element(self, x):
        if isinstance(x, QElem):
            return x
        if isinstance(x, str):
            return QElem(self, Fraction(x))
        return QElem(self, Fraction(x))

    def residue_enumeration(self):
        """Deterministic enumeration of the residue field F_p."""
        return list(range(self.p))

    def lift_residue(self, r):
        return self.element(int(r))

    def __repr__(self):
        return "QpAdic(%d)" % self.p


class RationalFunctionTAdic(ValuedField):
    """Q(t) with the t-adic valuation; residue field Q (infinite)."""

    kind = "rational-function-t-adic"

    def __init__(self):
        self.characteristic = 0
        self.residue_characteristic = 0
        self.residue_field_infinite = True

    def element(self, x):
        if isinstance(x, RatFuncElem):
            return x
        if isinstance(x, str):
            from .poly import parse_element  # deferred: the parser lives with Poly
            return parse_element(x, self)
        return RatFuncElem(self, (Fraction(x),))

    def t(self):
        return RatFuncElem(self, (Fraction(0), Fraction(1)))

    def residue_enumeration(self):
        """Q is infinite; enumerate 0, 1, -1, 2, -2, ... lazily."""
        def gen():
            yield Fraction(0)
            n = 1
            while True:
                yield Fraction(n)
                yield Fraction(-n)
                n += 1
        return gen()

    def lift_residue(self, r):
        return RatFuncElem(self, (Fraction(r),))

    def __repr__(self):
        return "RationalFunctionTAdic()"


def _gf_poly_irreducible(coeffs, p):
    """Test irreducibility of a monic polynomial over F_p (small degrees)."""
    k = len(coeffs) - 1

    def pmul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] = (out[i + j] + x * y) % p
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return out

    def pmod(a, m):
        a = list(a)
        while len(a) >= len(m):
            c = a[-1]
            if c:
                sh = len(a) - len(m)
                for i in range(len(m)):
                    a[sh + i] = (a[sh + i] - c * m[i]) % p
            a.pop()
        while len(a) > 1 and a[-1] == 0:
            a.pop()
        return a

    def pgcd(a, b):
        a, b = list(a), list(b)
        while any(b):
            a, b = b, pmod(a, b)
            while len(b) > 1 and b[-1] == 0:
                b.pop()
        return a

    def xq_pow(e, m):
        # x^(p^e) mod m by repeated p-th powering
        r = [0, 1]
        for _ in range(e):
            acc = [1]
            base = r
            n = p
            while n:
                if n & 1:
                    acc = pmod(pmul(acc, base), m)
                base = pmod(pmul(base, base), m)
                n >>= 1
            r = acc
        return r

    m = list(coeffs)
    # x^(p^k) == x mod m
    r = xq_pow(k, m)
    sub = [(r[i] if i < len(r) else 0) - (1 if i == 1 else 0) for i in range(max(len(r), 2))]
    sub = [x % p for x in sub]
    if any(sub):
        return False
    # gcd(x^(p^(k/l)) - x, m) == 1 for prime divisors l of k
    for l in range(2, k + 1):
        if k % l == 0 and _is_prime(l):
            r = xq_pow(k // l, m)
            sub = [(r[i] if i < len(r) else 0) - (1 if i == 1 else 0)
                   for i in range(max(len(r), 2))]
            sub = [x % p for x in sub]
            g = pgcd(m, sub)
            if len(g) != 1:
                return False
    return True


class FiniteFieldTrivial(ValuedField):
    """F_q with the trivial valuation (v(x)=0 for x != 0).

    Used only by characteristic-p dynamic evaluation.  For k > 1 the field
    is presented as F_p[g]/(m) where m is the lexicographically least monic
    irreducible of degree k (constant coefficient compared first), so that
    runs are reproducible.
    """

    kind = "finite-field-trivial"

    def __init__(self, p, k=1):
        if not _is_prime(p):
            raise ValueError("p must be prime, got %s" % p)
        if k < 1:
            raise ValueError("k must be >= 1")
        self.p = p
        self.k = k
        self.characteristic = p
        self.residue_characteristic = p
        self.residue_field_infinite = False
        self.modulus = self._least_irreducible() if k > 1 else (0, 1)

    def _least_irreducible(self):
        p, k = self.p, self.k
        # enumerate constant-first coefficient tuples in lexicographic order
        for idx in range(p ** k):
            coeffs = []
            n = idx
            for _ in range(k):
                coeffs.append(n % p)
                n //= p
            cand = tuple(coeffs) + (1,)
            if _gf_poly_irreducible(cand, p):
                return cand
        raise RuntimeError("no irreducible polynomial found (unreachable)")

    @property
    def q(self):
        return self.p ** self.k

    def element(self, x):
        if isinstance(x, GFqElem):
            return x
        if isinstance(x, str):
            return self._parse(x)
        if isinstance(x, (list, tuple)):
            return GFqElem(self, x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError("denominator divisible by p in F_q")
            return GFqElem(self, [x.numerator * pow(x.denominator, -1, self.p)])
        return GFqElem(self, [int(x)])

    def generator(self):
        if self.k == 1:
            raise Unsupported("prime field has no extension generator")
        return GFqElem(self, [0, 1])

    def _parse(self, text):
        text = text.strip()
        total = self.zero()
        for piece in text.replace("-", "+-").split("+"):
            piece = piece.strip()
            if not piece:
                continue
            neg = piece.startswith("-")
            if neg:
                piece = piece[1:].strip()
            if "g" in piece:
                coef, _, rest = piece.partition("g")
                coef = coef.rstrip("*").strip()
                c = int(coef) if coef else 1
                e = int(rest[1:]) if rest.startswith("^") else (0 if not rest else 1)
                if not rest:
                    e = 1
                term = [0] * (e + 1)
                term[e] = c
                el = GFqElem(self, term)
            else:
                el = GFqElem(self, [int(piece)])
            total = total + (-el if neg else el)
        return total

    def pth_root(self, x):
        """The unique y with y^p = x (Frobenius is bijective on F_q)."""
        if not isinstance(x, GFqElem):
            raise Unsupported("pth_root needs an F_q element")
        return x ** (self.p ** (self.k - 1))

    def residue_enumeration(self):
        out = []
        for idx in range(self.q):
            coeffs = []
            n = idx
            for _ in range(self.k):
                coeffs.append(n % self.p)
                n //= self.p
            out.append(GFqElem(self, coeffs))
        return out

    def lift_residue(self, r):
        return self.element(r)

    def __repr__(self):
        return "FiniteFieldTrivial(%d, %d)" % (self.p, self.k)
