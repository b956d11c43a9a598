"""The Newton polygon algorithm and its compositions.

``root_values`` reads the multiset of root valuations off the lower convex
hull of the coefficient-value diagram.  ``simval`` pairs the value multisets
of several polynomials evaluated at the same roots: the key device is that
the characteristic polynomial of A^m Q(A)^n (A the companion matrix) has
root multiset [x_i^m Q(x_i)^n], so its polygon reveals the combined values
m v(x_i) + n v(Q(x_i)); an integer n free of "bad coincidences" makes the
combination uniquely decomposable and hence recovers the pairing.
"""

from fractions import Fraction

from .valfield import GammaValue, INF, gv
from .poly import Poly, ZeroPolynomial
from .algebra import (QuotientAlgebra, TriangularSystem, companion_matrix,
                      char_poly, mat_mul)
from .d5 import multiset_d5, triangular_basic_d5


# ---------------------------------------------------------------------------
# Canonical multisets
# ---------------------------------------------------------------------------

def _sort_key(x):
    if isinstance(x, GammaValue):
        return x.sort_key()
    if isinstance(x, tuple):
        return tuple(_sort_key(y) for y in x)
    return x


class Multiset:
    """Canonical finite multiset: sorted (element, multiplicity) pairs."""

    __slots__ = ("items",)

    def __init__(self, items=()):
        merged = {}
        for e, m in items:
            if m < 0:
                raise ValueError("negative multiplicity")
            if m:
                merged[e] = merged.get(e, 0) + m
        object.__setattr__(self, "items", tuple(
            sorted(merged.items(), key=lambda em: _sort_key(em[0]))))

    @staticmethod
    def of(elements):
        return Multiset((e, 1) for e in elements)

    def __add__(self, other):
        return Multiset(self.items + other.items)

    @property
    def cardinality(self):
        return sum(m for _, m in self.items)

    def support(self):
        return [e for e, _ in self.items]

    def multiplicity(self, e):
        for e2, m in self.items:
            if e2 == e:
                return m
        return 0

    def expand(self):
        out = []
        for e, m in self.items:
            out.extend([e] * m)
        return out

    def map(self, f):
        return Multiset((f(e), m) for e, m in self.items)

    def project(self, i):
        return Multiset((e[i], m) for e, m in self.items)

    def __iter__(self):
        return iter(self.items)

    def __len__(self):
        return len(self.items)

    def __eq__(self, other):
        return isinstance(other, Multiset) and self.items == other.items

    def __hash__(self):
        return hash(self.items)

    def __repr__(self):
        def fmt(e):
            return "(%s)" % ", ".join(map(str, e)) if isinstance(e, tuple) else str(e)
        return " + ".join(("%d[%s]" % (m, fmt(e))) if m != 1 else "[%s]" % fmt(e)
                          for e, m in self.items) or "0"


# ---------------------------------------------------------------------------
# Newton polygon
# ---------------------------------------------------------------------------

class NewtonPolygon:
    """Lower convex hull of the points (i, v(p_i)) after stripping zero roots."""

    __slots__ = ("vertices", "n_inf", "degree")

    def __init__(self, vertices, n_inf, degree):
        self.vertices = vertices      # [(i, GammaValue finite)], increasing i
        self.n_inf = n_inf            # multiplicity of the root 0
        self.degree = degree          # degree of the input polynomial

    def edges(self):
        """[(root value, horizontal length)] for each hull edge."""
        out = []
        for (i, gi), (j, gj) in zip(self.vertices, self.vertices[1:]):
            val = GammaValue((gi.q - gj.q) / (j - i))
            out.append((val, j - i))
        return out

    def root_values(self):
        vals = [(INF, self.n_inf)] if self.n_inf else []
        vals.extend(self.edges())
        return Multiset(vals)

    def __repr__(self):
        return "NewtonPolygon(vertices=%s, n_inf=%d)" % (
            [(i, str(g)) for i, g in self.vertices], self.n_inf)


def lower_hull(points):
    """Lower convex hull of (integer abscissa, finite GammaValue) points.

    Points must be sorted by abscissa; returns the vertex sublist satisfying
    the polygon's strict-left / weak-right slope inequalities.
    """
    hull = []
    for (i, g) in points:
        while len(hull) >= 2:
            (i1, g1), (i2, g2) = hull[-2], hull[-1]
            # keep hull[-1] only if it lies strictly below segment hull[-2] -> new
            lhs = (g2.q - g1.q) * (i - i1)
            rhs = (g.q - g1.q) * (i2 - i1)
            if lhs >= rhs:
                hull.pop()
            else:
                break
        hull.append((i, g))
    return hull


def newton_polygon(P, var=None):
    """Newton polygon of a nonzero univariate polynomial."""
    if P.is_zero():
        raise ZeroPolynomial("Newton polygon of the zero polynomial")
    if var is None:
        if len(P.vars) > 1:
            raise ValueError("polynomial is not univariate")
        var = P.vars[0] if P.vars else "X"
    coeffs = [c.as_element() for c in P.coeffs_in(var)] or [P.as_element()]
    degree = len(coeffs) - 1
    n_inf = 0
    while coeffs and coeffs[0].is_zero():
        coeffs.pop(0)
        n_inf += 1
    points = [(i, c.value()) for i, c in enumerate(coeffs) if not c.is_zero()]
    return NewtonPolygon(lower_hull(points), n_inf, degree)


def root_values(P, var=None):
    """Multiset [v(x_1), ..., v(x_n)] over the root multiset of P."""
    return newton_polygon(P, var).root_values()


# ---------------------------------------------------------------------------
# Pairing recovery and the good-n search
# ---------------------------------------------------------------------------

def bad_values(keys, new):
    """The set of integers n admitting a bad coincidence between two multisets."""
    ks = [k.q for k in keys.support()]
    bs = [b.q for b in new.support()]
    bad = set()
    for i, a in enumerate(ks):
        for c in ks[i + 1:]:
            delta = a - c
            for x in bs:
                for y in bs:
                    dd = y - x
                    if dd == 0:
                        continue
                    q = delta / dd
                    if q > 0 and q.denominator == 1:
                        bad.add(int(q))
    return bad


def find_good_n(keys, new, cap=None):
    """Smallest positive n with no bad coincidence; all inputs must be finite."""
    d = max(keys.cardinality, new.cardinality)
    if cap is None:
        cap = (d * (d - 1) // 2) ** 2 + 1
    bad = bad_values(keys, new)
    n = 1
    while n in bad:
        n += 1
        if n > cap:
            raise RuntimeError("good-n search exceeded the theoretical cap")
    return n


def recover_pairing(m1, m2, n, combined):
    """Read the combined multiset [a_i + n*b_i] as a pairing of m1 with m2.

    Requires n good (no bad coincidence): every combined element then has a
    unique decomposition a + n*b over the supports.  The projections of the
    result reproduce m1 and m2 exactly.
    """
    pairs = []
    for c, mult in combined:
        matches = [(a, b) for a in m1.support() for b in m2.support()
                   if a + b.scale(n) == c]
        if len(matches) != 1:
            raise ValueError("combined value %s has %d decompositions; n=%d is not good"
                             % (c, len(matches), n))
        pairs.append((matches[0], mult))
    out = Multiset(pairs)
    if out.project(0) != m1 or out.project(1) != m2:
        raise ValueError("pairing projections disagree with the input multisets")
    return out


# ---------------------------------------------------------------------------
# SimVal
# ---------------------------------------------------------------------------

def _poly_at_matrix(Q, M, field, var):
    n = len(M)
    zero = field.zero()
    out = [[zero] * n for _ in range(n)]
    cs = Q.coeffs_in(var) if Q.degree(var) >= 0 and var in Q.vars else [Q]
    for c in reversed(cs):
        ce = c.as_element()
        out = mat_mul(out, M, zero)
        for i in range(n):
            out[i][i] = out[i][i] + ce
    return out


def simval(P, Qs, var=None):
    """Multiset of (v(x), v(Q_1(x)), ..., v(Q_r(x))) over the root multiset of P.

    Zero roots are stripped first; roots where some Q_j vanishes are isolated
    by multiplicity-preserving dynamic splits, so the pairing chain only ever
    sees finite values.
    """
    if P.is_zero():
        raise ZeroPolynomial("simval of the zero polynomial")
    if var is None:
        vs = set(P.vars)
        for q in Qs:
            vs |= set(q.vars)
        if len(vs) > 1:
            raise ValueError("simval expects univariate input")
        var = next(iter(vs)) if vs else "X"
    field = P.field
    r = len(Qs)
    if P.degree(var) <= 0:
        return Multiset()
    P = P.monic(var)
    polygon = newton_polygon(P, var)
    n_inf = polygon.n_inf
    tuples = []
    if n_inf:
        at0 = {var: field.zero()}
        zero_tuple = (INF,) + tuple(q.substitute(at0).as_element().value() for q in Qs)
        tuples.append((zero_tuple, n_inf))
    x = Poly.var(field, var)
    P0 = P.divrem(x ** n_inf, var)[0] if n_inf else P
    if P0.degree(var) <= 0:
        return Multiset(tuples)
    # split so each Q_j either vanishes at every root of a piece or at none
    pieces = [(P0, [])]
    for q in Qs:
        nxt = []
        for piece, flags in pieces:
            s = multiset_d5(piece, q)
            if s.p1.degree(var) <= 0:
                nxt.append((piece, flags + [False]))
            elif s.p2.degree(var) <= 0:
                nxt.append((piece, flags + [True]))
            else:
                nxt.append((s.p1.monic(var), flags + [True]))
                nxt.append((s.p2.monic(var), flags + [False]))
        pieces = nxt
    for piece, flags in pieces:
        tuples.extend(_simval_piece(piece, Qs, flags, var).items)
    return Multiset(tuples)


def _simval_piece(piece, Qs, vanish, var):
    """Pairing chain on a piece with no zero roots and flagged vanishing Q's."""
    field = piece.field
    keys = root_values(piece, var)
    tuple_of = {k: (k,) for k in keys.support()}
    A = companion_matrix(piece, var)
    M = [row[:] for row in A]
    for q, flag in zip(Qs, vanish):
        if flag:
            tuple_of = {k: t + (INF,) for k, t in tuple_of.items()}
            continue
        QA = _poly_at_matrix(q, A, field, var)
        new_vals = root_values(char_poly(QA, field, var="Z"), "Z")
        n = find_good_n(keys, new_vals)
        QA_n = _mat_power(QA, n, field)
        M = mat_mul(M, QA_n, field.zero())
        combined = root_values(char_poly(M, field, var="Z"), "Z")
        pairing = recover_pairing(keys, new_vals, n, combined)
        new_tuple_of = {}
        for (k, b), _ in pairing:
            new_tuple_of[k + b.scale(n)] = tuple_of[k] + (b,)
        tuple_of = new_tuple_of
        keys = combined
    return Multiset((tuple_of[k], m) for k, m in keys)


def _mat_power(M, n, field):
    size = len(M)
    out = [[field.one() if i == j else field.zero() for j in range(size)]
           for i in range(size)]
    base = M
    while n:
        if n & 1:
            out = mat_mul(out, base, field.zero())
        base = mat_mul(base, base, field.zero())
        n >>= 1
    return out


# ---------------------------------------------------------------------------
# TriangularSimVal
# ---------------------------------------------------------------------------

def triangular_simval(sys, Qs):
    """Multiset of (v(x_1), ..., v(x_k), v(Q_1(xbar)), ..., v(Q_r(xbar)))
    over the root-vector multiset of the triangular system.

    Characteristic polynomials of multiplication operators in the quotient
    algebra play the companion-matrix role; a D5 pre-split resolves every
    coordinate that vanishes on part of the root vectors.
    """
    field = sys.field
    coords = [Poly.var(field, v) for v in sys.vars] + list(Qs)
    tree = triangular_basic_d5(sys, coords)
    tuples = []
    for leaf in tree.leaves():
        alg = QuotientAlgebra(leaf.system)
        d = alg.rank
        keys = Multiset([(gv(0), d)])
        tuple_of = {gv(0): ()}
        E = Poly.const(field, 1)
        for q, sign in zip(coords, leaf.signs):
            if sign == 0:
                tuple_of = {k: t + (INF,) for k, t in tuple_of.items()}
                continue
            from .algebra import tschirnhaus
            new_vals = root_values(tschirnhaus(q, alg), "Z")
            n = find_good_n(keys, new_vals)
            E = alg.reduce(E * q ** n)
            combined = root_values(tschirnhaus(E, alg), "Z")
            pairing = recover_pairing(keys, new_vals, n, combined)
            new_tuple_of = {}
            for (k, b), _ in pairing:
                new_tuple_of[k + b.scale(n)] = tuple_of[k] + (b,)
            tuple_of = new_tuple_of
            keys = combined
        tuples.extend((tuple_of[k], m) for k, m in keys)
    return Multiset(tuples)
