"""Triangular systems, their quotient algebras, and characteristic polynomials.

A triangular system (P_1, ..., P_r) with P_i in K[X_1..X_i] monic in X_i
presents a free algebra of rank d_1*...*d_r with the monomial basis
x_1^m1 ... x_r^mr (m_i < d_i).  Root information flows exclusively through
characteristic polynomials of multiplication operators: the characteristic
polynomial of multiplication-by-Q has root multiset [Q(root vector)] over
all root vectors of the system (the generalized Tschirnhaus transform).
"""

import itertools

from .poly import Poly, ZeroPolynomial


class VariableMismatch(ValueError):
    pass


class NonSquare(ValueError):
    pass


class SingularDenominator(ZeroDivisionError):
    """The denominator vanishes at some root vector; callers should split."""


class TriangularSystem:
    """Monic triangular polynomial system over a field instance."""

    __slots__ = ("field", "vars", "polys", "degrees")

    def __init__(self, field, vars, polys, reduce_tails=True):
        vars = tuple(vars)
        polys = list(polys)
        if len(vars) != len(polys):
            raise VariableMismatch("need one polynomial per variable")
        degrees = []
        for i, (v, p) in enumerate(zip(vars, polys)):
            extra = set(p.vars) - set(vars[:i + 1])
            if extra:
                raise VariableMismatch(
                    "P_%d may only involve %s, found %s" % (i + 1, vars[:i + 1], sorted(extra)))
            if p.degree(v) < 1 or not p.is_monic(v):
                raise VariableMismatch("P_%d must be monic of positive degree in %s" % (i + 1, v))
            degrees.append(p.degree(v))
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "degrees", tuple(degrees))
        if reduce_tails:
            # normalize: deg_{X_j}(P_k) < d_j for k > j
            reduced = []
            for i, p in enumerate(polys):
                for j in range(i):
                    if p.degree(vars[j]) >= degrees[j]:
                        p = _reduce_by(p, reduced[j], vars[j])
                reduced.append(p)
            polys = reduced
        object.__setattr__(self, "polys", tuple(polys))

    @property
    def rank(self):
        r = 1
        for d in self.degrees:
            r *= d
        return r

    def replace_level(self, i, new_poly):
        """A new system with level i swapped out (degrees may change)."""
        polys = list(self.polys)
        polys[i] = new_poly
        return TriangularSystem(self.field, self.vars, polys)

    def prefix(self, k):
        return TriangularSystem(self.field, self.vars[:k], self.polys[:k],
                                reduce_tails=False)

    def __eq__(self, other):
        return (isinstance(other, TriangularSystem) and self.vars == other.vars
                and self.polys == other.polys)

    def __hash__(self):
        return hash((self.vars, self.polys))

    def __repr__(self):
        return "TriangularSystem[%s]" % ", ".join(
            "%s: %s" % (v, p) for v, p in zip(self.vars, self.polys))


def _reduce_by(Q, P, var):
    """Remainder of Q modulo P in the given variable (P monic in var)."""
    return Q.divrem(P, var)[1]


class QuotientAlgebra:
    """The finite free algebra K[X_1..X_r]/(P_1..P_r) with its monomial basis."""

    __slots__ = ("system", "basis", "index")

    def __init__(self, system):
        object.__setattr__(self, "system", system)
        ranges = [range(d) for d in system.degrees]
        basis = list(itertools.product(*ranges))
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "index", {b: i for i, b in enumerate(basis)})

    @property
    def field(self):
        return self.system.field

    @property
    def rank(self):
        return len(self.basis)

    def reduce(self, Q):
        """The unique representative with deg_{X_i} < d_i for all i."""
        sys = self.system
        extra = set(Q.vars) - set(sys.vars)
        if extra:
            raise VariableMismatch("polynomial involves foreign variables %s" % sorted(extra))
        for i in range(len(sys.vars) - 1, -1, -1):
            v = sys.vars[i]
            while Q.degree(v) >= sys.degrees[i]:
                Q = _reduce_by(Q, sys.polys[i], v)
        return Q

    def coordinates(self, Q):
        """Coordinate vector of reduce(Q) in the monomial basis."""
        Qr = self.reduce(Q)
        field = self.field
        coords = [field.zero()] * self.rank
        aligned = Qr._aligned_coeffs(self.system.vars)
        for e, c in aligned.items():
            coords[self.index[e]] = c
        return coords

    def from_coordinates(self, coords):
        field = self.field
        out = Poly.const(field, 0)
        for b, c in zip(self.basis, coords):
            if c.is_zero():
                continue
            mono = Poly(field, self.system.vars, {b: c})
            out = out + mono
        return out

    def multiplication_matrix(self, Q):
        """Matrix of multiplication-by-Q in the monomial basis (columns are images)."""
        field = self.field
        Qr = self.reduce(Q)
        n = self.rank
        M = [[field.zero()] * n for _ in range(n)]
        for j, b in enumerate(self.basis):
            mono = Poly(field, self.system.vars, {b: field.one()})
            col = self.coordinates(Qr * mono)
            for i in range(n):
                M[i][j] = col[i]
        return M


# ---------------------------------------------------------------------------
# Exact linear algebra over the coefficient field
# ---------------------------------------------------------------------------

def mat_mul(A, B, zero):
    n, m, k = len(A), len(B[0]), len(B)
    return [[_dot(A[i], [B[t][j] for t in range(k)], zero) for j in range(m)]
            for i in range(n)]


def _dot(u, v, zero):
    s = zero
    for a, b in zip(u, v):
        s = s + a * b
    return s


def mat_identity(n, one, zero):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_inverse(M, field):
    """Gauss-Jordan inverse; raises SingularDenominator when singular."""
    n = len(M)
    A = [row[:] + ident_row for row, ident_row in
         zip([r[:] for r in M], mat_identity(n, field.one(), field.zero()))]
    col = 0
    for col in range(n):
        piv = None
        for r in range(col, n):
            if not A[r][col].is_zero():
                piv = r
                break
        if piv is None:
            raise SingularDenominator("matrix is singular")
        A[col], A[piv] = A[piv], A[col]
        inv = field.one() / A[col][col]
        A[col] = [x * inv for x in A[col]]
        for r in range(n):
            if r != col and not A[r][col].is_zero():
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return [row[n:] for row in A]


def mat_solve(M, rhs, field):
    """Solve M x = rhs by Gaussian elimination; raises SingularDenominator."""
    n = len(M)
    A = [M[i][:] + [rhs[i]] for i in range(n)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if not A[r][col].is_zero():
                piv = r
                break
        if piv is None:
            raise SingularDenominator("singular system")
        A[col], A[piv] = A[piv], A[col]
        inv = field.one() / A[col][col]
        A[col] = [x * inv for x in A[col]]
        for r in range(n):
            if r != col and not A[r][col].is_zero():
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return [A[i][n] for i in range(n)]


# ---------------------------------------------------------------------------
# Characteristic polynomials
# ---------------------------------------------------------------------------

def char_poly(M, field=None, var="Z"):
    """Exact characteristic polynomial det(Z*I - M) as a monic Poly in var.

    Entries may be field elements (Hessenberg reduction, O(n^3) divisions)
    or polynomials (division-free Berkowitz, used on parametric matrices).
    """
    n = len(M)
    if n == 0:
        raise NonSquare("empty matrix")
    for row in M:
        if len(row) != n:
            raise NonSquare("matrix is not square")
    sample = M[0][0]
    if isinstance(sample, Poly):
        fld = sample.field
        coeffs = _berkowitz(M, Poly.const(fld, 1), Poly.const(fld, 0))
        out = Poly.const(fld, 0)
        z = Poly.var(fld, var)
        for i, c in enumerate(coeffs):  # descending degree
            out = out + c * z ** (n - i)
        return out
    fld = field if field is not None else sample.field
    coeffs = _hessenberg_charpoly(M, fld)
    return Poly.from_coeff_list(fld, var, list(reversed(coeffs)))


def _berkowitz(M, one, zero):
    """Berkowitz vector of char poly coefficients in descending degree order."""
    n = len(M)
    A = M
    poly = [one, -A[0][0]]
    for k in range(1, n):
        sub = [row[:k] for row in M[:k]]
        R = M[k][:k]
        C = [M[i][k] for i in range(k)]
        a = M[k][k]
        items = [one, -a]
        vec = C
        for _ in range(k):
            items.append(-_dot(R, vec, zero))
            vec = [_dot(row, vec, zero) for row in sub]
        # items has length k+2; build Toeplitz product with current poly
        new = [zero] * (k + 2)
        for i in range(k + 2):
            s = zero
            for j in range(min(i, len(poly) - 1) + 1):
                if i - j < len(items):
                    s = s + items[i - j] * poly[j]
            new[i] = s
        poly = new
    return poly


def _hessenberg_charpoly(M, field):
    """Char poly coefficients (descending) via Hessenberg reduction over a field."""
    n = len(M)
    H = [row[:] for row in M]
    one, zero = field.one(), field.zero()
    for j in range(n - 2):
        piv = None
        for i in range(j + 1, n):
            if not H[i][j].is_zero():
                piv = i
                break
        if piv is None:
            continue
        if piv != j + 1:
            H[piv], H[j + 1] = H[j + 1], H[piv]
            for row in H:
                row[piv], row[j + 1] = row[j + 1], row[piv]
        p = H[j + 1][j]
        for i in range(j + 2, n):
            if H[i][j].is_zero():
                continue
            m = H[i][j] / p
            H[i] = [a - m * b for a, b in zip(H[i], H[j + 1])]
            for row in H:
                row[j + 1] = row[j + 1] + m * row[i]
    # p_m(x) for leading principal m x m minors of the Hessenberg form
    polys = [[one]]  # coefficient lists, ascending degree
    for m in range(1, n + 1):
        prev = polys[m - 1]
        term = _poly_shift_scale(prev, H[m - 1][m - 1], one, zero)
        prod = one
        for i in range(1, m):
            prod = prod * H[m - i][m - i - 1]
            if prod.is_zero():
                break
            c = H[m - 1 - i][m - 1]
            if c.is_zero():
                continue
            f = c * prod
            q = polys[m - 1 - i]
            term = [a - f * b for a, b in
                    zip(term, q + [zero] * (len(term) - len(q)))]
        polys.append(term)
    asc = polys[n]
    return list(reversed(asc))


def _poly_shift_scale(p, h, one, zero):
    """(x - h) * p for an ascending coefficient list."""
    out = [zero] * (len(p) + 1)
    for i, c in enumerate(p):
        out[i + 1] = out[i + 1] + c
        out[i] = out[i] - h * c
    return out


def companion_matrix(P, var=None):
    """Companion matrix of a monic univariate polynomial."""
    if var is None:
        if len(P.vars) != 1:
            raise VariableMismatch("companion matrix needs a univariate polynomial")
        var = P.vars[0]
    if not P.is_monic(var):
        raise VariableMismatch("companion matrix needs a monic polynomial")
    d = P.degree(var)
    field = P.field
    cs = [c.as_element() for c in P.coeffs_in(var)]
    M = [[field.zero()] * d for _ in range(d)]
    for i in range(1, d):
        M[i][i - 1] = field.one()
    for i in range(d):
        M[i][d - 1] = -cs[i]
    return M


# ---------------------------------------------------------------------------
# Generalized Tschirnhaus transformation
# ---------------------------------------------------------------------------

def tschirnhaus(Q, alg, var="Z"):
    """Monic polynomial whose root multiset is [Q(root vector)] over the system."""
    M = alg.multiplication_matrix(Q)
    return char_poly(M, alg.field, var)


def tschirnhaus_rational(Q, R, alg, var="Z"):
    """Char poly of A_Q * A_R^(-1); roots are Q/R at the root vectors.

    Raises SingularDenominator when R vanishes at some root vector, which is
    the signal for callers to split the system dynamically.
    """
    MR = alg.multiplication_matrix(R)
    MRinv = mat_inverse(MR, alg.field)
    MQ = alg.multiplication_matrix(Q)
    M = mat_mul(MQ, MRinv, alg.field.zero())
    return char_poly(M, alg.field, var)


def coprime_systems(s1, s2):
    """True when two triangular systems on the same variables share no root vector."""
    from .d5 import systems_have_common_root
    return not systems_have_common_root(s1, s2)
