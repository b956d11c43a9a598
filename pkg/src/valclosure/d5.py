"""Dynamic evaluation: split polynomials and triangular systems on ambiguous zero-tests.

The univariate algorithms answer "is Q zero at every root of P / at no root /
mixed" with Bezout-certified coprime factors.  The triangular algorithms
recurse: a zero-test on a parameter coefficient is resolved by splitting the
innermost level whose test is ambiguous, producing a tree of pairwise coprime
triangular systems whose root-vector multisets partition the original one.
"""

from .poly import (Poly, gcd_monic, extended_gcd, squarefree_part,
                   NotSquarefree, DivisionByZeroPoly)
from .algebra import (TriangularSystem, QuotientAlgebra, mat_solve,
                      VariableMismatch)


class ImperfectField(TypeError):
    pass


ALL_ZERO = "all_zero"
ALL_NONZERO = "all_nonzero"
SPLIT = "split"


class SplitResult:
    """Outcome of a D5 zero-test of Q against the roots of P."""

    __slots__ = ("verdict", "p1", "p2", "u1", "u2", "replacement")

    def __init__(self, verdict, p1=None, p2=None, u1=None, u2=None, replacement=None):
        self.verdict = verdict
        self.p1 = p1
        self.p2 = p2
        self.u1 = u1
        self.u2 = u2
        self.replacement = replacement

    @staticmethod
    def all_zero(replacement=None):
        return SplitResult(ALL_ZERO, replacement=replacement)

    @staticmethod
    def all_nonzero():
        return SplitResult(ALL_NONZERO)

    @staticmethod
    def split(p1, p2, u1, u2):
        return SplitResult(SPLIT, p1, p2, u1, u2)

    def __repr__(self):
        if self.verdict == SPLIT:
            return "Split(%s, %s)" % (self.p1, self.p2)
        return self.verdict


def _main_var(P, Q):
    vs = set(P.vars) | set(Q.vars)
    if len(vs) != 1:
        raise ValueError("univariate D5 expects a single shared variable")
    return next(iter(vs))


def squarefree_d5(P, Q):
    """Zero-test Q against the roots of a squarefree P; split by the monic GCD."""
    var = _main_var(P, Q)
    if P.degree(var) < 1:
        raise ValueError("deg P must be >= 1")
    if gcd_monic(P, P.derivative(var), var).degree(var) > 0:
        raise NotSquarefree("P is not squarefree")
    P1 = gcd_monic(P, Q, var)
    if P1.degree(var) == 0:
        return SplitResult.all_nonzero()
    if P1 == P.monic(var):
        return SplitResult.all_zero()
    P2 = P.monic(var).divrem(P1, var)[0]
    _, u1, u2 = extended_gcd(P1, P2, var)
    return SplitResult.split(P1, P2, u1, u2)


def basic_d5(P, Q):
    """Zero-test without squarefreeness; P divides P1^m * P2 for some m.

    On the all-zero verdict the shrunken factor P1 (same roots as P, lower
    degree) is attached for reuse by callers.
    """
    var = _main_var(P, Q)
    if P.degree(var) < 1:
        raise ValueError("deg P must be >= 1")
    P1 = gcd_monic(P, Q, var)
    if P1.degree(var) == 0:
        return SplitResult.all_nonzero()
    k = 1 + P.degree(var) - P1.degree(var)
    g = gcd_monic(Q ** k, P, var)
    P2 = P.divrem(g, var)[0].monic(var) if g.degree(var) < P.degree(var) \
        else Poly.const(P.field, 1)
    if P2.degree(var) == 0:
        return SplitResult.all_zero(replacement=P1)
    _, u1, u2 = extended_gcd(P1, P2, var)
    return SplitResult.split(P1, P2, u1, u2)


def basic_d5_p2_iterative(P, Q):
    """The iterative form of the nonvanishing factor: repeat R := R/gcd(R, Q)."""
    var = _main_var(P, Q)
    R = P.monic(var)
    while True:
        g = gcd_monic(R, Q, var)
        if g.degree(var) == 0:
            return R
        R = R.divrem(g, var)[0].monic(var)


class MultisetSplit:
    """Multiplicity-preserving split P = P1 * P2 with a Bezout certificate."""

    __slots__ = ("p1", "p2", "u1", "u2")

    def __init__(self, p1, p2, u1, u2):
        self.p1 = p1
        self.p2 = p2
        self.u1 = u1
        self.u2 = u2

    def __iter__(self):
        return iter((self.p1, self.p2))

    def __repr__(self):
        return "MultisetSplit(%s, %s)" % (self.p1, self.p2)


def multiset_d5(P, Q):
    """Split P = P1*P2 exactly: Q vanishes at every root of P1, at no root of P2."""
    var = _main_var(P, Q)
    if P.degree(var) < 1:
        raise ValueError("deg P must be >= 1")
    field = P.field
    one = Poly.const(field, 1)
    R1 = gcd_monic(P, Q, var)
    if R1.degree(var) == 0:
        return MultisetSplit(one, P, Poly.const(field, 0), one)
    k = 1 + P.degree(var)
    g = gcd_monic(Q ** k, P, var)
    if g.degree(var) == P.degree(var):
        return MultisetSplit(P, one, Poly.const(field, 0), one)
    P2 = P.divrem(g, var)[0].monic(var)
    P1 = P.divrem(P2, var)[0]
    _, u1, u2 = extended_gcd(P1, P2, var)
    return MultisetSplit(P1, P2, u1, u2)


# ---------------------------------------------------------------------------
# Dynamic computations over triangular contexts
# ---------------------------------------------------------------------------

def _empty_context(field):
    return TriangularSystem(field, (), ())


def reduce_mod_system(sys, Q):
    """Normal form of Q modulo the system; foreign variables ride along."""
    for i in range(len(sys.vars) - 1, -1, -1):
        v = sys.vars[i]
        while Q.degree(v) >= sys.degrees[i]:
            Q = Q.divrem(sys.polys[i], v)[1]
    return Q


def _invert_in_algebra(ctx, c):
    """Inverse of an algebra element known to be nonzero at every root vector."""
    alg = QuotientAlgebra(ctx)
    M = alg.multiplication_matrix(c)
    rhs = [ctx.field.zero()] * alg.rank
    rhs[alg.index[tuple([0] * len(ctx.vars))]] = ctx.field.one()
    coords = mat_solve(M, rhs, ctx.field)
    return alg.from_coordinates(coords)


def branch_signs(ctx, Q):
    """Split ctx so that on every branch Q is zero at all root vectors or at none.

    Returns a list of (system, is_zero) pairs.  Splits preserve the
    root-vector multiset: branch systems replace one level P_j by coprime
    monic factors whose product is P_j modulo the lower levels.
    """
    Q = reduce_mod_system(ctx, Q)
    if Q.is_zero():
        return [(ctx, True)]
    sys_vars = [v for v in ctx.vars if Q.degree(v) > 0]
    if not sys_vars:
        return [(ctx, Q.as_element().is_zero())]
    j = max(ctx.vars.index(v) for v in sys_vars)
    var = ctx.vars[j]
    out = []
    for prefix, parts in _multiset_split_level(ctx.prefix(j), ctx.polys[j], Q, var):
        p_zero, p_nonzero = parts
        for piece, isz in ((p_zero, True), (p_nonzero, False)):
            if piece is None:
                continue
            out.append((_rebuild(ctx, j, prefix, piece), isz))
    # deterministic: zero branches first, then nonzero
    out.sort(key=lambda t: (not t[1],))
    return out


def _rebuild(ctx, j, prefix, level_poly):
    polys = list(prefix.polys) + [level_poly] + list(ctx.polys[j + 1:])
    return TriangularSystem(ctx.field, ctx.vars, polys)


def _multiset_split_level(prefix, P, Q, var):
    """Split level polynomial P against Q over the prefix context.

    Returns pairs (prefix', (P_zero, P_nonzero)) with either part possibly
    None; when both are present P_zero * P_nonzero = P modulo the prefix
    ideal and multiplicities are preserved (the multiset variant: repeat
    R := R / gcd(R, Q) until the GCD is trivial).
    """
    out = []
    stack = [(prefix, reduce_mod_system(prefix, P))]
    while stack:
        pfx, R = stack.pop()
        if R.degree(var) == 0:
            out.append((pfx, (P, None)))
            continue
        for pfx2, g in dyn_gcd(pfx, R, Q, var):
            if g.degree(var) == 0:
                p2 = reduce_mod_system(pfx2, R)
                if p2.degree(var) == P.degree(var):
                    out.append((pfx2, (None, P)))
                else:
                    p1, _ = _dyn_divide(pfx2, P, p2, var)
                    out.append((pfx2, (p1, p2)))
            else:
                nxt, _ = _dyn_divide(pfx2, R, g, var)
                stack.append((pfx2, reduce_mod_system(pfx2, nxt)))
    return out


def _dyn_divide(ctx, A, B, var):
    """Exact division A / B in the algebra over ctx (B monic in var)."""
    q, r = A.divrem(B, var)
    q = reduce_mod_system(ctx, q)
    r = reduce_mod_system(ctx, r)
    if not r.is_zero():
        raise DivisionByZeroPoly("division not exact over the context")
    return q, r


def dyn_gcd(ctx, A, B, var):
    """Monic GCD of A and B in var over the context algebra, with splits.

    Returns a list of (ctx', G) pairs; G is monic in var (or a constant 1)
    and equals the GCD of the specializations at every root vector of ctx'.
    """
    results = []
    work = [(ctx, reduce_mod_system(ctx, A), reduce_mod_system(ctx, B))]
    while work:
        c, a, b = work.pop()
        for c2, b2 in _dyn_normalize(c, b, var):
            if b2 is None:
                for c3, a2 in _dyn_normalize(c2, reduce_mod_system(c2, a), var):
                    if a2 is None:
                        raise ValueError("dynamic gcd of (0, 0)")
                    results.append((c3, a2 if a2.degree(var) > 0
                                    else Poly.const(c3.field, 1)))
            elif b2.degree(var) == 0:
                results.append((c2, Poly.const(c2.field, 1)))
            else:
                r = reduce_mod_system(c2, a).divrem(b2, var)[1]
                r = reduce_mod_system(c2, r)
                work.append((c2, b2, r))
    return results


def _dyn_normalize(ctx, B, var):
    """Branches (ctx', B') where B' is monic with definite degree, or None for zero.

    Leading coefficients that vanish at every root vector are dropped; a
    leading coefficient that vanishes at some vectors only forces a split of
    the context below.
    """
    out = []
    work = [(ctx, reduce_mod_system(ctx, B))]
    while work:
        c, b = work.pop()
        if b.is_zero():
            out.append((c, None))
            continue
        d = b.degree(var)
        if d <= 0:
            for c2, isz in branch_signs(c, b):
                out.append((c2, None if isz else Poly.const(c2.field, 1)))
            continue
        lc = b.coeff_of(var, d)
        if lc.is_constant():
            out.append((c, b.monic(var)))
            continue
        for c2, isz in branch_signs(c, lc):
            if isz:
                dropped = b - lc * Poly.var(c2.field, var) ** d
                work.append((c2, reduce_mod_system(c2, dropped)))
            else:
                inv = _invert_in_algebra(c2, reduce_mod_system(c2, lc))
                work.append((c2, reduce_mod_system(c2, inv * b)))
    return out


def systems_have_common_root(s1, s2):
    """Whether two triangular systems on the same variables share a root vector."""
    if s1.vars != s2.vars:
        raise VariableMismatch("systems must share their variable tuple")
    field = s1.field
    branches = [_empty_context(field)]
    for k, v in enumerate(s1.vars):
        nxt = []
        for ctx in branches:
            for ctx2, g in dyn_gcd(ctx, s1.polys[k], s2.polys[k], v):
                if g.degree(v) >= 1:
                    nxt.append(TriangularSystem(field, ctx2.vars + (v,),
                                                list(ctx2.polys) + [g]))
        branches = nxt
        if not branches:
            return False
    return True


# ---------------------------------------------------------------------------
# Case trees
# ---------------------------------------------------------------------------

class CaseNode:
    """Node of a D5 case tree: a triangular system plus accumulated test signs."""

    __slots__ = ("system", "signs", "children")

    def __init__(self, system, signs=()):
        self.system = system
        self.signs = tuple(signs)
        self.children = []

    def leaves(self):
        if not self.children:
            return [self]
        out = []
        for ch in self.children:
            out.extend(ch.leaves())
        return out

    def to_json(self):
        return {
            "system": [str(p) for p in self.system.polys],
            "sign": list(self.signs),
            "children": [c.to_json() for c in self.children],
        }

    def __repr__(self):
        return "CaseNode(%s, signs=%s, %d children)" % (
            self.system, self.signs, len(self.children))


def triangular_basic_d5(sys, tests):
    """Resolve the sign of every test polynomial over every root vector.

    Returns the root CaseNode; its leaves carry pairwise coprime systems and
    one 0/1 sign per test (0 means the test vanishes at every root vector of
    that leaf), and their root-vector multisets partition the input's.
    """
    root = CaseNode(sys)
    frontier = [root]
    for Q in tests:
        nxt = []
        for node in frontier:
            branches = branch_signs(node.system, Q)
            if len(branches) == 1 and branches[0][0] == node.system:
                node.signs = node.signs + ((0 if branches[0][1] else 1),)
                nxt.append(node)
                continue
            for bsys, isz in branches:
                child = CaseNode(bsys, node.signs + ((0 if isz else 1),))
                node.children.append(child)
                nxt.append(child)
        frontier = nxt
    return root


def perfect_triangular_d5(sys, tests):
    """Two-phase variant over a perfect field: squarefree-ize levels, then test signs.

    Characteristic p is restricted to one-level (univariate) systems, where
    p-th root extraction happens in the base field itself.
    """
    field = sys.field
    if field.characteristic != 0:
        if not hasattr(field, "pth_root") or field.kind != "finite-field-trivial":
            raise ImperfectField("explicit p-th roots are required")
        if len(sys.vars) > 1:
            raise ImperfectField(
                "characteristic-p squarefree extraction is limited to level-1 systems")
    root = CaseNode(sys)
    frontier = [root]
    for level in range(len(sys.vars)):
        var = sys.vars[level]
        nxt = []
        for node in frontier:
            for bsys in _squarefree_level(node.system, level, var):
                if bsys == node.system:
                    nxt.append(node)
                else:
                    child = CaseNode(bsys, node.signs)
                    node.children.append(child)
                    nxt.append(child)
        frontier = nxt
    for Q in tests:
        nxt = []
        for node in frontier:
            for bsys, isz in branch_signs(node.system, Q):
                if bsys == node.system:
                    node.signs = node.signs + ((0 if isz else 1),)
                    nxt.append(node)
                else:
                    child = CaseNode(bsys, node.signs + ((0 if isz else 1),))
                    node.children.append(child)
                    nxt.append(child)
        frontier = nxt
    return root


def _squarefree_level(system, level, var):
    """Replace level polynomial by its squarefree part over the lower levels."""
    field = system.field
    P = system.polys[level]
    if field.characteristic != 0:
        sf = squarefree_part(P, var)
        return [system.replace_level(level, sf)]
    prefix = system.prefix(level)
    dP = P.derivative(var)
    out = []
    for pfx, g in dyn_gcd(prefix, P, dP, var):
        if g.degree(var) == 0:
            sf = P
        else:
            sf, _ = _dyn_divide(pfx, P, g, var)
        polys = list(pfx.polys) + [sf] + list(system.polys[level + 1:])
        out.append(TriangularSystem(field, system.vars, polys))
    return out
