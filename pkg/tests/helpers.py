"""Shared oracle builders for the test suite.

Split objects (polynomials and triangular systems with known rational root
vectors) let tests compare algorithm output against direct enumeration.
"""

from fractions import Fraction

from valclosure.poly import Poly
from valclosure.algebra import TriangularSystem


def poly_from_roots(field, var, roots, lc=1):
    """lc * prod (var - r) with roots given as ints/Fractions/elements."""
    x = Poly.var(field, var)
    p = Poly.const(field, field.element(lc))
    for r in roots:
        if not hasattr(r, "field"):
            r = field.element(r)
        p = p * (x - Poly.const(field, r))
    return p


def split_system_from_roots(field, vars, root_table):
    """Fully split triangular system with chosen root vectors.

    ``root_table[i]`` maps each root-vector prefix (tuple of raw values) to
    the list of level-(i+1) roots; every list at a level must have the same
    length so the level polynomial has a well-defined degree.  Returns the
    system together with the list of its root vectors (tuples of elements).
    """
    polys = []
    prefixes = [((), Poly.const(field, 1))]
    vectors = [()]
    for i, var in enumerate(vars):
        spec = root_table[i]
        xi = Poly.var(field, var)
        level_poly = Poly.const(field, 0)
        new_prefixes = []
        new_vectors = []
        for (vec, sel) in prefixes:
            roots = [field.element(r) for r in spec[vec]]
            prod = Poly.const(field, 1)
            for r in roots:
                prod = prod * (xi - Poly.const(field, r))
            level_poly = level_poly + sel * prod
            for r in roots:
                lag = Poly.const(field, 1)
                for b in roots:
                    if b != r:
                        lag = lag * (xi - Poly.const(field, b)) \
                            * Poly.const(field, field.one() / (r - b))
                new_prefixes.append((vec + (_raw(r),), sel * lag))
        for vec in vectors:
            for r in spec[tuple(vec)]:
                new_vectors.append(tuple(vec) + (_raw(field.element(r)),))
        prefixes = new_prefixes
        vectors = new_vectors
        polys.append(level_poly)
    system = TriangularSystem(field, vars, polys)
    elem_vectors = [tuple(field.element(x) for x in vec) for vec in vectors]
    return system, elem_vectors


def _raw(elem):
    """Hashable raw key for a field element (used as root_table prefix keys)."""
    if hasattr(elem, "a"):
        return elem.a
    if hasattr(elem, "coeffs") and not hasattr(elem, "vars"):
        return elem.coeffs
    if hasattr(elem, "num"):
        return (elem.num, elem.den)
    return elem


def random_split_system(rng, field, max_levels=3, max_branch=3, max_rank=12,
                        root_pool=range(-6, 7)):
    """Random fully split system; returns (system, root vectors)."""
    r = rng.randint(1, max_levels)
    widths = []
    rank = 1
    for _ in range(r):
        w = rng.randint(1, max_branch)
        while rank * w > max_rank:
            w = max(1, w - 1)
        widths.append(w)
        rank *= w
    vars = tuple("X%d" % (i + 1) for i in range(r))
    root_table = []
    prefixes = [()]
    for i in range(r):
        spec = {}
        nxt = []
        for pre in prefixes:
            roots = rng.sample(list(root_pool), widths[i])
            spec[pre] = [Fraction(x) for x in roots]
            nxt.extend(pre + (Fraction(x),) for x in roots)
        root_table.append(spec)
        prefixes = nxt
    return split_system_from_roots(field, vars, root_table)
