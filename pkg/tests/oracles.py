"""Independent reference computations used by the tests (sympy based)."""

import itertools

import sympy
from gmpy2 import mpq

from germforge import Polynomial


def to_sympy(p, syms):
    expr = sympy.Integer(0)
    for e, c in p.as_dict().items():
        term = sympy.Rational(int(c.numerator), int(c.denominator))
        for s, k in zip(syms, e):
            term *= s**k
        expr += term
    return expr


def from_sympy_poly(poly, ring, positions=None):
    d = {}
    for e, c in poly.terms():
        if positions is not None:
            e = tuple(e[i] for i in positions)
        d[tuple(e)] = mpq(int(c.p), int(c.q))
    return Polynomial(ring, d)


def monic(p):
    return p.monic() if p else p


def sympy_reduced_groebner(gens, ring, order="grevlex"):
    """Reduced Groebner basis from sympy, as polynomials of ``ring`` made
    monic for ``order`` (the ring should carry that order)."""
    syms = sympy.symbols(list(ring.names))
    exprs = [to_sympy(g, syms) for g in gens]
    G = sympy.groebner(exprs, *syms, order=order, domain="QQ")
    return sorted((monic(from_sympy_poly(sympy.Poly(g, *syms), ring)) for g in G.exprs), key=str)


def _lazard_leading(poly_h, nvars):
    """Leading monomial (in x) of a homogeneous polynomial in (t, x) for the
    local degree order: the largest t-power, ties broken lexicographically."""
    best = None
    for e, _ in poly_h.terms():
        cand = (e[0], tuple(e[1:]))
        if best is None or cand > best:
            best = cand
    return best[1]


def lazard_local_leading_monomials(gens, ring):
    """Leading monomials of a local standard basis computed by Lazard's
    method: Groebner basis of the homogenised generators for a degree order
    favouring the homogenising variable, then dehomogenise."""
    t = sympy.Symbol("_h")
    syms = sympy.symbols(list(ring.names))
    homog = []
    for g in gens:
        d = g.total_degree()
        expr = sympy.Integer(0)
        for e, c in g.as_dict().items():
            term = sympy.Rational(int(c.numerator), int(c.denominator)) * t ** (d - sum(e))
            for s, k in zip(syms, e):
                term *= s**k
            expr += term
        homog.append(expr)
    G = sympy.groebner(homog, t, *syms, order="grlex", domain="QQ")
    lms = []
    for g in G.exprs:
        lms.append(_lazard_leading(sympy.Poly(g, t, *syms), ring.nvars))
    return lms


def count_standard_monomials(lms, nvars, bound=60):
    """Number of monomials outside the monomial ideal, or None when
    infinite (detected by a missing pure power)."""
    if any(not any(m) for m in lms):
        return 0
    for i in range(nvars):
        if not any(m[i] and all(m[j] == 0 for j in range(nvars) if j != i) for m in lms):
            return None
    count = 0
    for e in itertools.product(range(bound), repeat=nvars):
        if not any(all(a >= b for a, b in zip(e, m)) for m in lms):
            count += 1
    return count


def monomial_ideal_dimension(lms, nvars):
    """Largest set of variables containing no monomial's support."""
    if any(not any(m) for m in lms):
        return -1
    best = 0
    for size in range(nvars + 1):
        for sub in itertools.combinations(range(nvars), size):
            if all(any(m[i] for i in range(nvars) if i not in sub) for m in lms):
                best = max(best, size)
    return best
