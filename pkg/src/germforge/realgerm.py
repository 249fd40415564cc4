"""Sufficient tests for "the real germ of V(I) at 0 is contained in {0}".

Ideal computations see complex points.  A real germ can be the origin while
the complex one is not, e.g. ``x^2 + y^2``.  The tests here only ever
certify; failing them says nothing.

Two exact moves are used.  Local units are dropped from factored
generators (they do not vanish near 0).  A positive semidefinite quadratic
form ``sum d_i l_i^2`` with ``d_i > 0`` has the same real zeros as the
linear forms ``l_i``.  After rewriting, the complex local dimension is
recomputed; if that fails, the same rewriting is applied to the tangent
cone, whose real points contain every real tangent direction at 0.
"""

from __future__ import annotations

from gmpy2 import mpq

from .ideal import Ideal, dimension, local_dimension_at_origin, squarefree_part
from .poly import Polynomial

__all__ = ["real_germ_is_origin", "psd_linear_factors", "strip_local_units"]


def psd_linear_factors(q):
    """Linear forms with the same real zeros as the quadratic form ``q``, or
    None if ``q`` is not a positive (or negative) semidefinite quadratic form."""
    if not q or q.total_degree() != 2 or any(sum(e) != 2 for e in q._d):
        return None
    ring = q.ring
    idx = q.variables()
    n = len(idx)
    pos = {v: k for k, v in enumerate(idx)}
    A = [[mpq(0)] * n for _ in range(n)]
    for e, c in q._d.items():
        vs = [i for i, k in enumerate(e) for _ in range(k)]
        a, b = pos[vs[0]], pos[vs[1]]
        if a == b:
            A[a][a] += c
        else:
            A[a][b] += c / 2
            A[b][a] += c / 2
    sign = 0
    for i in range(n):
        if A[i][i]:
            sign = 1 if A[i][i] > 0 else -1
            break
    if sign == 0:
        return None  # no square terms: indefinite
    if sign < 0:
        A = [[-a for a in row] for row in A]
    forms = []
    for k in range(n):
        piv = A[k][k]
        if piv < 0:
            return None
        if piv == 0:
            if any(A[k][j] for j in range(k, n)):
                return None
            continue
        l = ring.zero
        for j in range(k, n):
            if A[k][j]:
                l = l + ring.gen(idx[j]).scale(A[k][j] / piv)
        forms.append(l)
        for i in range(k + 1, n):
            f = A[i][k] / piv
            if f:
                for j in range(k, n):
                    A[i][j] -= f * A[k][j]
    return forms


def _factors(p):
    """Irreducible factors over Q (multiplicities dropped)."""
    import sympy

    ring = p.ring
    syms = sympy.symbols(list(ring.names))
    expr = sympy.Poly.from_dict(
        {e: sympy.Rational(int(c.numerator), int(c.denominator)) for e, c in p._d.items()},
        *syms,
    )
    _, facs = expr.factor_list()
    out = []
    for f, _mult in facs:
        d = {}
        for e, c in f.as_dict().items():
            d[tuple(e)] = mpq(int(c.p), int(c.q))
        out.append(Polynomial(ring, d))
    return out


def strip_local_units(p):
    """``p`` with factors not vanishing at 0 removed (same germ at 0)."""
    if not p or p.constant_term:
        return p
    keep = [f for f in _factors(p) if not f.constant_term]
    out = p.ring.one
    for f in keep:
        out = out * f
    return out


def _rewrite(gens):
    """Replace generators by ideals with the same real zero germ; returns
    a list of polynomials generating the rewritten ideal."""
    out = []
    changed = False
    for g in gens:
        if not g:
            continue
        h = strip_local_units(g)
        if h.is_constant():
            return [h.ring.one], True
        factors = _factors(h) if len(h.variables()) > 0 else [h]
        pieces = []
        for f in factors:
            lin = psd_linear_factors(f)
            if lin is not None:
                pieces.append(lin)
                changed = True
            else:
                pieces.append([f])
        if len(factors) > 1 or h != g:
            changed = True
        # product of the factor ideals: union of real zero sets
        prod = [h.ring.one]
        for piece in pieces:
            prod = [a * b for a in prod for b in piece]
        out.extend(squarefree_part(q) for q in prod)
    return out, changed


def real_germ_is_origin(ideal, rounds=3):
    """Return a short reason string if the real germ of V(ideal) at 0 is
    certified to lie in {0}; None when no certificate is found."""
    ring = ideal.ring
    cur = ideal
    for _ in range(rounds):
        if local_dimension_at_origin(cur).dimension <= 0:
            return "real zero set: units stripped, semidefinite forms split"
        gens, changed = _rewrite(cur.reduced_generators())
        nxt = Ideal(ring, gens)
        if not changed or nxt.equals(cur):
            break
        cur = nxt
    if local_dimension_at_origin(cur).dimension <= 0:
        return "real zero set: units stripped, semidefinite forms split"
    # tangent cone: initial forms of a local standard basis
    cone = Ideal(ring, [g.initial_form() for g in cur.standard_basis().elements])
    for _ in range(rounds):
        if dimension(cone).dimension <= 0:
            return "real tangent cone is {0}"
        gens, changed = _rewrite(cone.reduced_generators())
        nxt = Ideal(ring, [g.initial_form() for g in gens if g])
        if not changed or nxt.equals(cone):
            break
        cone = nxt
    if dimension(cone).dimension <= 0:
        return "real tangent cone is {0}"
    return None
