"""Random rational points on affine varieties.

Points are produced by fixing a maximal independent set of variables at
random small rationals and solving the remaining zero-dimensional system
over Q when its lexicographic basis is triangular with rational roots.
Draws that lead to irrational solutions are rejected.
"""

from __future__ import annotations

from math import gcd, isqrt

from gmpy2 import mpq

from .ideal import Ideal, dimension
from .poly import LEX, Ring

__all__ = ["random_rational", "rational_roots", "sample_points", "solve_rational"]


def random_rational(rng, height=97):
    num = rng.randint(-height, height)
    den = rng.randint(1, height)
    return mpq(num, den)


def _divisors(n, cap=20000):
    n = abs(int(n))
    if n == 0:
        return [0]
    if n > 10**12:
        return None
    out = set()
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            out.add(d)
            out.add(n // d)
            if len(out) > cap:
                return None
    return sorted(out)


def rational_roots(p):
    """Rational roots of a univariate polynomial (given as a Polynomial in a
    one-variable-effective ring, variable index found automatically)."""
    if not p or p.is_constant():
        return []
    idx = p.variables()
    if len(idx) != 1:
        raise ValueError("rational_roots needs a univariate polynomial")
    i = idx[0]
    coeffs = {}
    for e, c in p._d.items():
        coeffs[e[i]] = c
    # strip the root 0
    low = min(coeffs)
    roots = [mpq(0)] if low > 0 else []
    coeffs = {k - low: c for k, c in coeffs.items()}
    deg = max(coeffs)
    if deg == 0:
        return roots
    den = 1
    for c in coeffs.values():
        den = den * int(c.denominator) // gcd(den, int(c.denominator))
    ints = {k: int(c * den) for k, c in coeffs.items()}
    a0, an = ints.get(0, 0), ints[deg]
    ps, qs = _divisors(a0), _divisors(an)
    if ps is None or qs is None:
        return roots

    def value(x):
        acc = mpq(0)
        for k in range(deg, -1, -1):
            acc = acc * x + ints.get(k, 0)
        return acc

    found = set()
    for a in ps:
        for b in qs:
            for s in (1, -1):
                x = mpq(s * a, b)
                if x not in found and value(x) == 0:
                    found.add(x)
    return sorted(roots + list(found))


def solve_rational(ideal, limit=64):
    """All rational points of a zero-dimensional ideal, when the lex basis
    lets them be found by back substitution; None if some coordinate would
    need an irrational number."""
    ring = ideal.ring
    n = ring.nvars
    if ideal.is_unit():
        return []
    basis = ideal.groebner(LEX)
    points = [dict()]
    for i in range(n - 1, -1, -1):
        nxt = []
        for partial in points:
            vals = []
            for g in basis.elements:
                used = g.variables()
                if not used or min(used) != i:
                    continue
                # substitute known coordinates
                img = []
                for j in range(n):
                    if j in partial:
                        img.append(ring.const(partial[j]))
                    else:
                        img.append(ring.gen(j))
                vals.append(g.substitute(img))
            vals = [v for v in vals if v]
            if any(v.is_constant() for v in vals):
                continue
            if not vals:
                return None  # free coordinate: not zero-dimensional
            roots = None
            for v in sorted(vals, key=lambda v: v.total_degree()):
                r = set(rational_roots(v))
                roots = r if roots is None else roots & r
            for r in sorted(roots):
                ok = all(v.evaluate([r if j == i else (partial.get(j, 0)) for j in range(n)]) == 0
                         for v in vals)
                if ok:
                    q = dict(partial)
                    q[i] = r
                    nxt.append(q)
            if len(nxt) > limit:
                break
        points = nxt
        if not points:
            return []
    return [tuple(p[j] for j in range(n)) for p in points]


def sample_points(closure, frontiers=(), count=10, rng=None, attempts=None, height=97):
    """Up to ``count`` random rational points of V(closure) minus the
    frontier varieties.  May return fewer (possibly none) when the variety
    has few rational points reachable by this method."""
    import random

    rng = rng or random.Random(0)
    ring = closure.ring
    n = ring.nvars
    dim = dimension(closure)
    if dim.dimension < 0:
        return []
    free = list(dim.witness_independent_set)
    attempts = attempts or 4 * count + 8
    points = []
    seen = set()
    for _ in range(attempts):
        if len(points) >= count:
            break
        values = {i: random_rational(rng, height) for i in free}
        if len(free) == n:
            candidates = [tuple(values[i] for i in range(n))]
        else:
            rest = [i for i in range(n) if i not in values]
            sub = Ring([ring.names[i] for i in rest])
            img = []
            for j in range(n):
                if j in values:
                    img.append(sub.const(values[j]))
                else:
                    img.append(sub.gen(rest.index(j)))
            gens = [g.substitute(img) for g in closure.generators]
            sols = solve_rational(Ideal(sub, gens))
            if not sols:
                continue
            candidates = []
            for s in sols:
                full = [None] * n
                for i, v in values.items():
                    full[i] = v
                for k, j in enumerate(rest):
                    full[j] = s[k]
                candidates.append(tuple(full))
        for pt in candidates:
            if pt in seen:
                continue
            if any(g.evaluate(pt) for g in closure.generators):
                continue
            if any(all(not f.evaluate(pt) for f in fr.generators) for fr in frontiers):
                continue
            seen.add(pt)
            points.append(pt)
            if len(points) >= count:
                break
    return points


def rank_at(matrix, point):
    """Exact rank of a polynomial matrix evaluated at a rational point."""
    rows = [[entry.evaluate(point) for entry in row] for row in matrix]
    return _rank(rows)


def _rank(rows):
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = None
        for i in range(rank, len(rows)):
            if rows[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col] / pv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank
