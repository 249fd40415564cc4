"""Buchberger's algorithm (global orders), local standard bases by
homogenisation (Lazard) or by Mora's tangent cone algorithm, plus normal
forms.

Both engines work on raw ``{exponent: mpq}`` dicts for speed and wrap the
result in a :class:`Basis`.  Pair handling uses the Gebauer-Moeller
criteria with the sugar selection strategy.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from gmpy2 import mpq

from . import limits
from .poly import MonomialOrder, Polynomial, Ring, mono_div, mono_divides, mono_lcm, mono_mul

__all__ = [
    "Basis",
    "buchberger",
    "mora_standard_basis",
    "lazard_standard_basis",
    "normal_form",
    "s_polynomial",
    "reduce_dict",
    "mora_reduce_dict",
]


@dataclass(frozen=True)
class Basis:
    """A Groebner basis (``kind="reduced-groebner"``) or a local standard
    basis (``kind="standard-local"``) of an ideal."""

    elements: tuple
    ring: object
    kind: str

    @property
    def order(self):
        return self.ring.order

    @property
    def leading_monomials(self):
        return [g.lm for g in self.elements]

    def is_unit(self):
        zero = self.ring.zero_exp()
        return any(g.lm == zero for g in self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __str__(self):
        return "{" + ", ".join(str(g) for g in self.elements) + "}"


# -- shared helpers ----------------------------------------------------------------

class _Elt:
    """Monic basis element: leading monomial, tail terms, sugar, total degree."""

    __slots__ = ("lm", "tail", "sugar", "deg", "ecart", "d")

    def __init__(self, d, key, sugar=None):
        lm = max(d, key=key)
        inv = 1 / d[lm]
        if inv != 1:
            d = {e: c * inv for e, c in d.items()}
        self.d = d
        self.lm = lm
        self.tail = [(e, c) for e, c in d.items() if e != lm]
        self.deg = max(sum(e) for e in d)
        self.sugar = self.deg if sugar is None else max(sugar, self.deg)
        self.ecart = self.deg - sum(lm)


def _find_divisor(m, elts):
    for g in elts:
        if mono_divides(g.lm, m):
            return g
    return None


def reduce_dict(p, elts, neg):
    """Full reduction of ``p`` modulo monic elements (global order)."""
    rem = dict(p)
    out = {}
    heap = [(neg(m), m) for m in rem]
    heapq.heapify(heap)
    steps = 0
    while heap:
        _, m = heapq.heappop(heap)
        c = rem.pop(m, None)
        if c is None:
            continue
        g = _find_divisor(m, elts)
        if g is None:
            out[m] = c
            continue
        steps += 1
        s = mono_div(m, g.lm)
        for e, v in g.tail:
            t = mono_mul(e, s)
            w = rem.get(t)
            if w is None:
                rem[t] = -c * v
                heapq.heappush(heap, (neg(t), t))
            else:
                w = w - c * v
                if w:
                    rem[t] = w
                else:
                    del rem[t]
    limits.current_usage().reductions += steps
    return out


def _spoly_dict(f, g):
    lcm = mono_lcm(f.lm, g.lm)
    sf = mono_div(lcm, f.lm)
    sg = mono_div(lcm, g.lm)
    d = {}
    for e, c in f.tail:
        d[mono_mul(e, sf)] = c
    for e, c in g.tail:
        t = mono_mul(e, sg)
        w = d.get(t, 0) - c
        if w:
            d[t] = w
        else:
            d.pop(t, None)
    sugar = max(f.sugar + sum(sf), g.sugar + sum(sg))
    return d, sugar


def s_polynomial(f, g):
    """S-polynomial of two polynomials under their ring's order."""
    if f.ring != g.ring:
        raise ValueError("S-polynomial of polynomials in different rings")
    key = f.ring.order.key
    d, _ = _spoly_dict(_Elt(dict(f._d), key), _Elt(dict(g._d), key))
    return Polynomial(f.ring, d, _clean=True)


class _PairQueue:
    """Critical pairs with the Gebauer-Moeller update."""

    def __init__(self, key):
        self.key = key
        self.pairs = {}  # (i, j) -> (sugar, key(lcm), lcm)

    def update(self, elts, active, k):
        h = elts[k]
        lmh = h.lm
        cand = {}
        for i in active:
            g = elts[i]
            cand[i] = mono_lcm(g.lm, lmh)
        # new pairs: keep those whose lcm is minimal; coprime pairs are kept
        # here only to knock out their lcm class, then dropped
        kept = []
        order = sorted(cand, key=lambda i: self.key(cand[i]))
        for idx, i in enumerate(order):
            lcm_i = cand[i]
            coprime = lcm_i == mono_mul(elts[i].lm, lmh)
            if coprime:
                kept.append((i, lcm_i, True))
                continue
            dominated = False
            for j, lcm_j, _ in kept:
                if mono_divides(lcm_j, lcm_i):
                    dominated = True
                    break
            if not dominated:
                for j in order[idx + 1 :]:
                    lcm_j = cand[j]
                    if lcm_j != lcm_i and mono_divides(lcm_j, lcm_i):
                        dominated = True
                        break
            if not dominated:
                kept.append((i, lcm_i, False))
        # one representative per lcm; a coprime member kills the class
        by_lcm = {}
        for i, lcm_i, coprime in kept:
            entry = by_lcm.get(lcm_i)
            if entry is None:
                by_lcm[lcm_i] = [i, coprime]
            elif coprime:
                entry[1] = True
        # chain criterion on old pairs
        for (i, j), (_, _, lcm_ij) in list(self.pairs.items()):
            if mono_divides(lmh, lcm_ij):
                if (
                    mono_lcm(elts[i].lm, lmh) != lcm_ij
                    and mono_lcm(elts[j].lm, lmh) != lcm_ij
                ):
                    del self.pairs[(i, j)]
        for lcm_i, (i, coprime) in by_lcm.items():
            if coprime:
                continue
            g = elts[i]
            sugar = max(g.sugar + sum(lcm_i) - sum(g.lm), h.sugar + sum(lcm_i) - sum(lmh))
            self.pairs[(i, k)] = (sugar, self.key(lcm_i), lcm_i)

    def pop(self):
        best = min(self.pairs.items(), key=lambda kv: (kv[1][0], kv[1][1], kv[0]))
        del self.pairs[best[0]]
        return best[0]

    def __bool__(self):
        return bool(self.pairs)


def _check_new(d):
    limits.check_degree(max(sum(e) for e in d))
    limits.check_bits(d.values())


# -- Buchberger ----------------------------------------------------------------

def buchberger(polys, ring):
    """Reduced Groebner basis of the ideal generated by ``polys`` in ``ring``.

    ``ring.order`` must be global.  Raises
    :class:`~germforge.limits.ResourceLimitError` when a cap is hit.
    """
    order = ring.order
    if not order.is_global:
        raise ValueError("buchberger needs a global monomial order; use mora_standard_basis")
    key, neg = order.key, order.neg
    usage = limits.current_usage()
    usage.bases += 1
    gens = [p.with_ring(ring)._d for p in polys if p]
    if not gens:
        return Basis((), ring, "reduced-groebner")
    gens.sort(key=lambda d: key(max(d, key=key)))
    elts = []
    active = []
    queue = _PairQueue(key)

    def add(d, sugar=None):
        e = _Elt(d, key, sugar)
        _check_new(e.d)
        elts.append(e)
        k = len(elts) - 1
        queue.update(elts, active, k)
        active[:] = [i for i in active if not mono_divides(e.lm, elts[i].lm)]
        active.append(k)
        return e

    one = ring.zero_exp()
    for d in gens:
        r = reduce_dict(d, [elts[i] for i in active], neg)
        if r:
            e = add(r)
            if e.lm == one:
                return Basis((ring.one,), ring, "reduced-groebner")
    treated = 0
    while queue:
        i, j = queue.pop()
        treated += 1
        limits.charge_pair(treated)
        d, sugar = _spoly_dict(elts[i], elts[j])
        if not d:
            continue
        r = reduce_dict(d, [elts[a] for a in active], neg)
        if r:
            e = add(r, sugar)
            if e.lm == one:
                return Basis((ring.one,), ring, "reduced-groebner")
    return Basis(_interreduce([elts[i] for i in active], ring), ring, "reduced-groebner")


def _interreduce(elts, ring):
    key, neg = ring.order.key, ring.order.neg
    # minimal basis: drop elements whose leading monomial is divisible by another's
    elts = sorted(elts, key=lambda e: key(e.lm))
    minimal = []
    for e in elts:
        if not any(mono_divides(g.lm, e.lm) for g in minimal):
            minimal.append(e)
    out = []
    for idx, e in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1 :]
        tail = reduce_dict(dict(e.tail), others, neg)
        tail[e.lm] = mpq(1)
        out.append(Polynomial(ring, tail, _clean=True))
    out.sort(key=lambda p: key(p.lm), reverse=True)
    return tuple(out)


# -- Mora ------------------------------------------------------------------------

def mora_reduce_dict(p, elts, key):
    """Mora's weak normal form with ecart-minimal reducer selection.

    Returns ``h`` with ``u*p - h`` in the ideal for some unit ``u``; the
    leading monomial of ``h`` (if nonzero) is divisible by no element.
    """
    h = dict(p)
    T = list(elts)
    steps = 0
    while h:
        lm_h = max(h, key=key)
        best = None
        for g in T:
            if mono_divides(g.lm, lm_h) and (best is None or g.ecart < best.ecart):
                best = g
        if best is None:
            break
        steps += 1
        ecart_h = max(sum(e) for e in h) - sum(lm_h)
        if best.ecart > ecart_h:
            T.append(_Elt(dict(h), key))
        s = mono_div(lm_h, best.lm)
        c = h.pop(lm_h)
        for e, v in best.tail:
            t = mono_mul(e, s)
            w = h.get(t, 0) - c * v
            if w:
                h[t] = w
            else:
                h.pop(t, None)
        if steps % 64 == 0 and h:
            _check_new(h)
    limits.current_usage().reductions += steps
    return h


def _ecart(d, key):
    return max(sum(e) for e in d) - sum(max(d, key=key))


def mora_standard_basis(polys, ring):
    """Standard basis for the local order (``ring.order`` must be local)."""
    order = ring.order
    if order.is_global:
        raise ValueError("mora_standard_basis needs the local order")
    key = order.key
    usage = limits.current_usage()
    usage.bases += 1
    gens = [p.with_ring(ring)._d for p in polys if p]
    if not gens:
        return Basis((), ring, "standard-local")
    # low-ecart, low-degree generators first: reducing by them early keeps
    # the weak normal forms from growing in degree
    gens.sort(key=lambda d: (_ecart(d, key), max(sum(e) for e in d), len(d)))
    one = ring.zero_exp()
    elts = []
    active = []
    queue = _PairQueue(key)

    def add(d, sugar=None):
        e = _Elt(d, key, sugar)
        _check_new(e.d)
        elts.append(e)
        k = len(elts) - 1
        queue.update(elts, active, k)
        active[:] = [i for i in active if not mono_divides(e.lm, elts[i].lm)]
        active.append(k)
        return e

    for d in gens:
        r = mora_reduce_dict(d, [elts[i] for i in active], key)
        if r:
            e = add(r)
            if e.lm == one:
                return Basis((ring.one,), ring, "standard-local")
    treated = 0
    while queue:
        i, j = queue.pop()
        treated += 1
        limits.charge_pair(treated)
        d, sugar = _spoly_dict(elts[i], elts[j])
        if not d:
            continue
        r = mora_reduce_dict(d, [elts[a] for a in active], key)
        if r:
            e = add(r, sugar)
            if e.lm == one:
                return Basis((ring.one,), ring, "standard-local")
    out = []
    seen = []
    for i in sorted(active, key=lambda i: key(elts[i].lm), reverse=True):
        e = elts[i]
        if any(mono_divides(g, e.lm) for g in seen):
            continue
        seen.append(e.lm)
        out.append(Polynomial(ring, dict(e.d), _clean=True))
    return Basis(tuple(out), ring, "standard-local")


def lazard_standard_basis(polys, ring):
    """Standard basis for the local order via a homogeneous Groebner basis.

    The generators are homogenised with a fresh variable ``t``; a Groebner
    basis for the order that ranks equal-degree monomials by their power of
    ``t`` dehomogenises to a standard basis for the local order.  Unlike
    Mora's normal form this never multiplies by units, so degrees stay
    bounded by the homogeneous computation.
    """
    if ring.order.is_global:
        raise ValueError("lazard_standard_basis needs the local order")
    gens = [p.with_ring(ring) for p in polys if p]
    if not gens:
        return Basis((), ring, "standard-local")
    t = "t"
    while t in ring.names:
        t = "_" + t
    big = Ring([t] + list(ring.names), MonomialOrder("homlocal"))
    homog = []
    for g in gens:
        d = g.total_degree()
        homog.append(Polynomial(big, {(d - sum(e),) + e: c for e, c in g._d.items()}))
    G = buchberger(homog, big)
    key = ring.order.key
    out = []
    for h in G.elements:
        d = {}
        for e, c in h._d.items():
            x = e[1:]
            w = d.get(x, 0) + c
            if w:
                d[x] = w
            else:
                d.pop(x, None)
        if d:
            out.append(_Elt(d, key))
    if any(not sum(e.lm) for e in out):
        return Basis((ring.one,), ring, "standard-local")
    out.sort(key=lambda e: key(e.lm), reverse=True)
    kept, seen = [], []
    for e in sorted(out, key=lambda e: (sum(e.lm), len(e.d))):
        if any(mono_divides(m, e.lm) for m in seen):
            continue
        seen.append(e.lm)
        kept.append(e)
    kept.sort(key=lambda e: key(e.lm), reverse=True)
    return Basis(tuple(Polynomial(ring, e.d, _clean=True) for e in kept), ring, "standard-local")


# -- normal forms ------------------------------------------------------------------

def normal_form(p, basis):
    """Remainder of ``p`` modulo ``basis``.

    For Groebner bases this is the fully reduced remainder.  For local
    standard bases it is Mora's weak normal form, which is zero exactly when
    ``p`` lies in the ideal generated in the local ring.
    """
    ring = basis.ring
    p = p.with_ring(ring)
    if not p:
        return p
    key = ring.order.key
    elts = [_Elt(dict(g._d), key) for g in basis.elements]
    if basis.kind == "standard-local":
        d = mora_reduce_dict(p._d, elts, key)
    else:
        d = reduce_dict(p._d, elts, ring.order.neg)
    return Polynomial(ring, d, _clean=True)
