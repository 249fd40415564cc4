"""Ideals of Q[x] and the geometric operations built on Groebner bases.

Sums, intersections, quotients, saturation and elimination act on the affine
varieties over the complex numbers; the local routines (standard bases for
the local order) describe germs at the origin.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .groebner import Basis, buchberger, lazard_standard_basis, normal_form
from .poly import GREVLEX, LOCAL, MonomialOrder, Polynomial, Ring, RingMismatchError

__all__ = [
    "Ideal",
    "DimensionResult",
    "INFINITE",
    "ideal_sum",
    "ideal_product",
    "ideal_intersection",
    "ideal_quotient",
    "saturate",
    "eliminate",
    "radical_membership",
    "dimension",
    "local_dimension_at_origin",
    "colength",
    "monomial_dimension",
    "squarefree_part",
    "polynomial_gcd",
]


class _Infinite:
    """Marker for an infinite colength."""

    def __repr__(self):
        return "INFINITE"

    def __str__(self):
        return "infinite"

    def __eq__(self, other):
        return isinstance(other, _Infinite)

    def __hash__(self):
        return hash("INFINITE")


INFINITE = _Infinite()


@dataclass(frozen=True)
class DimensionResult:
    dimension: int
    witness_independent_set: tuple = ()

    def __int__(self):
        return self.dimension


class Ideal:
    """Ideal of a polynomial ring given by generators, with cached bases.

    Cached bases are keyed by monomial order; the ideal itself does not
    depend on the ring's order.
    """

    __slots__ = ("ring", "generators", "_bases")

    def __init__(self, ring, generators=()):
        gens = []
        for g in generators:
            if not isinstance(g, Polynomial):
                g = ring.const(g)
            if g.ring.names != ring.names:
                raise RingMismatchError(f"generator {g} is not in {ring}")
            g = g.with_ring(ring)
            if g:
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self._bases = {}

    @classmethod
    def unit(cls, ring):
        return cls(ring, [ring.one])

    @classmethod
    def zero(cls, ring):
        return cls(ring, [])

    # bases -------------------------------------------------------------------

    def groebner(self, order=None):
        """Reduced Groebner basis for a global order (default grevlex)."""
        order = order or (self.ring.order if self.ring.order.is_global else GREVLEX)
        basis = self._bases.get(order)
        if basis is None:
            basis = buchberger(self.generators, self.ring.with_order(order))
            self._bases[order] = basis
        return basis

    def standard_basis(self):
        """Standard basis for the local order (germ at the origin)."""
        basis = self._bases.get(LOCAL)
        if basis is None:
            basis = lazard_standard_basis(self.generators, self.ring.with_order(LOCAL))
            self._bases[LOCAL] = basis
        return basis

    def reduced_generators(self):
        """Reduced grevlex basis, as a canonical generating set."""
        return self.groebner(GREVLEX).elements

    # predicates ----------------------------------------------------------------

    def is_unit(self):
        return self.groebner().is_unit()

    def is_zero(self):
        return not self.generators

    def contains(self, p):
        if isinstance(p, Ideal):
            return all(self.contains(g) for g in p.generators)
        if not p:
            return True
        return not normal_form(p.with_ring(self.ring), self.groebner())

    __contains__ = contains

    def local_contains(self, p):
        """Membership in the ideal generated in the local ring at 0."""
        if not p:
            return True
        return not normal_form(p.with_ring(self.ring), self.standard_basis())

    def equals(self, other):
        """Equality of ideals (same reduced grevlex basis)."""
        _same_ring(self, other)
        return self.groebner(GREVLEX).elements == other.groebner(GREVLEX).elements

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring.names == other.ring.names and self.equals(other)

    def __hash__(self):
        return hash(self.ring.names)

    def __add__(self, other):
        return ideal_sum(self, other)

    def __mul__(self, other):
        return ideal_product(self, other)

    def __and__(self, other):
        return ideal_intersection(self, other)

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.generators) or '0'})"

    __str__ = __repr__


def _same_ring(a, b):
    if a.ring.names != b.ring.names:
        raise RingMismatchError(f"{a.ring.names} vs {b.ring.names}")


def _as_ideal(ring, x):
    if isinstance(x, Ideal):
        return x
    if isinstance(x, Polynomial):
        return Ideal(ring, [x])
    return Ideal(ring, list(x))


# -- ideal arithmetic --------------------------------------------------------------

def ideal_sum(a, b):
    _same_ring(a, b)
    return Ideal(a.ring, a.generators + tuple(g.with_ring(a.ring) for g in b.generators))


def ideal_product(a, b):
    _same_ring(a, b)
    gens = [f * g.with_ring(a.ring) for f in a.generators for g in b.generators]
    return Ideal(a.ring, gens)


def _extended_ring(ring, extra, first=True):
    """Ring with ``extra`` fresh variables, eliminated by a block order."""
    fresh = []
    k = 0
    while len(fresh) < extra:
        name = f"_t{k}"
        if name not in ring.names:
            fresh.append(name)
        k += 1
    if first:
        names = tuple(fresh) + ring.names
        order = MonomialOrder("block", [extra, ring.nvars])
        positions = [extra + i for i in range(ring.nvars)]
    else:
        names = ring.names + tuple(fresh)
        order = MonomialOrder("block", [ring.nvars, extra])
        positions = list(range(ring.nvars))
    big = Ring(names, order)
    return big, positions


def _drop_first(p, ring, extra):
    """Project a polynomial free of the first ``extra`` variables to ``ring``."""
    d = {e[extra:]: c for e, c in p._d.items()}
    return Polynomial(ring, d, _clean=True)


def ideal_intersection(a, b):
    """Intersection via ``t*A + (1-t)*B`` and elimination of ``t``."""
    _same_ring(a, b)
    ring = a.ring
    if a.is_zero() or b.is_zero():
        return Ideal.zero(ring)
    big, pos = _extended_ring(ring, 1)
    t = big.gen(0)
    gens = [t * g.embed(big, pos) for g in a.generators]
    gens += [(1 - t) * g.embed(big, pos) for g in b.generators]
    basis = buchberger(gens, big)
    keep = [g for g in basis.elements if g.lm[0] == 0]
    return Ideal(ring, [_drop_first(g, ring, 1) for g in keep])


def ideal_quotient(a, f):
    """The quotient ``A : f = {g : g*f in A}``."""
    ring = a.ring
    if isinstance(f, Ideal):
        _same_ring(a, f)
        if f.is_zero():
            return Ideal.unit(ring)
        parts = [ideal_quotient(a, g) for g in f.generators]
        out = parts[0]
        for q in parts[1:]:
            out = ideal_intersection(out, q)
        return out
    f = f.with_ring(ring)
    if not f:
        raise ValueError("quotient by the zero polynomial")
    if f.is_constant():
        return a
    if a.is_zero():
        return a
    inter = ideal_intersection(a, Ideal(ring, [f]))
    return Ideal(ring, [g / f for g in inter.reduced_generators()])


def _saturate_poly(a, f):
    current = a
    while True:
        nxt = ideal_quotient(current, f)
        if nxt.equals(current):
            return current
        current = nxt


def saturate(a, b, method="quotient"):
    """Saturation ``A : B^infinity``; its variety is the Zariski closure of
    ``V(A) \\ V(B)``.

    ``method="quotient"`` iterates ideal quotients by each generator of
    ``B`` until the reduced basis stabilises; ``method="rabinowitsch"`` uses
    one auxiliary variable per generator instead.
    """
    ring = a.ring
    b = _as_ideal(ring, b)
    _same_ring(a, b)
    if b.is_zero():
        return Ideal.unit(ring)
    gens = [g for g in b.reduced_generators()]
    if any(g.is_constant() for g in gens):
        return a
    if a.is_unit():
        return Ideal.unit(ring)
    parts = []
    for g in gens:
        if method == "quotient":
            parts.append(_saturate_poly(a, g))
        elif method == "rabinowitsch":
            big, pos = _extended_ring(ring, 1)
            t = big.gen(0)
            extra = [h.embed(big, pos) for h in a.generators] + [1 - t * g.embed(big, pos)]
            basis = buchberger(extra, big)
            parts.append(
                Ideal(ring, [_drop_first(h, ring, 1) for h in basis.elements if h.lm[0] == 0])
            )
        else:
            raise ValueError(f"unknown saturation method {method!r}")
    out = parts[0]
    for q in parts[1:]:
        out = ideal_intersection(out, q)
    return out


def eliminate(a, keep):
    """Elimination ideal ``A`` intersected with ``Q[keep]``.

    ``keep`` lists variable names or indices; the result lives in the ring of
    the kept variables (in their original relative order).
    """
    ring = a.ring
    keep_idx = sorted({ring.index(k) if isinstance(k, str) else int(k) for k in keep})
    drop_idx = [i for i in range(ring.nvars) if i not in keep_idx]
    sub = Ring([ring.names[i] for i in keep_idx], GREVLEX)
    if not drop_idx:
        return Ideal(sub, [g for g in a.generators])
    perm = drop_idx + keep_idx
    big = Ring([ring.names[i] for i in perm], MonomialOrder("block", [len(drop_idx), len(keep_idx)]))
    gens = [Polynomial(big, {tuple(e[i] for i in perm): c for e, c in g._d.items()}, _clean=True)
            for g in a.generators]
    basis = buchberger(gens, big)
    k = len(drop_idx)
    return Ideal(sub, [_drop_first(g, sub, k) for g in basis.elements if not any(g.lm[:k])])


def radical_membership(f, a):
    """True iff ``f`` lies in the radical of ``A`` (Rabinowitsch trick)."""
    ring = a.ring
    f = f.with_ring(ring) if isinstance(f, Polynomial) else ring.const(f)
    if not f:
        return True
    big, pos = _extended_ring(ring, 1)
    t = big.gen(0)
    gens = [g.embed(big, pos) for g in a.generators] + [1 - t * f.embed(big, pos)]
    return buchberger(gens, big.with_order(GREVLEX)).is_unit()


# -- dimension and colength ------------------------------------------------------------

def monomial_dimension(monomials, nvars):
    """Krull dimension of a monomial ideal via maximal independent sets.

    Returns ``DimensionResult(-1)`` for the unit ideal.
    """
    monomials = [tuple(m) for m in monomials]
    if any(not any(m) for m in monomials):
        return DimensionResult(-1, ())
    supports = [frozenset(i for i, x in enumerate(m) if x) for m in monomials]
    for size in range(nvars, -1, -1):
        for subset in itertools.combinations(range(nvars), size):
            s = frozenset(subset)
            if not any(sup <= s for sup in supports):
                return DimensionResult(size, tuple(subset))
    return DimensionResult(0, ())


def dimension(a):
    """Krull dimension of ``V(A)``; -1 for the empty variety."""
    basis = a.groebner(GREVLEX)
    return monomial_dimension(basis.leading_monomials, a.ring.nvars)


def _origin_on(basis):
    return all(not g.constant_term for g in basis.elements)


def local_dimension_at_origin(a):
    """Dimension of the germ of ``V(A)`` at 0; -1 if 0 is not on ``V(A)``.

    A finite variety is settled from the global basis; a local standard
    basis is only computed when ``V(A)`` is positive dimensional (it can be
    far slower on ideals with many components away from 0).
    """
    glob = dimension(a)
    if glob.dimension <= 0:
        if glob.dimension < 0 or not _origin_on(a.groebner(GREVLEX)):
            return DimensionResult(-1, ())
        return DimensionResult(0, ())
    basis = a.standard_basis()
    return monomial_dimension(basis.leading_monomials, a.ring.nvars)


def standard_monomials(monomials, nvars, cap=None):
    """Monomials outside a zero-dimensional monomial ideal (None if infinite)."""
    monomials = [tuple(m) for m in monomials]
    if any(not any(m) for m in monomials):
        return []
    for i in range(nvars):
        if not any(m[i] and not any(m[:i] + m[i + 1 :]) for m in monomials):
            return None
    zero = (0,) * nvars
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for m in frontier:
            for i in range(nvars):
                e = list(m)
                e[i] += 1
                e = tuple(e)
                if e in seen:
                    continue
                if any(all(x <= y for x, y in zip(g, e)) for g in monomials):
                    continue
                seen.add(e)
                nxt.append(e)
        frontier = nxt
        if cap is not None and len(seen) > cap:
            raise ValueError("standard monomial enumeration exceeded cap")
    return sorted(seen, key=lambda e: (sum(e), e))


def colength(a, local=True):
    """Vector-space dimension of the (local) quotient ring; ``INFINITE``
    when the germ (or the variety, if ``local=False``) is positive
    dimensional.

    For a finite variety the local colength at 0 is the global colength
    minus that of the components away from 0 (``sat(A, m)``).
    """
    if local and dimension(a).dimension <= 0:
        total = colength(a, local=False)
        if total == 0 or not _origin_on(a.groebner(GREVLEX)):
            return 0
        far = saturate(a, Ideal(a.ring, list(a.ring.gens)))
        return total - colength(far, local=False)
    basis = a.standard_basis() if local else a.groebner(GREVLEX)
    mons = standard_monomials(basis.leading_monomials, a.ring.nvars)
    if mons is None:
        return INFINITE
    return len(mons)


# -- gcd and squarefree parts -----------------------------------------------------------

def polynomial_gcd(f, g):
    """Monic-normalised gcd of two polynomials, via (f) cap (g) = (lcm)."""
    ring = f.ring
    if not f:
        return g.primitive()
    if not g:
        return f.primitive()
    if f.is_constant() or g.is_constant():
        return ring.one
    inter = ideal_intersection(Ideal(ring, [f]), Ideal(ring, [g]))
    gens = inter.reduced_generators()
    if len(gens) != 1:
        raise ArithmeticError("intersection of principal ideals is not principal")
    return ((f * g) / gens[0]).primitive()


def squarefree_part(f):
    """``f`` divided by gcd(f, all partials): same zero set, no repeated factors."""
    if f.is_constant() or not f:
        return f
    g = f
    for d in f.gradient():
        if d:
            g = polynomial_gcd(g, d)
            if g.is_constant():
                return f.primitive()
    return (f / g).primitive()
