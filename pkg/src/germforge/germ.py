"""Polynomial map germs: Jacobians, minors, singular loci, discriminants,
images and composition."""

from __future__ import annotations

import itertools

from .ideal import Ideal, eliminate
from .poly import MonomialOrder, Polynomial, Ring, RingMismatchError

__all__ = [
    "MapGerm",
    "jacobian",
    "minors",
    "singular_locus_ideal",
    "discriminant_ideal",
    "image_ideal",
    "compose",
    "identity",
    "matrix_product",
]


def _fresh_names(prefix, count, avoid):
    names = []
    k = 1
    while len(names) < count:
        name = f"{prefix}{k}"
        if name not in avoid:
            names.append(name)
        k += 1
    return names


class MapGerm:
    """A polynomial map germ (K^m, 0) -> (K^p, 0).

    ``components`` are polynomials of one ring (the source); each must vanish
    at the origin.  ``target_ring`` names the target coordinates; by default
    fresh names ``y1..yp`` are made up.
    """

    def __init__(self, components, label="F", target_ring=None):
        components = list(components)
        if not components:
            raise ValueError("a map germ needs at least one component")
        ring = components[0].ring
        for c in components:
            if c.ring.names != ring.names:
                raise RingMismatchError("map components live in different rings")
        comps = [c.with_ring(ring) for c in components]
        for i, c in enumerate(comps):
            if c.constant_term:
                raise ValueError(f"component {i + 1} of {label} does not vanish at 0")
        self.components = tuple(comps)
        self.source_ring = ring
        self.label = label
        if target_ring is None:
            target_ring = Ring(_fresh_names("y", len(comps), set(ring.names)))
        if target_ring.nvars != len(comps):
            raise ValueError("target ring size differs from the number of components")
        self.target_ring = target_ring

    @property
    def source_dim(self):
        return self.source_ring.nvars

    @property
    def target_dim(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def zero_fiber_ideal(self):
        """Ideal of F^-1(0)."""
        return Ideal(self.source_ring, self.components)

    def evaluate(self, point):
        return [c.evaluate(point) for c in self.components]

    def pullback(self, p):
        """``p`` composed with the map (``p`` lives in the target ring)."""
        return p.with_ring(self.target_ring).substitute(self.components)

    def with_target(self, target_ring):
        return MapGerm(self.components, self.label, target_ring)

    def relabel(self, label):
        return MapGerm(self.components, label, self.target_ring)

    def __eq__(self, other):
        return (
            isinstance(other, MapGerm)
            and self.source_ring.names == other.source_ring.names
            and self.components == other.components
        )

    def __hash__(self):
        return hash((self.source_ring.names, self.components))

    def __repr__(self):
        comps = ", ".join(str(c) for c in self.components)
        return f"MapGerm({self.label}: {self.source_dim} -> {self.target_dim}, [{comps}])"


def identity(ring, label="id"):
    return MapGerm(ring.gens, label=label, target_ring=ring)


def jacobian(F):
    """``p x m`` matrix of partial derivatives (list of rows)."""
    comps = F.components if isinstance(F, MapGerm) else list(F)
    return [c.gradient() for c in comps]


def minors(matrix, k):
    """All nonzero ``k x k`` minors of a matrix of polynomials.

    Duplicates (up to a constant factor) are removed; the result is sorted
    deterministically.
    """
    rows = len(matrix)
    if not rows:
        return []
    cols = len(matrix[0])
    if k <= 0:
        return [matrix[0][0].ring.one]
    if k > rows or k > cols:
        return []
    memo = {}

    def det(r, c):
        if len(r) == 1:
            return matrix[r[0]][c[0]]
        hit = memo.get((r, c))
        if hit is not None:
            return hit
        first, rest = r[0], r[1:]
        total = None
        for j, col in enumerate(c):
            a = matrix[first][col]
            if not a:
                continue
            sub = det(rest, c[:j] + c[j + 1 :])
            if not sub:
                continue
            term = a * sub
            if j % 2:
                term = -term
            total = term if total is None else total + term
        if total is None:
            total = matrix[first][c[0]].ring.zero
        memo[(r, c)] = total
        return total

    seen = {}
    for r in itertools.combinations(range(rows), k):
        for c in itertools.combinations(range(cols), k):
            m = det(r, c)
            if m:
                p = m.primitive()
                seen.setdefault(p, p)
    key = lambda p: (p.total_degree(), str(p))
    return sorted(seen, key=key)


def singular_locus_ideal(F):
    """Ideal of maximal minors of the Jacobian: V is where rank < p."""
    J = jacobian(F)
    p, m = F.target_dim, F.source_dim
    if m < p:
        return Ideal(F.source_ring, [])
    return Ideal(F.source_ring, minors(J, p))


def _graph_ring(F):
    src, tgt = F.source_ring, F.target_ring
    clash = set(src.names) & set(tgt.names)
    if clash:
        tgt_names = _fresh_names("_w", F.target_dim, set(src.names))
    else:
        tgt_names = list(tgt.names)
    names = list(src.names) + list(tgt_names)
    big = Ring(names, MonomialOrder("block", [src.nvars, len(tgt_names)]))
    return big, tgt_names


def image_ideal(F, source_ideal=None):
    """Ideal of the Zariski closure of ``F(V(source_ideal))`` in the target."""
    big, tgt_names = _graph_ring(F)
    m = F.source_dim
    lift = list(range(m))
    gens = []
    for i, c in enumerate(F.components):
        gens.append(big.gen(m + i) - c.embed(big, lift))
    if source_ideal is not None:
        gens += [g.embed(big, lift) for g in source_ideal.generators]
    elim = eliminate(Ideal(big, gens), tgt_names)
    tgt = F.target_ring
    return Ideal(tgt, [Polynomial(tgt, g._d, _clean=True) for g in elim.generators])


def discriminant_ideal(F):
    """Ideal of the discriminant F(Sing F) (Zariski closure) in the target."""
    return image_ideal(F, singular_locus_ideal(F))


def matrix_product(A, B):
    rows, inner, cols = len(A), len(B), len(B[0])
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = None
            for k in range(inner):
                if A[i][k] and B[k][j]:
                    t = A[i][k] * B[k][j]
                    acc = t if acc is None else acc + t
            row.append(acc if acc is not None else B[0][0].ring.zero)
        out.append(row)
    return out


def compose(G, F, label=None):
    """The composition ``H = G o F`` (componentwise substitution)."""
    if F.target_dim != G.source_dim:
        raise ValueError(
            f"cannot compose: {F.label} has {F.target_dim} components, "
            f"{G.label} has {G.source_dim} variables"
        )
    comps = [g.substitute(F.components) for g in G.components]
    label = label or f"{G.label}o{F.label}"
    return MapGerm(comps, label=label, target_ring=G.target_ring)
