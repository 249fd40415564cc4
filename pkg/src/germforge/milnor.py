"""Stratwise Milnor sets: points of a stratum where the distance function
to the origin is not transverse to the fibres of the restricted map."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .germ import jacobian, minors
from .ideal import Ideal, ideal_intersection, saturate
from .strata import Stratification, refine

__all__ = ["MilnorSetResult", "milnor_set", "stratum_milnor_ideal", "ensure_ranks"]


def stratum_milnor_ideal(F, stratum, rank=None):
    """Ideal of the closure of the Milnor set of ``F`` restricted to one
    stratum.

    On a stratum of codimension ``c`` cut by ``h``, where ``F`` has rank
    ``r``, the distance function fails to be transverse to the fibres
    exactly where the radial row ``(x_1, ..., x_m)`` lies in the span of the
    rows of ``J_h`` and ``J_F``, i.e. where all ``(r+c+1)``-minors of the
    stacked matrix vanish.
    """
    ring = F.source_ring
    closure = stratum.closure_ideal
    r = stratum.rank_of(F.label) if rank is None else rank
    if r >= stratum.dim:
        ideal = closure
    else:
        gens = closure.reduced_generators()
        rows = [list(ring.gens)] + jacobian(F) + jacobian(gens)
        c = stratum.codim
        extra = minors(rows, r + c + 1)
        ideal = closure + Ideal(ring, extra)
    for fr in stratum.frontier_ideals:
        if ideal.is_unit():
            break
        ideal = saturate(ideal, fr)
    return ideal


@dataclass
class MilnorSetResult:
    per_stratum: list
    ring: object
    map_label: str
    stratification: Stratification = None
    notes: list = field(default_factory=list)

    @cached_property
    def union_ideal(self):
        """Intersection of the per-stratum ideals (union of their varieties)."""
        parts = [I for _, I in self.per_stratum if not I.is_unit()]
        if not parts:
            return Ideal.unit(self.ring)
        out = parts[0]
        for I in parts[1:]:
            out = ideal_intersection(out, I)
        return out

    def ideals(self):
        return [I for _, I in self.per_stratum]


def ensure_ranks(F, S, rng=None, samples=8):
    """Return ``S`` if it records the rank of ``F`` on every stratum, else a
    refinement of it that does."""
    if all(F.label in s.ranks for s in S):
        return S
    seeds = [(s.closure_ideal, list(s.frontier_ideals)) for s in S]
    maps = [F]
    return refine(seeds, maps, rng=rng, samples=samples, prefix="W", primary=F.label)


def milnor_set(F, S, rng=None):
    """Stratwise Milnor set of ``F`` with respect to ``S``."""
    S = ensure_ranks(F, S, rng=rng)
    per = []
    for s in S:
        per.append((s, stratum_milnor_ideal(F, s)))
    return MilnorSetResult(per, F.source_ring, F.label, S)
