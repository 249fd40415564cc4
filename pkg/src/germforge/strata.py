"""Stratifications by smooth locally closed sets of constant rank.

A stratum is ``V(closure) minus the union of V(frontier_i)``.  Strata are
produced by a worklist.  Each popped piece is normalised (saturated by its
frontiers, generators made squarefree) and then split until it is smooth of
pure dimension and every analysed map has constant rank on it:

* points where the Jacobian of the closure ideal has rank above the
  codimension belong to lower-dimensional components and are split off;
* points where that rank drops below the codimension are singular and are
  split off;
* for each map, the locus where the restricted rank drops below its generic
  value is split off.

Every split replaces a set by two disjoint locally closed pieces, so the
final strata partition the starting sets.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .germ import MapGerm, image_ideal, jacobian, minors
from .ideal import (
    Ideal,
    dimension,
    local_dimension_at_origin,
    radical_membership,
    saturate,
    squarefree_part,
)
from .sampling import rank_at, sample_points

__all__ = [
    "Stratum",
    "Stratification",
    "StratumTooCoarse",
    "refine",
    "rank_stratification",
    "pullback_refine",
    "split_by_closed_sets",
    "adapted_stratifications",
    "AdaptedStratifications",
    "stratification_from_specs",
]

WHITNEY_CAVEAT = (
    "Whitney (a)/(b) regularity of the constructed strata is assumed, not certified"
)


class StratumTooCoarse(RuntimeError):
    """A stratum description cannot be split into smooth constant-rank pieces."""


@dataclass
class Stratum:
    closure_ideal: Ideal
    frontier_ideals: tuple
    dim: int
    ranks: dict = field(default_factory=dict)
    label: str = ""
    primary: str | None = None
    verification: str = "unverified"
    samples: tuple = ()

    @property
    def codim(self):
        return self.closure_ideal.ring.nvars - self.dim

    @property
    def expected_rank(self):
        if self.primary is None:
            return None
        return self.ranks.get(self.primary)

    def rank_of(self, label):
        return self.ranks[label]

    def contains_point(self, point):
        if any(g.evaluate(point) for g in self.closure_ideal.generators):
            return False
        for fr in self.frontier_ideals:
            if all(not g.evaluate(point) for g in fr.generators):
                return False
        return True

    def describe(self):
        out = {
            "label": self.label,
            "dim": self.dim,
            "closure": [str(g) for g in self.closure_ideal.generators],
            "frontiers": [[str(g) for g in fr.generators] for fr in self.frontier_ideals],
            "ranks": dict(sorted(self.ranks.items())),
            "verification": self.verification,
        }
        return out

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.closure_ideal.generators) or "0"
        return f"Stratum({self.label}: dim {self.dim}, closure ({gens}), ranks {self.ranks})"


@dataclass
class Stratification:
    strata: list
    ring: object
    maps: tuple = ()
    caveats: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.strata)

    def __len__(self):
        return len(self.strata)

    def __getitem__(self, i):
        return self.strata[i]

    def stratum(self, label):
        for s in self.strata:
            if s.label == label:
                return s
        raise KeyError(label)

    def locate(self, point):
        """Labels of all strata containing ``point`` (one for a partition)."""
        return [s.label for s in self.strata if s.contains_point(point)]

    def summary(self):
        return [s.describe() for s in self.strata]


# -- small helpers -------------------------------------------------------------

def _nonempty_at_origin(ideal):
    return local_dimension_at_origin(ideal).dimension >= 0


def _closure(h, frontiers):
    for fr in frontiers:
        if h.is_unit():
            break
        h = saturate(h, fr)
    return h


def _squarefree(ideal):
    gens = [squarefree_part(g) for g in ideal.reduced_generators()]
    return Ideal(ideal.ring, Ideal(ideal.ring, gens).reduced_generators())


def _vanishes_on(p, closure):
    if closure.contains(p):
        return True
    return radical_membership(p, closure)


def _nonvanishing_minor(cands, closure, points):
    """True if some polynomial in ``cands`` does not vanish on V(closure)."""
    if not cands:
        return False
    for pt in points:
        if any(c.evaluate(pt) for c in cands):
            return True
    reduced = [c for c in cands if not closure.contains(c)]
    if not reduced:
        return False
    # cheapest candidates first
    reduced.sort(key=lambda c: (c.total_degree(), len(c)))
    return any(not radical_membership(c, closure) for c in reduced)


def _ideal_from(ring, polys):
    return Ideal(ring, [p for p in polys if p])


# -- the worklist ---------------------------------------------------------------

@dataclass
class _Piece:
    closure: Ideal
    frontiers: list


def refine(seeds, maps=(), rng=None, samples=8, prefix="W", primary=None, keep_far=False):
    """Split the locally closed ``seeds`` into smooth strata on which each of
    ``maps`` has constant rank.

    ``seeds`` is a list of ``(closure_ideal, [frontier_ideal, ...])``.  Strata
    whose closure misses the origin are dropped unless ``keep_far``.
    """
    rng = rng or random.Random(0)
    maps = list(maps)
    out = []
    work = [_Piece(c, list(f)) for c, f in seeds]
    guard = 0
    while work:
        guard += 1
        if guard > 10_000:
            raise StratumTooCoarse("stratification worklist does not terminate")
        piece = work.pop()
        res = _process(piece, maps, rng, samples, keep_far)
        if res is None:
            continue
        done, pushed = res
        work.extend(pushed)
        if done is not None:
            out.append(done)
    ring = seeds[0][0].ring if seeds else None
    out.sort(key=_stratum_key)
    for i, s in enumerate(out):
        s.label = f"{prefix}{i}"
        s.primary = primary if primary is not None else (maps[0].label if maps else None)
    return Stratification(out, ring, tuple(m.label for m in maps), [WHITNEY_CAVEAT])


def _stratum_key(s):
    gens = tuple(str(g) for g in s.closure_ideal.reduced_generators())
    frs = tuple(tuple(str(g) for g in f.generators) for f in s.frontier_ideals)
    return (-s.dim, len(gens), gens, frs)


def _process(piece, maps, rng, samples, keep_far):
    ring = piece.closure.ring
    m = ring.nvars
    frontiers = [f for f in piece.frontiers if not f.is_zero()]
    closure = _closure(piece.closure, frontiers)
    if closure.is_unit():
        return None
    closure = _squarefree(closure)
    if not keep_far and not _nonempty_at_origin(closure):
        return None
    d = dimension(closure).dimension
    c = m - d
    gens = closure.reduced_generators()
    Jh = jacobian(gens) if gens else []
    pushed = []

    if c > 0:
        # components of lower dimension where the closure equations have
        # more independent gradients than the codimension
        K = minors(Jh, c + 1) if c + 1 <= min(len(gens), m) else []
        if K and any(not closure.contains(k) for k in K):
            if _nonvanishing_minor(K, closure, []):
                pushed.append(_Piece(closure, frontiers + [_ideal_from(ring, K)]))
                pushed.append(_Piece(closure + _ideal_from(ring, K), frontiers))
                return None, pushed
        # singular points of the top-dimensional part
        sigma = minors(Jh, c)
        sing = closure + _ideal_from(ring, sigma)
        if not sigma or (dimension(sing).dimension >= d
                         and dimension(_closure(sing, frontiers)).dimension >= d):
            raise StratumTooCoarse(
                f"closure ideal {closure} is singular along a {d}-dimensional part"
            )
        if not sing.is_unit():
            pushed.append(_Piece(sing, list(frontiers)))
            frontiers = frontiers + [_ideal_from(ring, sigma)]

    points = sample_points(closure, frontiers, count=samples, rng=rng) if samples else []
    ranks = {}
    for F in maps:
        A = Jh + jacobian(F)
        top = min(F.target_dim, d)
        r_star = 0
        for r in range(top, 0, -1):
            cands = minors(A, c + r)
            if _nonvanishing_minor(cands, closure, points):
                r_star = r
                break
        ranks[F.label] = r_star
        if r_star > 0:
            low = minors(A, c + r_star)
            lower = closure + _ideal_from(ring, low)
            if not lower.is_unit():
                pushed.append(_Piece(lower, list(frontiers)))
                frontiers = frontiers + [_ideal_from(ring, low)]
                points = [pt for pt in points if any(g.evaluate(pt) for g in low)]

    verification = "unverified"
    if points:
        for pt in points:
            if Jh and rank_at(Jh, pt) != c:
                raise StratumTooCoarse(f"closure equations of rank != {c} at {pt}")
            for F in maps:
                A = Jh + jacobian(F)
                if rank_at(A, pt) != c + ranks[F.label]:
                    raise StratumTooCoarse(f"rank of {F.label} not constant at {pt}")
        verification = f"sampled-verified ({len(points)} points)"
    stratum = Stratum(
        closure_ideal=closure,
        frontier_ideals=tuple(_simplify_frontiers(frontiers, closure)),
        dim=d,
        ranks=ranks,
        verification=verification,
        samples=tuple(points),
    )
    return stratum, pushed


def _simplify_frontiers(frontiers, closure):
    # only V(frontier) inside V(closure) matters: keep the reduced basis of
    # closure + frontier, minus what already lies in the closure ideal
    out = []
    seen = set()
    ring = closure.ring
    for fr in frontiers:
        both = closure + fr
        if both.is_unit():
            continue  # does not meet the closure
        gens = [squarefree_part(g) for g in both.reduced_generators() if not closure.contains(g)]
        small = Ideal(ring, Ideal(ring, gens).reduced_generators())
        key = tuple(str(g) for g in small.generators)
        if key in seen:
            continue
        seen.add(key)
        out.append(small)
    return out


# -- public constructions -------------------------------------------------------

def rank_stratification(F, rng=None, samples=8, prefix="W"):
    """Smooth strata of the source on which ``F`` has constant rank; the rank
    levels of the Jacobian are unions of strata."""
    ring = F.source_ring
    return refine([(Ideal.zero(ring), [])], [F], rng=rng, samples=samples, prefix=prefix)


def split_by_closed_sets(ring, closed, maps=(), rng=None, samples=8, prefix="S", primary=None):
    """Stratify ``ring``'s affine space so that each ideal in ``closed`` cuts
    out a union of strata, and each map has constant rank on every stratum."""
    seeds = [(Ideal.zero(ring), [])]
    for Z in closed:
        if Z.is_zero() or Z.is_unit():
            continue
        nxt = []
        for h, fr in seeds:
            inside = h + Z
            if not inside.is_unit():
                nxt.append((inside, list(fr)))
            nxt.append((h, list(fr) + [Z]))
        seeds = nxt
    return refine(seeds, maps, rng=rng, samples=samples, prefix=prefix, primary=primary)


def _pull(F, ideal):
    return Ideal(F.source_ring, [F.pullback(g) for g in ideal.generators])


def pullback_refine(W, F, Q, maps=None, rng=None, samples=8, prefix="W"):
    """Intersect the strata of ``W`` with the preimages under ``F`` of the
    strata of ``Q`` and re-split so that every map in ``maps`` (default:
    ``[F]``) keeps constant rank."""
    maps = list(maps) if maps is not None else [F]
    seeds = []
    for w in W:
        for q in Q:
            closure = w.closure_ideal + _pull(F, q.closure_ideal)
            if closure.is_unit():
                continue
            frs = list(w.frontier_ideals) + [_pull(F, fr) for fr in q.frontier_ideals]
            seeds.append((closure, frs))
    return refine(seeds, maps, rng=rng, samples=samples, prefix=prefix,
                  primary=maps[0].label if maps else None)


def _image_pieces(F, strat):
    """Ideals of the closures of images of strata whose image is not dense."""
    out = []
    seen = set()
    for s in strat:
        img = image_ideal(F, s.closure_ideal)
        if img.is_zero() or img.is_unit():
            continue
        key = tuple(str(g) for g in img.reduced_generators())
        if key not in seen:
            seen.add(key)
            out.append(img)
    return out


@dataclass
class AdaptedStratifications:
    W: Stratification
    Q: Stratification
    S: Stratification
    H: MapGerm
    caveats: list = field(default_factory=list)


def adapted_stratifications(F, G, rng=None, samples=8, H=None):
    """Stratifications of the sources of ``F`` and ``G`` and of the target of
    ``G``, adapted to the composition ``H = G o F``.

    1. ``W'`` = rank stratification of ``F``; the target of ``F`` is split by
       the images of the ``W'`` strata, then refined so that ``G`` has
       constant rank: this is ``Q``.
    2. ``W`` = strata of ``W'`` intersected with the preimages of ``Q``,
       refined so that both ``F`` and ``H`` have constant rank.
    3. ``S`` = target of ``G`` split by the images of the ``Q`` strata.
    """
    from .germ import compose

    rng = rng or random.Random(0)
    H = H or compose(G, F, label="H")
    Fq = F.with_target(G.source_ring)
    W0 = rank_stratification(Fq, rng=rng, samples=samples, prefix="W'")
    Q = split_by_closed_sets(
        G.source_ring, _image_pieces(Fq, W0), [G], rng=rng, samples=samples, prefix="Q"
    )
    W = pullback_refine(W0, Fq, Q, maps=[Fq, H], rng=rng, samples=samples, prefix="W")
    S = split_by_closed_sets(
        G.target_ring, _image_pieces(G, Q), (), rng=rng, samples=samples, prefix="S"
    )
    return AdaptedStratifications(W, Q, S, H, [WHITNEY_CAVEAT])


def stratification_from_specs(F, specs, rng=None, samples=8, prefix="U"):
    """Stratification built from user-given strata (closure, frontiers,
    rank).  The stated rank of ``F`` is spot-checked at sample points; a
    mismatch raises :class:`StratumTooCoarse`."""
    rng = rng or random.Random(0)
    ring = F.source_ring
    out = []
    for i, spec in enumerate(specs):
        frontiers = [Ideal(ring, fr) for fr in spec.frontiers]
        closure = _closure(Ideal(ring, spec.closure), frontiers)
        if closure.is_unit():
            continue
        d = dimension(closure).dimension
        points = sample_points(closure, frontiers, count=samples, rng=rng) if samples else []
        gens = closure.reduced_generators()
        Jh = jacobian(gens) if gens else []
        c = ring.nvars - d
        for pt in points:
            got = rank_at(Jh + jacobian(F), pt) - (rank_at(Jh, pt) if Jh else 0)
            if got != spec.rank:
                raise StratumTooCoarse(
                    f"stated rank {spec.rank} of {F.label} on stratum {i} is {got} at {pt}"
                )
            if Jh and rank_at(Jh, pt) != c:
                raise StratumTooCoarse(f"stratum {i} is not smooth of dimension {d} at {pt}")
        verification = f"sampled-verified ({len(points)} points)" if points else "unverified"
        out.append(Stratum(closure, tuple(frontiers), d, {F.label: spec.rank},
                           f"{prefix}{i}", F.label, verification, tuple(points)))
    return Stratification(out, ring, (F.label,), [WHITNEY_CAVEAT, "strata given by the user"])
