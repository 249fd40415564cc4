"""Milnor numbers and the fibre report for composed germs ``H = G o F``.

Here ``F = (f, g) : (C^{n+1}, 0) -> (C^2, 0)`` defines an ICIS and
``G : (C^2, 0) -> (C, 0)`` is a plane curve germ.  The Milnor fibre of
``H`` is built from an ``F``-fibration over the Milnor fibre of ``G`` with
generic fibre the ICIS fibre, by attaching ``N`` cells of dimension ``n``,
one batch for each singular point of ``F`` over the finitely many points
where the fibre of ``G`` crosses the discriminant of ``F``.

Conventions (complex fibres):

* ``chi(Fib G) = 1 - mu(G)`` (a connected curve fibre with ``b_1 = mu``);
* ``chi(ICIS fibre) = 1 + (-1)^(n-1) mu_ICIS`` (bouquet of ``(n-1)``-spheres);
* ``chi(Fib H) = chi(Fib G) * chi(ICIS fibre) + (-1)^n N``.

``N`` comes from a projection formula.  Let ``M`` be the ideal of 2-minors
of ``J_F``.  At a point ``b`` of ``Sing F`` over a generic value ``a`` of
``H``, Le-Greuel applied to the pair ``(H - a, L o F)`` (with ``L`` a
linear form completing ``G - a`` to coordinates) gives
``mu_b = colength_b(M + (H - a))``, since ``H - a`` is smooth at ``b``.
Summing over the points near 0 and letting ``a -> 0`` gives
``N = colength_0(sat(M, H) + (H))``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .germ import discriminant_ideal, jacobian, minors, singular_locus_ideal
from .ideal import INFINITE, Ideal, colength, dimension, saturate
from .poly import QQ, Ring
from .sampling import random_rational, rank_at, sample_points, solve_rational

__all__ = [
    "NonIsolatedError",
    "NotICISError",
    "GenericityError",
    "FiberPiece",
    "FiberReport",
    "milnor_number_hypersurface",
    "milnor_number_icis_point",
    "icis_milnor_number",
    "fiber_decomposition",
    "composed_fiber_report",
    "sebastiani_thom_check",
]


class NonIsolatedError(ValueError):
    """The singularity is not isolated (infinite colength)."""


class NotICISError(ValueError):
    """``F`` does not define an isolated complete intersection singularity."""


class GenericityError(RuntimeError):
    """Two independent generic draws gave different answers."""


def milnor_number_hypersurface(f):
    """Colength of the Jacobian ideal of ``f`` in the local ring at 0."""
    if f.constant_term:
        raise ValueError("f must vanish at the origin")
    J = Ideal(f.ring, [d for d in f.gradient() if d])
    mu = colength(J)
    if mu is INFINITE:
        raise NonIsolatedError(f"{f} has a non-isolated singularity at 0")
    return mu


def _lambda_values():
    # deterministic sequence of "generic" combination coefficients
    return [QQ(k, 1) for k in (3, 5, -7, 11)] + [QQ(2, 7), QQ(-5, 13)]


def _le_greuel(f, g, M):
    """``mu(f, g)`` at 0 via ``mu(l, g) + mu(l) = colength((l) + M)`` for a
    generic combination ``l = f + lambda g``; two combinations must agree."""
    results = []
    for lam in _lambda_values():
        l = f + g.scale(lam)
        if not l:
            continue
        grad = Ideal(l.ring, [d for d in l.gradient() if d])
        mu_l = colength(grad)
        if mu_l is INFINITE:
            continue
        total = colength(M + Ideal(l.ring, [l]))
        if total is INFINITE:
            raise NonIsolatedError("the complete intersection is not isolated")
        results.append(total - mu_l)
        if len(results) == 2:
            break
    if not results:
        raise NonIsolatedError("no combination with an isolated singularity found")
    if len(set(results)) != 1:
        raise GenericityError(f"Le-Greuel values disagree: {results}")
    return results[0]


def milnor_number_icis_point(F, point):
    """Milnor number of the fibre of ``F = (f, g)`` through ``point``, as a
    germ at that point (rational coordinates)."""
    if F.target_dim != 2:
        raise ValueError("milnor_number_icis_point expects a pair (f, g)")
    point = [QQ(v) for v in point]
    f, g = (c.translate(point) for c in F.components)
    f = f - f.constant_term
    g = g - g.constant_term
    if not f and not g:
        raise NonIsolatedError("both components vanish identically")
    M = Ideal(f.ring, minors(jacobian([f, g]), 2))
    if not f:
        f, g = g, f
    if not g:
        return milnor_number_hypersurface(f)
    return _le_greuel(f, g, M)


def icis_milnor_number(F):
    """Milnor number of the ICIS ``F^-1(0)`` at the origin."""
    return milnor_number_icis_point(F, [0] * F.source_dim)


def sebastiani_thom_check(f, g):
    """Compare ``mu(f + g)`` in separate variables with ``mu(f) * mu(g)``."""
    shared = set(f.ring.names) & set(g.ring.names)
    if shared:
        raise ValueError(f"variables shared between f and g: {sorted(shared)}")
    ring = Ring(list(f.ring.names) + list(g.ring.names))
    nf = f.ring.nvars
    fg = f.embed(ring, list(range(nf))) + g.embed(ring, list(range(nf, ring.nvars)))
    mu_sum = milnor_number_hypersurface(fg)
    mu_f = milnor_number_hypersurface(f)
    mu_g = milnor_number_hypersurface(g)
    return {
        "f": str(f),
        "g": str(g),
        "mu_join": mu_sum,
        "mu_f": mu_f,
        "mu_g": mu_g,
        "product": mu_f * mu_g,
        "holds": mu_sum == mu_f * mu_g,
    }


# -- fibre decomposition -------------------------------------------------------------

@dataclass
class FiberPiece:
    stratum: str
    fiber_ideal: Ideal
    dim: int
    smooth: object  # True / False / None when no sample point was found

    def as_dict(self):
        return {
            "stratum": self.stratum,
            "fiber": [str(g) for g in self.fiber_ideal.generators],
            "dim": self.dim,
            "smooth": self.smooth,
        }


def fiber_decomposition(H, W, a, rng=None):
    """Pieces ``V cap H^-1(a)`` of the fibre over ``a``, one per stratum."""
    rng = rng or random.Random(0)
    a = [QQ(v) for v in a]
    ring = H.source_ring
    level = [h - v for h, v in zip(H.components, a)]
    pieces = []
    for s in W:
        I = s.closure_ideal + Ideal(ring, level)
        for fr in s.frontier_ideals:
            if I.is_unit():
                break
            I = saturate(I, fr)
        if I.is_unit():
            continue
        d = dimension(I).dimension
        pieces.append(FiberPiece(s.label, I, d, _sampled_smooth(H, s, I, rng)))
    return pieces


def _sampled_smooth(H, stratum, piece, rng, count=4):
    """True when at every sampled point of the piece the stratum equations
    and ``H`` have independent differentials; None without sample points."""
    pts = sample_points(piece, stratum.frontier_ideals, count=count, rng=rng)
    if not pts:
        return None
    gens = stratum.closure_ideal.reduced_generators()
    rows = jacobian(gens) + jacobian(H)
    want = stratum.codim + H.target_dim
    return all(rank_at(rows, pt) == want for pt in pts)


# -- the composed fibre report ------------------------------------------------------------

@dataclass
class FiberReport:
    n: int
    mu_G: int
    mu_icis: int
    chi_fib_G: int
    chi_fib_F: int
    N: int
    mu_list: list
    chi_fib_H: int | None
    discriminant: list
    generic_values: list
    pieces: list = field(default_factory=list)
    homotopy_conclusions: bool = False
    notes: list = field(default_factory=list)

    def as_dict(self):
        return {
            "n": self.n,
            "mu_G": self.mu_G,
            "mu_icis": self.mu_icis,
            "chi_fib_G": self.chi_fib_G,
            "chi_fib_F": self.chi_fib_F,
            "N": self.N,
            "mu_list": list(self.mu_list),
            "chi_fib_H": self.chi_fib_H,
            "discriminant": list(self.discriminant),
            "generic_values": [str(v) for v in self.generic_values],
            "pieces": [p.as_dict() for p in self.pieces],
            "homotopy_conclusions": self.homotopy_conclusions,
            "notes": list(self.notes),
        }


def _point_list(F, H, M_sat, a):
    """Per-point (or per-cluster) Milnor numbers of the ICIS fibres over the
    points where ``G = a`` crosses the discriminant."""
    ring = H.source_ring
    J = M_sat + Ideal(ring, [H.components[0] - a])
    if J.is_unit():
        return [], 0
    total = colength(J, local=False)
    if total is INFINITE:
        raise GenericityError(f"value {a} is not generic: infinitely many critical points")
    pts = solve_rational(J)
    out = []
    if pts is not None and pts:
        for b in pts:
            mu = milnor_number_icis_point(F, b)
            out.append({"point": [str(v) for v in b], "mu": mu})
        covered = sum(e["mu"] for e in out)
        if covered != total:
            out.append({"cluster": [str(g) for g in J.reduced_generators()],
                        "mu": total - covered, "rational": False})
    else:
        out.append({"cluster": [str(g) for g in J.reduced_generators()],
                    "mu": total, "rational": False})
    return out, total


def composed_fiber_report(F, G, rng=None, locally_open=False, W=None, draws=2):
    """Topology report for ``H = G o F`` with ``F`` an ICIS pair and ``G`` a
    plane curve germ."""
    from .germ import compose
    from .tameness import germ_subset_of_origin

    rng = rng or random.Random(0)
    if F.target_dim != 2 or G.source_dim != 2 or G.target_dim != 1:
        raise ValueError("fibre report needs F : C^(n+1) -> C^2 and G : C^2 -> C")
    n = F.source_dim - 1
    sing = singular_locus_ideal(F)
    icis = germ_subset_of_origin(sing + F.zero_fiber_ideal(), real=False)
    if not icis.holds:
        raise NotICISError(f"Sing F meets F^-1(0) in a germ of dimension "
                           f"{icis.certificate.get('local_dim')}")
    Fq = F.with_target(G.source_ring)
    H = compose(G, Fq, label="H")
    disc = discriminant_ideal(Fq)
    mu_G = milnor_number_hypersurface(G.components[0])
    mu_icis = icis_milnor_number(F)
    chi_G = 1 - mu_G
    chi_F = 1 + (-1) ** (n - 1) * mu_icis

    ring = F.source_ring
    M = Ideal(ring, minors(jacobian(F), 2))
    h = H.components[0]
    M_sat = saturate(M, Ideal(ring, [h]))
    N0 = colength(M_sat + Ideal(ring, [h]))
    if N0 is INFINITE:
        raise GenericityError("Sing F meets H^-1(0) in a positive-dimensional germ")

    notes = []
    values, lists, totals = [], [], []
    for _ in range(draws):
        a = QQ(0)
        while a == 0:
            a = random_rational(rng)
        values.append(a)
        lst, tot = _point_list(F, H, M_sat, a)
        lists.append(lst)
        totals.append(tot)
    if len(set(totals)) != 1:
        raise GenericityError(f"critical point counts differ between draws: {totals}")
    if totals[0] != N0:
        notes.append(
            f"global count over generic values ({totals[0]}) differs from the local count "
            f"at 0 ({N0}): critical points far from the origin are excluded from N"
        )
    mu_list = lists[0] if totals[0] == N0 else [{"cluster": "local at 0", "mu": N0}]
    N = N0
    pieces = []
    if W is not None:
        pieces = fiber_decomposition(H, W, [values[0]], rng=rng)
    chi_H = chi_G * chi_F + (-1) ** n * N
    if not locally_open:
        notes.append("F not asserted locally open: homotopy-level conclusions withheld")
    return FiberReport(
        n=n,
        mu_G=mu_G,
        mu_icis=mu_icis,
        chi_fib_G=chi_G,
        chi_fib_F=chi_F,
        N=N,
        mu_list=mu_list,
        chi_fib_H=chi_H if locally_open else None,
        discriminant=[str(g) for g in disc.reduced_generators()],
        generic_values=values,
        pieces=pieces,
        homotopy_conclusions=locally_open,
        notes=notes,
    )
