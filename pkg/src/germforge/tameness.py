"""Germ inclusions and the tameness family of conditions.

All inclusions are between germs at the origin of real algebraic sets.
They are decided over the complex points first (exact); when that fails,
:mod:`germforge.realgerm` may still certify the real inclusion.  A verdict
that fails carries a caveat saying its witness may be complex only.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .germ import MapGerm, compose, discriminant_ideal, image_ideal, singular_locus_ideal
from .ideal import Ideal, ideal_intersection, local_dimension_at_origin, saturate
from .milnor import milnor_set
from .realgerm import real_germ_is_origin
from .strata import adapted_stratifications, rank_stratification

__all__ = [
    "GermInclusionVerdict",
    "TamenessReport",
    "ComposabilityReport",
    "EquivalentFormsReport",
    "germ_subset_of_origin",
    "germ_subset",
    "is_tame",
    "is_tamely_composable",
    "check_equivalent_forms",
    "discriminant_condition",
    "zero_fiber_shortcut",
    "milnor_set_in_singular_locus",
    "COMPLEX_WITNESS",
    "SCHEME_CAVEAT",
]

COMPLEX_WITNESS = "complex witness: the failing germ may have no real points besides 0"
SCHEME_CAVEAT = "scheme-theoretic caveat: verdicts concern reduced germs (sets), not schemes"


@dataclass
class GermInclusionVerdict:
    holds: bool
    lhs_ideal: Ideal | None
    rhs_description: str
    certificate: dict
    caveats: list = field(default_factory=list)

    def __bool__(self):
        return self.holds

    def as_dict(self):
        return {
            "holds": self.holds,
            "rhs": self.rhs_description,
            "certificate": dict(self.certificate),
            "caveats": list(self.caveats),
        }


def _unit_witness(ideal):
    for g in ideal.standard_basis().elements:
        if g.constant_term:
            return str(g)
    return "1"


def _origin_check(ideal, real=True):
    """(holds, certificate, caveats) for V(ideal)_0 inside {0}."""
    ld = local_dimension_at_origin(ideal).dimension
    if ld < 0:
        return True, {"kind": "origin-excluded", "witness": _unit_witness(ideal)}, []
    if ld == 0:
        return True, {"kind": "local-dim", "local_dim": 0}, []
    if real:
        reason = real_germ_is_origin(ideal)
        if reason is not None:
            return True, {"kind": "real-germ", "local_dim": ld, "reason": reason}, []
    return False, {"kind": "local-dim", "local_dim": ld}, [COMPLEX_WITNESS]


def germ_subset_of_origin(A, real=True):
    """Decide ``V(A)`` inside ``{0}`` as germs at 0."""
    holds, cert, cav = _origin_check(A, real)
    return GermInclusionVerdict(holds, A, "{0}", cert, cav)


def germ_subset(A, B, real=True):
    """Decide ``V(A)`` inside ``V(B)`` as germs at 0.

    For each generator ``b`` of ``B`` the closure of ``V(A) minus V(b)``
    must avoid the origin (or, over the reals, meet it only at 0 when
    ``b(0) = 0``).  When ``V(B)`` is itself the origin germ the test is
    ``V(A)`` inside ``{0}``.
    """
    if A.ring.names != B.ring.names:
        raise ValueError("germ_subset needs ideals of one ring")
    rhs = "V(" + ", ".join(str(g) for g in B.generators) + ")"
    point, cert, _ = _origin_check(B, real)
    if point and cert["kind"] != "origin-excluded":
        holds, c2, cav = _origin_check(A, real)
        c2 = dict(c2, rhs_is_origin=cert["kind"])
        return GermInclusionVerdict(holds, A, rhs, c2, cav)
    per = []
    caveats = []
    holds = True
    for b in B.generators:
        sat = saturate(A, Ideal(A.ring, [b]))
        ld = local_dimension_at_origin(sat).dimension
        if ld < 0:
            per.append({"generator": str(b), "kind": "origin-excluded",
                        "witness": _unit_witness(sat)})
            continue
        if real and not b.constant_term:
            reason = real_germ_is_origin(sat)
            if reason is not None:
                per.append({"generator": str(b), "kind": "real-germ", "reason": reason})
                continue
        per.append({"generator": str(b), "kind": "local-dim", "local_dim": ld})
        holds = False
        if COMPLEX_WITNESS not in caveats:
            caveats.append(COMPLEX_WITNESS)
    return GermInclusionVerdict(holds, A, rhs, {"kind": "per-generator", "parts": per}, caveats)


# -- tameness -----------------------------------------------------------------------

@dataclass
class TamenessReport:
    map_label: str
    stratification: object
    milnor: object
    tame: GermInclusionVerdict

    @property
    def milnor_union_ideal(self):
        return self.milnor.union_ideal

    def as_dict(self):
        return {
            "map": self.map_label,
            "strata": len(self.stratification),
            "tame": self.tame.as_dict(),
        }


def _closure_pieces(M, G, real=True):
    """Ideals T with V(T) covering closure(V(M) minus G^-1(0)) cap G^-1(0).

    The closure of ``V(M)`` minus the common zeros of the components is the
    union over components ``g`` of the closure of ``V(M)`` minus ``V(g)``.
    """
    I = G.zero_fiber_ideal()
    # cheap bound first: the whole of V(M) cap G^-1(0)
    meet = M + I
    ok, cert, _ = _origin_check(meet, real)
    if ok:
        return [(meet, cert)]
    pieces = []
    for g in G.components:
        T = saturate(M, Ideal(M.ring, [g])) + I
        pieces.append((T, None))
    return pieces


def _verdict_over_pieces(pieces, rhs, real=True, into=None):
    parts = []
    caveats = []
    holds = True
    lhs = None
    for T, cert in pieces:
        if cert is None:
            if into is None:
                ok, cert, cav = _origin_check(T, real)
            else:
                v = germ_subset(T, into, real)
                ok, cert, cav = v.holds, v.certificate, v.caveats
        else:
            ok, cav = True, []
        parts.append(cert)
        if not ok:
            holds = False
            lhs = lhs or T
            for c in cav:
                if c not in caveats:
                    caveats.append(c)
    return GermInclusionVerdict(holds, lhs, rhs, {"kind": "pieces", "parts": parts}, caveats)


def is_tame(G, S=None, rng=None):
    """Decide tameness of ``G`` with respect to the stratification ``S``
    (by default the rank stratification of ``G``)."""
    rng = rng or random.Random(0)
    S = S if S is not None else rank_stratification(G, rng=rng)
    M = milnor_set(G, S, rng=rng)
    I = G.zero_fiber_ideal()
    fib = germ_subset_of_origin(I)
    if fib.holds:
        verdict = GermInclusionVerdict(
            True, I, "{0}",
            {"kind": "zero-fiber-is-origin", "detail": fib.certificate}, []
        )
        return TamenessReport(G.label, M.stratification, M, verdict)
    pieces = []
    for _, Mi in M.per_stratum:
        if Mi.is_unit():
            continue
        pieces.extend(_closure_pieces(Mi, G))
    verdict = _verdict_over_pieces(pieces, "{0}")
    return TamenessReport(G.label, M.stratification, M, verdict)


# -- tame composability ---------------------------------------------------------------

@dataclass
class ComposabilityReport:
    F: MapGerm
    G: MapGerm
    H: MapGerm
    adapted: object
    milnor_H: object
    pieces: list
    verdict: GermInclusionVerdict

    def as_dict(self):
        return {"H": [str(c) for c in self.H.components], "verdict": self.verdict.as_dict()}


def _composition_pieces(H, ideals):
    pieces = []
    for Mi in ideals:
        if Mi.is_unit():
            continue
        for h in H.components:
            pieces.append(saturate(Mi, Ideal(Mi.ring, [h])) + H.zero_fiber_ideal())
    return pieces


def is_tamely_composable(F, G, adapted=None, rng=None):
    """Decide whether ``F`` is tamely composable with ``G``: the closure of
    the Milnor set of ``H = G o F`` away from ``H^-1(0)`` meets ``H^-1(0)``
    only inside ``F^-1(0)``."""
    rng = rng or random.Random(0)
    if adapted is None:
        adapted = adapted_stratifications(F, G, rng=rng)
    H = adapted.H
    M = milnor_set(H, adapted.W, rng=rng)
    pieces = _composition_pieces(H, M.ideals())
    IF = F.zero_fiber_ideal()
    verdict = _verdict_over_pieces([(T, None) for T in pieces], "F^-1(0)", into=IF)
    return ComposabilityReport(F, G, H, adapted, M, pieces, verdict)


@dataclass
class EquivalentFormsReport:
    form_31: GermInclusionVerdict
    form_32: GermInclusionVerdict
    form_33: GermInclusionVerdict
    lhs_equal: bool
    agree: bool
    caveats: list

    def as_dict(self):
        return {
            "eq-3.1": self.form_31.as_dict(),
            "eq-3.2": self.form_32.as_dict(),
            "eq-3.3": self.form_33.as_dict(),
            "lhs_equal": self.lhs_equal,
            "agree": self.agree,
            "caveats": list(self.caveats),
        }


def _image_by_pullback(failed, Mi, H, IF):
    """Real certificate for the image-side form on one stratum.

    Elimination computes the Zariski closure of the image, which can be
    larger than the real image.  When ``F`` is finite on the Milnor piece
    (``V(Mi) cap F^-1(0)`` is the origin germ), a sequence of image points
    tending to 0 lifts to a sequence in ``V(Mi)`` tending to 0, so the
    source-side inclusion for this stratum implies the image-side one.
    """
    if not germ_subset_of_origin(Mi + IF).holds:
        return None
    src = _verdict_over_pieces([(T, None) for T in _composition_pieces(H, [Mi])],
                               "F^-1(0)", into=IF)
    if not src.holds:
        return None
    cert = {"kind": "finite-pullback", "complex_image": failed.certificate,
            "source_side": src.certificate}
    return GermInclusionVerdict(True, None, "{0}", cert, [])


def check_equivalent_forms(F, G, report=None, rng=None):
    """Evaluate the three equivalent forms of tame composability and report
    whether their verdicts (and the first two left-hand germs) agree."""
    report = report or is_tamely_composable(F, G, rng=rng)
    H = report.H
    IF = F.zero_fiber_ideal()
    sing_H = singular_locus_ideal(H)
    # second form: left-hand side intersected with Sing H
    lhs_equal = True
    with_sing = []
    for T in report.pieces:
        T2 = T + sing_H
        with_sing.append(T2)
        # compared away from the origin: {0} and the empty germ agree here
        if germ_subset_of_origin(T).holds:
            continue
        if not germ_subset(T, T2).holds:
            lhs_equal = False
    form_32 = _verdict_over_pieces([(T, None) for T in with_sing], "F^-1(0)", into=IF)
    # third form, on the image side: F(M_W(H)) away from G^-1(0), in the target
    Fq = F.with_target(G.source_ring)
    parts, caveats33, holds33 = [], [], True
    for _, Mi in report.milnor_H.per_stratum:
        if Mi.is_unit():
            continue
        img = image_ideal(Fq, Mi)
        if img.is_unit():
            continue
        v = _verdict_over_pieces(_closure_pieces(img, G), "{0}")
        if not v.holds:
            v = _image_by_pullback(v, Mi, H, IF) or v
        parts.append(v.certificate)
        if not v.holds:
            holds33 = False
            caveats33.extend(c for c in v.caveats if c not in caveats33)
    form_33 = GermInclusionVerdict(
        holds33, None, "{0}", {"kind": "pieces", "parts": parts}, caveats33
    )
    form_31 = report.verdict
    agree = form_31.holds == form_32.holds == form_33.holds
    caveats = []
    if not lhs_equal:
        caveats.append(SCHEME_CAVEAT + " (left-hand germs of the first two forms differ)")
    if not agree:
        caveats.append(SCHEME_CAVEAT + " (verdicts of the equivalent forms disagree)")
    return EquivalentFormsReport(form_31, form_32, form_33, lhs_equal, agree, caveats)


# -- the discriminant condition and the zero-fiber shortcut ------------------------------

def discriminant_condition(F, G):
    """``(Disc F union Sing G) cap G^-1(0)`` inside ``{0}``: a sufficient
    condition, together with tameness of ``F``, for ``G o F`` to be tame."""
    Fq = F.with_target(G.source_ring)
    disc = discriminant_ideal(Fq)
    sing = singular_locus_ideal(G)
    if disc.is_unit():
        U = sing
    elif sing.is_unit():
        U = disc
    else:
        U = ideal_intersection(disc, sing)
    A = U + G.zero_fiber_ideal()
    v = germ_subset_of_origin(A)
    v.rhs_description = "{0}"
    v.certificate = dict(
        v.certificate,
        discriminant=[str(g) for g in disc.reduced_generators()],
        singular_locus=[str(g) for g in sing.reduced_generators()],
    )
    return v


def zero_fiber_shortcut(F):
    """True when ``Sing F cap F^-1(0)`` is the origin germ, which makes ``F``
    tame."""
    A = singular_locus_ideal(F) + F.zero_fiber_ideal()
    return germ_subset_of_origin(A).holds


def milnor_set_in_singular_locus(F, milnor=None, rng=None):
    """Check that near 0 the Milnor set meets ``F^-1(0)`` only inside
    ``Sing F``.

    The origin always lies on the Milnor set (the radial row vanishes
    there), so the comparison is made away from it: the right-hand side is
    ``(Sing F cap F^-1(0)) union {0}``.
    """
    if milnor is None:
        milnor = milnor_set(F, rank_stratification(F, rng=rng), rng=rng)
    IF = F.zero_fiber_ideal()
    lhs = milnor.union_ideal + IF
    rhs = singular_locus_ideal(F) + IF
    origin = Ideal(F.source_ring, list(F.source_ring.gens))
    rhs = origin if rhs.is_unit() else ideal_intersection(rhs, origin)
    v = germ_subset(lhs, rhs)
    v.rhs_description = "(Sing F cap F^-1(0)) union {0}"
    return v
