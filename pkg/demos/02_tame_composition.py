# A tame map whose composition with a projection is not tame.
#
# F(x, y, u, v) = ((x^2+y^2)(1+u), (x^2+y^2)v, u^2+v^2) only vanishes at the
# origin over the reals, so it is tame for free.  Following it by the
# projection G(r, s, t) = (r, s) forgets the third component, and the zero
# fibre of H = G o F swells to the whole plane x = y = 0 (and to u = -1).
#
# Run with:  python demos/02_tame_composition.py

import random

from germforge import Ring
from germforge.germ import MapGerm, compose
from germforge.tameness import (
    check_equivalent_forms,
    discriminant_condition,
    is_tame,
    is_tamely_composable,
    zero_fiber_shortcut,
)

S = Ring("x y u v")
T = Ring("r s t")
F = MapGerm([S("(x^2+y^2)*(1+u)"), S("(x^2+y^2)*v"), S("u^2+v^2")], label="F", target_ring=T)
G = MapGerm([T("r"), T("s")], label="G")
H = compose(G, F, label="H")
print("H =", [str(c) for c in H.components])

# ## Tameness of each map

for m in (F, G, H):
    rep = is_tame(m, rng=random.Random(0))
    print(f"{m.label}: tame={rep.tame.holds}  certificate={rep.tame.certificate['kind']}")

# The shortcut "Sing F meets F^-1(0) only at 0" already settles F.

print("zero-fibre shortcut for F:", zero_fiber_shortcut(F))

# ## Tame composability
#
# The Milnor set of H, computed on strata adapted to the composition,
# reaches H^-1(0) outside F^-1(0), so F is not tamely composable with G.

comp = is_tamely_composable(F, G, rng=random.Random(0))
print()
print("tamely composable:", comp.verdict.holds)
print("adapted strata: W", len(comp.adapted.W), " Q", len(comp.adapted.Q), " S", len(comp.adapted.S))

# The three equivalent formulations should agree.

forms = check_equivalent_forms(F, G, report=comp)
print("equivalent forms agree:", forms.agree)

# The discriminant of F meets G^-1(0) along a curve, so the sufficient
# discriminant condition fails as well.

disc = discriminant_condition(F, G)
print("discriminant condition:", disc.holds)
print("  Disc F =", disc.certificate["discriminant"])
