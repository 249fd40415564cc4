# Ideals over Q: global bases, local bases and what they see near the origin.
#
# Run with:  python demos/01_ideal_engine.py

from germforge import GREVLEX, LEX, Ideal, Ring
from germforge.ideal import colength, dimension, eliminate, local_dimension_at_origin, saturate

R = Ring("x y")

# ## Groebner bases
#
# Two circles' worth of quadrics collapse to monomials.

I = Ideal(R, [R("x^2+y^2"), R("x^2-y^2")])
print("grevlex basis:", [str(g) for g in I.groebner(GREVLEX).elements])
print("lex basis:    ", [str(g) for g in I.groebner(LEX).elements])

# ## Global versus local
#
# x - x^2 vanishes at x = 0 and at x = 1.  Globally the quotient by
# (x - x^2, y) has two points; at the origin only one of them counts.

J = Ideal(R, [R("x - x^2"), R("y")])
print()
print("global colength:", colength(J, local=False))
print("local colength: ", colength(J))

# V(x(x-1), y(x-1)) is the line x = 1 plus the origin.  It is a curve, but
# its germ at 0 is a single point.

K = Ideal(R, [R("x*(x-1)"), R("y*(x-1)")])
print("dimension:", dimension(K).dimension, " local dimension at 0:", local_dimension_at_origin(K).dimension)

# ## Saturation
#
# sat(A, b) removes the components of V(A) lying inside V(b).  Saturating
# the union of the two axes by x drops the y-axis and keeps y = 0.

axes = Ideal(R, [R("x*y")])
print()
print("sat((xy), (x)) =", [str(g) for g in saturate(axes, Ideal(R, [R("x")])).reduced_generators()])

# ## Elimination
#
# The image of t -> (t^2, t^3) is the cusp.

T = Ring("t u v")
graph = Ideal(T, [T("u - t^2"), T("v - t^3")])
print("cusp:", [str(g) for g in eliminate(graph, ["u", "v"]).generators])
