# Milnor numbers and the Euler characteristic of a composed Milnor fibre.
#
# Run with:  python demos/03_milnor_fibres.py

import random

from germforge import Ring
from germforge.fiber import (
    composed_fiber_report,
    icis_milnor_number,
    milnor_number_hypersurface,
    sebastiani_thom_check,
)
from germforge.germ import MapGerm

# ## Plane curves

R = Ring("x y")
for f in ["x^2+y^2", "x^3-y^2", "x^3+y^3", "x^2*y+y^4"]:
    print(f"mu({f}) = {milnor_number_hypersurface(R(f))}")

# Functions in separate variables multiply their Milnor numbers.

out = sebastiani_thom_check(Ring("x y")("x^2+y^3"), Ring("z")("z^4"))
print(f"mu(x^2+y^3+z^4) = {out['mu_join']} = {out['mu_f']} * {out['mu_g']}")

# ## An isolated complete intersection and a curve in its target
#
# F = (x, y^2+z^2) has an isolated singularity; its discriminant is the
# line v = 0.  Composing with G = u^2 - v^2 gives H = x^2 - (y^2+z^2)^2.
# The fibre G = a crosses the discriminant at two points, each carrying a
# node of Milnor number 1, so N = 2 cells are attached.

S = Ring("x y z")
W = Ring("u v")
F = MapGerm([S("x"), S("y^2+z^2")], target_ring=W)
print()
print("mu of the ICIS:", icis_milnor_number(F))

node = composed_fiber_report(F, MapGerm([W("u^2-v^2")]), rng=random.Random(0), locally_open=True)
print(f"G = u^2-v^2: N = {node.N}, chi(Fib G) = {node.chi_fib_G}, "
      f"chi(F fibre) = {node.chi_fib_F}, chi(Fib H) = {node.chi_fib_H}")

# Independent count: Fib H is a double cover of C^2 branched over two
# disjoint conics, each a copy of C*, so chi = 2*1 - 0 = 2.

# With G = uv the fibre uv = a never meets v = 0 and nothing is attached.

cross = composed_fiber_report(F, MapGerm([W("u*v")]), rng=random.Random(0), locally_open=True)
print(f"G = uv:      N = {cross.N}, chi(Fib H) = {cross.chi_fib_H}")

# The report is only trusted when two random generic values agree.

print("generic values drawn:", [str(a) for a in node.generic_values])
