import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from germforge import Ring
from germforge.fiber import (
    NonIsolatedError,
    NotICISError,
    composed_fiber_report,
    fiber_decomposition,
    icis_milnor_number,
    milnor_number_hypersurface,
    milnor_number_icis_point,
    sebastiani_thom_check,
)
from germforge.germ import MapGerm, compose
from germforge.strata import adapted_stratifications, rank_stratification

from conftest import load

R2 = Ring("x y")
R3 = Ring("x y z")


def report(name, seed=0):
    gf = load(name)
    return composed_fiber_report(gf.maps["F"], gf.maps["G"], rng=random.Random(seed), locally_open=True)


# -- Milnor numbers ------------------------------------------------------------------------

@pytest.mark.parametrize(
    "f, mu",
    [("x^2+y^2", 1), ("x^3+y^3", 4), ("x^3-y^2", 2), ("x^2+y^5", 4), ("x^2*y+y^4", 5), ("x^4+y^4", 9)],
)
def test_milnor_number_plane_curves(f, mu):
    assert milnor_number_hypersurface(R2(f)) == mu


def test_milnor_number_three_variables():
    assert milnor_number_hypersurface(R3("x^2+y^2+z^2")) == 1
    assert milnor_number_hypersurface(R3("x*y*z + x^3 + y^3 + z^3")) == 8


def test_milnor_number_rejects_non_isolated():
    with pytest.raises(NonIsolatedError):
        milnor_number_hypersurface(R2("x^2"))
    with pytest.raises(NonIsolatedError):
        milnor_number_hypersurface(R2("x^2*y^2"))


def test_smooth_germ_has_milnor_number_zero():
    assert milnor_number_hypersurface(R2("x + y^2")) == 0


@pytest.mark.parametrize("p", [2, 3, 4])
@pytest.mark.parametrize("q", [2, 3, 4])
def test_sebastiani_thom_monomials(p, q):
    f = Ring("x")(f"x^{p}")
    g = Ring("y")(f"y^{q}")
    out = sebastiani_thom_check(f, g)
    assert out["holds"]
    assert out["mu_join"] == (p - 1) * (q - 1)


def test_sebastiani_thom_mixed():
    out = sebastiani_thom_check(Ring("x y")("x^2+y^3"), Ring("z")("z^4"))
    assert (out["mu_join"], out["product"]) == (6, 6)


def test_sebastiani_thom_needs_disjoint_variables():
    with pytest.raises(ValueError):
        sebastiani_thom_check(R2("x^2"), R2("x^3"))


def unimodular(rng, n):
    # product of random elementary matrices: determinant one, integer entries
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(4):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        M[i] = [a + c * b for a, b in zip(M[i], M[j])]
    return M


@pytest.mark.parametrize("f", ["x^3-y^2", "x^2*y+y^4", "x^4+y^4", "x^3+y^3"])
def test_milnor_number_invariant_under_linear_change(f):
    rng = random.Random(hash(f) % 1000)
    p = R2(f)
    mu = milnor_number_hypersurface(p)
    for _ in range(3):
        M = unimodular(rng, 2)
        images = [sum((R2.gens[j] * M[i][j] for j in range(2)), R2.zero) for i in range(2)]
        assert milnor_number_hypersurface(p.substitute(images)) == mu


@settings(max_examples=15)
@given(st.integers(2, 5), st.integers(2, 5), st.integers(-3, 3))
def test_milnor_number_of_shifted_brieskorn(p, q, c):
    # x -> x + c*y is a linear change; mu stays (p-1)(q-1)
    f = R2(f"(x + {c}*y)^{p} + y^{q}")
    assert milnor_number_hypersurface(f) == (p - 1) * (q - 1)


# -- ICIS points -----------------------------------------------------------------------------

def test_icis_point_node_fibre():
    F = MapGerm([R3("x"), R3("y^2+z^2")])
    assert milnor_number_icis_point(F, [3, 0, 0]) == 1


def test_icis_point_cusp_fibre():
    F = MapGerm([R3("x"), R3("y^3+z^2")])
    assert milnor_number_icis_point(F, [-2, 0, 0]) == 2


def test_icis_point_smooth():
    F = MapGerm([R3("x"), R3("y^2+z^2")])
    assert milnor_number_icis_point(F, [1, 1, 0]) == 0


def test_icis_milnor_numbers():
    assert icis_milnor_number(MapGerm([R3("x"), R3("y^2+z^2")])) == 1
    assert icis_milnor_number(MapGerm([R3("x"), R3("y^3+z^2")])) == 2
    # a genuine complete intersection: two quadrics in 3-space, mu = 5
    assert icis_milnor_number(MapGerm([R3("x^2+y^2+z^2"), R3("x*y + z^2 + x^2 - 2*y^2")])) == 5


# -- fibre decomposition ------------------------------------------------------------------------

def test_submersion_fibre_is_one_smooth_piece():
    H = MapGerm([R2("x")])
    pieces = fiber_decomposition(H, rank_stratification(H), [3])
    assert len(pieces) == 1
    assert pieces[0].smooth is True and pieces[0].dim == 1


def test_fibre_pieces_contain_level_set():
    gf = load("icis_cross")
    F, G = gf.maps["F"], gf.maps["G"]
    A = adapted_stratifications(F, G)
    a = 5
    pieces = fiber_decomposition(A.H, A.W, [a])
    assert pieces
    level = A.H.components[0] - a
    for piece in pieces:
        assert piece.fiber_ideal.contains(level)
    # the discriminant {v = 0} misses the fibre uv = a: only the open stratum is hit
    assert len(pieces) == 1 and pieces[0].dim == 2


# -- composed fibre reports --------------------------------------------------------------------

def join_euler(chi_a, chi_b):
    return chi_a + chi_b - chi_a * chi_b


def test_node_pair_matches_branched_cover_count():
    r = report("icis_node_pair")
    assert (r.N, r.chi_fib_H) == (2, 2)
    # double cover of C^2 branched along two disjoint conics (each C*)
    assert r.chi_fib_H == 2 * 1 - 0


def test_cross_matches_complement_count():
    r = report("icis_cross")
    assert (r.N, r.chi_fib_H) == (0, 0)
    # fibre x(y^2+z^2) = a is a graph over C^2 minus two lines through 0
    assert r.chi_fib_H == 1 - 2 + 1


@pytest.mark.parametrize("name, k, f", [("icis_node_pair", 2, "y^2+z^2"), ("icis_cusp_pair", 3, "y^3+z^2")])
def test_join_oracle(name, k, f):
    # H = x^2 - f^k: Fib H is the join of two points with k copies of Fib f
    mu_f = milnor_number_hypersurface(Ring("y z")(f))
    assert report(name).chi_fib_H == join_euler(2, k * (1 - mu_f))


@pytest.mark.parametrize("name", ["cubes_sum", "squares_sum", "icis_linear", "id_cross", "id_node"])
def test_isolated_composite_matches_direct_milnor_number(name):
    gf = load(name)
    r = report(name)
    H = compose(gf.maps["G"], gf.maps["F"].with_target(gf.maps["G"].source_ring))
    mu_H = milnor_number_hypersurface(H.components[0])
    assert r.chi_fib_H == 1 + (-1) ** r.n * mu_H


@pytest.mark.parametrize(
    "name", ["icis_node_pair", "icis_cross", "icis_cusp_pair", "icis_linear", "cubes_sum", "squares_sum"]
)
def test_report_invariants(name):
    r = report(name)
    assert r.N >= 0
    assert r.N == sum(e["mu"] for e in r.mu_list)
    assert r.chi_fib_H == r.chi_fib_G * r.chi_fib_F + (-1) ** r.n * r.N
    assert r.chi_fib_G == 1 - r.mu_G


@pytest.mark.parametrize("name", ["icis_node_pair", "icis_cusp_pair", "cubes_sum"])
def test_report_stable_across_generic_values(name):
    a, b = report(name, seed=1), report(name, seed=2)
    assert a.generic_values != b.generic_values
    assert (a.N, a.chi_fib_H) == (b.N, b.chi_fib_H)


def test_report_without_locally_open_withholds_euler_characteristic():
    gf = load("icis_node_pair")
    r = composed_fiber_report(gf.maps["F"], gf.maps["G"])
    assert r.chi_fib_H is None and not r.homotopy_conclusions
    assert r.N == 2


def test_report_rejects_non_icis():
    F = MapGerm([R3("x"), R3("y^2")])
    G = MapGerm([Ring("u v")("u^2 - v^2")])
    with pytest.raises(NotICISError):
        composed_fiber_report(F, G, locally_open=True)


def test_report_rejects_wrong_shapes():
    gf = load("four_to_three")
    with pytest.raises(ValueError):
        composed_fiber_report(gf.maps["F"], gf.maps["G"])
