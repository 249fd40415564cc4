import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from germforge import GREVLEX, LEX, LOCAL, Ideal, Ring
from germforge.groebner import (
    buchberger,
    lazard_standard_basis,
    mora_standard_basis,
    normal_form,
    s_polynomial,
)
from germforge.ideal import (
    INFINITE,
    colength,
    dimension,
    eliminate,
    ideal_intersection,
    ideal_quotient,
    ideal_sum,
    local_dimension_at_origin,
    radical_membership,
    saturate,
)
from germforge.limits import Limits, ResourceLimitError, limited, limits_from_env

from conftest import random_ideal
from oracles import (
    count_standard_monomials,
    lazard_local_leading_monomials,
    monomial_ideal_dimension,
    sympy_reduced_groebner,
)

R2 = Ring("x y")
R3 = Ring("x y z")


ideals = st.integers(0, 10**9).map(lambda s: random_ideal(random.Random(s)))


# -- Buchberger ------------------------------------------------------------------------

def test_buchberger_examples():
    B = Ideal(R2, [R2("x^2+y^2"), R2("x^2-y^2")]).groebner()
    assert B.elements == (R2("x^2"), R2("y^2"))
    assert Ideal(R2, [R2.one]).groebner().elements == (R2.one,)
    lex = Ring("z y x", LEX)
    B = buchberger([lex("y - x^2"), lex("z - x^3")], lex)
    assert set(B.elements) == {lex("z - x^3"), lex("y - x^2")}
    assert not normal_form(lex("z^2 - y^3"), B)


def test_normal_form_examples():
    B = Ideal(R2, [R2("x^2"), R2("y^2")]).groebner()
    assert not normal_form(R2("x^2+y^2"), B)
    assert normal_form(R2("x+1"), Ideal(R2, [R2("x^2")]).groebner()) == R2("x+1")
    B = Ideal(R2, [R2("x^2-y"), R2("y^2-x")]).groebner()
    assert normal_form(R2("x*y"), B) == R2("x*y")


@settings(max_examples=60)
@given(ideals)
def test_buchberger_criterion(I):
    B = I.groebner()
    els = B.elements
    for i in range(len(els)):
        for j in range(i + 1, len(els)):
            assert not normal_form(s_polynomial(els[i], els[j]), B)
    for g in I.generators:
        assert not normal_form(g, B)


@settings(max_examples=60)
@given(ideals, st.randoms(use_true_random=False))
def test_reduced_basis_is_unique(I, r):
    base = I.groebner().elements
    for _ in range(3):
        gens = list(I.generators)
        r.shuffle(gens)
        gens = gens + [gens[0] * I.ring.gen(r.randrange(I.ring.nvars))]
        assert Ideal(I.ring, gens).groebner().elements == base


@settings(max_examples=40)
@given(ideals)
def test_groebner_matches_sympy(I):
    ours = sorted(I.groebner(GREVLEX).elements, key=str)
    assert ours == sympy_reduced_groebner(I.generators, I.ring, "grevlex")


@settings(max_examples=25)
@given(ideals)
def test_lex_groebner_matches_sympy(I):
    lex = I.ring.with_order(LEX)
    # lex eliminants can exceed the default degree cap legitimately
    with limited(Limits(max_degree=400)):
        ours = sorted(I.groebner(LEX).elements, key=str)
    assert ours == sympy_reduced_groebner(I.generators, lex, "lex")


# -- local standard bases -------------------------------------------------------------------

def test_mora_examples():
    L = Ring("x y", LOCAL)
    B = mora_standard_basis([L("x - x^2")], L)
    assert [g.lm for g in B.elements] == [(1, 0)]
    B = mora_standard_basis([L("x^2 + y^3")], L)
    assert B.elements[0].lm == (2, 0)
    I = Ideal(R2, [R2("3x^2"), R2("2y")])
    assert colength(I) == 2


@settings(max_examples=40)
@given(ideals)
def test_standard_basis_agrees_with_sympy_lazard(I):
    lms = [g.lm for g in I.standard_basis().elements]
    ref = lazard_local_leading_monomials(I.generators, I.ring)
    n = I.ring.nvars
    assert monomial_ideal_dimension(lms, n) == monomial_ideal_dimension(ref, n)
    assert count_standard_monomials(lms, n) == count_standard_monomials(ref, n)


def generated_by(monos, m):
    return any(all(a <= b for a, b in zip(g, m)) for g in monos)


@settings(max_examples=60)
@given(ideals)
def test_mora_and_homogenisation_give_same_leading_ideal(I):
    L = I.ring.with_order(LOCAL)
    a = [g.lm for g in mora_standard_basis(I.generators, L).elements]
    b = [g.lm for g in lazard_standard_basis(I.generators, L).elements]
    assert all(generated_by(a, m) for m in b)
    assert all(generated_by(b, m) for m in a)


def test_homogenisation_handles_unit_heavy_generators():
    # taken in this order, Mora's weak normal forms ran past degree 30 here
    gens = [
        "x*z^3 + z^4 + 2*y*z^2 - 2*z^3 + 3*x*z + 3*y*z - y + z",
        "y*z^3 - z^4 + x*z^2 - 4*y*z^2 + 5*z^3 - x*y - 10*x*z - 4*y*z - 7*z^2 + 2*y - 2*z",
        "2*x^3 - 2*x*z^2 + y*z^2 - z^3 + x*y + 3*x*z + 4*z^2 + 2*x + 2*y",
        "2*x^2*y + 2*x*z^2 - y*z^2 + z^3 + x*y - x*z + 2*y*z - 2*z^2 + 2*y - 2*z",
        "2*x^2*z + 2*x*z^2 - y*z^2 + z^3 - x*y - 3*x*z - 4*z^2",
        "x*z + z^2",
        "y - z",
    ]
    R3 = Ring("x y z")
    with limited(Limits(max_degree=20)):
        assert local_dimension_at_origin(Ideal(R3, [R3(g) for g in gens])).dimension == 1


@settings(max_examples=40)
@given(ideals)
def test_standard_basis_lies_in_ideal_locally(I):
    B = I.standard_basis()
    for g in I.generators:
        assert I.local_contains(g)
    for g in B.elements:
        assert I.local_contains(g)


# -- ideal operations -----------------------------------------------------------------------

def test_sum_examples():
    x, y = R2.gens
    assert ideal_sum(Ideal(R2, [x]), Ideal(R2, [y])) == Ideal(R2, [x, y])
    A = Ideal(R2, [R2("x^2 - y")])
    assert A + Ideal.zero(R2) == A
    got = Ideal(R3, [R3("z")]) + Ideal(R3, [R3("x"), R3("y")])
    assert dimension(got).dimension == 0


def test_intersection_examples():
    x, y = R2.gens
    assert ideal_intersection(Ideal(R2, [x]), Ideal(R2, [y])) == Ideal(R2, [x * y])
    A = Ideal(R2, [R2("x^2 - y"), R2("x*y")])
    assert ideal_intersection(A, A) == A
    got = ideal_intersection(Ideal(R3, [R3("x"), R3("y")]), Ideal(R3, [R3("z")]))
    assert got == Ideal(R3, [R3("x*z"), R3("y*z")])


def test_quotient_examples():
    assert ideal_quotient(Ideal(R2, [R2("x*y")]), R2("x")) == Ideal(R2, [R2("y")])
    A = Ideal(R2, [R2("x^3 - y")])
    assert ideal_quotient(A, R2.one) == A
    got = ideal_quotient(Ideal(R2, [R2("x^2"), R2("x*y")]), R2("x"))
    assert got == Ideal(R2, [R2("x"), R2("y")])


def test_saturation_examples():
    assert saturate(Ideal(R2, [R2("x*y")]), Ideal(R2, [R2("x")])) == Ideal(R2, [R2("y")])
    got = saturate(Ideal(R3, [R3("x^2*z"), R3("y*z")]), Ideal(R3, [R3("z")]))
    assert got == Ideal(R3, [R3("x^2"), R3("y")])
    got = saturate(Ideal(R2, [R2("x - x^2")]), Ideal(R2, [R2("x")]))
    assert got == Ideal(R2, [R2("1 - x")])


def test_saturation_by_unit_and_zero_ideals():
    # removing the empty set changes nothing; removing everything leaves nothing
    A = Ideal(R2, [R2("x*y")])
    assert saturate(A, Ideal.unit(R2)) == A
    assert saturate(A, Ideal.zero(R2)).is_unit()


def test_saturation_methods_agree():
    A = Ideal(R3, [R3("x^2*z"), R3("y*z^3"), R3("x*y - z^2")])
    B = Ideal(R3, [R3("z")])
    assert saturate(A, B) == saturate(A, B, method="rabinowitsch")


def test_elimination_examples():
    S = Ring("x y u v")
    got = eliminate(Ideal(S, [S("u - x"), S("v - y^2"), S("y")]), ["u", "v"])
    assert got == Ideal(got.ring, [got.ring("v")])
    S2 = Ring("x u")
    got = eliminate(Ideal(S2, [S2("u - x")]), ["u"])
    assert got.is_zero() or got.groebner().elements == ()
    S3 = Ring("x u v")
    got = eliminate(Ideal(S3, [S3("u - x^2"), S3("v - x^3")]), ["u", "v"])
    assert got == Ideal(got.ring, [got.ring("u^3 - v^2")])


def test_elimination_vanishes_on_parametrised_points():
    S = Ring("s t a b c")
    A = Ideal(S, [S("a - s^2 + t"), S("b - s*t"), S("c - t^3 + s")])
    E = eliminate(A, ["a", "b", "c"])
    rng = random.Random(3)
    for _ in range(200):
        s, t = (rng.randint(-30, 30) for _ in range(2))
        pt = [s * s - t, s * t, t**3 - s]
        assert all(g.evaluate(pt) == 0 for g in E.generators)
    assert E.generators


def test_radical_membership_examples():
    assert radical_membership(R2("x"), Ideal(R2, [R2("x^2")]))
    assert not radical_membership(R2("y"), Ideal(R2, [R2("x")]))
    assert radical_membership(R2("x+y"), Ideal(R2, [R2("x^2"), R2("y^2")]))


def test_dimension_examples():
    assert dimension(Ideal(R3, list(R3.gens))).dimension == 0
    assert dimension(Ideal.zero(R3)).dimension == 3
    res = dimension(Ideal(R3, [R3("x*z"), R3("y*z")]))
    assert res.dimension == 2
    assert len(res.witness_independent_set) == 2
    assert dimension(Ideal.unit(R3)).dimension == -1


def test_local_dimension_examples():
    assert local_dimension_at_origin(Ideal(R2, [R2("x - x^2")])).dimension == 1
    assert local_dimension_at_origin(Ideal(R3, list(R3.gens))).dimension == 0
    assert local_dimension_at_origin(Ideal(R2, [R2("1 + x")])).dimension == -1


def test_colength_examples():
    assert colength(Ideal(R2, [R2("x"), R2("y")])) == 1
    assert colength(Ideal(R2, [R2("3x^2"), R2("3y^2")])) == 4
    assert colength(Ideal(R2, [R2("x")])) is INFINITE


def test_local_colength_ignores_far_points():
    # V = {0} with multiplicity 2, plus the point (1, 0)
    I = Ideal(R2, [R2("y"), R2("x^2*(x-1)")])
    assert colength(I) == 2
    assert colength(I, local=False) == 3


@settings(max_examples=60)
@given(ideals)
def test_saturation_contains_and_is_idempotent(I):
    B = Ideal(I.ring, [I.ring.gen(0)])
    S = saturate(I, B)
    assert all(S.contains(g) for g in I.generators)
    assert saturate(S, B) == S


@settings(max_examples=60)
@given(ideals, st.integers(0, 2))
def test_dimension_is_monotone(I, k):
    bigger = I + Ideal(I.ring, [I.ring.gen(k % I.ring.nvars)])
    assert dimension(bigger).dimension <= dimension(I).dimension


@settings(max_examples=60)
@given(ideals)
def test_local_dimension_bounded_by_dimension(I):
    loc = local_dimension_at_origin(I).dimension
    if loc >= 0:
        assert loc <= dimension(I).dimension


@settings(max_examples=60)
@given(ideals)
def test_colength_finite_iff_local_dimension_at_most_zero(I):
    finite = colength(I) is not INFINITE
    assert finite == (local_dimension_at_origin(I).dimension <= 0)


# -- resource limits ------------------------------------------------------------------------

def test_pair_cap_raises():
    I = Ideal(R3, [R3("x^2*y - z^2"), R3("x*y^2 - x"), R3("y*z - x^2")])
    with limited(Limits(max_pairs=2)):
        with pytest.raises(ResourceLimitError) as err:
            I.groebner()
    assert err.value.cap == "max_pairs"


def test_degree_cap_raises():
    I = Ideal(R2, [R2("x^5 - y^4"), R2("x^3*y - 1")])
    with limited(Limits(max_degree=4)):
        with pytest.raises(ResourceLimitError):
            I.groebner()


def test_limits_from_environment(monkeypatch):
    monkeypatch.setenv("GERMFORGE_LIMITS", "max-pairs=10, max_degree=7")
    lim = limits_from_env()
    assert (lim.max_pairs, lim.max_degree, lim.max_bits) == (10, 7, 1_000_000)
    monkeypatch.setenv("GERMFORGE_LIMITS", '{"max_bits": 99}')
    assert limits_from_env().max_bits == 99
    monkeypatch.setenv("GERMFORGE_LIMITS", "bogus=1")
    with pytest.raises(ValueError):
        limits_from_env()


def test_default_caps():
    assert Limits() == Limits(200_000, 60, 1_000_000)
