import random
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from germforge import Ring
from germforge.germ import MapGerm, compose, identity
from germforge.ideal import Ideal, local_dimension_at_origin, saturate
from germforge.tameness import (
    check_equivalent_forms,
    discriminant_condition,
    germ_subset,
    germ_subset_of_origin,
    is_tame,
    is_tamely_composable,
    zero_fiber_shortcut,
)

from conftest import corpus_names, function_target_names, identity_names, load

R2 = Ring("x y")
R3 = Ring("x y z")


def I(ring, *gens):
    return Ideal(ring, [ring(g) for g in gens])


@lru_cache(maxsize=None)
def sweep(name):
    """(F tame, composable, H tame, discriminant condition) for one fixture."""
    gf = load(name)
    F, G = gf.maps["F"], gf.maps["G"]
    rng = random.Random(0)
    comp = is_tamely_composable(F, G, rng=rng)
    return {
        "F": is_tame(F, rng=random.Random(0)).tame.holds,
        "shortcut": zero_fiber_shortcut(F),
        "composable": comp.verdict.holds,
        "H": is_tame(comp.H, rng=random.Random(0)).tame.holds,
        "disc": discriminant_condition(F, G).holds,
        "forms": check_equivalent_forms(F, G, report=comp),
    }


# -- germ inclusion primitives -------------------------------------------------------------

def test_subset_of_origin_examples():
    assert germ_subset_of_origin(I(R2, "x", "y")).holds
    v = germ_subset_of_origin(I(R2, "x"))
    assert not v.holds and v.certificate["local_dim"] == 1
    v = germ_subset_of_origin(I(R2, "1+x"))
    assert v.holds and v.certificate["kind"] == "origin-excluded"


def test_subset_of_origin_uses_real_points():
    # x^2 + y^2 = 0 is a point over the reals, two lines over C
    A = I(R2, "x^2+y^2")
    assert germ_subset_of_origin(A).holds
    v = germ_subset_of_origin(A, real=False)
    assert not v.holds and v.caveats


def test_subset_examples():
    assert germ_subset(I(R2, "x^2"), I(R2, "x")).holds
    assert not germ_subset(I(R2, "x*y"), I(R2, "x")).holds
    v = germ_subset(I(R2, "x-x^2"), I(R2, "x"))
    assert v.holds
    assert v.certificate["parts"][0]["kind"] == "origin-excluded"


def test_subset_needs_one_ring():
    with pytest.raises(ValueError):
        germ_subset(I(R2, "x"), I(R3, "x"))


POOL = ["x", "y", "z", "x-y", "x+y^2", "y-z^2", "1+x", "x*y", "x^2-z^3"]


def ideals3():
    return st.lists(st.sampled_from(POOL), min_size=1, max_size=3).map(lambda g: I(R3, *g))


@settings(max_examples=60)
@given(ideals3())
def test_subset_is_reflexive(A):
    assert germ_subset(A, A).holds


@settings(max_examples=60)
@given(ideals3(), ideals3(), ideals3())
def test_subset_is_transitive(A, B, C):
    if germ_subset(A, B, real=False).holds and germ_subset(B, C, real=False).holds:
        assert germ_subset(A, C, real=False).holds


@settings(max_examples=40)
@given(ideals3(), ideals3())
def test_subset_of_sum_is_immediate(A, B):
    assert germ_subset(A + B, A).holds


# -- tameness -----------------------------------------------------------------------------

def test_projection_is_tame():
    R = is_tame(MapGerm([R3("x"), R3("y")]))
    assert R.tame.holds
    assert list(R.milnor_union_ideal.reduced_generators()) == [R3("z")]


def test_example_map_is_tame_and_composite_is_not():
    gf = load("four_to_three")
    v = is_tame(gf.maps["F"]).tame
    assert v.holds and v.certificate["kind"] == "zero-fiber-is-origin"
    assert not is_tame(gf.maps["H"]).tame.holds


def test_failing_verdict_keeps_its_ideal():
    v = is_tame(load("four_to_three").maps["H"]).tame
    assert v.lhs_ideal is not None
    assert local_dimension_at_origin(v.lhs_ideal).dimension >= 1


@pytest.mark.parametrize("name", corpus_names())
def test_tameness_matches_complex_closure_test(name):
    # a complex certificate always implies the real verdict
    G = load(name).maps["G"]
    R = is_tame(G)
    IG = G.zero_fiber_ideal()
    T = saturate(R.milnor_union_ideal, IG) + IG
    if local_dimension_at_origin(T).dimension <= 0:
        assert R.tame.holds


def test_shortcut_examples():
    assert zero_fiber_shortcut(MapGerm([R3("x"), R3("y^2+z^2")]))
    assert zero_fiber_shortcut(load("four_to_three").maps["F"])
    assert not zero_fiber_shortcut(MapGerm([R2("x"), R2("x*y")]))


def test_discriminant_condition_examples():
    S = Ring("u v")
    sub = MapGerm([R2("x"), R2("y")], target_ring=S)
    assert discriminant_condition(sub, MapGerm([S("u^2+v^3")])).holds
    gf = load("four_to_three")
    assert not discriminant_condition(gf.maps["F"], gf.maps["G"]).holds
    node = load("icis_node_pair")
    assert discriminant_condition(node.maps["F"], node.maps["G"]).holds


# -- composition -----------------------------------------------------------------------------

def test_example_pair_is_not_tamely_composable():
    s = sweep("four_to_three")
    assert s["F"] and not s["composable"] and not s["H"] and not s["disc"]


@pytest.mark.parametrize("name", identity_names())
def test_identity_reduces_to_tameness(name):
    gf = load(name)
    G = gf.maps["G"]
    assert sweep(name)["composable"] == is_tame(G).tame.holds


def test_identity_built_in_code():
    G = MapGerm([R2("x^2-y^3")])
    F = identity(R2).with_target(R2)
    assert is_tamely_composable(F, G).verdict.holds == is_tame(G).tame.holds


@pytest.mark.parametrize("name", corpus_names())
def test_tame_and_composable_gives_tame_composite(name):
    s = sweep(name)
    if (s["F"] or s["shortcut"]) and s["composable"]:
        assert s["H"]


@pytest.mark.parametrize("name", corpus_names())
def test_tame_composite_gives_composable(name):
    s = sweep(name)
    if s["H"]:
        assert s["composable"]


@pytest.mark.parametrize("name", corpus_names())
def test_discriminant_condition_gives_composable(name):
    s = sweep(name)
    if s["disc"] and s["F"]:
        assert s["composable"]


@pytest.mark.parametrize("name", function_target_names())
def test_function_targets_are_composable(name):
    s = sweep(name)
    assert s["composable"] and s["H"]


@pytest.mark.parametrize("name", corpus_names())
def test_equivalent_forms_agree(name):
    forms = sweep(name)["forms"]
    assert forms.agree
    assert forms.form_31.holds == sweep(name)["composable"]


def test_composition_report_carries_H():
    gf = load("four_to_three")
    R = is_tamely_composable(gf.maps["F"], gf.maps["G"])
    assert R.H.components == compose(gf.maps["G"], gf.maps["F"]).components
    assert R.as_dict()["verdict"]["holds"] is False
