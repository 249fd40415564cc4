import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from germforge import Ideal, Ring
from germforge.realgerm import psd_linear_factors, real_germ_is_origin, strip_local_units

R2 = Ring("x y")
R3 = Ring("x y z")


def I(ring, *gens):
    return Ideal(ring, [ring(g) for g in gens])


def test_psd_forms_split_into_linear_forms():
    assert psd_linear_factors(R2("x^2+y^2")) == [R2("x"), R2("y")]
    assert psd_linear_factors(R2("-x^2-2x*y-y^2")) == [R2("x+y")]
    assert len(psd_linear_factors(R2("x^2+2x*y+2y^2"))) == 2


@pytest.mark.parametrize("q", ["x^2-y^2", "x*y", "x^3", "x^2+y", "x^2-2x*y+y^2-y^2-y^2"])
def test_indefinite_or_non_quadratic_forms_are_refused(q):
    assert psd_linear_factors(R2(q)) is None


def test_strip_local_units():
    assert strip_local_units(R2("(x^2+y^2)*(1+x)")) == R2("x^2+y^2")
    assert strip_local_units(R2("x*(2+y)*(3-x)")) == R2("x")
    assert strip_local_units(R2("1+x")) == R2("1+x")


@pytest.mark.parametrize(
    "gens",
    [["x^2+y^2"], ["x^2+2x*y+2y^2"], ["(x^2+y^2)*(1+x)"], ["x^2+y^2+x^3"]],
)
def test_certified_real_points(gens):
    assert real_germ_is_origin(I(R2, *gens)) is not None


def test_certified_in_three_variables():
    assert real_germ_is_origin(I(R3, "x^2+y^2+z^2")) is not None
    assert real_germ_is_origin(I(R3, "x^2+y^2", "z")) is not None


@pytest.mark.parametrize(
    "ring, gens",
    [
        (R2, ["x^2-y^2"]),
        (R2, ["x^2*y+y^3"]),
        (R2, ["(x^2+y^2)*(x-y^2)"]),
        (R3, ["x^2+y^2"]),
        (R3, ["x^2+y^2-z^3"]),
    ],
)
def test_real_curves_are_not_certified(ring, gens):
    assert real_germ_is_origin(I(ring, *gens)) is None


MULTIPLIERS = ["1", "x", "y+z", "1+x^2", "x*y-z", "2+y"]


@settings(max_examples=60)
@given(
    st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(1, 3)),
    st.lists(st.tuples(st.sampled_from(MULTIPLIERS), st.sampled_from(MULTIPLIERS)), min_size=1, max_size=3),
)
def test_never_certifies_an_ideal_containing_a_real_line(direction, mults):
    # every generator vanishes on the line t * (a, b, c)
    a, b, c = direction
    l1 = R3(f"{c}*x - {a}*z")
    l2 = R3(f"{c}*y - {b}*z")
    gens = [R3(m1) * l1 + R3(m2) * l2 for m1, m2 in mults]
    gens = [g for g in gens if g]
    if not gens:
        return
    assert real_germ_is_origin(Ideal(R3, gens)) is None
