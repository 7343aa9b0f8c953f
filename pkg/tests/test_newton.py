import pytest

from toricpair.cones import Cone, Fan, orthant, star_subdivide
from toricpair.newton import InvalidIdealError, dual_fan, make_ideal, newton_vertices, order

from .conftest import cyclic_exponents


def test_cyclic_ideal_is_already_minimal():
    ideal = make_ideal(cyclic_exponents(2), orthant(3))
    assert ideal.exponents == ((0, 2, 1), (1, 0, 2), (2, 1, 0))


def test_minimalization_drops_redundant_generator():
    assert make_ideal([(1, 0), (1, 1)], orthant(2)).exponents == ((1, 0),)


def test_ideal_on_a1_cone_accepted():
    ideal = make_ideal([(1, 0)], Cone([(1, 0), (1, 2)]))
    assert ideal.exponents == ((1, 0),)
    assert order((1, 1), ideal) == 1


def test_exponent_outside_dual_cone():
    with pytest.raises(InvalidIdealError, match="exponent not in dual cone"):
        make_ideal([(-1, 0, 0)], orthant(3))


def test_unit_ideal_rejected():
    with pytest.raises(InvalidIdealError, match="unit ideal"):
        make_ideal([(0, 0), (1, 0)], orthant(2))


def test_singular_locus_must_lie_in_z():
    # the A1 singularity is isolated, so any nonunit ideal contains it
    make_ideal([(2, -1)], Cone([(1, 0), (1, 2)]))
    make_ideal([(0, 1)], Cone([(1, 0), (1, 2)]))
    # A1 times a line: z alone misses the singular curve
    sigma = Cone([(1, 0, 0), (1, 2, 0), (0, 0, 1)])
    with pytest.raises(InvalidIdealError, match="singular locus"):
        make_ideal([(0, 0, 1)], sigma)
    make_ideal([(1, 0, 0)], sigma)


@pytest.mark.parametrize("d", [1, 2, 3, 5])
def test_order_values(d):
    ideal = make_ideal(cyclic_exponents(d), orthant(3))
    assert order((1, 1, 1), ideal) == d + 1
    assert order((0, 1, 1), ideal) == 1
    assert order((1, 0, 0), ideal) == 0


def test_newton_vertices():
    assert set(newton_vertices(make_ideal(cyclic_exponents(2), orthant(3))).vertices) == {
        (2, 1, 0), (0, 2, 1), (1, 0, 2)}
    assert set(newton_vertices(make_ideal([(1, 0), (0, 1)], orthant(2))).vertices) == {(1, 0), (0, 1)}
    poly = newton_vertices(make_ideal([(2, 0), (1, 1), (0, 2)], orthant(2)))
    assert set(poly.vertices) == {(2, 0), (0, 2)}
    assert poly.support((1, 1)) == 2


def test_dual_fan_of_maximal_ideal_is_blowup():
    df = dual_fan(make_ideal([(1, 0), (0, 1)], orthant(2)))
    assert df.fan == star_subdivide(Fan.from_cone(orthant(2)), (1, 1))


def test_dual_fan_of_cyclic_ideal_has_central_ray():
    df = dual_fan(make_ideal(cyclic_exponents(2), orthant(3)))
    assert (1, 1, 1) in df.rays
    assert len(df.fan.maximal_cones) == 3
    assert set(df.rays) == {(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (0, 2, 1), (1, 0, 2), (2, 1, 0)}


def test_dual_fan_of_principal_ideal_is_face_fan():
    df = dual_fan(make_ideal([(1, 0)], orthant(2)))
    assert df.fan == Fan.from_cone(orthant(2))


def test_linear_form_matches_order():
    ideal = make_ideal(cyclic_exponents(3), orthant(3))
    df = dual_fan(ideal)
    for cone in df.fan.maximal_cones:
        m = df.linear_form(cone)
        for r in cone.rays:
            assert sum(a * b for a, b in zip(r, m)) == order(r, ideal)
