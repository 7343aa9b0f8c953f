import pytest

from toricpair import lattice as la
from toricpair.cones import (
    Cone,
    Fan,
    dual_cone,
    enumerate_box,
    faces,
    hilbert_basis,
    is_smooth,
    orthant,
    refines,
    smallest_containing_cone,
    star_subdivide,
)


@pytest.mark.parametrize("v, expected", [
    ((2, 4, 6), (1, 2, 3)),
    ((0, 1, 1), (0, 1, 1)),
    ((-3, 0, 9), (-1, 0, 3)),
])
def test_primitivize(v, expected):
    assert la.primitivize(v) == expected


def test_primitivize_rejects_zero():
    with pytest.raises(ValueError, match="zero vector"):
        la.primitivize((0, 0))


def test_elementary_divisors():
    assert la.elementary_divisors([(1, 0), (1, 2)]) == [1, 2]
    assert la.elementary_divisors([(2, 4, 4), (-6, 6, 12)]) == [2, 6]


def test_integer_kernel_is_saturated():
    basis = la.integer_kernel([(2, 4, 6)], 3)
    assert len(basis) == 2
    assert all(la.dot(b, (2, 4, 6)) == 0 for b in basis)
    assert la.elementary_divisors(basis) == [1, 1]


def test_orthant_is_self_dual():
    assert dual_cone(orthant(3)) == orthant(3)


def test_dual_of_a1_cone():
    assert dual_cone(Cone([(1, 0), (1, 2)])).rays == ((0, 1), (2, -1))


def test_dual_of_half_line_is_half_plane():
    d = dual_cone(Cone([(1, 0)]))
    assert d.is_full_dimensional and not d.is_pointed
    assert d == Cone([(1, 0), (0, 1), (0, -1)])
    assert d.contains((0, -5)) and not d.contains((-1, 0))


@pytest.mark.parametrize("rays, smooth", [
    ([(1, 0), (0, 1)], True),
    ([(1, 0), (1, 2)], False),
    ([(0, 1, 1), (1, 0, 1), (1, 1, 0)], False),
    ([(1, 0, 0), (1, 1, 0)], True),
])
def test_is_smooth(rays, smooth):
    assert is_smooth(Cone(rays)) is smooth


def test_faces_of_plane_orthant():
    fs = faces(orthant(2))
    assert len(fs) == 4
    assert {f.rays for f in fs} == {(), ((1, 0),), ((0, 1),), ((0, 1), (1, 0))}


def test_faces_of_ray_and_space_orthant():
    assert len(faces(Cone([(1, 1)]))) == 2
    dims = sorted(f.dim for f in faces(orthant(3)))
    assert dims == [0, 1, 1, 1, 2, 2, 2, 3]


@pytest.fixture
def split_plane():
    return star_subdivide(Fan.from_cone(orthant(2)), (1, 1))


@pytest.mark.parametrize("v, rays", [
    ((2, 2), ((1, 1),)),
    ((3, 1), ((1, 0), (1, 1))),
    ((0, 5), ((0, 1),)),
])
def test_smallest_containing_cone(split_plane, v, rays):
    assert smallest_containing_cone(split_plane, v).rays == rays


@pytest.mark.parametrize("rays, basis", [
    ([(1, 0), (0, 1)], [(0, 1), (1, 0)]),
    ([(1, 0), (1, 2)], [(1, 0), (1, 1), (1, 2)]),
    ([(1, 0), (1, 4)], [(1, 0), (1, 1), (1, 2), (1, 3), (1, 4)]),
    ([(0, 1, 1), (1, 0, 1), (1, 1, 0)], [(0, 1, 1), (1, 0, 1), (1, 1, 0), (1, 1, 1)]),
])
def test_hilbert_basis(rays, basis):
    assert hilbert_basis(Cone(rays)) == basis


def test_hilbert_basis_of_lower_dimensional_cone():
    assert hilbert_basis(Cone([(1, 0, 0), (1, 2, 0)])) == [(1, 0, 0), (1, 1, 0), (1, 2, 0)]


def test_star_subdivide_plane(split_plane):
    assert {c.rays for c in split_plane.maximal_cones} == {((1, 0), (1, 1)), ((0, 1), (1, 1))}


def test_star_subdivide_space():
    fan = star_subdivide(Fan.from_cone(orthant(3)), (1, 1, 1))
    assert len(fan.maximal_cones) == 3
    for c in fan.maximal_cones:
        assert (1, 1, 1) in c.rays
        assert sum(1 for r in c.rays if sum(r) == 1) == 2


def test_star_subdivide_existing_ray_is_noop(split_plane):
    assert star_subdivide(split_plane, (1, 1)) == split_plane


def test_star_subdivide_errors(split_plane):
    with pytest.raises(ValueError, match="primitive"):
        star_subdivide(split_plane, (2, 2))
    with pytest.raises(ValueError, match="outside"):
        star_subdivide(split_plane, (-1, 1))


def test_refines(split_plane):
    base = Fan.from_cone(orthant(2))
    other = star_subdivide(base, (1, 2))
    assert refines(split_plane, base)
    assert refines(split_plane, split_plane)
    assert not refines(split_plane, other)
    assert not refines(base, split_plane)


def test_refines_needs_equal_supports(split_plane):
    with pytest.raises(ValueError, match="different supports"):
        refines(Fan.from_cone(Cone([(1, 0), (1, 1)])), split_plane)


def test_enumerate_box():
    assert enumerate_box(orthant(2), 1) == [(0, 1), (1, 0), (1, 1)]
    assert enumerate_box(Cone([(1, 0), (1, 2)]), 2) == [(1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2)]
    assert enumerate_box(Cone([(0, 1)]), 2) == [(0, 1), (0, 2)]


def test_enumerate_box_needs_positive_bound():
    with pytest.raises(ValueError):
        enumerate_box(orthant(2), 0)


def test_cone_from_inequalities():
    assert Cone.from_inequalities([(1, 0), (0, 1)], 2) == orthant(2)


def test_redundant_generators_are_dropped():
    c = Cone([(1, 0), (1, 1), (0, 1), (2, 2)])
    assert c.rays == ((0, 1), (1, 0))


def test_many_generators_hull():
    # more generators than the direct facet search handles comfortably
    gens = [(1, 0, 1), (2, 1, 1), (2, 2, 1), (1, 3, 1), (0, 3, 1), (-1, 2, 1), (-1, 1, 1), (0, 0, 1),
            (0, 1, 1), (1, 1, 1)]
    c = Cone(gens)
    assert len(c.rays) == 8 and (1, 1, 1) not in c.rays
    assert len(c.facet_normals) == 8
