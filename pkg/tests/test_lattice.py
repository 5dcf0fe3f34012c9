from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CUBE, OCTAHEDRON, TETRA, brute_facets, small_points
from parhull.exact import Hyperplane, affine_rank
from parhull.generators import cyclic_points
from parhull.lattice import (HullError, dehn_sommerville_check, h_vector, hull, isomorphic, polar_dual,
                             reconstruct_f_from_h, slice_lattice)


def centroid(lat):
    vs = lat.vertices
    return tuple(sum(lat.points[v][i] for v in vs) / len(vs) for i in range(lat.ambient_dim))


def test_square():
    lat = hull([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert lat.face_counts() == [1, 4, 4, 1]


def test_tetrahedron():
    assert hull(TETRA).f_vector()[1:] == (4, 6, 4)


def test_cube_lattice():
    lat = hull(CUBE)
    assert lat.f_vector()[1:] == (8, 12, 6)
    assert all(len(F.vertices) == 4 for F in lat.facets)
    assert not lat.is_simplicial()
    assert lat.check() == []


def test_interior_and_duplicate_points_are_dropped():
    pts = CUBE + [(Fraction(1, 2),) * 3, (0, 0, 0)]
    lat = hull(pts)
    assert sorted(lat.vertices) == list(range(8))


def test_lower_dimensional_input():
    lat = hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)])
    assert lat.dim == 2 and lat.ambient_dim == 3
    assert lat.face_counts() == [1, 4, 4, 1]


def test_empty_input():
    with pytest.raises(HullError):
        hull([])


def test_dump_format():
    lines = hull([(0, 0), (1, 0), (0, 1)]).dump().splitlines()
    assert "0; 0" in lines and "1; 0,1" in lines


@settings(max_examples=40)
@given(small_points(3, 4, 12))
def test_facets_match_brute_force(pts):
    if affine_rank(pts) < 3:
        return
    lat = hull(pts)
    got = {frozenset(F.vertices) for F in lat.facets}
    assert got == brute_facets(pts)


@settings(max_examples=20)
@given(small_points(4, 5, 10, -4, 4))
def test_facets_match_brute_force_4d(pts):
    if affine_rank(pts) < 4:
        return
    got = {frozenset(F.vertices) for F in hull(pts).facets}
    assert got == brute_facets(pts)


@settings(max_examples=30)
@given(small_points(3, 4, 14), st.integers(0, 10**6))
def test_insertion_order_does_not_matter(pts, seed):
    a = hull(pts)
    b = hull(pts, seed=seed)
    assert a.signature() == b.signature()
    assert a.check() == [] and b.check() == []


@settings(max_examples=30)
@given(small_points(4, 5, 12, -5, 5))
def test_euler_relation(pts):
    lat = hull(pts)
    assert lat.euler_characteristic() == 0


def test_h_vector_examples():
    assert h_vector((1, 4, 6, 4), 3) == (1, 1, 1, 1)
    assert h_vector((1, 6, 12, 8), 3) == (1, 3, 3, 1)
    assert h_vector(hull(OCTAHEDRON)) == (1, 3, 3, 1)
    with pytest.raises(HullError):
        h_vector(hull(CUBE))


def test_dehn_sommerville_examples():
    assert dehn_sommerville_check((1, 3, 3, 1))
    assert reconstruct_f_from_h((1, 3, 3, 1)) == (1, 6, 12, 8)
    assert not dehn_sommerville_check((1, 2, 3, 1))


def test_cyclic_4_8():
    lat = hull(cyclic_points(8, 2))
    h = h_vector(lat)
    assert dehn_sommerville_check(h)
    assert reconstruct_f_from_h(h)[-1] == 20


def test_cube_dual_is_octahedron():
    cube = hull(CUBE)
    dual = polar_dual(cube, centroid(cube))
    assert dual.f_vector()[1:] == (6, 12, 8)
    assert isomorphic(dual, hull(OCTAHEDRON))


def test_simplex_is_self_dual():
    lat = hull(TETRA)
    assert isomorphic(polar_dual(lat, centroid(lat)), lat)


def test_polar_dual_needs_interior_center():
    lat = hull(CUBE)
    with pytest.raises(HullError):
        polar_dual(lat, (0, 0, 0))


@settings(max_examples=15)
@given(small_points(3, 5, 12))
def test_double_dual(pts):
    lat = hull(pts)
    if lat.dim < 3:
        return
    c = centroid(lat)
    twice = polar_dual(polar_dual(lat, c), c)
    assert isomorphic(lat, twice)
    assert twice.signature() == lat.signature()


def test_cube_axis_slice():
    cube = hull(CUBE)
    sec = slice_lattice(cube, Hyperplane((1, 0, 0), Fraction(1, 2)))
    assert sec.dim == 2 and sec.f_vector()[1:] == (4, 4)
    for e in sec.faces_of_dim(1):
        assert cube.faces[sec.tags[e.key]].dim == 2


def test_tetra_slice_is_triangle():
    sec = slice_lattice(hull(TETRA), Hyperplane((0, 0, 1), Fraction(1, 3)))
    assert sec.f_vector()[1:] == (3, 3)


def test_slice_missing_polytope():
    with pytest.raises(HullError):
        slice_lattice(hull(CUBE), Hyperplane((1, 0, 0), 5))


@settings(max_examples=20)
@given(small_points(4, 6, 12, -5, 5), st.integers(-2, 2))
def test_slice_matches_hull_of_edge_crossings(pts, level):
    lat = hull(pts)
    plane = Hyperplane((1, 1, 0, 1), Fraction(2 * level + 1, 2))
    sides = {plane.side(lat.points[v]) for v in lat.vertices}
    if lat.dim < 4 or not {-1, 1} <= sides:
        return
    sec = slice_lattice(lat, plane)
    crossings = []
    for e in lat.faces_of_dim(1):
        a, b = (lat.points[v] for v in e.vertices)
        va, vb = plane.evaluate(a), plane.evaluate(b)
        if va * vb < 0:
            t = va / (va - vb)
            crossings.append(tuple(x + t * (y - x) for x, y in zip(a, b)))
    brute = hull(crossings)
    assert sec.face_counts() == brute.face_counts()
    assert isomorphic(sec, brute)
