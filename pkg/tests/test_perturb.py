from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CUBE, TETRA, small_points
from parhull.exact import Hyperplane
from parhull.lattice import hull, isomorphic
from parhull.layers import LayeredPointSet, stacked_hull
from parhull.perturb import (PullError, PullLog, Side, classify, make_layerwise_simplicial,
                             off_extreme_simplicial, pull_system, pull_vertex)

PYRAMID = [(0, 0, 0), (2, 0, 0), (2, 2, 0), (0, 2, 0), (1, 1, 2)]
SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]


def facet_x1(lat):
    return next(F for F in lat.facets if all(lat.points[v][0] == 1 for v in F.vertices))


def test_classify_cube_facet():
    lat = hull(CUBE)
    F = facet_x1(lat)
    assert classify((2, 0, 0), F) is Side.BEYOND
    assert classify((0, 0, 0), F) is Side.BENEATH
    assert classify((1, Fraction(1, 2), Fraction(1, 2)), F) is Side.ON


def monotone(old, new):
    fo, fn = old.f_vector(), new.f_vector()
    return fo[1] == fn[1] and all(b >= a for a, b in zip(fo[2:], fn[2:]))


def test_pull_tetrahedron_vertex():
    lat = hull(TETRA)
    for v in range(4):
        _, new = pull_vertex(lat, v)
        assert isomorphic(new, lat)


def test_pull_pyramid_apex():
    lat = hull(PYRAMID)
    _, new = pull_vertex(lat, 4)
    assert new.f_vector() == lat.f_vector()
    assert isomorphic(new, lat)


def test_pull_pyramid_base_vertex_in_base_plane():
    lat = hull(PYRAMID)
    base = Hyperplane((0, 0, 1), 0)
    new_pt, new = pull_vertex(lat, 0, base)
    assert new_pt[2] == 0
    assert monotone(lat, new)
    base_facets = [F for F in new.facets if all(new.points[v][2] == 0 for v in F.vertices)]
    assert len(base_facets) == 1 and len(base_facets[0].vertices) == 4


def test_pulled_point_is_beyond_its_facets():
    lat = hull(CUBE)
    new_pt, _ = pull_vertex(lat, 0)
    for F in lat.facets:
        expected = Side.BEYOND if 0 in F.key else Side.BENEATH
        assert classify(new_pt, F) is expected


def test_pull_rejects_bad_input():
    lat = hull(CUBE + [(Fraction(1, 2),) * 3])
    with pytest.raises(PullError):
        pull_vertex(lat, 8)
    with pytest.raises(PullError):
        pull_vertex(lat, 0, Hyperplane((0, 0, 1), 1))
    flat = hull([(0, 0, 0), (1, 0, 0), (0, 1, 0)])
    with pytest.raises(PullError):
        pull_vertex(flat, 0)


def test_pull_system_skips_facets_inside_the_constraint():
    lat = hull(CUBE)
    beyond, beneath = pull_system(lat, 0, Hyperplane((0, 0, 1), 0))
    assert len(beyond) == 2 and len(beneath) == 3


@settings(max_examples=25)
@given(small_points(3, 5, 10), st.data())
def test_pull_monotone_unconstrained(pts, data):
    lat = hull(pts)
    if lat.dim < 3:
        return
    v = data.draw(st.sampled_from(sorted(lat.vertices)))
    _, new = pull_vertex(lat, v)
    assert monotone(lat, new)
    assert sorted(new.vertices) == sorted(lat.vertices)


def test_cube_layers_become_simplicial():
    ls = LayeredPointSet(2, ((0, tuple(SQUARE)), (1, tuple(SQUARE))))
    log = PullLog()
    out = make_layerwise_simplicial(ls, log)
    lat = stacked_hull(out)
    assert lat.f_vector()[3] >= 8
    assert off_extreme_simplicial(lat, out) == []
    assert [e[0] for e in log.entries] == ["bottom"] * 4 + ["top"] * 4
    assert out.heights == ls.heights and out.sizes == ls.sizes


def test_generic_prism_is_unchanged_up_to_isomorphism():
    top = [(Fraction(1, 3), Fraction(-1, 5)), (Fraction(6, 5), Fraction(1, 2)), (Fraction(-1, 4), Fraction(4, 3))]
    ls = LayeredPointSet(2, ((0, ((0, 0), (1, 0), (0, 1))), (1, tuple(top))))
    before = stacked_hull(ls)
    after = stacked_hull(make_layerwise_simplicial(ls))
    assert isomorphic(before, after)


def test_three_square_layers():
    ls = LayeredPointSet(2, tuple((h, tuple(SQUARE)) for h in (0, 1, 2)))
    before = stacked_hull(ls)
    out = make_layerwise_simplicial(ls)
    lat = stacked_hull(out)
    assert off_extreme_simplicial(lat, out) == []
    assert all(b >= a for a, b in zip(before.f_vector()[2:], lat.f_vector()[2:]))
