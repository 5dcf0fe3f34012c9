import warnings
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parhull.exact import affine_rank
from parhull.lattice import HullError, isomorphic
from parhull.layers import (LayeredPointSet, apex_augment, crossing_faces, fbound_formula, gap_sizes,
                            layer_signature, master_bound, stack, stacked_hull)
from parhull.perturb import make_layerwise_simplicial

SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]
TRIANGLE = [(0, 0), (1, 0), (0, 1)]


def two(a, b, d=2):
    return LayeredPointSet(d, ((0, tuple(a)), (1, tuple(b))))


def layered_sets(d, m_min, m_max, n_max):
    layer = st.lists(st.tuples(*[st.integers(-5, 5)] * d), min_size=1, max_size=n_max, unique=True)
    return st.lists(layer, min_size=m_min, max_size=m_max).map(
        lambda ls: LayeredPointSet(d, tuple((Fraction(i), tuple(p)) for i, p in enumerate(ls))))


def test_layered_validation():
    with pytest.raises(ValueError):
        LayeredPointSet(2, ((1, ((0, 0),)), (0, ((1, 1),))))
    with pytest.raises(ValueError):
        LayeredPointSet(2, ((0, ((0, 0, 0),)),))
    with pytest.raises(ValueError):
        LayeredPointSet(2, ())
    ls = LayeredPointSet.from_layers([(1, [(0, 0)]), (0, [(1, 1)])])
    assert ls.heights == (0, 1)


def test_single_layer_is_flagged():
    with pytest.warns(UserWarning):
        lat = stacked_hull(LayeredPointSet(2, ((0, tuple(SQUARE)),)))
    assert lat.dim <= 2


def test_two_squares_make_a_cube():
    lat = stacked_hull(two(SQUARE, SQUARE))
    assert lat.f_vector()[1:] == (8, 12, 6)


def test_rotated_top_square():
    top = [(Fraction(1, 2), -1), (2, Fraction(1, 2)), (Fraction(1, 2), 2), (-1, Fraction(1, 2))]
    lat = stacked_hull(two(SQUARE, top))
    assert lat.f_vector()[1] == 8
    assert lat.f_vector()[1:] == (8, 16, 10)


def test_cube_signatures_and_crossings():
    ls = two(SQUARE, SQUARE)
    lat = stacked_hull(ls)
    sigs = sorted(layer_signature(F, ls) for F in lat.facets)
    assert sigs == [(0, 4)] + [(2, 2)] * 4 + [(4, 0)]
    cross = crossing_faces(lat, ls, 1)
    assert [f.dim for f in cross] == [1] * 4 + [2] * 4
    for f in cross:
        a = layer_signature(f, ls)
        assert a[0] >= 1 and a[1] >= 1


def test_gap_out_of_range():
    ls = two(SQUARE, SQUARE)
    with pytest.raises(ValueError):
        crossing_faces(stacked_hull(ls), ls, 2)


def test_fbound_examples():
    # admissible A have every entry at most k, so A = (0, 2) is out for k = 1
    assert fbound_formula(1, (3, 2)) == 6
    assert fbound_formula(1, (2, 2)) == 4
    for n1 in range(1, 8):
        assert fbound_formula(1, (n1, 1)) == n1


@given(st.integers(0, 4), st.lists(st.integers(0, 6), min_size=1, max_size=4))
def test_fbound_matches_direct_enumeration(k, n):
    from itertools import product
    total = 0
    for A in product(range(k + 1), repeat=len(n)):
        if sum(A) == k + 1 and A[-1] >= 1:
            term = 1
            for ni, a in zip(n, A):
                term *= comb(ni, a)
            total += term
    assert fbound_formula(k, n) == total


def test_master_bound_examples():
    assert master_bound((4, 5), 3) == 40
    assert master_bound((2, 3), 5) == 30
    assert master_bound((7,), 3) == 0
    with pytest.warns(UserWarning):
        master_bound((2, 2), 4)


def test_apex_cube():
    rep = apex_augment(two(SQUARE, SQUARE))
    assert rep.holds
    assert rep.lattice.f_vector()[1:] == (10, 20, 12)
    assert [r[1] for r in rep.rows] == [10, 20, 12]


def test_apex_prism():
    rep = apex_augment(two(TRIANGLE, TRIANGLE))
    assert rep.holds
    assert rep.lattice.f_vector()[1:] == (8, 15, 9)


def test_apex_segments():
    rep = apex_augment(LayeredPointSet(1, ((0, ((0,), (1,))), (1, ((0,), (1,))))))
    assert rep.holds
    assert rep.lattice.f_vector()[1:] == (6, 6)


def test_apex_needs_two_layers():
    with pytest.raises(HullError):
        apex_augment(LayeredPointSet(2, ((0, tuple(SQUARE)),)))


@settings(max_examples=25)
@given(layered_sets(2, 2, 3, 6))
def test_crossing_bound(ls):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        lat = stacked_hull(ls)
    for gap in range(1, ls.m):
        n = gap_sizes(ls, lat, gap)
        faces = crossing_faces(lat, ls, gap)
        for k in range(ls.d + 1):
            assert sum(1 for f in faces if f.dim == k) <= fbound_formula(k, n)


@settings(max_examples=20)
@given(layered_sets(3, 2, 3, 5))
def test_only_extreme_layers_are_facets(ls):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        lat = stacked_hull(ls)
    if lat.dim < 4:
        return
    index = ls.layer_index()
    for F in lat.facets:
        layers = {index[v] for v in F.vertices}
        if len(layers) == 1:
            assert layers <= {0, ls.m - 1}


spanning_layer = st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5)), min_size=3, max_size=6,
                          unique=True).filter(lambda p: affine_rank(p) == 2)


@settings(max_examples=10)
@given(spanning_layer, spanning_layer)
def test_apex_identity_after_simplicial_pulls(a, b):
    out = make_layerwise_simplicial(two(a, b))
    assert apex_augment(out).holds


def test_degenerate_extreme_layer_is_rejected():
    with pytest.raises(HullError):
        make_layerwise_simplicial(two(SQUARE, [(0, 0)]))


def test_stack_embeds_heights():
    pts = stack(two(TRIANGLE, TRIANGLE))
    assert pts[0] == (0, 0, 0) and pts[-1] == (0, 1, 1)


def test_cube_and_rebuilt_cube_agree():
    a = stacked_hull(two(SQUARE, SQUARE))
    b = stacked_hull(two(list(reversed(SQUARE)), SQUARE))
    assert isomorphic(a, b)
