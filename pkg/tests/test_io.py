from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from parhull.io import (FormatError, format_layered, format_points, format_report, format_spheres,
                        format_witnesses, parse_layered, parse_points, parse_spheres)
from parhull.layers import LayeredPointSet
from parhull.spheres import SphereSet, sphere_hull_faces

rat = st.fractions(max_denominator=30, min_value=-50, max_value=50)


def test_points_with_comments():
    text = "# square\n2 4\n0 0\n1 0\n\n1 1  # corner\n0 1\n"
    assert parse_points(text) == [(0, 0), (1, 0), (1, 1), (0, 1)]


@given(st.lists(st.tuples(rat, rat, rat), min_size=1, max_size=6))
def test_points_round_trip(pts):
    assert parse_points(format_points(pts)) == pts


@pytest.mark.parametrize("text", ["", "2\n0 0\n", "2 2\n0 0\n", "2 1\n0 0 0\n", "2 1\n0 x\n", "2 1\n1/0 1\n"])
def test_points_errors(text):
    with pytest.raises(FormatError):
        parse_points(text)


def test_layered_round_trip():
    ls = LayeredPointSet(2, ((0, ((0, 0), (1, 0))), (Fraction(3, 2), ((Fraction(1, 3), 2),))))
    text = format_layered(ls)
    assert text.splitlines()[0] == "2 2"
    assert parse_layered(text) == ls


@pytest.mark.parametrize("text", ["2 1\n0 2\n0 0\n", "2 2\n0 1\n0 0\n", "2 2\n1 1\n0 0\n0 1\n1 1\n", "2 1\n0 1\n0 0\n9 9\n"])
def test_layered_errors(text):
    with pytest.raises(FormatError):
        parse_layered(text)


def test_spheres_round_trip():
    s = SphereSet.of([((0, 0, 0), 1), ((Fraction(1, 2), 3, -1), Fraction(2, 7))])
    assert parse_spheres(format_spheres(s)) == s
    with pytest.raises(FormatError):
        parse_spheres("3 1\n0 0 0 -1\n")


def test_report_and_witnesses():
    rep = sphere_hull_faces(SphereSet.of([((0, 0, 0), 1), ((10, 0, 0), 2)]))
    assert format_report(rep) == "circularity,count\n0,0\n1,1\n2,2\n"
    # keyed by lifted-face dimension, like the lattice dump
    assert format_witnesses(rep) == "0; 0\n0; 1\n1; 0,1\n"
