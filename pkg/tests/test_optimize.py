from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from parhull.exact import Hyperplane, dot
from parhull.optimize import lp_interior_point, min_norm_qp


# a halfspace is the open positive side of its hyperplane: normal . x > offset

def test_open_triangle():
    hs = [Hyperplane((1, 0), 0), Hyperplane((0, 1), 0), Hyperplane((-1, -1), -1)]
    x = lp_interior_point(hs)
    assert x is not None and all(h.evaluate(x) > 0 for h in hs)


def test_contradiction():
    assert lp_interior_point([Hyperplane((-1,), 0), Hyperplane((1,), 0)]) is None


def test_shrunk_cube():
    third = Fraction(1, 3)
    hs = []
    for i in range(3):
        e = [0, 0, 0]
        e[i] = 1
        hs.append(Hyperplane(tuple(e), third))
        hs.append(Hyperplane(tuple(-c for c in e), third - 1))
    x = lp_interior_point(hs)
    assert all(h.evaluate(x) > 0 for h in hs)


def test_equality_constraint_is_respected():
    hs = [Hyperplane((1, 0), 0), Hyperplane((0, 1), 0), Hyperplane((-1, -1), -2)]
    eq = Hyperplane((1, -1), 0)
    x = lp_interior_point(hs, equalities=[eq])
    assert x[0] == x[1] and all(h.evaluate(x) > 0 for h in hs)


@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5)), min_size=1, max_size=8),
       st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
def test_lp_finds_a_point_when_one_exists(normals, inner):
    normals = [n for n in normals if n != (0, 0)]
    # every halfspace keeps `inner` strictly inside
    hs = [Hyperplane(n, dot(n, inner) - 1) for n in normals]
    x = lp_interior_point(hs, dim=2)
    assert x is not None
    assert all(h.evaluate(x) > 0 for h in hs)


def test_qp_examples():
    r = min_norm_qp([((1,), 1)])
    assert r.min_sq == 1 and r.weights == (1,)
    r = min_norm_qp([((1,), 1), ((-1,), 1)])
    assert r.min_sq == 0 and r.weights == (Fraction(1, 2), Fraction(1, 2))
    r = min_norm_qp([((2, 0), 1), ((0, 2), 1)])
    assert r.min_sq == 2 and r.weights == (Fraction(1, 2), Fraction(1, 2))
    assert r.point == (1, 1)


def test_qp_infeasible_without_positive_t():
    assert min_norm_qp([((1, 0), 0), ((0, 1), -1)]) is None
    assert min_norm_qp([]) is None


@given(st.lists(st.tuples(st.tuples(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4)),
                          st.integers(-2, 3)), min_size=1, max_size=6))
def test_qp_kkt_certificate(gens):
    r = min_norm_qp(gens)
    if all(t <= 0 for _, t in gens):
        assert r is None
        return
    assert r is not None
    assert all(w >= 0 for w in r.weights)
    assert sum(w * t for w, (_, t) in zip(r.weights, gens)) == 1
    assert r.point == tuple(sum(w * u[i] for w, (u, _) in zip(r.weights, gens)) for i in range(3))
    assert r.min_sq == dot(r.point, r.point)
    # convex QP: stationarity with nonnegative reduced costs certifies the global minimum
    res = r.kkt_residuals(gens)
    assert all(x >= 0 for x in res)
    assert all(x == 0 for x, w in zip(res, r.weights) if w > 0)
