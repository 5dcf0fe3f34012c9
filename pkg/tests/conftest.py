from fractions import Fraction
from itertools import combinations, permutations

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


CUBE = [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]
OCTAHEDRON = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
TETRA = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
PRISM_BASE = [(0, 0), (1, 0), (0, 1)]


def leibniz_det(m):
    """Determinant by permutation expansion; slow, but shares no code with the package."""
    n = len(m)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(1)
        for i in range(n):
            term *= m[i][perm[i]]
        total += -term if inv % 2 else term
    return total


def brute_facets(points):
    """Vertex sets of facets of a full-dimensional hull, by testing every D-subset."""
    pts = [tuple(Fraction(x) for x in p) for p in points]
    D = len(pts[0])
    found = set()
    for combo in combinations(range(len(pts)), D):
        base = pts[combo[0]]
        rows = [[a - b for a, b in zip(pts[i], base)] for i in combo[1:]]
        # normal by cofactor expansion of the (D-1) x D matrix
        normal = []
        for j in range(D):
            minor = [r[:j] + r[j + 1:] for r in rows]
            normal.append((-1) ** j * leibniz_det(minor) if minor else Fraction(1))
        if all(c == 0 for c in normal):
            continue
        vals = [sum(n * (x - b) for n, x, b in zip(normal, p, base)) for p in pts]
        if all(v <= 0 for v in vals) or all(v >= 0 for v in vals):
            found.add(frozenset(i for i, v in enumerate(vals) if v == 0))
    # a point is a vertex iff the facets through it meet only in it
    verts = set()
    for i in range(len(pts)):
        through = [F for F in found if i in F]
        if through and frozenset.intersection(*through) == {i}:
            verts.add(i)
    return {F & verts for F in found}


def small_points(dim, min_size, max_size, lo=-6, hi=6):
    return st.lists(st.tuples(*[st.integers(lo, hi)] * dim), min_size=min_size, max_size=max_size, unique=True)


@pytest.fixture
def cube():
    return list(CUBE)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
