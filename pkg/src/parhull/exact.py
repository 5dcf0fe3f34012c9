"""Exact rational scalars, small dense linear algebra and orientation predicates.

Every coordinate in the package is a :class:`fractions.Fraction`.  Geometry is
often done on integer-scaled copies of the input (see :func:`integerize`) since
Python integers are much faster than fractions and the combinatorics of a hull
is invariant under positive scaling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

Rational = Fraction
Point = tuple  # tuple[Fraction, ...]


def Q(x) -> Fraction:
    """Coerce ints, strings ("p/q") and fractions to a Fraction.  Floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"refusing inexact value {x!r}")
    return Fraction(x)


def point(coords: Iterable) -> tuple:
    return tuple(Q(c) for c in coords)


def format_rational(x: Fraction) -> str:
    x = Q(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text or any(ch.isspace() for ch in text):
        raise ValueError(f"malformed rational {text!r}")
    if "." in text or "e" in text.lower():
        raise ValueError(f"decimal notation not accepted: {text!r}")
    return Fraction(text)


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def sub(a: Sequence, b: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def add(a: Sequence, b: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def scale(c, a: Sequence) -> tuple:
    return tuple(c * x for x in a)


def norm2(a: Sequence):
    return sum(x * x for x in a)


def integerize(points: Sequence[Sequence[Fraction]]) -> tuple[list[tuple[int, ...]], int]:
    """Scale all points by the lcm of their denominators.

    Returns the integer points and the scale factor L (so ``int_point = L * point``).
    """
    dens = [Q(c).denominator for p in points for c in p]
    L = reduce(lcm, dens, 1)
    return [tuple(int(Q(c) * L) for c in p) for p in points], L


def primitive(vec: Sequence[int]) -> tuple[int, ...]:
    g = reduce(gcd, (abs(v) for v in vec), 0)
    if g <= 1:
        return tuple(vec)
    return tuple(v // g for v in vec)


def det(matrix: Sequence[Sequence]) -> Fraction | int:
    """Determinant by fraction-free Bareiss elimination (exact for ints and Fractions)."""
    n = len(matrix)
    if n == 0:
        return 1
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant of a non-square matrix")
    M = [list(row) for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = M[i][j] * pivot - M[i][k] * M[k][j]
                # exact division in the Bareiss scheme
                M[i][j] = v // prev if isinstance(v, int) and isinstance(prev, int) else v / prev
            M[i][k] = 0
        prev = pivot
    return sign * M[n - 1][n - 1]


def orient(points: Sequence[Sequence]) -> int:
    """Sign of det[p_1 - p_0, ..., p_D - p_0] for D+1 points in E^D."""
    if not points:
        raise ValueError("orient needs D+1 points")
    D = len(points[0])
    if len(points) != D + 1 or any(len(p) != D for p in points):
        raise ValueError(f"orient needs {D + 1} points of dimension {D}")
    p0 = points[0]
    value = det([sub(p, p0) for p in points[1:]])
    return (value > 0) - (value < 0)


def row_reduce(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q.  Returns (nonzero rows, pivot columns)."""
    M = [[Q(x) for x in row] for row in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        pv = M[r][c]
        M[r] = [x / pv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(row_reduce(rows)[1]) if rows else 0


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[tuple[Fraction, ...]]:
    """Basis of {x : rows @ x = 0}."""
    if ncols is None:
        ncols = len(rows[0])
    R, pivots = row_reduce(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(tuple(v))
    return basis


def solve(A: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...] | None:
    """Solve a square nonsingular system exactly; None if singular."""
    n = len(A)
    aug = [list(map(Q, row)) + [Q(bi)] for row, bi in zip(A, b)]
    R, pivots = row_reduce(aug)
    if pivots != list(range(n)):
        return None
    return tuple(R[i][n] for i in range(n))


def affine_basis(points: Sequence[Sequence]) -> list[int]:
    """Indices of a maximal affinely independent subset, chosen greedily in input order."""
    if not points:
        return []
    chosen = [0]
    p0 = points[0]
    echelon: list[list[Fraction]] = []
    pivots: list[int] = []
    for i in range(1, len(points)):
        v = [Q(x) for x in sub(points[i], p0)]
        for row, pc in zip(echelon, pivots):
            if v[pc] != 0:
                f = v[pc]
                v = [a - f * b for a, b in zip(v, row)]
        pc = next((j for j, x in enumerate(v) if x != 0), None)
        if pc is None:
            continue
        pv = v[pc]
        v = [x / pv for x in v]
        echelon.append(v)
        pivots.append(pc)
        chosen.append(i)
    return chosen


def affine_rank(points: Sequence[Sequence]) -> int:
    return len(affine_basis(points)) - 1


@dataclass(frozen=True)
class Hyperplane:
    """{x : normal . x = offset}; the positive side is normal . x > offset."""

    normal: tuple
    offset: Fraction

    def __post_init__(self):
        object.__setattr__(self, "normal", tuple(Q(c) for c in self.normal))
        object.__setattr__(self, "offset", Q(self.offset))
        if all(c == 0 for c in self.normal):
            raise ValueError("hyperplane normal must be nonzero")

    def evaluate(self, x: Sequence) -> Fraction:
        return dot(self.normal, x) - self.offset

    def side(self, x: Sequence) -> int:
        v = self.evaluate(x)
        return (v > 0) - (v < 0)

    def flipped(self) -> "Hyperplane":
        return Hyperplane(tuple(-c for c in self.normal), -self.offset)

    @property
    def dim(self) -> int:
        return len(self.normal)


def horizontal(dim: int, height) -> Hyperplane:
    """The hyperplane x_dim = height in E^dim (last coordinate fixed)."""
    return Hyperplane((0,) * (dim - 1) + (1,), height)
