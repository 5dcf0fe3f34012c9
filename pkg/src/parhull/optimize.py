"""Two small exact optimizers.

``lp_interior_point`` finds a rational point strictly inside a system of open
halfspaces (slack maximization solved through its LP dual with a revised
simplex, Bland's rule).  ``min_norm_qp`` minimizes ||sum l_j u_j||^2 over
l >= 0, sum l_j t_j = 1 with an exact Wolfe-style active-set method.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import Hyperplane, Q, dot, nullspace, row_reduce

_ONE = Fraction(1)
_ZERO = Fraction(0)


class LPError(RuntimeError):
    pass


def _simplex_min(cols: list[tuple], costs: list[Fraction], rhs: tuple, max_iter: int = 100000):
    """min c.y s.t. A y = rhs, y >= 0 (A given column-wise, rhs >= 0).

    Returns (y, pi) with pi the simplex multipliers of the optimal basis, or
    None when infeasible.  The problem must be bounded.
    """
    m = len(rhs)
    n = len(cols)
    # artificials are columns n .. n+m-1
    basis = list(range(n, n + m))
    Binv = [[_ONE if i == j else _ZERO for j in range(m)] for i in range(m)]
    xB = [Q(b) for b in rhs]

    def column(j):
        if j >= n:
            e = [_ZERO] * m
            e[j - n] = _ONE
            return e
        return cols[j]

    def run(cost_of, allowed):
        nonlocal xB
        for _ in range(max_iter):
            cB = [cost_of(b) for b in basis]
            pi = [sum(cB[i] * Binv[i][r] for i in range(m)) for r in range(m)]
            entering = None
            for j in allowed:
                if j in basis_set:
                    continue
                col = column(j)
                rc = cost_of(j) - sum(p * a for p, a in zip(pi, col) if a)
                if rc < 0:
                    entering = j
                    break
            if entering is None:
                return pi
            col = column(entering)
            d = [sum(Binv[i][r] * col[r] for r in range(m) if col[r]) for i in range(m)]
            best = None
            for i in range(m):
                if d[i] > 0:
                    ratio = xB[i] / d[i]
                    if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                        best = (ratio, i)
            if best is None:
                raise LPError("unbounded linear program")
            theta, r = best
            xB = [xB[i] - theta * d[i] for i in range(m)]
            xB[r] = theta
            piv = d[r]
            Binv[r] = [x / piv for x in Binv[r]]
            for i in range(m):
                if i != r and d[i] != 0:
                    f = d[i]
                    Binv[i] = [a - f * b for a, b in zip(Binv[i], Binv[r])]
            basis_set.discard(basis[r])
            basis[r] = entering
            basis_set.add(entering)
        raise LPError("simplex iteration limit reached")

    basis_set = set(basis)
    run(lambda j: _ONE if j >= n else _ZERO, range(n + m))
    if any(xB[i] != 0 for i in range(m) if basis[i] >= n):
        return None
    # drive remaining (zero-level) artificials out of the basis where possible
    for r in range(m):
        if basis[r] < n:
            continue
        for j in range(n):
            if j in basis_set:
                continue
            col = cols[j]
            dr = sum(Binv[r][k] * col[k] for k in range(m) if col[k])
            if dr != 0:
                d = [sum(Binv[i][k] * col[k] for k in range(m) if col[k]) for i in range(m)]
                Binv[r] = [x / dr for x in Binv[r]]
                for i in range(m):
                    if i != r and d[i] != 0:
                        f = d[i]
                        Binv[i] = [a - f * b for a, b in zip(Binv[i], Binv[r])]
                basis_set.discard(basis[r])
                basis[r] = j
                basis_set.add(j)
                break
    pi = run(lambda j: costs[j] if j < n else _ZERO, range(n))
    y = [_ZERO] * n
    for i, b in enumerate(basis):
        if b < n:
            y[b] = xB[i]
    return y, pi


def max_slack(A: Sequence[Sequence], c: Sequence, cap=1) -> tuple[tuple, Fraction]:
    """max s subject to A_i . x - s >= c_i, s <= cap.  Returns (x, s*)."""
    k = len(A[0]) if A else 0
    cols = []
    costs = []
    for a, ci in zip(A, c):
        cols.append(tuple(-Q(v) for v in a) + (_ONE,))
        costs.append(-Q(ci))
    cols.append((_ZERO,) * k + (_ONE,))
    costs.append(Q(cap))
    rhs = (_ZERO,) * k + (_ONE,)
    res = _simplex_min(cols, costs, rhs)
    if res is None:  # cannot happen: the slack column alone is feasible
        raise LPError("dual of the slack LP infeasible")
    _, pi = res
    return tuple(pi[:k]), pi[k]


def _affine_parametrization(equalities: Sequence[Hyperplane], dim: int):
    """x = x0 + B t for the affine set cut out by the equalities, or None if empty."""
    if not equalities:
        basis = [tuple(_ONE if i == j else _ZERO for j in range(dim)) for i in range(dim)]
        return (_ZERO,) * dim, basis
    aug = [list(h.normal) + [h.offset] for h in equalities]
    R, pivots = row_reduce(aug)
    if dim in pivots:
        return None
    x0 = [_ZERO] * dim
    for row, pc in zip(R, pivots):
        x0[pc] = row[dim]
    basis = nullspace([h.normal for h in equalities], dim)
    return tuple(x0), basis


def _snap(t: tuple, ok) -> tuple:
    """Small-denominator rational near t that still passes ``ok``; t itself as fallback."""
    if all(x.denominator == 1 for x in t):
        return t
    den = 1
    biggest = max(x.denominator for x in t)
    while den < biggest:
        cand = tuple(x.limit_denominator(den) for x in t)
        if ok(cand):
            return cand
        den *= 2
    return t


def lp_interior_point(halfspaces: Sequence[Hyperplane], equalities: Sequence[Hyperplane] = (),
                      dim: int | None = None, snap: bool = True):
    """A rational point with normal . x > offset for every halfspace, or None.

    ``equalities`` restricts the search to an affine subspace (e.g. a layer
    hyperplane).  The returned point maximizes the common slack (capped at 1)
    and is then snapped to small denominators when that keeps every strict
    inequality.
    """
    if dim is None:
        source = list(halfspaces) or list(equalities)
        if not source:
            raise ValueError("cannot infer the dimension of an empty system")
        dim = source[0].dim
    param = _affine_parametrization(equalities, dim)
    if param is None:
        return None
    x0, B = param
    A, c = [], []
    for h in halfspaces:
        a = tuple(dot(h.normal, b) for b in B)
        ci = h.offset - dot(h.normal, x0)
        if all(v == 0 for v in a):
            if not ci < 0:
                return None
            continue
        A.append(a)
        c.append(ci)

    def lift(t):
        x = list(x0)
        for coef, b in zip(t, B):
            if coef:
                x = [xi + coef * bi for xi, bi in zip(x, b)]
        return tuple(x)

    if not A:
        return lift((_ZERO,) * len(B))
    t, s = max_slack(A, c)
    if s <= 0:
        return None
    if snap:
        t = _snap(t, lambda cand: all(dot(a, cand) > ci for a, ci in zip(A, c)))
    x = lift(t)
    assert all(h.evaluate(x) > 0 for h in halfspaces)
    return x


@dataclass(frozen=True)
class QPResult:
    """Optimum of min ||sum l_j u_j||^2 s.t. l >= 0, sum l_j t_j = 1."""

    min_sq: Fraction
    weights: tuple  # one multiplier per generator
    point: tuple    # sum l_j u_j

    def kkt_residuals(self, generators) -> list[Fraction]:
        """u_j . y - ||y||^2 t_j per generator; optimality means all >= 0, = 0 on the support."""
        y = self.point
        return [dot(u, y) - self.min_sq * Q(t) for u, t in generators]


def _solve_affine_subproblem(gens, support):
    """min ||U_S l||^2 s.t. t_S . l = 1 with (u_j, t_j), j in S, linearly independent."""
    k = len(support)
    U = [gens[j][0] for j in support]
    T = [gens[j][1] for j in support]
    # KKT: G l - theta t = 0 ; t . l = 1
    M = []
    for a in range(k):
        M.append([dot(U[a], U[b]) for b in range(k)] + [-T[a], _ZERO])
    M.append(list(T) + [_ZERO, _ONE])
    R, pivots = row_reduce(M)
    if pivots != list(range(k + 1)):
        raise ArithmeticError("degenerate active set in min-norm QP")
    return [R[i][k + 1] for i in range(k)]


def min_norm_qp(generators: Sequence[tuple[Sequence, object]], max_iter: int = 10000) -> QPResult | None:
    """Exact minimum of ||sum l_j u_j||^2 over l >= 0 with sum l_j t_j = 1.

    Returns None when the constraint set is empty (no t_j > 0).
    Ties in the entering / leaving choices are broken by lowest generator index.
    """
    gens = [(tuple(Q(x) for x in u), Q(t)) for u, t in generators]
    if not gens:
        return None
    dimu = len(gens[0][0])
    start = None
    for j, (u, t) in enumerate(gens):
        if t > 0:
            val = dot(u, u) / (t * t)
            if start is None or val < start[0]:
                start = (val, j)
    if start is None:
        return None
    j0 = start[1]
    support = [j0]
    lam = {j0: _ONE / gens[j0][1]}

    def current_point():
        y = [_ZERO] * dimu
        for j, w in lam.items():
            if w:
                y = [a + w * b for a, b in zip(y, gens[j][0])]
        return tuple(y)

    for _ in range(max_iter):
        y = current_point()
        ny = dot(y, y)
        entering = None
        for j, (u, t) in enumerate(gens):
            if j in lam:
                continue
            if dot(u, y) - ny * t < 0:
                entering = j
                break
        if entering is None:
            weights = tuple(lam.get(j, _ZERO) for j in range(len(gens)))
            return QPResult(ny, weights, y)
        support.append(entering)
        lam[entering] = _ZERO
        # inner loop: move toward the affine minimizer of the support, dropping blockers
        while True:
            alpha = _solve_affine_subproblem(gens, support)
            if all(a > 0 for a in alpha):
                lam = dict(zip(support, alpha))
                break
            theta = None
            for j, a in zip(support, alpha):
                if a <= 0:
                    cur = lam[j]
                    step = cur / (cur - a) if cur != a else _ZERO
                    if theta is None or step < theta:
                        theta = step
            lam = {j: lam[j] + theta * (a - lam[j]) for j, a in zip(support, alpha)}
            for j in [j for j in support if lam[j] <= 0]:
                support.remove(j)
                del lam[j]
    raise ArithmeticError("min-norm QP iteration limit reached")
