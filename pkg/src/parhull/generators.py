"""Rational instance generators: trigonometric moment curve and the sphere
families whose hulls have many faces of full circularity.

Two-radius family (odd d, delta = (d-1)/2, R rational with R^2 >= delta):

* Sigma_1: n1 + 1 points of the moment curve in E^(2 delta) placed in the
  hyperplane x_d = z1 = 0, n1 of them with x_1 > 0 and one with x_1 < 0.
* Sigma_2: the same points at x_d = z2 = (2 n2 + 5) R.
* Stack: spheres of radius rho centered at (0, ..., 0, (2k+1) R), k = 0..n2+1,
  then pushed by eps (2 - 2^-k) along e_1.

rho must keep every stack sphere off the ridges of the prism conv(Sigma_1 u
Sigma_2) and make it cut every vertical facet; eps must be small enough that
the pushed spheres still avoid the ridges, still cut the vertical facets on
the x_1 > 0 side, and that sigma_k & sigma_k' lies strictly behind each such
facet.  Both are found by deterministic exact search and every predicate is
recorded in a certificate with its rational margin.

All randomness comes from numpy's PCG64 seeded with [seed, stream index].
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exact import dot, norm2, sub
from .lattice import FaceLattice, hull
from .optimize import min_norm_qp
from .spheres import SphereSet, Verdict, decide_face, sphere_hull_faces


class GeneratorError(RuntimeError):
    pass


def rng_for(seed: int, index: int = 0) -> np.random.Generator:
    """The package's one random stream: PCG64 seeded by the pair (seed, index)."""
    return np.random.Generator(np.random.PCG64([seed, index]))


# ---------------------------------------------------------------------------
# moment curve
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MomentCurveParams:
    delta: int
    s: tuple  # tan(t/2) values, distinct positive rationals

    def __post_init__(self):
        s = tuple(Fraction(x) for x in self.s)
        object.__setattr__(self, "s", s)
        if self.delta < 1:
            raise ValueError("delta must be positive")
        if any(x <= 0 for x in s) or len(set(s)) != len(s):
            raise ValueError("parameters must be distinct positive rationals")


def moment_point(s: Fraction, delta: int) -> tuple:
    """(cos t, sin t, ..., cos delta t, sin delta t) at t = 2 atan(s), exactly."""
    s = Fraction(s)
    c1 = (1 - s * s) / (1 + s * s)
    s1 = 2 * s / (1 + s * s)
    cos_prev, sin_prev = Fraction(1), Fraction(0)
    cos_k, sin_k = c1, s1
    out = []
    for _ in range(delta):
        out += [cos_k, sin_k]
        cos_prev, cos_k = cos_k, 2 * c1 * cos_k - cos_prev
        sin_prev, sin_k = sin_k, 2 * c1 * sin_k - sin_prev
    return tuple(out)


def moment_curve_points(params: MomentCurveParams) -> list:
    return [moment_point(s, params.delta) for s in params.s]


def cyclic_points(n: int, delta: int = 2) -> list:
    """n points of the trigonometric moment curve at s = 1/(n+1), ..., n/(n+1)."""
    return moment_curve_points(MomentCurveParams(delta, tuple(Fraction(i, n + 1) for i in range(1, n + 1))))


def default_R(delta: int) -> Fraction:
    """Smallest multiple of 1/4 whose square is at least delta."""
    k = 1
    while Fraction(k, 4) ** 2 < delta:
        k += 1
    return Fraction(k, 4)


def curve_parameters(n1: int, seed: int, stream: int = 0) -> tuple:
    """n1 increasing s in (0, 1) (x_1 > 0) followed by one s in (1, 3) (x_1 < 0).

    The i-th value is drawn from the i-th of n1 equal slots of (0, 1), on a
    grid of 4 steps per slot, which keeps neighbours apart.
    """
    rng = rng_for(seed, stream)
    den = 4 * (n1 + 1)
    offsets = rng.integers(1, 4, size=n1)
    picks = [4 * i + int(o) for i, o in enumerate(offsets)]
    last = Fraction(den + int(rng.integers(1, 2 * den)), den)
    return tuple(Fraction(p, den) for p in picks) + (last,)


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Check:
    condition: str     # "ridge", "facet", "radical", "prism"
    sphere: int        # stack index k (or -1)
    face: tuple        # prism vertex ids
    margin: Fraction   # > 0 means satisfied
    passed: bool


@dataclass
class Certificate:
    checks: list = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def add(self, condition, sphere, face, margin, passed=None):
        self.checks.append(Check(condition, sphere, tuple(face), Fraction(margin),
                                 margin > 0 if passed is None else passed))

    def dump(self) -> str:
        lines = ["["]
        for c in self.checks:
            lines.append(f'  {{"condition": "{c.condition}", "sphere": {c.sphere}, '
                         f'"face": {list(c.face)}, "margin": "{c.margin}", "pass": {str(c.passed).lower()}}},')
        lines.append("]")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Prism:
    lattice: FaceLattice
    points: list              # vertex coordinates in E^d (Sigma_1 then Sigma_2)
    vertical: list            # facets with horizontal normal (last coordinate 0)
    vertical_plus: list       # vertical facets with every vertex at x_1 > 0
    ridges: list


def build_prism(points: Sequence) -> Prism:
    lat = hull(points)
    D = lat.ambient_dim
    if lat.dim != D:
        raise GeneratorError("prism is not full-dimensional")
    vertical = [F for F in lat.facets if F.hyperplane.normal[-1] == 0]
    plus = [F for F in vertical if all(lat.points[v][0] > 0 for v in F.vertices)]
    return Prism(lat, list(points), vertical, plus, lat.faces_of_dim(D - 2))


def _dist2_to_hull(c, pts) -> Fraction:
    return min_norm_qp([(sub(p, c), 1) for p in pts]).min_sq


def _pushed(k: int, eps: Fraction) -> Fraction:
    return eps * (2 - Fraction(1, 2 ** k))


def _ridge_margin(prism: Prism, c, rho, slack=0):
    """min over ridges of dist^2(c, ridge) - (rho + slack)^2, with the offending ridge."""
    bound = (rho + slack) ** 2
    ridges = []
    for G in prism.ridges:
        pts = [prism.points[v] for v in G.vertices]
        heights = {p[-1] for p in pts}
        # a horizontal ridge is at least its height difference away
        lower = (c[-1] - pts[0][-1]) ** 2 if len(heights) == 1 else Fraction(0)
        ridges.append((lower, G, pts))
    ridges.sort(key=lambda x: x[0])
    worst = None
    for lower, G, pts in ridges:
        if worst is not None and lower - bound >= worst[0]:
            break
        m = _dist2_to_hull(c, pts) - bound
        if worst is None or m < worst[0]:
            worst = (m, G)
    return worst


def _facet_margin(prism: Prism, F, c, rho, slack=0):
    """rho' ^2 - dist^2(c, F) with rho' = rho - slack; also requires a vertex of F beyond rho + slack."""
    pts = [prism.points[v] for v in F.vertices]
    inner = (rho - slack) ** 2 - _dist2_to_hull(c, pts)
    outer = max(norm2(sub(p, c)) for p in pts) - (rho + slack) ** 2
    return min(inner, outer)


def _radical_margin(F, c, c_push, rho):
    """Margin of sigma & sigma' lying strictly on the inner side of F's hyperplane.

    The intersection is a (d-2)-sphere centered at the midpoint m of the two
    centers, radius r_I^2 = rho^2 - |c' - c|^2 / 4, in the hyperplane
    orthogonal to e_1.  With n the facet normal, the condition reads
    b - n.m > 0 and (b - n.m)^2 > r_I^2 (|n|^2 - n_1^2).
    """
    n, b = F.hyperplane.normal, F.hyperplane.offset
    m = tuple((x + y) / 2 for x, y in zip(c, c_push))
    half = norm2(sub(c_push, c)) / 4
    rI2 = rho * rho - half
    if rI2 <= 0:
        return rI2  # the spheres no longer meet: condition cannot be used
    gap = b - dot(n, m)
    perp = norm2(n) - n[0] * n[0]
    if gap <= 0:
        return gap
    return (gap * gap - rI2 * perp) / norm2(n)


# ---------------------------------------------------------------------------
# instances
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LowerBoundInstance:
    family: str
    d: int
    n: tuple                 # (n1, n2) for lb2; the class counts for lbm
    seed: int
    R: Fraction
    z1: Fraction
    z2: Fraction
    s_values: tuple
    rho: Fraction
    eps: Fraction
    r: Fraction | None
    skeleton: tuple          # (N1, N2): curve points in Y+ per layer, interior stack spheres
    point_radii: tuple       # radius of each Sigma_1 point (Sigma_2 copies it)
    spheres: SphereSet = None
    certificate: Certificate = None
    trace: tuple = ()

    @property
    def delta(self) -> int:
        return (self.d - 1) // 2

    @property
    def curve_count(self) -> int:
        return len(self.s_values)

    @property
    def stack_count(self) -> int:
        return self.skeleton[1] + 2

    def prism_points(self) -> list:
        base = [moment_point(s, self.delta) for s in self.s_values]
        return [p + (self.z1,) for p in base] + [p + (self.z2,) for p in base]

    def stack_centers(self, pushed: bool = True) -> list:
        out = []
        for k in range(self.stack_count):
            c = [Fraction(0)] * self.d
            c[-1] = (2 * k + 1) * self.R
            if pushed:
                c[0] = _pushed(k, self.eps)
            out.append(tuple(c))
        return out

    def build_spheres(self) -> SphereSet:
        pts = self.prism_points()
        radii = list(self.point_radii) * 2
        stack = [(c, self.rho) for c in self.stack_centers()]
        return SphereSet(self.d, tuple(zip(pts, radii)) + tuple(stack))

    def rebuilt(self, **changes) -> "LowerBoundInstance":
        """Same instance with some parameters changed and the spheres regenerated (no certificate)."""
        inst = replace(self, certificate=None, **changes)
        return replace(inst, spheres=inst.build_spheres())

    def y_plus_vertical_facets(self) -> int:
        return len(build_prism(self.prism_points()).vertical_plus)


def check_conditions(instance: LowerBoundInstance, fail_fast: bool = False) -> Certificate:
    """Re-derive every predicate from the emitted spheres.

    For each stack sphere sigma_k' (center c_k', radius rho) and with c_k its
    unpushed center:
      ridge    dist(c_k', G) > rho + r_max for every ridge G of the point prism
      facet    sigma_k' cuts the interior of every vertical facet on the x_1 > 0
               side: dist(c_k', F) < rho - r_max, and some vertex of F lies
               beyond rho + r_max
      radical  sigma_k & sigma_k' strictly behind every such facet
    r_max is the largest curve-point radius (0 for the two-radius family); the
    prism faces of the small-radius hull stay within r_max of the point prism.
    """
    cert = Certificate()
    prism = build_prism(instance.prism_points())
    nc = 2 * instance.curve_count
    stack = instance.spheres.spheres[nc:]
    r_max = max(r for _, r in instance.spheres.spheres[:nc])
    for k, (c_push, rho) in enumerate(stack):
        c = list(c_push)
        c[0] -= _pushed(k, instance.eps)
        c = tuple(c)
        m, G = _ridge_margin(prism, c_push, rho, r_max)
        cert.add("ridge", k, G.vertices, m)
        for F in prism.vertical_plus:
            cert.add("radical", k, F.vertices, _radical_margin(F, c, c_push, rho))
            cert.add("facet", k, F.vertices, _facet_margin(prism, F, c_push, rho, r_max))
            if fail_fast and not cert.all_pass:
                return cert
    return cert


def _choose_rho(prism: Prism, centers: list, R: Fraction, trace: list) -> Fraction:
    """Exact bisection for rho in (0, R) meeting the unpushed conditions.

    Needed: rho^2 above every dist^2(c_k, vertical facet) (checked as
    dist^2(c_k, F) < rho^2), below every dist^2(c_k, ridge), and below the
    eps -> 0 limit of the radical condition, (b - n.c)^2 / (|n|^2 - n_1^2),
    for vertical facets on the x_1 > 0 side.
    """
    lo = Fraction(0)
    hi = None
    hi_name = "ridge"
    for c in centers:
        for F in prism.vertical:
            lo = max(lo, _dist2_to_hull(c, [prism.points[v] for v in F.vertices]))
        m, _ = _ridge_margin(prism, c, Fraction(0))
        if hi is None or m < hi:
            hi, hi_name = m, "ridge"
        for F in prism.vertical_plus:
            n, b = F.hyperplane.normal, F.hyperplane.offset
            perp = norm2(n) - n[0] * n[0]
            if perp > 0:
                lim = (b - dot(n, c)) ** 2 / perp
                if lim < hi:
                    hi, hi_name = lim, "radical"
    if hi > R * R:
        hi = R * R
    trace.append(("rho-window", lo, hi))
    if not lo < hi:
        raise GeneratorError(f"no admissible stack radius: facet distances reach the {hi_name} bound")
    a, b = Fraction(0), R
    target_lo, target_hi = lo + (hi - lo) / 4, hi - (hi - lo) / 4
    for _ in range(200):
        mid = (a + b) / 2
        sq = mid * mid
        if sq <= target_lo:
            a = mid
        elif sq >= target_hi:
            b = mid
        else:
            trace.append(("rho", mid))
            return mid
    raise GeneratorError("stack radius bisection exhausted")


def _choose_eps(base: LowerBoundInstance, trace: list) -> LowerBoundInstance:
    eps = Fraction(1)
    for _ in range(64):
        inst = base.rebuilt(eps=eps)
        cert = check_conditions(inst, fail_fast=True)
        trace.append(("eps", eps, cert.all_pass))
        if cert.all_pass:
            return replace(inst, certificate=cert)
        eps /= 2
    bad = cert.failures()[0]
    raise GeneratorError(f"push search exhausted; {bad.condition} condition fails for stack sphere {bad.sphere}")


def lb2_instance(d: int, n1: int, n2: int, seed: int = 0, R: Fraction | None = None,
                 stream: int = 0) -> LowerBoundInstance:
    if d < 3 or d % 2 == 0:
        raise ValueError("d must be odd and at least 3")
    if n1 < d or n2 < 1:
        raise ValueError("need n1 >= d and n2 >= 1")
    delta = (d - 1) // 2
    R = default_R(delta) if R is None else Fraction(R)
    if R * R < delta:
        raise ValueError("R^2 must be at least (d-1)/2")
    s_values = curve_parameters(n1, seed, stream)
    trace: list = []
    base = LowerBoundInstance("lb2", d, (n1, n2), seed, R, Fraction(0), (2 * n2 + 5) * R, s_values,
                              Fraction(0), Fraction(0), None, (n1, n2), (Fraction(0),) * (n1 + 1))
    prism = build_prism(base.prism_points())
    rho = _choose_rho(prism, base.stack_centers(pushed=False), R, trace)
    inst = _choose_eps(replace(base, rho=rho), trace)
    return replace(inst, trace=tuple(trace))


def _assign_radii(counts: Sequence[int], r: Fraction) -> tuple:
    """Curve-point radii: counts[i] points of Y+ get r^(i+2); the Y- point gets r^2."""
    radii = []
    for i, c in enumerate(counts):
        radii += [r ** (i + 2)] * c
    return tuple(radii) + (r ** 2,)


def prism_correspondence(instance: LowerBoundInstance) -> tuple[bool, list]:
    """Does the hull of the curve spheres alone match the point prism?

    Each passing face of circularity l must sit in a unique (d-l-1)-face of
    the point prism: the smallest prism face containing its centers has that
    dimension.  Prism faces off the two horizontal layers must come back
    exactly, with a single tangency region each.  Inside the two horizontal
    facets the unequal radii subdivide the flat piece, so there only
    containment is required.
    """
    nc = 2 * instance.curve_count
    sub_set = SphereSet(instance.d, instance.spheres.spheres[:nc])
    rep = sphere_hull_faces(sub_set)
    prism = build_prism(instance.prism_points())
    lat = prism.lattice
    problems = []
    seen = {}
    for circ, ws in rep.witnesses.items():
        for ids in ws:
            dim = instance.d - circ - 1
            common = set(range(nc))
            for F in lat.facets:
                if set(ids) <= F.key:
                    common &= F.key
            G = lat.faces.get(frozenset(common))
            flat = G is not None and len({prism.points[v][-1] for v in G.vertices}) == 1
            if G is None or (G.dim < dim if flat else G.dim != dim):
                problems.append(f"lifted face {ids} does not sit in a prism face of dim {dim}")
            seen[frozenset(ids)] = seen.get(frozenset(ids), 0) + 1
    for circ in rep.counts:
        if rep.components[circ] != rep.counts[circ]:
            problems.append(f"split tangency regions at circularity {circ}")
    for G in lat.proper_faces():
        heights = {prism.points[v][-1] for v in G.vertices}
        if len(heights) == 1:
            continue
        if seen.get(G.key) != 1:
            problems.append(f"prism face {G.vertices} not reproduced")
    if rep.degenerate:
        problems.append(f"{len(rep.degenerate)} degenerate faces")
    return not problems, problems


def lbm_instance(d: int, n: Sequence[int], seed: int = 0, R: Fraction | None = None,
                 stream: int = 0) -> LowerBoundInstance:
    """m-radius family: skeleton with N1 = n_2 + ... + n_m curve points per layer and N2 = n_1.

    Curve points get radius r^i in groups of n_i (i >= 2), the x_1 < 0 point
    r^2, the stack keeps rho: m distinct radii in total.  r is halved until
    the curve spheres reproduce the point prism and the stack conditions hold
    with every margin widened by the largest curve radius.
    """
    n = tuple(n)
    if len(n) < 3:
        raise ValueError("need at least three radius classes")
    N1, N2 = sum(n[1:]), n[0]
    skel = lb2_instance(d, N1, N2, seed, R, stream)
    trace = list(skel.trace)
    r = Fraction(1, 2)
    for _ in range(40):
        inst = skel.rebuilt(r=r, point_radii=_assign_radii(n[1:], r), family="lbm", n=n)
        if max(inst.point_radii) < inst.rho:
            cert = check_conditions(inst)
            ok, problems = prism_correspondence(inst) if cert.all_pass else (False, ["stack conditions"])
            trace.append(("r", r, cert.all_pass and ok))
            if cert.all_pass and ok:
                cert.add("prism", -1, (), Fraction(1))
                return replace(inst, certificate=cert, trace=tuple(trace))
        r /= 2
    raise GeneratorError("small-radius search exhausted: prism correspondence or stack conditions fail")


def expected_full_circularity(instance: LowerBoundInstance) -> int:
    """n2 times the number of vertical facets on the x_1 > 0 side."""
    return instance.skeleton[1] * instance.y_plus_vertical_facets()


def stack_faces_realized(instance: LowerBoundInstance) -> int:
    """Faces of full circularity carried by the interior stack spheres k = 1..n2."""
    rep = sphere_hull_faces(instance.spheres)
    nc = 2 * instance.curve_count
    inner = {nc + k for k in range(1, instance.stack_count - 1)}
    total = 0
    lat = rep.lattice
    for f in lat.faces_of_dim(0):
        sphere = rep.lifted.sphere_of[f.vertices[0]]
        if sphere in inner and rep.verdicts.get(f.key) is Verdict.PASS:
            total += decide_face(f, lat, count_components=True).components
    return total
