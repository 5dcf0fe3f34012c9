"""Hulls of spheres through the lifting map.

A sphere (c, r) in E^d lifts to the point (c, r) in E^(d+1).  A face F of the
lifted hull carries faces of the sphere hull iff the relative interior of its
normal cone N(F) contains a vector (u, t) with t = |u| > 0; such a vector is
the lifted normal of a hyperplane tangent to every sphere of F from outside.

Why t > 0 is enough (no separate "interior point below H" test): the
interior of a full-dimensional lifted hull lies strictly below any supporting
hyperplane whose normal has t > 0 relative to its own points, and the 45
degree tangency only makes sense for the upper side.

Membership is decided exactly.  With f(u, t) = t - |u| (its sign read off
from t and t^2 - |u|^2), the cone meets the surface {f = 0} in its relative
interior iff it has a point with f < 0 and one with f > 0; the first is
checked on the generators (f is superadditive on cones), the second with the
minimum-norm QP over the generators normalized to t = 1.

A single lifted face can host several disconnected tangency regions (a small
sphere poking out between several facets of a prism does).  Each region is a
separate face of the sphere hull, so besides the per-face verdicts we count
the connected pieces: the pieces of N(F) outside the Lorentz cone are unions
of outside generators linked along 2-faces of N(F) that stay outside.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt, lcm
from typing import Sequence

from .exact import affine_basis, dot, integerize, norm2, nullspace, point, sub
from .lattice import Face, FaceLattice, hull
from .layers import LayeredPointSet
from .optimize import min_norm_qp


class Verdict(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    DEGENERATE = "degenerate"


class DegenerateError(RuntimeError):
    pass


@dataclass(frozen=True)
class SphereSet:
    d: int
    spheres: tuple  # ((center, radius), ...)

    def __post_init__(self):
        sph = tuple((point(c), Fraction(r)) for c, r in self.spheres)
        object.__setattr__(self, "spheres", sph)
        if not sph:
            raise ValueError("empty sphere set")
        for c, r in sph:
            if len(c) != self.d:
                raise ValueError(f"center {c} is not in E^{self.d}")
            if r < 0:
                raise ValueError("negative radius")

    @classmethod
    def of(cls, spheres: Sequence[tuple]) -> "SphereSet":
        if not spheres:
            raise ValueError("a sphere set needs at least one sphere")
        return cls(len(spheres[0][0]), tuple(spheres))

    def __len__(self):
        return len(self.spheres)

    @property
    def radii_classes(self) -> tuple:
        return tuple(sorted({r for _, r in self.spheres}))

    @property
    def class_counts(self) -> tuple:
        return tuple(sum(1 for _, r in self.spheres if r == rho) for rho in self.radii_classes)

    def scaled(self, factor) -> "SphereSet":
        factor = Fraction(factor)
        return SphereSet(self.d, tuple((tuple(factor * x for x in c), factor * r) for c, r in self.spheres))


@dataclass
class Lift:
    layered: LayeredPointSet
    sphere_of: list   # stacked point index -> sphere index
    dropped: set      # sphere indices whose center is not a vertex of its layer hull

    @property
    def points(self) -> list:
        return [p + (h,) for h, pts in self.layered.layers for p in pts]

    @property
    def kept(self) -> list:
        return [i for i, s in enumerate(self.sphere_of) if s not in self.dropped]


def lift(spheres: SphereSet) -> Lift:
    """One layer per distinct radius, holding the centers of that radius.

    Centers that are not vertices of their own layer hull are marked dropped;
    they never support the lifted hull.
    """
    layers = []
    sphere_of = []
    dropped = set()
    for rho in spheres.radii_classes:
        ids = [i for i, (_, r) in enumerate(spheres.spheres) if r == rho]
        centers = [spheres.spheres[i][0] for i in ids]
        lat = hull(centers)
        keep = set(lat.vertices)
        dropped.update(i for j, i in enumerate(ids) if j not in keep)
        layers.append((rho, tuple(centers)))
        sphere_of.extend(ids)
    return Lift(LayeredPointSet(spheres.d, tuple(layers)), sphere_of, dropped)


@dataclass(frozen=True)
class NormalConeGenerators:
    face: tuple                # vertex ids of the lifted face
    generators: tuple          # ((u, t), ...) from facet normals
    lineality_basis: tuple     # vectors of E^(d+1) spanning the complement of the hull's affine span

    def all_generators(self) -> list:
        out = list(self.generators)
        for w in self.lineality_basis:
            out.append((w[:-1], w[-1]))
            out.append((tuple(-x for x in w[:-1]), -w[-1]))
        return out


def _f_sign(u, t) -> int:
    """Sign of t - |u|, exactly."""
    if t < 0:
        return -1
    diff = t * t - norm2(u)
    return (diff > 0) - (diff < 0)


def _split(normal: Sequence) -> tuple:
    return tuple(normal[:-1]), normal[-1]


@dataclass
class FaceDecision:
    verdict: Verdict
    reason: str = ""
    components: int = 0
    component_flags: list = field(default_factory=list)


def gauss_membership(face: Face, lattice: FaceLattice, gens: NormalConeGenerators | None = None) -> Verdict:
    """PASS iff the relative interior of N(face) holds some (u, t) with t = |u| > 0."""
    return decide_face(face, lattice, gens).verdict


def normal_cone(face: Face, lattice: FaceLattice, lineality: tuple | None = None) -> NormalConeGenerators:
    if lineality is None:
        lineality = lineality_basis(lattice)
    facets = lattice.facets_containing(face) if face.dim < lattice.dim else []
    return NormalConeGenerators(face.vertices, tuple(_split(F.hyperplane.normal) for F in facets), lineality)


def lineality_basis(lattice: FaceLattice) -> tuple:
    if lattice.dim == lattice.ambient_dim:
        return ()
    verts = [lattice.points[v] for v in lattice.vertices]
    base = verts[0]
    dirs = [sub(verts[i], base) for i in affine_basis(verts)[1:]]
    if not dirs:
        return tuple(tuple(Fraction(int(i == j)) for j in range(lattice.ambient_dim))
                     for i in range(lattice.ambient_dim))
    return tuple(nullspace(dirs, lattice.ambient_dim))


def decide_face(face: Face, lattice: FaceLattice, gens: NormalConeGenerators | None = None,
                count_components: bool = False) -> FaceDecision:
    if gens is None:
        gens = normal_cone(face, lattice)
    W = gens.lineality_basis
    if face.dim == lattice.dim and len(W) == 1:
        # the cone is a line: its only tangent direction would be a single ray
        w = W[0]
        u, t = w[:-1], w[-1]
        if _f_sign(u, t) == 0 or _f_sign(tuple(-x for x in u), -t) == 0:
            return FaceDecision(Verdict.DEGENERATE, "normal cone is a line touching the Lorentz cone")
        return FaceDecision(Verdict.FAIL, "normal cone is a line")
    allg = gens.all_generators()
    signs = [_f_sign(u, t) for u, t in allg]
    b_strict = any(s < 0 for s in signs)
    b_weak = any(s == 0 for s in signs)
    if not b_strict and not b_weak:
        return FaceDecision(Verdict.FAIL, "normal cone inside the Lorentz cone")
    if any(s > 0 for s in signs):
        a_strict, a_weak = True, False
    else:
        qp = min_norm_qp(allg)
        a_strict = qp is not None and qp.min_sq < 1
        a_weak = qp is not None and qp.min_sq == 1
    if not a_strict and not a_weak:
        return FaceDecision(Verdict.FAIL, "normal cone misses the Lorentz cone")
    if not (a_strict and b_strict):
        return FaceDecision(Verdict.DEGENERATE, "normal cone touches the Lorentz cone only on its boundary")
    dec = FaceDecision(Verdict.PASS)
    if count_components:
        if W:
            dec.components = 1
            dec.component_flags.append("lineality: one region assumed")
        else:
            dec.components, flags = _count_regions(face, lattice)
            dec.component_flags.extend(flags)
    return dec


def _count_regions(face: Face, lattice: FaceLattice) -> tuple[int, list]:
    """Connected pieces of {f = 0} inside N(face), for a full-dimensional lattice."""
    facets = lattice.facets_containing(face)
    key_index = {F.key: i for i, F in enumerate(facets)}
    gens = [_split(F.hyperplane.normal) for F in facets]
    outside = [i for i, g in enumerate(gens) if _f_sign(*g) < 0]
    parent = {i: i for i in outside}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    flags = []
    fkey = face.key
    out_set = set(outside)
    for i in outside:
        F = facets[i]
        for r in lattice.down[F.key]:
            if not fkey <= r:
                continue
            for G in lattice.up[r]:
                j = key_index.get(G)
                if j is None or j <= i or j not in out_set:
                    continue
                if find(i) == find(j):
                    continue
                qp = min_norm_qp([gens[i], gens[j]])
                if qp is None or qp.min_sq > 1:
                    parent[find(i)] = find(j)
                elif qp.min_sq == 1:
                    flags.append(f"2-face between facets {facets[i].vertices} and {facets[j].vertices} is tangent")
    return len({find(i) for i in outside}), flags


@dataclass
class CircularityReport:
    d: int
    counts: dict        # circularity -> number of passing lifted faces
    components: dict    # circularity -> number of faces of the sphere hull
    witnesses: dict     # circularity -> list of lifted faces (sphere index tuples)
    degenerate: list    # (sphere index tuple, reason)
    flags: list
    lattice: FaceLattice
    lifted: Lift
    verdicts: dict      # lifted face key -> Verdict

    @property
    def total(self) -> int:
        return sum(self.components.values())

    @property
    def total_passing(self) -> int:
        return sum(self.counts.values())

    def spheres_of(self, face: Face) -> tuple:
        return tuple(sorted(self.lifted.sphere_of[v] for v in face.vertices))

    def count_vector(self, use_components: bool = True) -> tuple:
        src = self.components if use_components else self.counts
        return tuple(src[l] for l in range(self.d))


def sphere_hull_faces(spheres: SphereSet, general_position: bool = False,
                      seed: int | None = None) -> CircularityReport:
    """Face counts of the sphere hull, stratified by circularity.

    An l-face of the lifted hull that passes contributes to circularity d-l-1.
    ``counts`` has one entry per passing lifted face; ``components`` counts the
    separate tangency regions, i.e. the faces of the sphere hull themselves.
    """
    lifted = lift(spheres)
    pts = lifted.points
    kept = lifted.kept
    order = kept
    if seed is not None:
        order = list(kept)
        random.Random(seed).shuffle(order)
    lat = hull(pts, order=order)
    d = spheres.d
    W = lineality_basis(lat)
    counts = {l: 0 for l in range(d)}
    comps = {l: 0 for l in range(d)}
    witnesses = {l: [] for l in range(d)}
    degenerate = []
    flags = []
    verdicts = {}
    faces = lat.proper_faces()
    if lat.dim < lat.ambient_dim:
        faces = faces + [lat.top]
    for f in faces:
        dec = decide_face(f, lat, normal_cone(f, lat, W), count_components=True)
        verdicts[f.key] = dec.verdict
        ids = tuple(sorted(lifted.sphere_of[v] for v in f.vertices))
        if dec.verdict is Verdict.DEGENERATE:
            degenerate.append((ids, dec.reason))
            continue
        if dec.verdict is not Verdict.PASS:
            continue
        circ = d - f.dim - 1
        if not 0 <= circ < d:
            flags.append(f"passing face {ids} has no circularity in range")
            continue
        counts[circ] += 1
        comps[circ] += dec.components
        witnesses[circ].append(ids)
        flags.extend(f"{ids}: {msg}" for msg in dec.component_flags)
    if general_position and degenerate:
        raise DegenerateError(f"{len(degenerate)} degenerate faces, first: {degenerate[0]}")
    return CircularityReport(d, counts, comps, witnesses, degenerate, flags, lat, lifted, verdicts)


# ---------------------------------------------------------------------------
# direction probes
# ---------------------------------------------------------------------------

def rational_unit_vector(s: Sequence) -> tuple:
    """Inverse stereographic projection of s in E^(d-1): a rational point of the unit sphere."""
    s = point(s)
    q = norm2(s)
    den = q + 1
    return tuple(2 * x / den for x in s) + ((q - 1) / den,)


def _rational_sqrt(x: Fraction):
    if x < 0:
        return None
    a, b = isqrt(x.numerator), isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


class Prober:
    """Exact argmax of p . (u, |u|) over the lifted hull's vertices."""

    def __init__(self, report: CircularityReport):
        self.report = report
        lat = report.lattice
        self.vertices = list(lat.vertices)
        ints, _ = integerize([lat.points[v] for v in self.vertices])
        self.ints = ints

    def probe(self, u: Sequence) -> Face:
        u = point(u)
        if all(x == 0 for x in u):
            raise ValueError("zero direction")
        t = _rational_sqrt(norm2(u))
        if t is None:
            raise ValueError("direction must have rational length; see rational_unit_vector")
        normal = u + (t,)
        dens = lcm(*(x.denominator for x in normal))
        n = [int(x * dens) for x in normal]
        vals = [dot(p, n) for p in self.ints]
        best = max(vals)
        members = frozenset(v for v, val in zip(self.vertices, vals) if val == best)
        return self.report.lattice.faces[members]


def direction_probe(spheres: SphereSet | CircularityReport, u: Sequence) -> Face:
    report = spheres if isinstance(spheres, CircularityReport) else sphere_hull_faces(spheres)
    return Prober(report).probe(u)
