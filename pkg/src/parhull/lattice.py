"""Convex hulls in any fixed dimension with the complete face lattice.

The hull is built by beneath-beyond insertion on integer-scaled points; the
triangulated boundary is then merged into true (possibly non-simplicial)
facets, and all lower faces are obtained by intersecting facets: the facets of
a face F are exactly the inclusion-maximal proper sets F & G, G a facet.
Faces are identified by their sorted vertex ids, so equal point sets always
produce identical lattices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

import networkx as nx

from .exact import (
    Hyperplane,
    affine_basis,
    det,
    dot,
    integerize,
    point,
    primitive,
    row_reduce,
    sub,
)


class HullError(ValueError):
    pass


@dataclass(frozen=True)
class Face:
    vertices: tuple  # sorted vertex ids
    dim: int
    hyperplane: Hyperplane | None = None  # facets only: vertices satisfy normal.x <= offset

    @property
    def key(self) -> frozenset:
        return frozenset(self.vertices)

    @property
    def outward_normal(self):
        return None if self.hyperplane is None else self.hyperplane.normal

    def __len__(self):
        return len(self.vertices)


@dataclass
class FaceLattice:
    """Graded face lattice of a polytope, from the empty face up to the polytope itself."""

    points: list                  # coordinates indexed by vertex id (may include non-vertices)
    ambient_dim: int
    dim: int                      # intrinsic dimension of the polytope
    faces: dict                   # frozenset(vertex ids) -> Face
    down: dict                    # key -> frozenset of keys one dimension lower
    up: dict = field(default_factory=dict)
    insertion_order: tuple = ()
    seed: int | None = None
    tags: dict = field(default_factory=dict)  # only for sections: key -> generating face key

    def __post_init__(self):
        if not self.up:
            up = {k: set() for k in self.faces}
            for k, subs in self.down.items():
                for s in subs:
                    up[s].add(k)
            self.up = {k: frozenset(v) for k, v in up.items()}
        by_dim: dict[int, list] = {}
        for f in self.faces.values():
            by_dim.setdefault(f.dim, []).append(f)
        for lst in by_dim.values():
            lst.sort(key=lambda f: f.vertices)
        self._by_dim = by_dim
        self._vertex_facets = None

    # -- access ---------------------------------------------------------------
    def faces_of_dim(self, k: int) -> list:
        return self._by_dim.get(k, [])

    @property
    def vertices(self) -> tuple:
        return tuple(f.vertices[0] for f in self.faces_of_dim(0))

    @property
    def facets(self) -> list:
        return self.faces_of_dim(self.dim - 1)

    @property
    def top(self) -> Face:
        return self.faces_of_dim(self.dim)[0]

    @property
    def empty(self) -> Face:
        return self.faces[frozenset()]

    def face(self, vertex_ids: Iterable[int]) -> Face:
        return self.faces[frozenset(vertex_ids)]

    def coords(self, vid: int) -> tuple:
        return self.points[vid]

    def vertex_coords(self, face: Face) -> list:
        return [self.points[v] for v in face.vertices]

    def subfaces(self, face: Face) -> list:
        return sorted((self.faces[k] for k in self.down[face.key]), key=lambda f: f.vertices)

    def superfaces(self, face: Face) -> list:
        return sorted((self.faces[k] for k in self.up[face.key]), key=lambda f: f.vertices)

    def facets_containing(self, face: Face) -> list:
        if self._vertex_facets is None:
            vf: dict[int, set] = {}
            for i, F in enumerate(self.facets):
                for v in F.vertices:
                    vf.setdefault(v, set()).add(i)
            self._vertex_facets = vf
        if not face.vertices:
            return list(self.facets)
        common = set.intersection(*(self._vertex_facets.get(v, set()) for v in face.vertices))
        return [self.facets[i] for i in sorted(common)]

    def face_counts(self) -> list[int]:
        """[f_-1, f_0, ..., f_dim] including the empty face and the polytope itself."""
        return [len(self.faces_of_dim(k)) for k in range(-1, self.dim + 1)]

    def f_vector(self) -> tuple:
        """Boundary f-vector (f_-1, f_0, ..., f_{dim-1})."""
        return tuple(len(self.faces_of_dim(k)) for k in range(-1, self.dim))

    def is_simplicial(self) -> bool:
        return all(len(f.vertices) == f.dim + 1 for f in self.faces.values() if f.dim < self.dim)

    def proper_faces(self) -> list:
        return [f for k in range(0, self.dim) for f in self.faces_of_dim(k)]

    # -- text output ----------------------------------------------------------
    def dump(self) -> str:
        lines = []
        for k in range(-1, self.dim + 1):
            for f in self.faces_of_dim(k):
                lines.append(f"{k}; " + ",".join(str(v) for v in f.vertices))
        return "\n".join(lines) + "\n"

    def signature(self) -> frozenset:
        """Faces as sets of vertex coordinates; equal signatures mean equal geometric lattices."""
        return frozenset((f.dim, frozenset(self.points[v] for v in f.vertices)) for f in self.faces.values())

    # -- invariants -----------------------------------------------------------
    def euler_characteristic(self) -> int:
        return sum(n if k % 2 == 0 else -n for k, n in zip(range(-1, self.dim + 1), self.face_counts()))

    def check(self) -> list[str]:
        """Structural self-check; returns a list of problems (empty when sound)."""
        problems = []
        if len(self.faces_of_dim(-1)) != 1 or len(self.faces_of_dim(self.dim)) != 1:
            problems.append("lattice must have exactly one empty face and one top face")
        if self.euler_characteristic() != 0:
            problems.append(f"Euler-Poincare sum is {self.euler_characteristic()}")
        for f in self.faces.values():
            if f.dim >= 0 and len(f.vertices) < f.dim + 1:
                problems.append(f"face {f.vertices} of dim {f.dim} has too few vertices")
            for s in self.down[f.key]:
                if self.faces[s].dim != f.dim - 1 or not s < f.key:
                    problems.append(f"bad incidence {f.vertices} -> {sorted(s)}")
            # diamond property
            for s in self.down[f.key]:
                for t in self.down[s]:
                    mids = [m for m in self.down[f.key] if t in self.down[m]]
                    if len(mids) != 2:
                        problems.append(f"interval {sorted(t)} < {f.vertices} has {len(mids)} middles")
        verts = self.vertices
        for F in self.facets:
            h = F.hyperplane
            if h is None:
                problems.append(f"facet {F.vertices} lacks a hyperplane")
                continue
            for v in verts:
                val = h.evaluate(self.points[v])
                if val > 0 or ((val == 0) != (v in F.key)):
                    problems.append(f"facet {F.vertices} hyperplane wrong at vertex {v}")
        return problems


# ---------------------------------------------------------------------------
# hull construction
# ---------------------------------------------------------------------------

def _simplex_normal(pts: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Integer normal to the hyperplane through k points in E^k (generalized cross product)."""
    k = len(pts[0])
    rows = [sub(p, pts[0]) for p in pts[1:]]
    normal = []
    for j in range(k):
        minor = [r[:j] + r[j + 1:] for r in rows]
        c = det(minor)
        normal.append(c if j % 2 == 0 else -c)
    return tuple(normal)


def _beneath_beyond(P: dict[int, tuple[int, ...]], order: list[int], initial: list[int]):
    """Triangulated hull of integer points in E^k (full-dimensional).

    ``P`` maps point ids to coordinates.  Returns a list of (vertex tuple,
    normal, offset) simplices with normal . x <= offset on the hull.
    """
    k = len(P[initial[0]])
    ref = tuple(sum(P[i][c] for i in initial) for c in range(k))  # (k+1) * centroid
    kp1 = k + 1
    facets: dict[int, tuple] = {}
    ridges: dict[frozenset, list] = {}
    next_id = 0

    def make(verts):
        nonlocal next_id
        n = primitive(_simplex_normal([P[v] for v in verts]))
        off = dot(n, P[verts[0]])
        side = dot(n, ref) - kp1 * off
        if side > 0:
            n = tuple(-c for c in n)
            off = -off
        elif side == 0:
            raise HullError("degenerate simplex during hull construction")
        fid = next_id
        next_id += 1
        facets[fid] = (tuple(sorted(verts)), n, off)
        for v in verts:
            r = frozenset(x for x in verts if x != v)
            ridges.setdefault(r, []).append(fid)
        return fid

    for skip in initial:
        make([v for v in initial if v != skip])
    in_hull = set(initial)
    for i in order:
        if i in in_hull:
            continue
        p = P[i]
        visible = {fid for fid, (_, n, off) in facets.items() if dot(n, p) > off}
        if not visible:
            continue
        horizon = []
        for fid in visible:
            verts = facets[fid][0]
            for v in verts:
                r = frozenset(x for x in verts if x != v)
                other = [g for g in ridges[r] if g != fid]
                if not other or other[0] not in visible:
                    horizon.append(r)
        for fid in visible:
            verts = facets.pop(fid)[0]
            for v in verts:
                r = frozenset(x for x in verts if x != v)
                lst = ridges[r]
                lst.remove(fid)
                if not lst:
                    del ridges[r]
        for r in horizon:
            make(list(r) + [i])
        in_hull.add(i)
    return list(facets.values())


def hull(points: Sequence[Sequence], seed: int | None = None, order: Sequence[int] | None = None) -> FaceLattice:
    """Face lattice of the convex hull of ``points``.

    Vertex ids are indices into ``points``.  Insertion order is ``order`` when
    given (a sequence of distinct indices; points left out are ignored), a
    seeded shuffle when ``seed`` is given, else input order.  Affinely
    dependent inputs yield a lattice of intrinsic dimension < ambient dimension.
    """
    if not points:
        raise HullError("hull of an empty point set")
    pts = [point(p) for p in points]
    D = len(pts[0])
    if any(len(p) != D for p in pts):
        raise HullError("points of mixed dimension")
    if order is not None:
        seq = list(order)
        if not seq or len(set(seq)) != len(seq) or not all(0 <= i < len(pts) for i in seq):
            raise HullError("order must list distinct point indices")
    else:
        seq = list(range(len(pts)))
        if seed is not None:
            random.Random(seed).shuffle(seq)
    first: dict[tuple, int] = {}
    for i in sorted(seq):
        first.setdefault(pts[i], i)
    seq = [i for i in seq if first[pts[i]] == i]
    ints, L = integerize(pts)
    basis_local = affine_basis([ints[i] for i in seq])
    initial = [seq[j] for j in basis_local]
    k = len(initial) - 1
    if k == 0:
        v = initial[0]
        faces = {frozenset(): Face((), -1), frozenset([v]): Face((v,), 0)}
        down = {frozenset(): frozenset(), frozenset([v]): frozenset([frozenset()])}
        return FaceLattice(pts, D, 0, faces, down, insertion_order=tuple(seq), seed=seed)
    base = ints[initial[0]]
    _, cols = row_reduce([sub(ints[i], base) for i in initial[1:]])
    proj = {i: tuple(ints[i][c] for c in cols) for i in seq}
    if k == 1:
        lo = min(seq, key=lambda i: proj[i][0])
        hi = max(seq, key=lambda i: proj[i][0])
        groups = [((-1,), -proj[lo][0], {lo}), ((1,), proj[hi][0], {hi})]
        true_vertices = {lo, hi}
    else:
        simplices = _beneath_beyond(proj, seq, initial)
        merged: dict[tuple, set] = {}
        for verts, n, off in simplices:
            merged.setdefault((n, off), set()).update(verts)
        groups = [(n, off, vs) for (n, off), vs in merged.items()]
        candidates: dict[int, list] = {}
        for gi, (_, _, vs) in enumerate(groups):
            for v in vs:
                candidates.setdefault(v, []).append(gi)
        true_vertices = set()
        for v, gl in candidates.items():
            common = set.intersection(*(groups[g][2] for g in gl))
            if common == {v}:
                true_vertices.add(v)
    facet_sets = []
    for n, off, vs in groups:
        normal = [Fraction(0)] * D
        for c, value in zip(cols, n):
            normal[c] = Fraction(value)
        h = Hyperplane(tuple(normal), Fraction(off, L))
        facet_sets.append((frozenset(vs & true_vertices), h))
    faces, down = _faces_from_facets(sorted(true_vertices), facet_sets, k)
    return FaceLattice(pts, D, k, faces, down, insertion_order=tuple(seq), seed=seed)


def _faces_from_facets(vertices: list[int], facet_sets: list, dim: int):
    """Close the facet vertex sets under intersection, top-down, recording covers."""
    top = frozenset(vertices)
    faces = {top: Face(tuple(sorted(top)), dim)}
    down: dict[frozenset, frozenset] = {}
    facet_keys = [fs for fs, _ in facet_sets]
    vf: dict[int, list] = {}
    for gi, fs in enumerate(facet_keys):
        for v in fs:
            vf.setdefault(v, []).append(gi)
    layer = []
    for fs, h in facet_sets:
        faces[fs] = Face(tuple(sorted(fs)), dim - 1, h)
        layer.append(fs)
    down[top] = frozenset(layer)
    for j in range(dim - 1, 0, -1):
        nxt = set()
        for F in layer:
            acc: dict[int, set] = {}
            for v in F:
                for g in vf[v]:
                    acc.setdefault(g, set()).add(v)
            cands = {frozenset(s) for s in acc.values() if len(s) < len(F)}
            ordered = sorted(cands, key=len, reverse=True)
            maximal = []
            for c in ordered:
                if not any(c < m for m in maximal):
                    maximal.append(c)
            down[F] = frozenset(maximal)
            for m in maximal:
                if m not in faces:
                    faces[m] = Face(tuple(sorted(m)), j - 1)
                nxt.add(m)
        layer = list(nxt)
    empty = frozenset()
    faces[empty] = Face((), -1)
    for F in layer:
        down[F] = frozenset([empty])
    down[empty] = frozenset()
    return faces, down


# ---------------------------------------------------------------------------
# f- and h-vectors
# ---------------------------------------------------------------------------

def _binom(n: int, r: int) -> int:
    return comb(n, r) if 0 <= r <= n else 0


def f_vector(lattice: FaceLattice) -> tuple:
    return lattice.f_vector()


def h_vector(f: Sequence[int] | FaceLattice, dim: int | None = None) -> tuple:
    """h_k = sum_{i<=k} (-1)^(k-i) C(dim-i, dim-k) f_{i-1}, with f = (f_-1, ..., f_{dim-1})."""
    if isinstance(f, FaceLattice):
        if not f.is_simplicial():
            raise HullError("h-vector requested for a non-simplicial polytope")
        dim = f.dim
        f = f.f_vector()
    if dim is None:
        dim = len(f) - 1
    if len(f) != dim + 1:
        raise ValueError("f-vector length must be dim + 1")
    return tuple(
        sum((-1) ** (k - i) * _binom(dim - i, dim - k) * f[i] for i in range(k + 1))
        for k in range(dim + 1)
    )


def dehn_sommerville_check(h: Sequence[int]) -> bool:
    n = len(h) - 1
    return all(h[k] == h[n - k] for k in range(n + 1))


def reconstruct_f_from_h(h: Sequence[int]) -> tuple:
    """f-vector from the lower half of h via the symmetric form of the Dehn-Sommerville relations.

    f_{k-1} = sum*_{i=0}^{dim/2} (C(dim-i, k-i) + C(i, k-dim+i)) h_i, the last
    summand halved when dim/2 is an integer.
    """
    dim = len(h) - 1
    out = []
    for k in range(dim + 1):
        total = Fraction(0)
        for i in range(dim // 2 + 1):
            term = Fraction(_binom(dim - i, k - i) + _binom(i, k - dim + i)) * h[i]
            if dim % 2 == 0 and i == dim // 2:
                term /= 2
            total += term
        if total.denominator != 1:
            raise ArithmeticError("non-integral face number reconstructed")
        out.append(int(total))
    return tuple(out)


# ---------------------------------------------------------------------------
# polarity, sections, isomorphism
# ---------------------------------------------------------------------------

def polar_dual(lattice: FaceLattice, center: Sequence) -> FaceLattice:
    """Polar polytope about ``center``: facet q.x = b maps to the pole c + n/(b - n.c)."""
    c = point(center)
    if lattice.dim != lattice.ambient_dim:
        raise HullError("polar dual needs a full-dimensional polytope")
    facets = lattice.facets
    poles = []
    for F in facets:
        h = F.hyperplane
        beta = h.offset - dot(h.normal, c)
        if beta <= 0:
            raise HullError("center is not strictly interior")
        poles.append(tuple(ci + ni / beta for ci, ni in zip(c, h.normal)))
    index = {F.key: i for i, F in enumerate(facets)}
    D = lattice.ambient_dim
    dual_key = {}
    for f in lattice.faces.values():
        containing = lattice.facets_containing(f) if f.dim < lattice.dim else []
        dual_key[f.key] = frozenset(index[F.key] for F in containing)
    faces = {}
    down = {}
    for f in lattice.faces.values():
        dk = dual_key[f.key]
        h = None
        dual_dim = D - 1 - f.dim
        if f.dim == 0:
            v = lattice.points[f.vertices[0]]
            n = sub(v, c)
            h = Hyperplane(n, 1 + dot(n, c))
        faces[dk] = Face(tuple(sorted(dk)), dual_dim, h)
        down[dk] = frozenset(dual_key[g] for g in lattice.up[f.key])
    return FaceLattice(poles, D, D, faces, down)


def slice_lattice(lattice: FaceLattice, plane: Hyperplane) -> FaceLattice:
    """Face lattice of the section of the polytope by ``plane``.

    Section faces are F & plane for faces F with vertices strictly on both
    sides, plus the faces lying inside the plane.  ``tags`` maps each section
    face to the generating face of the input.
    """
    side = {v: plane.side(lattice.points[v]) for v in lattice.vertices}
    if not (any(s > 0 for s in side.values()) and any(s < 0 for s in side.values())):
        raise HullError("plane does not meet the relative interior of the polytope")
    pts: list = []
    on_plane: dict[int, int] = {}
    for v in lattice.vertices:
        if side[v] == 0:
            on_plane[v] = len(pts)
            pts.append(lattice.points[v])
    crossing_edge: dict[frozenset, int] = {}
    for e in lattice.faces_of_dim(1):
        a, b = e.vertices
        if side[a] * side[b] < 0:
            pa, pb = lattice.points[a], lattice.points[b]
            va, vb = plane.evaluate(pa), plane.evaluate(pb)
            t = va / (va - vb)
            crossing_edge[e.key] = len(pts)
            pts.append(tuple(x + t * (y - x) for x, y in zip(pa, pb)))
    # crossing edges under each face, bottom up
    edges_below: dict[frozenset, frozenset] = {}
    for k in range(-1, lattice.dim + 1):
        for f in lattice.faces_of_dim(k):
            if k == 1:
                edges_below[f.key] = frozenset([f.key]) if f.key in crossing_edge else frozenset()
            elif k < 1:
                edges_below[f.key] = frozenset()
            else:
                acc = set()
                for s in lattice.down[f.key]:
                    acc |= edges_below[s]
                edges_below[f.key] = frozenset(acc)
    section: dict[frozenset, tuple] = {}  # point-set -> (dim, generator key)
    for f in lattice.faces.values():
        sides = {side[v] for v in f.vertices}
        if f.dim == -1:
            section[frozenset()] = (-1, f.key)
        elif 1 in sides and -1 in sides:
            ps = frozenset([on_plane[v] for v in f.vertices if side[v] == 0]
                           + [crossing_edge[e] for e in edges_below[f.key]])
            section[ps] = (f.dim - 1, f.key)
        elif sides == {0}:
            section[frozenset(on_plane[v] for v in f.vertices)] = (f.dim, f.key)
    gen_to_section = {gen: ps for ps, (_, gen) in section.items()}
    sdim = lattice.dim - 1
    faces = {}
    down = {}
    tags = {}
    for ps, (k, gen) in section.items():
        h = None
        if k == sdim - 1:
            g = lattice.faces[gen]
            if g.dim == lattice.dim - 1:
                h = g.hyperplane
            else:
                h = next(iter(lattice.superfaces(g))).hyperplane
        faces[ps] = Face(tuple(sorted(ps)), k, h)
        tags[ps] = gen
    for ps, (k, gen) in section.items():
        cands = set()
        for s in lattice.down[gen]:
            cands.add(s)
            cands |= lattice.down[s]
        subs = set()
        for s in cands:
            sp = gen_to_section.get(s)
            if sp is not None and section[sp][0] == k - 1 and sp < ps:
                subs.add(sp)
        if k == 0:
            subs = {frozenset()}
        down[ps] = frozenset(subs)
    return FaceLattice(pts, lattice.ambient_dim, sdim, faces, down, tags=tags)


def incidence_graph(lattice: FaceLattice) -> nx.Graph:
    g = nx.Graph()
    for v in lattice.vertices:
        g.add_node(("v", v), kind="v")
    for i, F in enumerate(lattice.facets):
        g.add_node(("F", i), kind="F")
        for v in F.vertices:
            g.add_edge(("v", v), ("F", i))
    return g


def isomorphic(a: FaceLattice, b: FaceLattice) -> bool:
    """Combinatorial equivalence, decided on the vertex-facet incidence graph."""
    if a.dim != b.dim or a.face_counts() != b.face_counts():
        return False
    if a.dim <= 1:
        return True
    return nx.is_isomorphic(incidence_graph(a), incidence_graph(b),
                            node_match=lambda x, y: x["kind"] == y["kind"])
