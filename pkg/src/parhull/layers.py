"""Point sets on parallel horizontal hyperplanes and their stacked hulls.

A layered set lives in E^(d+1): layer i holds points of E^d placed at height
h_i in the last coordinate.  Besides the hull itself this module evaluates the
crossing-face bound, the master bound sum_{i != j} n_i n_j^floor(d/2), and the
face-count identity obtained by capping the extreme layers with apexes.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, prod
from typing import Sequence

from .exact import Hyperplane, horizontal, point
from .lattice import Face, FaceLattice, HullError, hull
from .optimize import lp_interior_point


@dataclass(frozen=True)
class LayeredPointSet:
    d: int
    layers: tuple  # ((height, (point, ...)), ...) with increasing heights

    def __post_init__(self):
        layers = tuple((Fraction(h), tuple(point(p) for p in pts)) for h, pts in self.layers)
        object.__setattr__(self, "layers", layers)
        if not layers:
            raise ValueError("a layered point set needs at least one layer")
        heights = [h for h, _ in layers]
        if any(a >= b for a, b in zip(heights, heights[1:])):
            raise ValueError("layer heights must be strictly increasing")
        for _, pts in layers:
            if any(len(p) != self.d for p in pts):
                raise ValueError(f"layer points must have dimension {self.d}")

    @classmethod
    def from_layers(cls, layers: Sequence[tuple], d: int | None = None) -> "LayeredPointSet":
        """Build from (height, points) pairs in any order."""
        layers = sorted(((Fraction(h), pts) for h, pts in layers), key=lambda x: x[0])
        if d is None:
            d = next(len(p[0]) for _, p in layers if p) if any(p for _, p in layers) else 0
        return cls(d, tuple(layers))

    @property
    def m(self) -> int:
        return len(self.layers)

    @property
    def sizes(self) -> tuple:
        return tuple(len(pts) for _, pts in self.layers)

    @property
    def heights(self) -> tuple:
        return tuple(h for h, _ in self.layers)

    def layer_index(self) -> list[int]:
        """Layer of each stacked point, in stacking order."""
        return [i for i, (_, pts) in enumerate(self.layers) for _ in pts]

    def replace_point(self, layer: int, index: int, new: Sequence) -> "LayeredPointSet":
        layers = list(self.layers)
        h, pts = layers[layer]
        pts = list(pts)
        pts[index] = point(new)
        layers[layer] = (h, tuple(pts))
        return LayeredPointSet(self.d, tuple(layers))


def stack(layered: LayeredPointSet) -> list[tuple]:
    return [p + (h,) for h, pts in layered.layers for p in pts]


def stacked_hull(layered: LayeredPointSet, seed: int | None = None) -> FaceLattice:
    """Hull of the stacked layers in E^(d+1); vertex ids follow the stacking order."""
    lat = hull(stack(layered), seed=seed)
    if lat.dim < layered.d + 1:
        warnings.warn("stacked hull is not full-dimensional", stacklevel=2)
    return lat


def layer_signature(face: Face, layered: LayeredPointSet) -> tuple:
    index = layered.layer_index()
    sig = [0] * layered.m
    for v in face.vertices:
        sig[index[v]] += 1
    return tuple(sig)


def crossing_faces(lattice: FaceLattice, layered: LayeredPointSet, gap: int) -> list:
    """Faces meeting a horizontal plane strictly between layers ``gap`` and ``gap+1`` (1-based).

    A face meets such a plane iff it has vertices on both sides, so this is a
    signature test and does not depend on where the plane is put.
    """
    if not 1 <= gap < layered.m:
        raise ValueError(f"gap must lie in 1..{layered.m - 1}")
    index = layered.layer_index()
    out = []
    for f in lattice.proper_faces():
        lows = any(index[v] < gap for v in f.vertices)
        highs = any(index[v] >= gap for v in f.vertices)
        if lows and highs:
            out.append(f)
    return sorted(out, key=lambda f: (f.dim, f.vertices))


def fbound_formula(k: int, n: Sequence[int]) -> int:
    """sum over A with (0,...,0,1) <= A <= (k,...,k), |A| = k+1 of prod C(n_i, alpha_i)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    m = len(n)
    total = 0
    for A in product(range(k + 1), repeat=m):
        if sum(A) != k + 1 or A[-1] < 1:
            continue
        total += prod(comb(ni, a) for ni, a in zip(n, A))
    return total


def gap_sizes(layered: LayeredPointSet, lattice: FaceLattice, gap: int) -> tuple:
    """Vertex counts per layer, re-indexed so the gap separates the last group from the rest.

    Layers above the gap are merged into one group.  Counts are vertices of the
    stacked hull on each layer (the f_0 of the layer polytopes that show up).
    """
    index = layered.layer_index()
    verts = set(lattice.vertices)
    per = [0] * layered.m
    for v in verts:
        per[index[v]] += 1
    return tuple(per[:gap]) + (sum(per[gap:]),)


def master_bound(n: Sequence[int], d: int) -> int:
    """sum_{i != j} n_i n_j^floor(d/2)."""
    if d < 3 or d % 2 == 0:
        warnings.warn("the master bound is stated for odd d >= 3", stacklevel=2)
    e = d // 2
    return sum(ni * nj ** e for i, ni in enumerate(n) for j, nj in enumerate(n) if i != j)


@dataclass
class ApexReport:
    lattice: FaceLattice  # Q = hull of the stack plus the two apexes
    y: tuple
    z: tuple
    rows: list            # (k, f_k(Q), f_k(P), f_{k-1}(dP_1), f_{k-1}(dP_m), alpha_k)

    @property
    def holds(self) -> bool:
        return all(q == p + a + b - al for _, q, p, a, b, al in self.rows)


def _boundary_counts(lattice: FaceLattice, members: set, dim: int) -> list[int]:
    """f_{-1..dim-1} of the boundary of the face whose vertex set is ``members``."""
    counts = [0] * (dim + 1)
    for f in lattice.faces.values():
        if f.dim < dim and set(f.vertices) <= members:
            counts[f.dim + 1] += 1
    return counts


def _layer_facet(lattice: FaceLattice, members: set) -> Face:
    for F in lattice.facets:
        if set(F.vertices) <= members:
            return F
    raise HullError("extreme layer is not a facet of the stacked hull")


def _apex_beyond(lattice: FaceLattice, target: Face) -> tuple:
    halfspaces = []
    for F in lattice.facets:
        h = F.hyperplane
        halfspaces.append(h if F is target else h.flipped())
    y = lp_interior_point(halfspaces, dim=lattice.ambient_dim)
    if y is None:
        raise HullError("no apex sees exactly the extreme layer")
    return y


def apex_augment(layered: LayeredPointSet, lattice: FaceLattice | None = None) -> ApexReport:
    """Cap both extreme layers with an apex and check the resulting face-count identity.

    y sees only the bottom layer facet, then z sees only the top one in the
    hull with y added, so
    f_k(Q) = f_k(P) + f_{k-1}(dP_1) + f_{k-1}(dP_m) - alpha_k, alpha_k = 2 at k = d, else 0.
    """
    if layered.m < 2:
        raise HullError("apex augmentation needs at least two layers")
    pts = stack(layered)
    if lattice is None:
        lattice = hull(pts)
    D = layered.d + 1
    if lattice.dim != D:
        raise HullError("stacked hull is not full-dimensional")
    index = layered.layer_index()
    bottom = {v for v in lattice.vertices if index[v] == 0}
    top = {v for v in lattice.vertices if index[v] == layered.m - 1}
    d = layered.d
    y = _apex_beyond(lattice, _layer_facet(lattice, bottom))
    with_y = hull(pts + [y])
    z = _apex_beyond(with_y, _layer_facet(with_y, top))
    Q = hull(pts + [y, z])
    fP = lattice.face_counts()
    fQ = Q.face_counts()
    b1 = _boundary_counts(lattice, bottom, d)
    bm = _boundary_counts(lattice, top, d)
    rows = []
    for k in range(0, d + 1):
        alpha = 2 if k == d else 0
        rows.append((k, fQ[k + 1], fP[k + 1], b1[k], bm[k], alpha))
    return ApexReport(Q, y, z, rows)


def layer_plane(layered: LayeredPointSet, i: int) -> Hyperplane:
    return horizontal(layered.d + 1, layered.heights[i])
