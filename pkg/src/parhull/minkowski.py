"""Weighted Minkowski sums (1 - lam) P + lam Q of two polytopes.

Stack P at height 0 and Q at height 1 in E^(d+1); the section of their hull
at height lam, with the last coordinate dropped, is exactly the weighted sum.
The brute-force oracle hulls all |P| |Q| pairwise combinations instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import Hyperplane, horizontal, point
from .lattice import FaceLattice, hull, slice_lattice


@dataclass(frozen=True)
class WeightedSumSpec:
    P: tuple
    Q: tuple
    lam: Fraction

    def __post_init__(self):
        object.__setattr__(self, "P", tuple(point(p) for p in self.P))
        object.__setattr__(self, "Q", tuple(point(q) for q in self.Q))
        object.__setattr__(self, "lam", Fraction(self.lam))
        if not self.P or not self.Q:
            raise ValueError("both summands need at least one point")
        if not 0 < self.lam < 1:
            raise ValueError("lam must lie strictly between 0 and 1")
        d = len(self.P[0])
        if any(len(p) != d for p in self.P + self.Q):
            raise ValueError("summands live in different dimensions")

    @property
    def d(self) -> int:
        return len(self.P[0])


def _drop_last(lattice: FaceLattice) -> FaceLattice:
    pts = [p[:-1] for p in lattice.points]
    # every section point sits at the same height, so fold the last term into the offset
    height = lattice.points[0][-1]
    faces = {}
    for k, f in lattice.faces.items():
        h = f.hyperplane
        if h is not None:
            h = Hyperplane(h.normal[:-1], h.offset - h.normal[-1] * height) \
                if any(c != 0 for c in h.normal[:-1]) else None
        faces[k] = type(f)(f.vertices, f.dim, h)
    return FaceLattice(pts, lattice.ambient_dim - 1, lattice.dim, faces, lattice.down, tags=lattice.tags)


def weighted_minkowski(spec: WeightedSumSpec) -> FaceLattice:
    """Face lattice of (1 - lam) P + lam Q via the section of the stacked hull."""
    stacked = [p + (Fraction(0),) for p in spec.P] + [q + (Fraction(1),) for q in spec.Q]
    lat = hull(stacked)
    section = slice_lattice(lat, horizontal(spec.d + 1, spec.lam))
    return _drop_last(section)


def minkowski_oracle(spec: WeightedSumSpec) -> FaceLattice:
    lam = spec.lam
    pts = [tuple((1 - lam) * a + lam * b for a, b in zip(p, q)) for p in spec.P for q in spec.Q]
    return hull(pts)


def plain_sum(P: Sequence, Q: Sequence) -> FaceLattice:
    """P + Q, i.e. twice the section at height 1/2."""
    lat = weighted_minkowski(WeightedSumSpec(tuple(P), tuple(Q), Fraction(1, 2)))
    return FaceLattice([tuple(2 * x for x in p) for p in lat.points], lat.ambient_dim, lat.dim,
                       {k: type(f)(f.vertices, f.dim) for k, f in lat.faces.items()}, lat.down)
