"""Beyond/beneath tests and vertex pulling.

Pulling v to v' means: v' is beyond every facet containing v and beneath every
other facet.  Face numbers never drop under a pull, and pulling every vertex
of a stacked hull inside its own layer hyperplane makes all faces off the two
extreme layers simplices.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .exact import Hyperplane, affine_rank, point
from .lattice import Face, FaceLattice, HullError, hull
from .layers import LayeredPointSet, layer_plane, stack
from .optimize import lp_interior_point


class Side(enum.Enum):
    BEYOND = 1
    ON = 0
    BENEATH = -1


BeyondBeneath = Side


class PullError(HullError):
    pass


def classify(p: Sequence, facet: Face) -> Side:
    if facet.hyperplane is None:
        raise ValueError("face has no supporting hyperplane")
    return Side(facet.hyperplane.side(point(p)))


def pull_system(lattice: FaceLattice, v: int, constraint: Hyperplane | None = None):
    """Strict inequalities for pulling v: beyond facets through v, beneath the rest.

    A facet lying inside the constraint hyperplane is left out; v' stays on
    that hyperplane anyway.
    """
    beyond, beneath = [], []
    for F in lattice.facets:
        if v in F.key:
            if constraint is not None and all(constraint.side(lattice.points[w]) == 0 for w in F.vertices):
                continue
            beyond.append(F.hyperplane)
        else:
            beneath.append(F.hyperplane.flipped())
    return beyond, beneath


def pull_vertex(lattice: FaceLattice, v: int, constraint: Hyperplane | None = None,
                snap: bool = True) -> tuple[tuple, FaceLattice]:
    """Pull vertex ``v`` (optionally inside ``constraint``); returns (v', rebuilt lattice).

    The rebuilt hull uses the vertices of ``lattice`` with v replaced, and
    keeps vertex ids.
    """
    if lattice.dim != lattice.ambient_dim:
        raise PullError("pulling needs a full-dimensional hull")
    if v not in lattice.vertices:
        raise PullError(f"{v} is not a vertex")
    if constraint is not None and constraint.side(lattice.points[v]) != 0:
        raise PullError("vertex does not lie on the constraint hyperplane")
    beyond, beneath = pull_system(lattice, v, constraint)
    eqs = [constraint] if constraint is not None else []
    new = lp_interior_point(beyond + beneath, eqs, dim=lattice.ambient_dim, snap=snap)
    if new is None:
        raise PullError(f"no admissible position for vertex {v}")
    pts = list(lattice.points)
    pts[v] = new
    rebuilt = hull(pts, order=sorted(lattice.vertices))
    return new, rebuilt


@dataclass
class PullLog:
    entries: list = field(default_factory=list)  # (phase, vertex id, old point, new point)


def make_layerwise_simplicial(layered: LayeredPointSet, log: PullLog | None = None) -> LayeredPointSet:
    """Pull every hull vertex within its own layer hyperplane.

    Order: vertices of the bottom layer, then of the top layer, then of the
    intermediate layers, each phase by increasing id.  Non-vertex points are
    carried along unchanged.
    """
    if layered.m < 2:
        raise HullError("need at least two layers")
    pts = stack(layered)
    index = layered.layer_index()
    lat = hull(pts)
    if lat.dim != layered.d + 1:
        raise HullError("stacked hull is not full-dimensional")
    m = layered.m
    for i in (0, m - 1):
        # pulls inside an extreme layer need that layer to be a facet
        if affine_rank(layered.layers[i][1]) < layered.d:
            raise HullError(f"layer {i + 1} does not span its hyperplane")
    phases = [("bottom", lambda i: i == 0), ("top", lambda i: i == m - 1),
              ("middle", lambda i: 0 < i < m - 1)]
    for name, wanted in phases:
        for v in sorted(lat.vertices):
            if not wanted(index[v]):
                continue
            old = lat.points[v]
            new, lat = pull_vertex(lat, v, layer_plane(layered, index[v]))
            if log is not None:
                log.entries.append((name, v, old, new))
    out = []
    pos = 0
    for h, layer_pts in layered.layers:
        out.append((h, tuple(lat.points[pos + j][:-1] for j in range(len(layer_pts)))))
        pos += len(layer_pts)
    return LayeredPointSet(layered.d, tuple(out))


def off_extreme_simplicial(lattice: FaceLattice, layered: LayeredPointSet) -> list:
    """Faces not contained in the bottom or top layer that fail to be simplices."""
    index = layered.layer_index()
    bad = []
    for f in lattice.proper_faces():
        layers = {index[v] for v in f.vertices}
        if layers <= {0} or layers <= {layered.m - 1}:
            continue
        if len(f.vertices) != f.dim + 1:
            bad.append(f)
    return bad
