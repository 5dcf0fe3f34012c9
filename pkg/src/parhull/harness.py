"""Growth sweeps: one instance per size, a CSV row each, and a log-log fit.

Row i of a sweep draws its randomness from rng_for(seed, i), so a row can be
recomputed alone and rows may run in any order or in parallel.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from .generators import GeneratorError, cyclic_points, lb2_instance, lbm_instance, rng_for
from .lattice import HullError, hull, reconstruct_f_from_h
from .layers import LayeredPointSet, master_bound, stacked_hull
from .minkowski import WeightedSumSpec, weighted_minkowski
from .spheres import (CircularityReport, DegenerateError, Prober, Verdict,
                      rational_unit_vector, sphere_hull_faces)

FAMILIES = ("lb2", "lbm", "stacked-random", "cyclic", "minkowski-random")
SPHERE_FAMILIES = ("lb2", "lbm")
CSV_HEADER = ("family", "d", "n_vector", "total_faces", "counts_json", "bound", "seconds")

# small fixed sizes for the O(1) layers of stacked-random
STACKED_SMALL = 3
COORD_DEN = 1 << 10


@dataclass(frozen=True)
class SweepSpec:
    family: str
    schedule: tuple          # ((n_1, ..., n_m), ...)
    d: int
    seed: int = 0
    out: str | None = None
    general_position: bool = False
    oracle_directions: int = 0
    timing: bool = True

    def __post_init__(self):
        sched = tuple(tuple(int(x) for x in n) for n in self.schedule)
        object.__setattr__(self, "schedule", sched)
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")
        if not sched:
            raise ValueError("empty size schedule")
        totals = [sum(n) for n in sched]
        if any(a >= b for a, b in zip(totals, totals[1:])):
            raise ValueError("size schedule must be strictly increasing in total size")
        if self.family in SPHERE_FAMILIES and (self.d < 3 or self.d % 2 == 0):
            raise ValueError("lower-bound families need odd d >= 3")
        if self.family == "cyclic" and (self.d < 2 or self.d % 2):
            raise ValueError("cyclic family needs even d >= 2 (d = 2 delta)")
        if self.d < 1:
            raise ValueError("d must be positive")


def normalize_size(family: str, n: Sequence[int]) -> tuple:
    """Expand a shorthand size into the family's full n-vector."""
    n = tuple(int(x) for x in n)
    if any(x < 1 for x in n):
        raise ValueError("sizes must be positive")
    if family == "lb2":
        return n * 2 if len(n) == 1 else n
    if family == "lbm":
        if len(n) < 3:
            raise ValueError("lbm sizes need at least three entries")
        return n
    if family == "cyclic":
        if len(n) != 1:
            raise ValueError("cyclic sizes are single integers")
        return n
    if family == "stacked-random":
        return (n[0], STACKED_SMALL) if len(n) == 1 else n
    if family == "minkowski-random":
        return n * 2 if len(n) == 1 else n
    raise ValueError(f"unknown family {family!r}")


def parse_sizes(text: str, family: str) -> tuple:
    """"8,8;16,16" or "8 16 32" (shorthand per family)."""
    groups = [g for g in text.replace(";", " ").split() if g]
    return tuple(normalize_size(family, [int(x) for x in g.split(",") if x]) for g in groups)


def size_parameter(n: Sequence[int]) -> int:
    return max(n)


# ---------------------------------------------------------------------------
# instances
# ---------------------------------------------------------------------------

def random_points(rng: np.random.Generator, count: int, d: int) -> list:
    """Uniform grid points in [-1, 1]^d; duplicates are left to the hull."""
    raw = rng.integers(-COORD_DEN, COORD_DEN + 1, size=(count, d))
    return [tuple(Fraction(int(x), COORD_DEN) for x in row) for row in raw]


def sphere_points(rng: np.random.Generator, count: int, d: int) -> list:
    """Rational points on the unit sphere of E^d, so every point is extreme."""
    if d == 1:
        return random_points(rng, count, d)
    raw = rng.integers(-4 * COORD_DEN, 4 * COORD_DEN + 1, size=(count, d - 1))
    return [rational_unit_vector([Fraction(int(x), COORD_DEN) for x in row]) for row in raw]


def random_layered(seed: int, index: int, n: Sequence[int], d: int) -> LayeredPointSet:
    """Layer i at height i holding n_i points in convex position."""
    rng = rng_for(seed, index)
    return LayeredPointSet(d, tuple((Fraction(i), tuple(sphere_points(rng, k, d))) for i, k in enumerate(n)))


def random_pair(seed: int, index: int, n: Sequence[int], d: int) -> tuple:
    rng = rng_for(seed, index)
    return tuple(random_points(rng, n[0], d)), tuple(random_points(rng, n[1], d))


def sphere_instance(family: str, d: int, n: Sequence[int], seed: int, index: int):
    if family == "lb2":
        return lb2_instance(d, n[0], n[1], seed=seed, stream=index)
    return lbm_instance(d, n, seed=seed, stream=index)


def cyclic_bound(n: int, dim: int) -> int:
    """Total proper faces of a cyclic dim-polytope on n vertices (upper bound theorem)."""
    half = [comb(n - dim + k - 1, k) for k in range(dim // 2 + 1)]
    h = half + [half[dim - k] for k in range(dim // 2 + 1, dim + 1)]
    return sum(reconstruct_f_from_h(h)[1:])


# ---------------------------------------------------------------------------
# rows
# ---------------------------------------------------------------------------

@dataclass
class Row:
    index: int
    family: str
    d: int
    n: tuple
    total: int | None = None
    counts: list = field(default_factory=list)
    bound: int | None = None
    seconds: float = 0.0
    error: str | None = None
    oracle: dict | None = None

    def csv_fields(self, timing: bool = True) -> list:
        secs = f"{self.seconds:.3f}" if timing else "0"
        if self.error is not None:
            return [self.family, self.d, json.dumps(list(self.n)), "", json.dumps({"error": self.error}),
                    "" if self.bound is None else self.bound, secs]
        return [self.family, self.d, json.dumps(list(self.n)), self.total,
                json.dumps(self.counts), self.bound, secs]


def probe_directions(seed: int, index: int, d: int, count: int) -> list:
    """Seeded rational unit vectors in E^d (rational length, so probes stay exact)."""
    rng = rng_for(seed, (1 << 32) + index)
    if d == 1:
        return [(Fraction(1),) if rng.integers(2) else (Fraction(-1),) for _ in range(count)]
    raw = rng.integers(-64, 65, size=(count, d - 1))
    return [rational_unit_vector([Fraction(int(x), 16) for x in row]) for row in raw]


def oracle_check(report: CircularityReport, directions: Sequence) -> dict:
    """Probe the lifted hull; every hit must be a passing face and counts must cover the hits."""
    prober = Prober(report)
    hits: dict = {}
    false_positives = 0
    for u in directions:
        f = prober.probe(u)
        if report.verdicts.get(f.key) is not Verdict.PASS:
            false_positives += 1
            continue
        hits.setdefault(report.d - f.dim - 1, set()).add(f.key)
    found = {l: len(hits.get(l, ())) for l in range(report.d)}
    covered = all(report.counts[l] >= found[l] for l in range(report.d))
    return {"probes": len(directions), "found": found, "false_positives": false_positives,
            "covered": covered}


def run_row(spec: SweepSpec, index: int) -> Row:
    n = spec.schedule[index]
    row = Row(index, spec.family, spec.d, n)
    start = time.perf_counter()
    try:
        _fill_row(spec, index, row)
    except (GeneratorError, HullError, DegenerateError, ValueError) as e:
        row.error = f"{type(e).__name__}: {e}"
    row.seconds = time.perf_counter() - start
    return row


def _fill_row(spec: SweepSpec, index: int, row: Row) -> None:
    fam, d, n, seed = spec.family, spec.d, row.n, spec.seed
    if fam in SPHERE_FAMILIES:
        inst = sphere_instance(fam, d, n, seed, index)
        report = sphere_hull_faces(inst.spheres, general_position=spec.general_position)
        row.total = report.total
        row.counts = list(report.count_vector())
        row.bound = master_bound(inst.spheres.class_counts, d)
        if spec.oracle_directions:
            row.oracle = oracle_check(report, probe_directions(seed, index, d, spec.oracle_directions))
        return
    if fam == "cyclic":
        lat = hull(cyclic_points(n[0], d // 2))
        row.bound = cyclic_bound(n[0], d)
    elif fam == "stacked-random":
        lat = stacked_hull(random_layered(seed, index, n, d))
        row.bound = master_bound(n, d)
    else:
        P, Q = random_pair(seed, index, n, d)
        lat = weighted_minkowski(WeightedSumSpec(P, Q, Fraction(1, 2)))
        row.bound = master_bound(n, d)
    row.counts = list(lat.f_vector()[1:])
    row.total = sum(row.counts)


# ---------------------------------------------------------------------------
# fit
# ---------------------------------------------------------------------------

@dataclass
class Fit:
    slope: float | None
    intercept: float | None
    residual: float | None
    theoretical: float | None
    points: int

    def as_dict(self) -> dict:
        return {"slope": self.slope, "intercept": self.intercept, "residual": self.residual,
                "theoretical_exponent": self.theoretical, "points": self.points}


def _ols(x: Sequence[float], y: Sequence[float]) -> tuple:
    slope, intercept = np.polyfit(x, y, 1)
    pred = slope * np.asarray(x) + intercept
    resid = float(np.sqrt(np.mean((np.asarray(y) - pred) ** 2)))
    return float(slope), float(intercept), resid


def fit_growth(rows: Sequence[Row], drop_smallest: bool = True) -> Fit:
    """OLS slope of log(total) against log(max n_i), smallest size dropped when 3+ rows remain."""
    good = sorted((r for r in rows if r.error is None and r.total), key=lambda r: size_parameter(r.n))
    if drop_smallest and len(good) >= 3:
        good = good[1:]
    xs = [math.log(size_parameter(r.n)) for r in good]
    if len(set(xs)) < 2:
        return Fit(None, None, None, None, len(good))
    slope, intercept, resid = _ols(xs, [math.log(r.total) for r in good])
    bounded = [r for r in good if r.bound]
    theo = None
    if len(bounded) == len(good):
        theo = _ols(xs, [math.log(r.bound) for r in good])[0]
    return Fit(slope, intercept, resid, theo, len(good))


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

@dataclass
class SweepResult:
    spec: SweepSpec
    rows: list
    fit: Fit

    def csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in self.rows:
            w.writerow(r.csv_fields(self.spec.timing))
        return buf.getvalue()

    def report(self) -> dict:
        out = {"family": self.spec.family, "d": self.spec.d, "seed": self.spec.seed,
               "fit": self.fit.as_dict(),
               "errors": {json.dumps(list(r.n)): r.error for r in self.rows if r.error}}
        oracle = {json.dumps(list(r.n)): r.oracle for r in self.rows if r.oracle is not None}
        if oracle:
            out["oracle"] = oracle
        return out


def run_sweep(spec: SweepSpec, jobs: int = 1) -> SweepResult:
    indices = range(len(spec.schedule))
    if jobs > 1 and len(spec.schedule) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            rows = list(ex.map(run_row, [spec] * len(indices), indices))
    else:
        rows = [run_row(spec, i) for i in indices]
    rows.sort(key=lambda r: r.index)
    result = SweepResult(spec, rows, fit_growth(rows))
    if spec.out:
        with open(spec.out, "w", newline="") as fh:
            fh.write(result.csv())
    return result
