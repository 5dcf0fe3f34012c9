"""Command-line front end.

    parhull gen --family lb2 --dim 3 --sizes 8,8 --seed 1 --out inst.txt
    parhull spherehull inst.txt --oracle-directions 1000
    parhull sweep --family lb2 --dim 3 --sizes "8 16 32" --out lb2.csv
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .exact import parse_rational
from .generators import GeneratorError, cyclic_points
from .harness import (FAMILIES, SweepSpec, oracle_check, parse_sizes, probe_directions,
                      random_layered, random_pair, run_sweep, sphere_instance)
from .io import (FormatError, format_layered, format_points, format_report, format_spheres,
                 format_witnesses, parse_layered, parse_points, parse_spheres)
from .lattice import (HullError, dehn_sommerville_check, h_vector, hull, isomorphic, polar_dual,
                      reconstruct_f_from_h)
from .layers import (LayeredPointSet, apex_augment, crossing_faces, fbound_formula, gap_sizes,
                     master_bound, stacked_hull)
from .minkowski import WeightedSumSpec, minkowski_oracle, weighted_minkowski
from .spheres import DegenerateError, sphere_hull_faces


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _sizes_one(args) -> tuple:
    sched = parse_sizes(args.sizes, args.family)
    if len(sched) != 1:
        raise ValueError("give exactly one size tuple")
    return sched[0]


def cmd_gen(args) -> int:
    n = _sizes_one(args)
    fam, d = args.family, args.dim
    if fam in ("lb2", "lbm"):
        inst = sphere_instance(fam, d, n, args.seed, 0)
        text = format_spheres(inst.spheres)
        if args.certificate:
            with open(args.certificate, "w") as fh:
                fh.write(inst.certificate.dump())
    elif fam == "cyclic":
        if d % 2:
            raise ValueError("cyclic family needs even --dim")
        text = format_points(cyclic_points(n[0], d // 2))
    elif fam == "stacked-random":
        text = format_layered(random_layered(args.seed, 0, n, d))
    else:
        P, Q = random_pair(args.seed, 0, n, d)
        text = format_layered(LayeredPointSet(d, ((Fraction(0), P), (Fraction(1), Q))))
    _emit(text, args.out)
    return 0


def _load_lattice(args):
    if args.layered:
        layered = parse_layered(_read(args.input))
        return stacked_hull(layered), layered
    return hull(parse_points(_read(args.input))), None


def cmd_hull(args) -> int:
    lat, _ = _load_lattice(args)
    lines = [f"dim {lat.dim}", "f " + " ".join(map(str, lat.f_vector()[1:]))]
    text = "\n".join(lines) + "\n"
    if args.dump:
        text += lat.dump()
    _emit(text, args.out)
    return 0


def cmd_spherehull(args) -> int:
    spheres = parse_spheres(_read(args.input))
    report = sphere_hull_faces(spheres, general_position=args.general_position)
    text = format_report(report, use_components=not args.passing)
    if args.witnesses:
        text += format_witnesses(report)
    if args.oracle_directions:
        res = oracle_check(report, probe_directions(args.seed, 0, spheres.d, args.oracle_directions))
        sys.stderr.write(json.dumps(res, default=str) + "\n")
        if res["false_positives"] or not res["covered"]:
            _emit(text, args.out)
            return 1
    for msg in report.flags:
        sys.stderr.write(f"warning: {msg}\n")
    if report.degenerate:
        sys.stderr.write(f"warning: {len(report.degenerate)} degenerate faces\n")
    _emit(text, args.out)
    return 0


def cmd_minksum(args) -> int:
    layered = parse_layered(_read(args.input))
    if layered.m != 2:
        raise ValueError("minksum expects a layered file with exactly two layers (P then Q)")
    spec = WeightedSumSpec(layered.layers[0][1], layered.layers[1][1], parse_rational(args.lam))
    lat = weighted_minkowski(spec)
    verts = sorted(lat.points[v] for v in lat.vertices)
    text = format_points(verts) + "f " + " ".join(map(str, lat.f_vector()[1:])) + "\n"
    if args.check:
        oracle = minkowski_oracle(spec)
        same = isomorphic(lat, oracle) and lat.signature() == oracle.signature()
        text += f"oracle {'agrees' if same else 'DISAGREES'}\n"
        _emit(text, args.out)
        return 0 if same else 1
    _emit(text, args.out)
    return 0


def cmd_bounds(args) -> int:
    n = tuple(int(x) for x in args.sizes.split(","))
    lines = [f"master {master_bound(n, args.dim)}"]
    for k in range(args.dim + 1):
        lines.append(f"fbound k={k} {fbound_formula(k, n)}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _check_points(lat) -> list:
    out = [f"euler {lat.euler_characteristic()}"]
    if lat.is_simplicial():
        h = h_vector(lat)
        ok = dehn_sommerville_check(h) and reconstruct_f_from_h(h) == tuple(lat.f_vector())
        out.append(f"h {' '.join(map(str, h))} {'ok' if ok else 'FAIL'}")
    if lat.dim == lat.ambient_dim:
        n = len(lat.vertices)
        c = tuple(sum(lat.points[v][i] for v in lat.vertices) / n for i in range(lat.ambient_dim))
        twice = polar_dual(polar_dual(lat, c), c)
        out.append(f"double dual {'ok' if isomorphic(lat, twice) else 'FAIL'}")
    return out


def cmd_check(args) -> int:
    lat, layered = _load_lattice(args)
    lines = _check_points(lat)
    if layered is not None and layered.m >= 2:
        rep = apex_augment(layered, lat)
        lines.append(f"apex identity {'ok' if rep.holds else 'FAIL'}")
        for gap in range(1, layered.m):
            n = gap_sizes(layered, lat, gap)
            faces = crossing_faces(lat, layered, gap)
            for k in range(layered.d + 1):
                got = sum(1 for f in faces if f.dim == k)
                bound = fbound_formula(k, n)
                lines.append(f"gap {gap} k={k} crossing {got} <= {bound} {'ok' if got <= bound else 'FAIL'}")
    text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 1 if "FAIL" in text else 0


def cmd_sweep(args) -> int:
    spec = SweepSpec(args.family, parse_sizes(args.sizes, args.family), args.dim, args.seed, args.out,
                     args.general_position, args.oracle_directions, timing=not args.no_timing)
    result = run_sweep(spec, jobs=args.jobs)
    if not args.out:
        sys.stdout.write(result.csv())
    sys.stderr.write(json.dumps(result.report(), indent=2, default=str) + "\n")
    bad = any(r.oracle and (r.oracle["false_positives"] or not r.oracle["covered"]) for r in result.rows)
    return 1 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="parhull", description="Exact hulls of layered point sets and spheres.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, family=True, sizes=True):
        sp.add_argument("--dim", type=int, default=3)
        if family:
            sp.add_argument("--family", choices=FAMILIES, default="lb2")
        if sizes:
            sp.add_argument("--sizes", required=True,
                            help='size tuples, "8,8;16,16" or per-family shorthand "8 16"')
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out")

    g = sub.add_parser("gen", help="write an instance file")
    common(g)
    g.add_argument("--certificate", help="also write the generator's condition certificate here")
    g.set_defaults(func=cmd_gen)

    for name, func, helptext in (("hull", cmd_hull, "face counts of a point or layered file"),
                                 ("check", cmd_check, "identities and bounds on a point or layered file")):
        h = sub.add_parser(name, help=helptext)
        h.add_argument("input")
        h.add_argument("--layered", action="store_true", help="input is a layered file")
        h.add_argument("--out")
        if name == "hull":
            h.add_argument("--dump", action="store_true", help="append the full face list")
        h.set_defaults(func=func)

    s = sub.add_parser("spherehull", help="circularity counts of a sphere file")
    s.add_argument("input")
    s.add_argument("--general-position", action="store_true", help="treat degenerate faces as errors")
    s.add_argument("--oracle-directions", type=int, default=0, metavar="N")
    s.add_argument("--passing", action="store_true", help="count passing lifted faces, not components")
    s.add_argument("--witnesses", action="store_true")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_spherehull)

    m = sub.add_parser("minksum", help="weighted Minkowski sum of a two-layer file")
    m.add_argument("input")
    m.add_argument("--lam", default="1/2")
    m.add_argument("--check", action="store_true", help="compare against the pairwise-sum oracle")
    m.add_argument("--out")
    m.set_defaults(func=cmd_minksum)

    b = sub.add_parser("bounds", help="master and crossing-face bounds")
    common(b, family=False)
    b.set_defaults(func=cmd_bounds)

    w = sub.add_parser("sweep", help="growth sweep to CSV with a log-log fit")
    common(w)
    w.add_argument("--general-position", action="store_true", help="treat degenerate faces as errors")
    w.add_argument("--oracle-directions", type=int, default=0, metavar="N")
    w.add_argument("--no-timing", action="store_true", help="write 0 seconds so reruns are byte-identical")
    w.add_argument("--jobs", type=int, default=1)
    w.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, GeneratorError, HullError, DegenerateError, ValueError, OSError) as e:
        sys.stderr.write(f"parhull: error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
