"""Command line front end.

Exit status: 0 when the verdict holds (or the command succeeded), 1 when it
fails or nothing was found, 2 on usage errors and exceeded caps.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import generators as gen
from .arrangement import ArrangementCapError
from .family import Family
from .geometry import DimensionError, Flat, UnboundedBodyError, as_rational, parse_point
from .io import (
    FamilyFormatError, atomic_write, dec_point, load_family, parse_points, points_to_dict,
    serialize_family,
)
from .oracle import GridOracleConfig, grid_escape_oracle
from .reports import (
    Caps, central_point_report, depth_report, dump_report, helly_report, lemma5_report,
    partition_report, pik_report, surround_report, transversal_report, tukey_report, verify_report,
)
from .svg import Overlays, render_svg
from .theorems import SearchCapError, replicate_family

EXIT_TRUE, EXIT_FALSE, EXIT_USAGE = 0, 1, 2

GEN_KINDS = ("lines", "concurrent", "simplex", "random-pik", "planted", "mix", "slab", "points")


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--family", action="append", default=[], metavar="PATH", help="family JSON file (repeatable)")
    p.add_argument("--out", metavar="PATH", help="write the result here (atomically)")
    p.add_argument("--seed", type=int, default=None, help="seed for generators")
    p.add_argument("--max-hyperplanes", type=int, default=Caps().max_hyperplanes)
    p.add_argument("--max-bodies", type=int, default=Caps().max_bodies)
    p.add_argument("--grid-step", type=as_rational, default=None, metavar="P/Q",
                   help="also run the advisory grid escape oracle with this step")
    p.add_argument("--json", action="store_true", help="print the JSON report")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="dualdepth", description="Exact dual depth and surround certificates.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help):
        return sub.add_parser(name, parents=[common], help=help)

    add("check-pik", "every k bodies share a point?").add_argument("-k", type=int, required=True)
    add("helly", "common point of the whole family")
    add("depth", "dual depth of a point").add_argument("--x", type=parse_point, required=True)
    add("central-point", "deepest point over the arrangement")
    p = add("partition", "disjoint groups each containing or surrounding one point")
    p.add_argument("-r", type=int, required=True)
    p.add_argument("--x", type=parse_point)
    p = add("surround", "does a subfamily surround x?")
    p.add_argument("--sub", required=True, help="comma-separated body indices")
    p.add_argument("--x", type=parse_point, required=True)
    add("lemma5", "simplex certificate for d+1 bodies around b").add_argument("--b", type=parse_point, required=True)
    p = add("transversal", "flat met or surrounded by groups of every family")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--farey-order", type=int, default=3)
    p = add("tukey", "halfspace depth of a point set")
    p.add_argument("--points", required=True, metavar="PATH")
    p.add_argument("--x", type=parse_point)
    add("replicate", "repeat every body k times").add_argument("-k", type=int, required=True)
    p = add("gen", "generate an instance")
    p.add_argument("kind", choices=GEN_KINDS)
    p.add_argument("-n", type=int, default=3)
    p.add_argument("-d", type=int, default=2)
    p.add_argument("-k", type=int, default=3)
    p.add_argument("--thickness", type=as_rational, default=Fraction(1, 10))
    p.add_argument("--point", type=parse_point)
    p = add("render", "SVG picture of a planar family")
    p.add_argument("--report", metavar="PATH", help="overlay a report's certificate")
    p = add("verify", "re-check a report file")
    p.add_argument("--report", required=True, metavar="PATH")
    p.add_argument("--points", metavar="PATH")
    return parser


def _families(args, count: int | None = 1) -> list[Family]:
    if count is not None and len(args.family) != count:
        raise UsageError(f"expected {count} --family argument(s), got {len(args.family)}")
    if not args.family:
        raise UsageError("no --family given")
    return [load_family(p) for p in args.family]


def _emit(args, text: str, summary: str | None = None):
    if args.out:
        atomic_write(args.out, text)
    if args.json or summary is None:
        if not args.out or args.json:
            sys.stdout.write(text)
    else:
        print(summary)


def _pt(p) -> str:
    return "(" + ", ".join(p) + ")" if isinstance(p, list) else str(p)


def _summary(rep: dict) -> str:
    c, op = rep["certificate"], rep["operation"]
    lines = []
    if op == "check-pik":
        if c["holds"]:
            lines.append(f"Pi_{rep['parameters']['k']} holds ({len(c['witnesses'])} subfamilies of size {c['size_checked']})")
        else:
            lines.append(f"Pi_{rep['parameters']['k']} fails; witness subfamily {c['violating']} has no common point")
    elif op == "helly":
        lines.append(f"common point {_pt(c['point'])}" if c["point"] else f"no common point; violating {c['violating']}")
    elif op == "depth":
        lines.append(f"depth {c['value']} at {_pt(c['point'])}; escape hits {c['hit_set']} via {len(c['escape']['path'])} cells")
    elif op == "central-point":
        dp = c["depth"]
        lines.append(f"central point {_pt(c['point'])} depth {dp['value']} (required {c['required']}, "
                     f"bound_met {c['bound_met']}, pi_d {c['pi_d_holds']})")
    elif op == "partition":
        if c["found"]:
            groups = "; ".join(f"{g['kind']} {g['members']}" for g in c["groups"])
            lines.append(f"partition at {_pt(c['point'])}: {groups}")
        else:
            lines.append("no partition found" + (" (exhaustive: refuted)" if c["refuted"] else ""))
    elif op == "surround":
        lines.append(f"surrounded: {c['surrounded']} (evidence {c['evidence']}"
                     + ("" if c["standard_size"] else ", non-standard subfamily size") + ")")
    elif op == "lemma5":
        lines.append("simplex certificate issued" if c["certificate"] else f"no certificate: {c['reason']}")
    elif op == "transversal":
        if c["found"]:
            lines.append(f"flat through {_pt(c['basepoint'])} along {c['directions']}; r = {c['r_values']}, "
                         f"guaranteed {c['hypotheses']['guaranteed']}")
        else:
            lines.append("no transversal flat found (search is incomplete; not a refutation)")
    elif op == "tukey":
        lines.append(f"halfspace depth {c['depth']} at {_pt(c['center'])}"
                     + ("" if c["bound"] is None else f" (bound {c['bound']}, met {c['bound_met']})"))
    if "oracle" in rep:
        lines.append(f"grid oracle (advisory): {rep['oracle']}")
    lines.append(f"verification: {rep['verification']['reason']}")
    return "\n".join(lines)


def _oracle(args, family: Family, x, avoid) -> bool:
    cfg = GridOracleConfig.covering(family.bodies, [x], args.grid_step)
    return grid_escape_oracle(x, [family[i] for i in avoid], cfg)


def _run_report(args) -> int:
    caps = Caps(args.max_hyperplanes, args.max_bodies)
    seed = args.seed
    cmd = args.command
    if cmd == "tukey":
        pts = parse_points(Path(args.points).read_text())
        rep = tukey_report(pts, args.x, caps, seed)
    elif cmd == "transversal":
        fams = _families(args, None)
        rep = transversal_report(fams, args.m, caps, seed, args.farey_order)
    else:
        fam = _families(args)[0]
        if cmd == "check-pik":
            rep = pik_report(fam, args.k, caps, seed)
        elif cmd == "helly":
            rep = helly_report(fam, caps, seed)
        elif cmd == "depth":
            rep = depth_report(fam, args.x, caps, seed)
            if args.grid_step is not None:
                avoid = rep["certificate"]["escape"]["avoided"]
                rep["oracle"] = {"escapes_avoiding_certificate_set": _oracle(args, fam, args.x, avoid)}
        elif cmd == "central-point":
            rep = central_point_report(fam, caps, seed)
        elif cmd == "partition":
            rep = partition_report(fam, args.r, args.x, caps, seed)
        elif cmd == "surround":
            try:
                sub = [int(s) for s in args.sub.split(",") if s.strip()]
            except ValueError as exc:
                raise UsageError(f"bad --sub {args.sub!r}") from exc
            if any(not 0 <= i < len(fam) for i in sub):
                raise UsageError("subfamily index out of range")
            rep = surround_report(fam, sub, args.x, caps, seed)
            if args.grid_step is not None:
                rep["oracle"] = {"escapes": _oracle(args, fam, args.x, sub)}
        else:
            rep = lemma5_report(fam, args.b, caps, seed)
    _emit(args, dump_report(rep), _summary(rep))
    return EXIT_TRUE if rep["verdict"] and rep["verification"]["ok"] else EXIT_FALSE


def _gen(args) -> int:
    seed = 0 if args.seed is None else args.seed
    k = args.kind
    if k == "points":
        text = json.dumps(points_to_dict(gen.gen_point_set(args.n, args.d, seed)), indent=2) + "\n"
        _emit(args, text)
        return EXIT_TRUE
    if k == "lines":
        fam = gen.gen_lines_general_position(args.n, args.d, seed)
    elif k == "concurrent":
        fam = gen.gen_concurrent_lines(args.n, args.point or tuple(0 for _ in range(args.d)))
    elif k == "simplex":
        fam = gen.gen_simplex_facet_bodies(args.d, args.thickness)
    elif k == "random-pik":
        fam = gen.gen_random_pik(args.n, args.d, args.k, seed)
    elif k == "planted":
        fam = gen.gen_planted_violation(args.n, seed)[0]
    elif k == "mix":
        fam = gen.gen_pi_d_family(seed)
    else:
        a, b = gen.gen_slab_instance(seed)
        if not args.out:
            raise UsageError("slab writes two families: give --out PREFIX")
        atomic_write(f"{args.out}.0.json", serialize_family(a))
        atomic_write(f"{args.out}.1.json", serialize_family(b))
        return EXIT_TRUE
    _emit(args, serialize_family(fam))
    return EXIT_TRUE


def _overlays(rep: dict) -> Overlays:
    c, op = rep["certificate"], rep["operation"]
    ov = Overlays()
    path = lambda esc: [dec_point(s["representative"]) for s in esc["path"]] if esc else []  # noqa: E731
    if op == "depth":
        ov.points, ov.paths = [dec_point(c["point"])], [path(c["escape"])]
    elif op == "central-point":
        ov.star, ov.paths = dec_point(c["point"]), [path(c["depth"]["escape"])]
    elif op == "partition" and c["found"]:
        ov.points, ov.groups = [dec_point(c["point"])], [g["members"] for g in c["groups"]]
    elif op == "surround":
        ov.points = [dec_point(rep["parameters"]["x"])]
        ov.groups = [rep["parameters"]["subfamily"]]
        if c["escape"]:
            ov.paths = [path(c["escape"])]
    elif op == "lemma5" and c["certificate"]:
        ov.points = [dec_point(c["certificate"]["base"])] + [dec_point(v) for v in c["certificate"]["vertices"]]
    elif op == "transversal" and c["found"]:
        ov.flats = [Flat(dec_point(c["basepoint"]), tuple(dec_point(v) for v in c["directions"]))]
    return ov


def _render(args) -> int:
    fam = _families(args)[0]
    ov = Overlays()
    title = fam.names and ", ".join(fam.names)
    if args.report:
        rep = json.loads(Path(args.report).read_text())
        ov = _overlays(rep)
        title = rep["operation"]
    _emit(args, render_svg(fam, ov, title or None))
    return EXIT_TRUE


def _verify(args) -> int:
    rep = json.loads(Path(args.report).read_text())
    fams = [load_family(p) for p in args.family]
    pts = parse_points(Path(args.points).read_text()) if args.points else None
    v = verify_report(rep, fams, pts)
    print(f"{rep.get('operation')}: {'valid' if v else 'INVALID'} ({v.reason})")
    return EXIT_TRUE if v else EXIT_FALSE


def _replicate(args) -> int:
    fam = _families(args)[0]
    _emit(args, serialize_family(replicate_family(fam, args.k)))
    return EXIT_TRUE


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "gen":
            return _gen(args)
        if args.command == "render":
            return _render(args)
        if args.command == "verify":
            return _verify(args)
        if args.command == "replicate":
            return _replicate(args)
        return _run_report(args)
    except (UsageError, FamilyFormatError, ArrangementCapError, SearchCapError, DimensionError,
            UnboundedBodyError, NotImplementedError, gen.GenerationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
