"""Command-line surface: thin wrappers over the library with JSON/CSV output.

Rationals cross the boundary as "p/q" strings; floats appear only in trace
CSVs.  Identical inputs produce byte-identical JSON (sorted keys, stable
orderings).  Exit codes: 0 success, 1 failed check, 2 usage error, 3
internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .alcoves import (
    AffineHyperplane,
    Alcove,
    alcove_from_floors,
    alcove_of_point,
    fundamental_alcove,
    in_S,
    in_Vreg,
    walls_and_adjacency,
)
from .braid import (
    BraidWord,
    equal_up_to_braid_moves,
    positive_lift,
    project_to_affine_weyl,
    wall_type,
)
from .coinvariants import coinvariant_basis, exp_class, is_harmonic, weyl_sum
from .config import Config
from .covering import (
    CoveringPoint,
    TransportPath,
    covering_point_simples,
    make_covering_point,
    phase,
    phase_track,
    project,
    stability_sanity,
    transport,
)
from .errors import AlcoveChargeError
from .kmodel import (
    KLEINIAN,
    ZERO_SECTION,
    KClass,
    build_model,
    central_charge_exact,
    d_polynomial,
    euler_chi_polynomial,
)
from .polynomials import Polynomial, _frac_str
from .rootsystem import Weight, enumerate_weyl, root_system
from .rvsc import RVSCInstance, check_rvsc


def _parse_fraction(text: str) -> Fraction:
    return Fraction(text.strip())


def _parse_weight(text: str, rank: int) -> Weight:
    parts = [p for p in text.replace("[", "").replace("]", "").split(",") if p.strip()]
    if len(parts) != rank:
        raise SystemExit(2)
    return Weight.of([_parse_fraction(p) for p in parts])


def _parse_floors(text: str, count: int) -> tuple[int, ...]:
    parts = [p for p in text.replace("[", "").replace("]", "").split(",") if p.strip()]
    floors = tuple(int(p) for p in parts)
    if len(floors) == 1 and count > 1:
        raise SystemExit(2)
    return floors


def _emit(payload, as_json: bool) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    else:
        _pretty(payload)


def _pretty(payload, indent: int = 0) -> None:
    pad = "  " * indent
    if isinstance(payload, dict):
        for key in sorted(payload):
            value = payload[key]
            if isinstance(value, (dict, list)):
                print(f"{pad}{key}:")
                _pretty(value, indent + 1)
            else:
                print(f"{pad}{key}: {value}")
    elif isinstance(payload, list):
        for value in payload:
            if isinstance(value, (dict, list)):
                _pretty(value, indent + 1)
            else:
                print(f"{pad}- {value}")
    else:
        print(f"{pad}{payload}")


def _resolve_rs(args, cfg: Config):
    spec = getattr(args, "rs", None)
    family, rank = cfg.family, cfg.rank
    if spec:
        family, rank = spec[0].upper(), int(spec[1:])
    return root_system(family, rank)


def _resolve_model(args, cfg: Config, rs):
    name = getattr(args, "model", None) or cfg.model
    name = name.lower()
    if name.startswith("kleinian-"):
        tag = name.split("-", 1)[1]
        rs = root_system(tag[0].upper(), int(tag[1:]))
        name = KLEINIAN
    if name == KLEINIAN:
        return build_model(KLEINIAN, rs)
    if name in (ZERO_SECTION, "zero-section", "zerosection"):
        return build_model(ZERO_SECTION, rs)
    raise SystemExit(2)


def _weight_json(w: Weight) -> list[str]:
    return [_frac_str(c) for c in w.coords]


# -- subcommand handlers ---------------------------------------------------------


def _cmd_rs_describe(args, cfg) -> int:
    rs = _resolve_rs(args, cfg)
    payload = {
        "schema": 1,
        "family": rs.datum.family,
        "rank": rs.rank,
        "cartan": [list(row) for row in rs.cartan],
        "positive_roots": rs.num_positive_roots,
        "weyl_order": rs.weyl_group_order,
        "coxeter_number": rs.coxeter_number,
        "highest_coroot": list(rs.highest_coroot.coords),
    }
    _emit(payload, args.json)
    return 0


def _cmd_alcove_locate(args, cfg) -> int:
    rs = _resolve_rs(args, cfg)
    point = _parse_weight(args.point, rs.rank)
    alcove = alcove_of_point(rs, point)
    _emit({"schema": 1, "floors": list(alcove.floors)}, args.json)
    return 0


def _cmd_alcove_walls(args, cfg) -> int:
    rs = _resolve_rs(args, cfg)
    floors = _parse_floors(args.alcove, rs.num_positive_roots)
    alcove = alcove_from_floors(rs, floors)
    walls = []
    for h, neighbor in walls_and_adjacency(rs, alcove):
        walls.append(
            {
                "coroot": h.coroot_index,
                "level": h.level,
                "type": wall_type(rs, h),
                "neighbor": list(neighbor.floors),
            }
        )
    _emit({"schema": 1, "alcove": list(alcove.floors), "walls": walls}, args.json)
    return 0


def _cmd_braid_lift(args, cfg) -> int:
    rs = _resolve_rs(args, cfg)
    a = alcove_from_floors(rs, _parse_floors(args.src, rs.num_positive_roots))
    b = alcove_from_floors(rs, _parse_floors(args.dst, rs.num_positive_roots))
    word = positive_lift(rs, a, b)
    _emit({"schema": 1, "word": word.to_json()}, args.json)
    return 0


def _cmd_braid_equal(args, cfg) -> int:
    rs = _resolve_rs(args, cfg)
    w1 = BraidWord.from_json(json.loads(Path(args.word1).read_text()))
    w2 = BraidWord.from_json(json.loads(Path(args.word2).read_text()))
    verdict = equal_up_to_braid_moves(rs, w1, w2, args.bound or cfg.rewrite_bound)
    _emit({"schema": 1, "verdict": verdict}, args.json)
    return 0 if verdict == "equal" else 1


def _cmd_braid_project(args, cfg) -> int:
    rs = _resolve_rs(args, cfg)
    word = BraidWord.from_json(json.loads(args.word))
    g = project_to_affine_weyl(rs, word)
    payload = {
        "schema": 1,
        "matrix": [list(row) for row in g.finite.matrix],
        "translation": _weight_json(g.translation),
    }
    _emit(payload, args.json)
    return 0


def _cmd_coinv_basis(args, cfg) -> int:
    rs = _resolve_rs(args, cfg)
    basis = coinvariant_basis(rs)
    payload = {
        "schema": 1,
        "dimension": basis.dimension,
        "top_degree": basis.top_degree,
        "hilbert": list(basis.hilbert_series()),
    }
    _emit(payload, args.json)
    return 0


def _cmd_coinv_exp(args, cfg) -> int:
    rs = _resolve_rs(args, cfg)
    basis = coinvariant_basis(rs)
    lam = _parse_weight(args.weight, rs.rank)
    element = exp_class(basis, lam)
    payload = {"schema": 1, "element": element.lift().to_json()}
    _emit(payload, args.json)
    return 0


def _cmd_coinv_harmonic(args, cfg) -> int:
    rs = _resolve_rs(args, cfg)
    poly = Polynomial.from_json(rs.rank, json.loads(Path(args.poly).read_text()))
    verdict = is_harmonic(rs, poly)
    _emit({"schema": 1, "harmonic": verdict}, args.json)
    return 0 if verdict else 1


def _cmd_coinv_weylsum(args, cfg) -> int:
    rs = _resolve_rs(args, cfg)
    poly = Polynomial.from_json(rs.rank, json.loads(Path(args.poly).read_text()))
    lam = _parse_weight(args.weight, rs.rank)
    value = weyl_sum(rs, poly, lam)
    _emit({"schema": 1, "value": _frac_str(value)}, args.json)
    return 0


def _parse_class(model, text: str) -> KClass:
    coeffs = [int(p) for p in text.replace("[", "").replace("]", "").split(",")]
    return KClass.of(model, coeffs)


def _cmd_charge_dpoly(args, cfg) -> int:
    rs = _resolve_rs(args, cfg)
    model = _resolve_model(args, cfg, rs)
    m = _parse_class(model, args.kclass)
    d = d_polynomial(model, m)
    _emit({"schema": 1, "d": d.poly.to_json()}, args.json)
    return 0


def _cmd_charge_eval(args, cfg) -> int:
    rs = _resolve_rs(args, cfg)
    model = _resolve_model(args, cfg, rs)
    m = _parse_class(model, args.kclass)
    lam = _parse_weight(args.lam, rs.rank)
    mu = _parse_weight(args.mu, rs.rank) if args.mu else lam
    if args.strict and not in_Vreg(rs, lam, mu):
        print("pair is outside V^reg", file=sys.stderr)
        return 1
    re, im = central_charge_exact(model, lam, mu, m)
    payload = {"schema": 1, "re": _frac_str(re), "im": _frac_str(im)}
    _emit(payload, args.json)
    return 0


def _cmd_charge_scan(args, cfg) -> int:
    rs = _resolve_rs(args, cfg)
    model = _resolve_model(args, cfg, rs)
    classes = [
        _parse_class(model, chunk) for chunk in args.kclass.split(";")
    ]
    grid = args.grid or cfg.resolution
    lo, hi = Fraction(args.lo), Fraction(args.hi)
    rows = []
    points = _grid_weights(rs.rank, lo, hi, grid)
    for lam in points:
        row = [_frac_str(c) for c in lam.coords]
        for m in classes:
            re, im = central_charge_exact(model, lam, lam, m)
            row.extend([float(re), float(im)])
        rows.append(row)
    out = args.out or cfg.out
    header = [f"lambda{i}" for i in range(rs.rank)]
    for k in range(len(classes)):
        header.extend([f"re{k}", f"im{k}"])
    if out:
        with open(out, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows(rows)
    else:
        print(",".join(header))
        for row in rows:
            print(",".join(str(x) for x in row))
    return 0


def _grid_weights(rank: int, lo: Fraction, hi: Fraction, grid: int) -> list[Weight]:
    axes = [lo + Fraction(k, grid) * (hi - lo) for k in range(grid + 1)]
    points = [[]]
    for _ in range(rank):
        points = [p + [a] for p in points for a in axes]
    return [Weight.of(p) for p in points]


def _cmd_rvsc_check(args, cfg) -> int:
    rs = _resolve_rs(args, cfg)
    model = _resolve_model(args, cfg, rs)
    radius = args.radius
    instance = RVSCInstance.transported(model, radius)
    report = check_rvsc(instance, radius, resolution=args.resolution or cfg.resolution)
    payload = report.to_json()
    if args.out:
        Path(args.out).write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    _emit(payload, args.json)
    return 0 if report.passed else 1


def _load_covering_point(rs, path: str) -> CoveringPoint:
    data = json.loads(Path(path).read_text())
    word = BraidWord.from_json(data.get("word", []))
    lam = Weight.of([Fraction(x) for x in data["lambda"]])
    mu = Weight.of([Fraction(x) for x in data["mu"]])
    return make_covering_point(rs, word, lam, mu)


def _load_path(rs, path: str) -> TransportPath:
    data = json.loads(Path(path).read_text())
    pairs = []
    for entry in data["waypoints"]:
        lam = Weight.of([Fraction(x) for x in entry["lambda"]])
        mu = Weight.of([Fraction(x) for x in entry["mu"]])
        pairs.append((lam, mu))
    return TransportPath.of(pairs)


def _cmd_cover_transport(args, cfg) -> int:
    rs = _resolve_rs(args, cfg)
    model = _resolve_model(args, cfg, rs)
    pt = _load_covering_point(rs, args.start)
    tpath = _load_path(rs, args.path)
    classes = []
    if args.classes:
        data = json.loads(Path(args.classes).read_text())
        classes = [KClass.of(model, coeffs) for coeffs in data]
    result, events = transport(rs, pt, tpath)
    records = [phase_track(model, pt, tpath, m) for m in classes]
    if args.out:
        with open(args.out, "w", newline="") as fh:
            writer = csv.writer(fh)
            header = ["t"]
            header += [f"lambda{i}" for i in range(rs.rank)]
            header += [f"mu{i}" for i in range(rs.rank)]
            for k in range(len(records)):
                header += [f"re{k}", f"im{k}", f"phase{k}"]
            header.append("event")
            writer.writerow(header)
            if records:
                times = [s.time for s in records[0].samples]
                event_times = {float(e[0] + e[1]) / max(len(tpath.waypoints) - 1, 1) for e in events for _ in [0]}
                for idx, t in enumerate(times):
                    row = [t]
                    lamt, mut = _path_point(tpath, t)
                    row += [float(c) for c in lamt.coords]
                    row += [float(c) for c in mut.coords]
                    for rec in records:
                        s = rec.samples[idx]
                        row += [s.re, s.im, s.phase]
                    row.append(1 if any(abs(t - et) < 1e-9 for et in event_times) else 0)
                    writer.writerow(row)
    payload = {
        "schema": 1,
        "word": result.word.to_json(),
        "lambda": _weight_json(result.lam),
        "mu": _weight_json(result.mu),
        "events": [
            {
                "segment": e.segment,
                "time": _frac_str(e.time),
                "coroot": e.hyperplane.coroot_index,
                "level": e.hyperplane.level,
                "letter": list(e.letter),
            }
            for e in events
        ],
        "window_shifts": [r.window_shift for r in records],
    }
    _emit(payload, args.json)
    return 0


def _path_point(tpath: TransportPath, t: float):
    nseg = len(tpath.waypoints) - 1
    if nseg == 0:
        return tpath.waypoints[0]
    s = min(int(t * nseg), nseg - 1)
    local = Fraction(t * nseg - s).limit_denominator(1 << 30)
    (l0, m0), (l1, m1) = tpath.waypoints[s], tpath.waypoints[s + 1]
    return l0 + local * (l1 - l0), m0 + local * (m1 - m0)


def _cmd_cover_phase(args, cfg) -> int:
    rs = _resolve_rs(args, cfg)
    model = _resolve_model(args, cfg, rs)
    pt = _load_covering_point(rs, args.point)
    m = _parse_class(model, args.kclass)
    value = phase(model, pt, m)
    _emit({"schema": 1, "phase": value}, args.json)
    return 0


def _cmd_cover_sanity(args, cfg) -> int:
    rs = _resolve_rs(args, cfg)
    model = _resolve_model(args, cfg, rs)
    pt = _load_covering_point(rs, args.point)
    report = stability_sanity(model, pt, covering_point_simples(model, pt))
    payload = {
        "schema": 1,
        "pass": report.passed,
        "verdicts": [
            {
                "class": list(v.kclass.coeffs),
                "expected": v.expected,
                "ok": v.ok,
                "re": _frac_str(v.re),
                "im": _frac_str(v.im),
            }
            for v in report.verdicts
        ],
    }
    _emit(payload, args.json)
    return 0 if report.passed else 1


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alcove-charge",
        description="Exact alcove geometry, braid lifts, and charge-polynomial audits",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--config", help="path to alcove-charge.json")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--rs", help="root system, e.g. A2")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("rs", help="root system info")
    ps = p.add_subparsers(dest="sub", required=True)
    q = ps.add_parser("describe")
    common(q)
    q.set_defaults(func=_cmd_rs_describe)

    p = sub.add_parser("alcove", help="alcove queries")
    ps = p.add_subparsers(dest="sub", required=True)
    q = ps.add_parser("locate")
    common(q)
    q.add_argument("--point", required=True, help="weight coordinates p/q,...")
    q.set_defaults(func=_cmd_alcove_locate)
    q = ps.add_parser("walls")
    common(q)
    q.add_argument("--alcove", required=True, help="floor vector k0,k1,...")
    q.set_defaults(func=_cmd_alcove_walls)

    p = sub.add_parser("braid", help="braid words and lifts")
    ps = p.add_subparsers(dest="sub", required=True)
    q = ps.add_parser("lift")
    common(q)
    q.add_argument("--from", dest="src", required=True, help="source alcove floors")
    q.add_argument("--to", dest="dst", required=True, help="target alcove floors")
    q.set_defaults(func=_cmd_braid_lift)
    q = ps.add_parser("equal")
    common(q)
    q.add_argument("--bound", type=int)
    q.add_argument("word1")
    q.add_argument("word2")
    q.set_defaults(func=_cmd_braid_equal)
    q = ps.add_parser("project")
    common(q)
    q.add_argument("--word", required=True, help="JSON word [[i,s],...]")
    q.set_defaults(func=_cmd_braid_project)

    p = sub.add_parser("coinv", help="coinvariant algebra")
    ps = p.add_subparsers(dest="sub", required=True)
    q = ps.add_parser("basis")
    common(q)
    q.set_defaults(func=_cmd_coinv_basis)
    q = ps.add_parser("exp")
    common(q)
    q.add_argument("--weight", required=True)
    q.set_defaults(func=_cmd_coinv_exp)
    q = ps.add_parser("harmonic")
    common(q)
    q.add_argument("poly", help="JSON polynomial file")
    q.set_defaults(func=_cmd_coinv_harmonic)
    q = ps.add_parser("weylsum")
    common(q)
    q.add_argument("poly", help="JSON polynomial file")
    q.add_argument("--weight", required=True)
    q.set_defaults(func=_cmd_coinv_weylsum)

    p = sub.add_parser("charge", help="charge polynomials and central charges")
    ps = p.add_subparsers(dest="sub", required=True)
    q = ps.add_parser("d-poly")
    common(q)
    q.add_argument("--model")
    q.add_argument("--class", dest="kclass", required=True)
    q.set_defaults(func=_cmd_charge_dpoly)
    q = ps.add_parser("eval")
    common(q)
    q.add_argument("--model")
    q.add_argument("--class", dest="kclass", required=True)
    q.add_argument("--lambda", dest="lam", required=True)
    q.add_argument("--mu", dest="mu")
    q.add_argument("--strict", action="store_true")
    q.set_defaults(func=_cmd_charge_eval)
    q = ps.add_parser("scan")
    common(q)
    q.add_argument("--model")
    q.add_argument("--class", dest="kclass", required=True, help="semicolon-separated classes")
    q.add_argument("--lo", default="-2")
    q.add_argument("--hi", default="2")
    q.add_argument("--grid", type=int)
    q.add_argument("--out")
    q.set_defaults(func=_cmd_charge_scan)

    p = sub.add_parser("rvsc", help="stability-variation audit")
    ps = p.add_subparsers(dest="sub", required=True)
    q = ps.add_parser("check")
    common(q)
    q.add_argument("--model")
    q.add_argument("--radius", type=int, default=3)
    q.add_argument("--resolution", type=int)
    q.add_argument("--out")
    q.set_defaults(func=_cmd_rvsc_check)

    p = sub.add_parser("cover", help="covering points and transport")
    ps = p.add_subparsers(dest="sub", required=True)
    q = ps.add_parser("transport")
    common(q)
    q.add_argument("--model")
    q.add_argument("--start", required=True, help="covering point JSON file")
    q.add_argument("--path", required=True, help="path JSON file")
    q.add_argument("--classes", help="JSON list of class coefficient vectors")
    q.add_argument("--out", help="trace CSV path")
    q.set_defaults(func=_cmd_cover_transport)
    q = ps.add_parser("phase")
    common(q)
    q.add_argument("--model")
    q.add_argument("--point", required=True)
    q.add_argument("--class", dest="kclass", required=True)
    q.set_defaults(func=_cmd_cover_phase)
    q = ps.add_parser("sanity")
    common(q)
    q.add_argument("--model")
    q.add_argument("--point", required=True)
    q.set_defaults(func=_cmd_cover_sanity)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = Config.load(args.config)
    try:
        return args.func(args, cfg)
    except AlcoveChargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:  # internal invariant violations
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
