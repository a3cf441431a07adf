"""Command line front end.  Every command builds one JSON record; text output is a rendering of it."""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .complex import Complex, ComplexError, parse_facet_list
from .ekr import NoTFaceError, first_star_value, max_intersecting_family, star_bound, verify_borg
from .fflinalg import DEFAULT_PRIME, FieldConfig
from .homology import depth, is_cohen_macaulay, is_sequentially_cm, reduced_betti
from .nearcone import check_apex_face, find_apex_sequence, is_near_cone, largest_near_cone_index
from .shifting import exterior_shift
from .sweep import KINDS, SweepConfig, SweepConfigError, expand_checks, run_sweep


def parse_complex(path: str) -> Complex:
    if path == "-":
        return parse_facet_list(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return parse_facet_list(fh)


def _label(token: str):
    try:
        return int(token)
    except ValueError:
        return token


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.replace(",", " ").split()]


def _facets(cx: Complex) -> list:
    return [list(f) for f in cx.facet_sets()]


def cmd_fvector(args, cx, cfg):
    return {"vertices": list(cx.vertex_order), "f_vector": list(cx.f_vector), "dim": cx.dim,
            "facets": _facets(cx)}


def cmd_shift(args, cx, cfg):
    res = exterior_shift(cx, cfg, args.seed, args.trials, reverse=args.reverse)
    return {"shifted": _facets(res.shifted), "f_vector": list(res.shifted.f_vector), **res.certificate()}


def cmd_homology(args, cx, cfg):
    table = reduced_betti(cx, cfg)
    return {"prime": cfg.p, "betti": {str(i - 1): b for i, b in enumerate(table.betti)},
            "chain_dims": list(table.chain_dims), "euler": table.euler_characteristic()}


def cmd_depth(args, cx, cfg):
    rep = depth(cx, cfg, args.seed, args.trials)
    return {"depth_skeleton": rep.depth_skeleton, "depth_links": rep.depth_links, "depth_shift": rep.depth_shift,
            "shift_stable": rep.shift_stable, "agree": rep.agree,
            "witnesses": [{"level": d, "face": list(cx.labels(w[0])), "degree": w[1]} for d, w in rep.witnesses]}


def cmd_cm(args, cx, cfg):
    ok, wit = is_cohen_macaulay(cx, cfg)
    out = {"cohen_macaulay": ok, "sequentially_cm": is_sequentially_cm(cx, cfg)}
    if wit is not None:
        out["witness"] = {"face": list(cx.labels(wit[0])), "degree": wit[1]}
    return out


def cmd_nearcone(args, cx, cfg):
    if args.vertex is not None:
        cert = is_near_cone(cx, _label(args.vertex))
        out = {"vertex": _label(args.vertex), "near_cone": cert.verdict}
        if cert.violating_face is not None:
            sigma, w = cert.violating_face
            out["witness"] = {"face": list(sigma), "removed": w}
        return out
    if args.i is None:
        best, seq = largest_near_cone_index(cx)
    else:
        best, seq = args.i, find_apex_sequence(cx, args.i)
    out = {"i": best, "found": seq is not None}
    if seq is not None:
        rep = check_apex_face(cx, seq)
        out.update({"apex": list(seq.apex), "chain": [_facets(c) for c in seq.chain[1:]],
                    "dim": cx.dim, "apex_is_face": rep.apex_is_face, "dim_hypothesis": rep.hypothesis})
    return out


def cmd_ekr(args, cx, cfg):
    sizes = _ints(args.sizes)
    bound, sigma = star_bound(cx, args.t, sizes)
    best = max_intersecting_family(cx, args.t, sizes, args.budget)
    return {"t": args.t, "S": sorted(set(sizes)), "star_bound": bound, "star_face": list(cx.labels(sigma)),
            "first_star": first_star_value(cx, args.t, sizes), "brute_max": best.size,
            "bracket": list(best.bracket), "optimal": best.optimal, "nodes": best.nodes,
            "witness": [list(w) for w in best.witness.sets()]}


def cmd_borg(args, cx, cfg):
    return verify_borg(cx, args.t, _ints(args.sizes), cfg, args.seed, args.budget).as_dict()


def cmd_sweep(args, cfg):
    conf = SweepConfig(kind=args.kind, n=args.n, samples=args.samples, seed=args.seed,
                       checks=expand_checks(args.check), t=_ints(args.t), r=_ints(args.r), i=_ints(args.i),
                       prime=cfg.p, trials=args.trials, budget=args.budget, workers=args.workers)
    return run_sweep(conf)


COMMANDS = {
    "fvector": (cmd_fvector, "f-vector, dimension and facets"),
    "shift": (cmd_shift, "exterior algebraic shift with a stability certificate"),
    "homology": (cmd_homology, "reduced Betti numbers over GF(p)"),
    "depth": (cmd_depth, "depth by skeleta, links and the shift"),
    "cm": (cmd_cm, "Cohen-Macaulay and sequentially Cohen-Macaulay tests"),
    "nearcone": (cmd_nearcone, "near-cone test or apex sequence search"),
    "ekr": (cmd_ekr, "star bound and exact largest t-intersecting family"),
    "borg": (cmd_borg, "star bound verdict with hypothesis evaluation"),
}


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--prime", type=int, default=DEFAULT_PRIME, help="field characteristic")
    shared.add_argument("--seed", type=int, default=0)
    shared.add_argument("--trials", type=int, default=3, help="independent shifts for the stability vote")
    shared.add_argument("--json", action="store_true", help="emit the JSON record")
    shared.add_argument("--budget", type=int, default=2_000_000, help="branch and bound node budget")

    parser = argparse.ArgumentParser(prog="ekrshift", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[shared], help=help_text)
        p.add_argument("file", help="facet-list file, or - for stdin")
        if name == "shift":
            p.add_argument("--reverse", action="store_true", help="reverse lex order on subsets")
        if name == "nearcone":
            p.add_argument("-i", type=int, default=None, help="apex sequence length (default: largest found)")
            p.add_argument("--vertex", default=None, help="test a single vertex instead")
        if name in ("ekr", "borg"):
            p.add_argument("-t", type=int, required=True)
            p.add_argument("-S", "--sizes", required=True, help="face cardinalities, e.g. 2,3")

    p = sub.add_parser("sweep", parents=[shared], help="seeded corpus sweep")
    p.add_argument("--kind", choices=KINDS, default="random")
    p.add_argument("-n", type=int, default=6)
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--check", default="S1..S3", help="comma list, ranges like S1..S5 allowed")
    p.add_argument("-t", default="1,2")
    p.add_argument("-r", default="2,3")
    p.add_argument("-i", default="1,2,3")
    p.add_argument("--workers", type=int, default=1)
    return parser


def render(record: dict, indent: str = "") -> str:
    lines = []
    for key, value in record.items():
        if isinstance(value, dict) and value:
            lines.append(f"{indent}{key}:")
            lines.append(render(value, indent + "  "))
        else:
            lines.append(f"{indent}{key}: {json.dumps(value) if isinstance(value, (list, dict)) else value}")
    return "\n".join(lines)


def render_sweep(report: dict) -> str:
    lines = [f"instances: {len(report['instances'])}", f"violations: {len(report['violations'])}",
             f"inconclusive: {report['inconclusive']}", f"unstable: {report['unstable']}",
             f"seconds: {report['timing']['seconds']}"]
    lines += [f"  instance {v['id']}: {v['check']}" for v in report["violations"]]
    return "\n".join(lines)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = FieldConfig(args.prime)
        if args.command == "sweep":
            record = cmd_sweep(args, cfg)
            code = 1 if record["violations"] else 0
            print(json.dumps(record, indent=2) if args.json else render_sweep(record))
            return code
        cx = parse_complex(args.file)
        func = COMMANDS[args.command][0]
        record = {"version": __version__, "command": args.command, "result": func(args, cx, cfg)}
    except (ComplexError, NoTFaceError, SweepConfigError, ValueError, OSError) as exc:
        print(f"ekrshift: error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(record, indent=2) if args.json else render(record["result"]))
    return 0


if __name__ == "__main__":
    sys.exit(main())
