"""Seeded corpus sweeps producing JSON-ready reports."""

from __future__ import annotations

import hashlib
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations

from . import __version__
from .complex import Complex, format_facet_list, is_shifted
from .ekr import (check_prop_easy, facet_threshold, first_star_value, max_intersecting_family, star_bound,
                  verify_borg)
from .fflinalg import DEFAULT_PRIME, FieldConfig, matmul_mod
from .generators import (exhaustive_complexes, instance_rng, random_complex, random_intersecting_family,
                         random_near_cone, random_shifted_complex, random_subcomplex)
from .homology import boundary_matrix, depth, depth_by_links, reduced_betti, reduced_euler_from_f
from .nearcone import (check_apex_face, check_link_commutation, check_skeleton_shifting, find_apex_sequence,
                       validate_apex_sequence)
from .shifting import check_axioms

KINDS = ("exhaustive", "random", "shifted", "near-cone")
CHECKS = ("S1", "S2", "S3", "S4", "S5", "depth-agreement", "homology", "apex-face", "skeleton-swaps",
          "link-commutation", "prop-easy", "borg", "shifted-ekr")


class SweepConfigError(ValueError):
    pass


@dataclass
class SweepConfig:
    kind: str = "random"
    n: int = 6
    samples: int = 10
    seed: int | None = 0
    checks: list = field(default_factory=lambda: ["S1", "S2", "S3"])
    t: list = field(default_factory=lambda: [1, 2])
    r: list = field(default_factory=lambda: [2, 3])
    i: list = field(default_factory=lambda: [1, 2, 3])
    prime: int = DEFAULT_PRIME
    trials: int = 3
    budget: int = 2_000_000
    workers: int = 1

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise SweepConfigError(f"unknown generator kind {self.kind!r}")
        if self.kind == "exhaustive" and self.n > 4:
            raise SweepConfigError("exhaustive corpora are limited to n <= 4")
        if self.kind != "exhaustive" and self.seed is None:
            raise SweepConfigError("random corpora need a seed")
        unknown = [c for c in self.checks if c not in CHECKS]
        if unknown:
            raise SweepConfigError(f"unknown checks {unknown}")
        FieldConfig(self.prime)


def expand_checks(text: str) -> list[str]:
    """Parse ``"S1..S3,depth-agreement"`` style check lists."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if part == "axioms":
            out += ["S1", "S2", "S3", "S4", "S5"]
        elif ".." in part:
            lo, hi = part.split("..")
            if not (lo.startswith("S") and hi.startswith("S")):
                raise SweepConfigError(f"bad range {part!r}")
            out += [f"S{k}" for k in range(int(lo[1:]), int(hi[1:]) + 1)]
        else:
            out.append(part)
    return list(dict.fromkeys(out))


def digest(cx: Complex) -> str:
    return hashlib.sha256(format_facet_list(cx).encode()).hexdigest()[:16]


def build_instance(cfg: SweepConfig, index: int, exhaustive=None):
    """``(complex, apex sequence or None)`` for instance ``index``."""
    if cfg.kind == "exhaustive":
        return exhaustive[index], None
    rng = instance_rng(cfg.seed, index)
    if cfg.kind == "random":
        return random_complex(rng, cfg.n), None
    if cfg.kind == "shifted":
        n = int(rng.integers(max(1, min(4, cfg.n)), cfg.n + 1))
        return random_shifted_complex(rng, n, min_size=max(1, n - 4)), None
    i = cfg.i[int(rng.integers(len(cfg.i)))]
    cx, seq = random_near_cone(rng, i, cfg.n)
    return cx, seq


def _size_sets(t: int, r: int):
    span = range(t, r + 1)
    for k in range(1, len(span) + 1):
        yield from combinations(span, k)


def run_instance(cfg: SweepConfig, index: int, exhaustive=None) -> dict:
    cx, seq = build_instance(cfg, index, exhaustive)
    field_cfg = FieldConfig(cfg.prime)
    rng = instance_rng(cfg.seed or 0, 1_000_000 + index)
    results: dict = {"facets": [list(f) for f in cx.facet_sets()], "f_vector": list(cx.f_vector)}
    violations: list = []
    inconclusive = 0
    unstable = 0
    checks = set(cfg.checks)

    axiom_names = checks & {"S1", "S2", "S3", "S4", "S5"}
    if axiom_names:
        sub = random_subcomplex(rng, cx) if "S4" in checks else None
        fam = None
        t_fam = None
        if "S5" in checks:
            t_fam = int(rng.choice([1, 2]))
            r_fam = int(rng.choice([2, 3]))
            fam = random_intersecting_family(rng, max(cx.n, r_fam), t_fam, r_fam)
        rep = check_axioms(cx, sub, fam, t_fam or 1, field_cfg, index, cfg.trials)
        results["axioms"] = {k: v for k, v in rep.as_dict().items() if k in axiom_names or k == "unstable"}
        if rep.unstable:
            unstable += 1
        else:
            violations += [name for name in rep.violations() if name in axiom_names]

    if "depth-agreement" in checks:
        rep = depth(cx, field_cfg, index, cfg.trials)
        results["depth"] = {"skeleton": rep.depth_skeleton, "links": rep.depth_links, "shift": rep.depth_shift,
                            "shift_stable": rep.shift_stable, "agree": rep.agree}
        if not rep.shift_stable:
            unstable += 1
        if not rep.agree:
            violations.append("depth-agreement")
        if rep.depth > cx.min_facet_cardinality - 1:
            violations.append("depth above min facet dimension")
        if cfg.prime != 2:
            d2 = depth_by_links(cx, FieldConfig(2))
            results["depth"]["links_p2"] = d2
            results["depth"]["field_dependent"] = d2 != rep.depth_links

    if "homology" in checks:
        hom = {}
        for p in sorted({2, cfg.prime}):
            pc = FieldConfig(p)
            table = reduced_betti(cx, pc)
            ok_dd = True
            for k in range(2, cx.dim + 2):
                prod = matmul_mod(boundary_matrix(cx, k - 1, pc), boundary_matrix(cx, k, pc), p)
                ok_dd &= not prod.any()
            euler = table.euler_characteristic() == reduced_euler_from_f(cx.f_vector)
            hom[str(p)] = {"betti": list(table.betti), "boundary_squared_zero": ok_dd, "euler": euler}
            if not ok_dd:
                violations.append(f"boundary squared nonzero (p={p})")
            if not euler:
                violations.append(f"euler identity (p={p})")
        results["homology"] = hom

    near_checks = checks & {"apex-face", "skeleton-swaps", "link-commutation"}
    if near_checks:
        if seq is None:
            seq = find_apex_sequence(cx, 1)
        if seq is not None and validate_apex_sequence(cx, seq.apex) is None:
            violations.append("invalid apex sequence")
        if seq is not None:
            results["apex"] = list(seq.apex)
            if "apex-face" in checks:
                rep = check_apex_face(cx, seq)
                results["apex_face"] = {"hypothesis": rep.hypothesis, "apex_is_face": rep.apex_is_face}
                if rep.violation:
                    violations.append("apex-face")
            if "skeleton-swaps" in checks:
                bad = []
                for s in range(0, cx.min_facet_cardinality - seq.i):
                    if check_skeleton_shifting(cx, seq, s).violation:
                        bad.append(s)
                results["skeleton_swaps"] = {"violating_s": bad}
                if bad:
                    violations.append("skeleton-swaps")
            if "link-commutation" in checks:
                rep = check_link_commutation(cx, seq, field_cfg, index, cfg.trials)
                results["link_commutation"] = {
                    "near_cone_link": rep.near_cone_link,
                    "skeleton_links": {str(k): v for k, v in rep.skeleton_links.items()},
                    "link_f_vector": {str(k): list(v) for k, v in rep.link_f_vector.items()},
                    "unstable": rep.unstable,
                }
                if rep.unstable:
                    unstable += 1
                violations += rep.violations()

    if "prop-easy" in checks:
        rows = []
        for t in cfg.t:
            if t >= len(cx.layers) or not cx.layers[t]:
                continue
            for r in cfg.r:
                if r < t:
                    continue
                rep = check_prop_easy(cx, t, r, field_cfg, index, cfg.trials)
                rows.append({"t": t, "r": r, "shifted": rep.shifted_side, "max": rep.max_side, "holds": rep.holds})
                if rep.unstable:
                    unstable += 1
                elif not rep.holds:
                    violations.append(f"prop-easy t={t} r={r}")
        results["prop_easy"] = rows

    if "shifted-ekr" in checks and is_shifted(cx):
        rows = []
        k = cx.min_facet_cardinality
        for t in cfg.t:
            for r in cfg.r:
                if r < t or k < facet_threshold(t, r):
                    continue
                for sizes in _size_sets(t, r):
                    best = max_intersecting_family(cx, t, sizes, cfg.budget)
                    first = first_star_value(cx, t, sizes)
                    bound, _ = star_bound(cx, t, sizes)
                    row = {"t": t, "S": list(sizes), "brute": best.size, "first_star": first, "star_bound": bound,
                           "optimal": best.optimal}
                    rows.append(row)
                    if not best.optimal and best.size <= bound:
                        inconclusive += 1
                    elif best.size > bound or first != best.size:
                        violations.append(f"shifted-ekr t={t} S={list(sizes)}")
        results["shifted_ekr"] = rows

    if "borg" in checks:
        rows = []
        t_values = [seq.i] if seq is not None and cfg.kind == "near-cone" else cfg.t
        for t in t_values:
            if t >= len(cx.layers) or not cx.layers[t]:
                continue
            for r in cfg.r:
                if r < t:
                    continue
                for sizes in _size_sets(t, r):
                    rep = verify_borg(cx, t, sizes, field_cfg, index, cfg.budget)
                    rows.append(rep.as_dict())
                    if rep.verdict == "inconclusive":
                        inconclusive += 1
                    elif rep.violation:
                        violations.append(f"borg {rep.verdict} t={t} S={list(sizes)}")
        results["borg"] = rows

    return {"id": index, "input_digest": digest(cx), "results": results, "violations": violations,
            "inconclusive": inconclusive, "unstable": unstable}


def _run_one(args):
    cfg, index, exhaustive = args
    return run_instance(cfg, index, exhaustive)


def run_sweep(cfg: SweepConfig) -> dict:
    cfg.validate()
    start = time.perf_counter()
    exhaustive = exhaustive_complexes(cfg.n) if cfg.kind == "exhaustive" else None
    count = len(exhaustive) if exhaustive is not None else cfg.samples
    jobs = [(cfg, index, exhaustive) for index in range(count)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            instances = list(pool.map(_run_one, jobs))
    else:
        instances = [_run_one(job) for job in jobs]
    instances.sort(key=lambda r: r["id"])
    violations = [{"id": r["id"], "check": v} for r in instances for v in r["violations"]]
    return {
        "version": __version__,
        "command": "sweep",
        "config": asdict(cfg),
        "instances": instances,
        "violations": violations,
        "inconclusive": sum(r["inconclusive"] for r in instances),
        "unstable": sum(r["unstable"] for r in instances),
        "timing": {"seconds": round(time.perf_counter() - start, 3)},
    }
