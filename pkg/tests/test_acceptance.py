"""Acceptance criteria, each run at full scale with exact (integer) comparisons.

Every test records one PASS/FAIL line; the lines are printed in the terminal
summary (see conftest.py) and also when this file is run as a script.
"""

import time
from functools import lru_cache
from itertools import combinations
from math import comb

from ekrshift.complex import antistar, boundary_of_simplex, from_facets, is_shifted, simplex
from ekrshift.ekr import (check_prop_easy, facet_threshold, first_star_value, max_intersecting_family, star_bound,
                         verify_borg)
from ekrshift.family import is_t_intersecting
from ekrshift.fflinalg import FieldConfig, matmul_mod
from ekrshift.generators import (exhaustive_complexes, instance_rng, random_complex, random_intersecting_family,
                                 random_near_cone, random_shifted_complex, random_subcomplex)
from ekrshift.homology import (boundary_matrix, depth, depth_by_links, is_sequentially_cm, reduced_betti,
                               reduced_euler_from_f)
from ekrshift.nearcone import check_apex_face, check_link_commutation, find_apex_sequence
from ekrshift.shifting import check_axioms, exterior_shift, shift_family

BIG = FieldConfig(2147483647)
TWO = FieldConfig(2)
EXAMPLE = [[1, 2, 4, 6], [1, 3], [1, 5], [2, 3], [2, 5], [3, 4], [3, 5], [3, 6]]

RESULTS: dict = {}


def record(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[number] = line
    print(line)


def size_sets(t, r):
    span = range(t, r + 1)
    return [s for k in range(1, len(span) + 1) for s in combinations(span, k)]


@lru_cache(maxsize=None)
def axiom_corpus():
    """All 166 labeled complexes on subsets of 4 vertices plus 200 random ones on 6."""
    return tuple(exhaustive_complexes(4)) + tuple(random_complex(instance_rng(101, j), 6) for j in range(200))


@lru_cache(maxsize=None)
def shifted_corpus():
    out = []
    for j in range(100):
        rng = instance_rng(202, j)
        n = int(rng.integers(4, 10))
        out.append(random_shifted_complex(rng, n, min_size=max(1, n - 4)))
    return tuple(out)


@lru_cache(maxsize=None)
def near_cone_corpus():
    return tuple(random_near_cone(instance_rng(303, j), 1 + j % 3, 9) for j in range(200))


@lru_cache(maxsize=None)
def ekr_near_cone_corpus():
    return tuple(random_near_cone(instance_rng(404, j), 1 + j % 2, 9) for j in range(150))


def test_criterion_01_shifting_axioms():
    start = time.perf_counter()
    bad, unstable = [], 0
    for j, cx in enumerate(axiom_corpus()):
        res = exterior_shift(cx, BIG, seed=j, trials=5)
        if not (res.unanimous and res.trials_agreed == 5):
            unstable += 1
        if not is_shifted(res.shifted):
            bad.append((j, "S1"))
        if is_shifted(cx) and res.shifted != cx:
            bad.append((j, "S2"))
        if res.shifted.f_vector != cx.f_vector:
            bad.append((j, "S3"))
    for j in range(100):
        rng = instance_rng(111, j)
        cx = random_complex(rng, int(rng.integers(2, 7)))
        rep = check_axioms(cx, sub=random_subcomplex(rng, cx), cfg=BIG, seed=j, trials=5)
        unstable += bool(rep.unstable)
        if rep.S4 is not True:
            bad.append((j, "S4"))
    for j in range(100):
        rng = instance_rng(121, j)
        t, r = 1 + j % 2, 2 + (j // 2) % 2
        fam = random_intersecting_family(rng, int(rng.integers(r + 1, 8)), t, r)
        res = shift_family(fam, cfg=BIG, seed=j, trials=5)
        unstable += not (res.underlying.unanimous and res.underlying.trials_agreed == 5)
        if not (is_t_intersecting(res.family, t)[0] and len(res.family) == len(fam)):
            bad.append((j, "S5"))
    elapsed = time.perf_counter() - start
    ok = not bad and unstable == 0 and elapsed < 60
    record(1, ok, f"366 complexes S1-S3, 100 pairs S4, 100 families S5; violations={len(bad)} "
                  f"unstable={unstable} time={elapsed:.1f}s (<60s)")
    assert not bad, bad[:5]
    assert unstable == 0
    assert elapsed < 60


def test_criterion_02_depth_agreement():
    start = time.perf_counter()
    disagree, unstable, above = [], 0, []
    for j, cx in enumerate(axiom_corpus()):
        rep = depth(cx, BIG, seed=j, trials=5)
        if not rep.shift_stable:
            unstable += 1
        elif not (rep.depth_skeleton == rep.depth_links == rep.depth_shift):
            disagree.append(j)
        if rep.depth_skeleton != rep.depth_links:
            disagree.append(j)
        if rep.depth_links > cx.min_facet_cardinality - 1:
            above.append(j)
    elapsed = time.perf_counter() - start
    ok = not disagree and not above and unstable == 0 and elapsed < 120
    record(2, ok, f"366 complexes; disagreements={len(disagree)} unstable={unstable} "
                  f"time={elapsed:.1f}s (<120s)")
    assert not disagree and not above
    assert unstable == 0
    assert elapsed < 120


def test_criterion_03_simplex_oracle():
    start = time.perf_counter()
    rows = []
    for n, t, r in [(4, 1, 2), (5, 1, 2), (6, 1, 3), (6, 2, 3), (8, 2, 3)]:
        res = max_intersecting_family(simplex(n), t, [r])
        rows.append((n, t, r, res.size, comb(n - t, r - t), res.optimal))
    elapsed = time.perf_counter() - start
    mismatches = [row for row in rows if row[3] != row[4] or not row[5]]
    ok = not mismatches and elapsed < 30
    record(3, ok, f"5 simplices; mismatches={len(mismatches)} time={elapsed:.1f}s (<30s)")
    assert not mismatches, mismatches
    assert elapsed < 30


def test_criterion_04_shifted_complexes():
    start = time.perf_counter()
    checked, bad, inconclusive = 0, [], 0
    for j, cx in enumerate(shifted_corpus()):
        assert is_shifted(cx) and cx.n <= 9
        k = cx.min_facet_cardinality
        for t in (1, 2):
            for r in range(t, 4):
                if k < facet_threshold(t, r):
                    continue
                for sizes in size_sets(t, r):
                    best = max_intersecting_family(cx, t, sizes)
                    bound, _ = star_bound(cx, t, sizes)
                    first = first_star_value(cx, t, sizes)
                    checked += 1
                    if not best.optimal:
                        inconclusive += 1
                    if best.size > bound or first != best.size or (best.optimal and best.upper != best.size):
                        bad.append((j, t, sizes, best.size, bound, first))
    elapsed = time.perf_counter() - start
    ok = checked > 0 and not bad and inconclusive == 0 and elapsed < 300
    record(4, ok, f"100 shifted complexes, {checked} (t,r,S) cases; violations={len(bad)} "
                  f"inconclusive={inconclusive} time={elapsed:.1f}s (<300s)")
    assert checked > 0
    assert not bad, bad[:5]
    assert inconclusive == 0
    assert elapsed < 300


def test_criterion_05_prop_easy():
    checked, bad, unstable = 0, [], 0
    for j in range(200):
        rng = instance_rng(505, j)
        cx = random_complex(rng, int(rng.integers(2, 8)))
        for t in (1, 2):
            if t >= len(cx.layers) or not cx.layers[t]:
                continue
            for r in range(t, 4):
                rep = check_prop_easy(cx, t, r, BIG, seed=j, trials=3)
                checked += 1
                unstable += rep.unstable
                if not rep.holds:
                    bad.append((j, t, r, rep.shifted_side, rep.max_side))
    ok = checked > 0 and not bad and unstable == 0
    record(5, ok, f"200 complexes, {checked} (t,r) cases; violations={len(bad)} unstable={unstable}")
    assert not bad, bad[:5]
    assert unstable == 0


def test_criterion_06_near_cone_fixtures():
    cx = from_facets(EXAMPLE, range(1, 7))
    seq = find_apex_sequence(cx, 3)
    chain_ok = (
        seq is not None and seq.apex == (1, 2, 3)
        and seq.chain[1] == from_facets([[2, 4, 6], [2, 3], [2, 5], [3, 4], [3, 5], [3, 6]], [2, 3, 4, 5, 6])
        and seq.chain[2] == from_facets([[4, 6], [3, 4], [3, 5], [3, 6]], [3, 4, 5, 6])
        and seq.chain[3] == from_facets([[4, 6], [5]], [4, 5, 6])
        and seq.chain[1] == antistar(cx, [1])
    )
    fixture_ok = chain_ok and cx.dim == 3 and cx.mask([1, 2, 3]) not in cx.faces
    hyp, bad = 0, []
    for j, (nc, nseq) in enumerate(near_cone_corpus()):
        rep = check_apex_face(nc, nseq)
        hyp += rep.hypothesis
        if rep.violation:
            bad.append(j)
    ok = fixture_ok and hyp > 0 and not bad
    record(6, ok, f"worked example chain exact={fixture_ok}; 200 near-cones, {hyp} with dim >= 2i-2; "
                  f"violations={len(bad)}")
    assert fixture_ok
    assert hyp > 0
    assert not bad, bad


def test_criterion_07_link_commutation():
    start = time.perf_counter()
    bad, unstable, skel_checks, fv_checks = [], 0, 0, 0
    for j, (nc, seq) in enumerate(near_cone_corpus()):
        rep = check_link_commutation(nc, seq, BIG, seed=j, trials=3)
        unstable += rep.unstable
        skel_checks += len(rep.skeleton_links)
        fv_checks += len(rep.link_f_vector)
        if rep.near_cone_link is not True and not rep.unstable:
            bad.append((j, "near-cone link"))
        bad += [(j, v) for v in rep.violations()]
    elapsed = time.perf_counter() - start
    ok = not bad and unstable == 0 and skel_checks > 0 and fv_checks > 0
    record(7, ok, f"200 near-cones; {skel_checks} skeleton-link and {fv_checks} f-vector checks; "
                  f"violations={len(bad)} unstable={unstable} time={elapsed:.1f}s")
    assert skel_checks > 0 and fv_checks > 0
    assert not bad, bad[:5]
    assert unstable == 0


def test_criterion_08_near_cone_ekr():
    start = time.perf_counter()
    pairs = {1: (2, 3), 2: (3,)}
    met = {(1, 2): 0, (1, 3): 0, (2, 3): 0}
    bad, inconclusive = [], 0
    for j, (nc, seq) in enumerate(ekr_near_cone_corpus()):
        i = seq.i
        k = nc.min_facet_cardinality
        d = depth_by_links(nc, BIG)
        seq_cm = None
        for r in pairs[i]:
            by_depth = d >= facet_threshold(i, r) - 1
            by_scm = False
            if k >= facet_threshold(i, r):
                seq_cm = is_sequentially_cm(nc, BIG) if seq_cm is None else seq_cm
                by_scm = seq_cm
            if not (by_depth or by_scm):
                continue
            met[(i, r)] += 1
            for sizes in size_sets(i, r):
                rep = verify_borg(nc, i, sizes, BIG, seed=j)
                if rep.inequality == "inconclusive":
                    inconclusive += 1
                elif rep.inequality != "holds":
                    bad.append((j, i, r, sizes, rep.brute_max, rep.star_bound))
    elapsed = time.perf_counter() - start
    ok = all(met.values()) and not bad and inconclusive == 0 and elapsed < 600
    record(8, ok, f"150 near-cones; hypothesis met {dict((f'{a},{b}', c) for (a, b), c in met.items())}; "
                  f"violations={len(bad)} inconclusive={inconclusive} time={elapsed:.1f}s (<600s)")
    assert all(met.values()), met
    assert not bad, bad[:5]
    assert inconclusive == 0
    assert elapsed < 600


def test_criterion_09_homology_sanity():
    corpus = (list(axiom_corpus()) + list(shifted_corpus()) + [c for c, _ in near_cone_corpus()]
              + [c for c, _ in ekr_near_cone_corpus()])
    bad = []
    for j, cx in enumerate(corpus):
        for cfg in (TWO, BIG):
            for k in range(2, cx.dim + 2):
                prod = matmul_mod(boundary_matrix(cx, k - 1, cfg), boundary_matrix(cx, k, cfg), cfg.p)
                if prod.any():
                    bad.append((j, cfg.p, "dd"))
            table = reduced_betti(cx, cfg)
            if min(table.betti) < 0 or table.euler_characteristic() != reduced_euler_from_f(cx.f_vector):
                bad.append((j, cfg.p, "euler"))
    ok = not bad
    record(9, ok, f"{len(corpus)} complexes at p=2 and p=2^31-1; failures={len(bad)}")
    assert not bad, bad[:5]


def test_criterion_10_negative_control():
    tri = boundary_of_simplex(3)
    rep = verify_borg(tri, 1, [2], BIG)
    ok = rep.brute_max == 3 and rep.star_bound == 2 and rep.verdict == "hypothesis-not-met" and not rep.violation
    record(10, ok, f"hollow triangle t=1 S={{2}}: brute_max={rep.brute_max} star_bound={rep.star_bound} "
                   f"verdict={rep.verdict}")
    assert ok


if __name__ == "__main__":
    for name, func in sorted(globals().items()):
        if name.startswith("test_criterion"):
            try:
                func()
            except AssertionError:
                pass
