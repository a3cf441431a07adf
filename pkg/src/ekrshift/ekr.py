"""Intersecting families of faces: star bounds, exact maxima and bound verdicts."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterable

from .complex import Complex, is_shifted, lex_key, popcount
from .family import Family, is_t_intersecting
from .fflinalg import FieldConfig
from .homology import depth_by_links, is_sequentially_cm
from .nearcone import find_apex_sequence
from .shifting import exterior_shift

POOL_LIMIT = 5000
DEFAULT_BUDGET = 2_000_000


class NoTFaceError(ValueError):
    pass


def _check_sizes(t: int, sizes: Iterable[int]) -> tuple[int, ...]:
    sizes = tuple(sorted(set(sizes)))
    if t < 1:
        raise ValueError("t must be at least 1")
    if not sizes:
        raise ValueError("size set must be nonempty")
    if sizes[0] < t:
        raise ValueError(f"sizes {sizes} must all be at least t={t}")
    return sizes


def star_value(cx: Complex, sigma: int, sizes: Iterable[int]) -> int:
    """``sum over s of f_{s-|sigma|}(lk sigma)``: faces of the given sizes containing ``sigma``."""
    total = 0
    for s in sizes:
        if s < len(cx.layers):
            total += sum(1 for m in cx.layers[s] if m & sigma == sigma)
    return total


def star_bound(cx: Complex, t: int, sizes: Iterable[int]) -> tuple[int, int]:
    """Maximum star value over ``t``-faces, with the lex-least maximizing face."""
    sizes = _check_sizes(t, sizes)
    tfaces = cx.layers[t] if t < len(cx.layers) else ()
    if not tfaces:
        raise NoTFaceError(f"complex has no face of cardinality {t}")
    best, arg = -1, None
    for sigma in tfaces:
        v = star_value(cx, sigma, sizes)
        if v > best:
            best, arg = v, sigma
    return best, arg


def first_star_value(cx: Complex, t: int, sizes: Iterable[int]) -> int | None:
    """Star value of the first ``t`` vertices of the order, or ``None`` if they are no face."""
    sigma = (1 << t) - 1
    if sigma not in cx.faces:
        return None
    return star_value(cx, sigma, _check_sizes(t, sizes))


class _BudgetExhausted(Exception):
    pass


def max_clique(adj: list[int], initial: list[int] | None = None, budget: int = DEFAULT_BUDGET):
    """Maximum clique by branch and bound with greedy-colouring bounds.

    ``adj[v]`` is the neighbour bitset of ``v``.  Returns
    ``(clique, optimal, upper, nodes)``; when the node budget runs out
    ``optimal`` is False and ``upper`` is a valid bound on the clique number.
    """
    n = len(adj)
    best = list(initial or [])
    nodes = 0
    root_bound = [n]

    def colour_sort(P: int):
        out = []
        colour = 0
        while P:
            colour += 1
            avail = P
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                avail &= ~low & ~adj[v]
                P &= ~low
                out.append((v, colour))
        return out

    def expand(R: list, P: int, root: bool):
        nonlocal best, nodes
        nodes += 1
        if nodes > budget:
            raise _BudgetExhausted
        for v, c in reversed(colour_sort(P)):
            if len(R) + c <= len(best):
                return
            if root:
                root_bound[0] = c
            Rn = R + [v]
            Pn = P & adj[v]
            if Pn:
                expand(Rn, Pn, False)
            elif len(Rn) > len(best):
                best = Rn
            P &= ~(1 << v)

    try:
        expand([], (1 << n) - 1, True)
    except _BudgetExhausted:
        return best, False, max(len(best), root_bound[0]), nodes
    return best, True, len(best), nodes


@dataclass
class MaxFamilyResult:
    size: int
    witness: Family
    optimal: bool
    upper: int
    nodes: int

    @property
    def bracket(self) -> tuple[int, int]:
        return (self.size, self.upper)


def max_intersecting_family(cx: Complex, t: int, sizes: Iterable[int], budget: int = DEFAULT_BUDGET,
                            seed_with_star: bool = True) -> MaxFamilyResult:
    """Largest ``t``-intersecting family of faces with cardinalities in ``sizes``.

    Solved exactly as a maximum clique in the graph joining faces that meet in
    at least ``t`` vertices.  The best star seeds the incumbent.
    """
    sizes = _check_sizes(t, sizes)
    pool = [m for s in sizes if s < len(cx.layers) for m in cx.layers[s]]
    if len(pool) > POOL_LIMIT:
        raise ValueError(f"candidate pool of {len(pool)} exceeds {POOL_LIMIT}")
    if not pool:
        return MaxFamilyResult(0, Family.from_masks(cx.vertex_order, ()), True, 0, 0)
    degree = [sum(1 for b in pool if a != b and popcount(a & b) >= t) for a in pool]
    order = sorted(range(len(pool)), key=lambda a: (-degree[a], lex_key(pool[a])))
    members = [pool[a] for a in order]
    adj = []
    for a, x in enumerate(members):
        bitset = 0
        for b, y in enumerate(members):
            if a != b and popcount(x & y) >= t:
                bitset |= 1 << b
        adj.append(bitset)
    initial = []
    if seed_with_star and t < len(cx.layers) and cx.layers[t]:
        _, sigma = star_bound(cx, t, sizes)
        initial = [b for b, y in enumerate(members) if y & sigma == sigma]
    clique, optimal, upper, nodes = max_clique(adj, initial, budget)
    witness = Family.from_masks(cx.vertex_order, (members[b] for b in clique))
    ok, pair = is_t_intersecting(witness, t)
    if not ok:
        raise AssertionError(f"search produced a non-intersecting family: {pair}")
    return MaxFamilyResult(len(clique), witness, optimal, upper, nodes)


def simplex_ekr_bound(n: int, t: int, r: int) -> int:
    return comb(n - t, r - t)


def facet_threshold(t: int, r: int) -> int:
    return (t + 1) * (r - t + 1)


def large_facet_threshold(t: int, r: int) -> int:
    return (r - t) * comb(3 * r - 2 * t - 1, t + 1) + r


# conditions known to imply the inequality; the bare facet threshold alone is only conjectured to
PROVEN = ("shifted", "large_facets", "near_cone_depth", "near_cone_seq_cm")


@dataclass
class EkrReport:
    t: int
    sizes: tuple
    star_bound: int
    star_face: tuple
    brute_max: int
    brute_upper: int
    optimal: bool
    witness: list
    hypotheses: dict = field(default_factory=dict)
    inequality: str = "holds"  # holds | fails | inconclusive
    verdict: str = "holds"  # holds | violation | counterexample | hypothesis-not-met | inconclusive

    @property
    def violation(self) -> bool:
        return self.verdict in ("violation", "counterexample")

    def as_dict(self) -> dict:
        return {
            "t": self.t, "S": list(self.sizes), "star_bound": self.star_bound,
            "star_face": list(self.star_face), "brute_max": self.brute_max,
            "brute_upper": self.brute_upper, "optimal": self.optimal,
            "witness": [list(w) for w in self.witness], "hypotheses": dict(self.hypotheses),
            "inequality": self.inequality, "verdict": self.verdict,
        }


@lru_cache(maxsize=64)
def _depth(cx: Complex, p: int) -> int:
    return depth_by_links(cx, FieldConfig(p))


@lru_cache(maxsize=64)
def _seq_cm(cx: Complex, p: int) -> bool:
    return is_sequentially_cm(cx, FieldConfig(p))


@lru_cache(maxsize=64)
def _apex(cx: Complex, t: int):
    return find_apex_sequence(cx, t)


def evaluate_hypotheses(cx: Complex, t: int, sizes: tuple, cfg: FieldConfig) -> dict:
    """Which of the known sufficient conditions for the bound hold."""
    r = max(sizes)
    k = cx.min_facet_cardinality
    hyp = {
        "facet_threshold": k >= facet_threshold(t, r),
        "large_facets": k >= large_facet_threshold(t, r),
    }
    hyp["shifted"] = hyp["facet_threshold"] and is_shifted(cx)
    seq = _apex(cx, t)
    hyp["near_cone"] = seq is not None
    hyp["near_cone_depth"] = False
    hyp["near_cone_seq_cm"] = False
    if seq is not None:
        # depth never exceeds k - 1, so the depth bound needs the facet threshold
        if hyp["facet_threshold"]:
            hyp["depth"] = _depth(cx, cfg.p)
            hyp["near_cone_depth"] = hyp["depth"] >= facet_threshold(t, r) - 1
            hyp["near_cone_seq_cm"] = _seq_cm(cx, cfg.p)
    return hyp


def verify_borg(cx: Complex, t: int, sizes: Iterable[int], cfg: FieldConfig | None = None, seed: int = 0,
                budget: int = DEFAULT_BUDGET) -> EkrReport:
    """Compare the exact maximum with the star bound and classify the outcome."""
    cfg = cfg or FieldConfig()
    sizes = _check_sizes(t, sizes)
    bound, sigma = star_bound(cx, t, sizes)
    best = max_intersecting_family(cx, t, sizes, budget)
    if best.size > bound:
        inequality = "fails"
    elif best.upper <= bound:
        inequality = "holds"
    else:
        inequality = "inconclusive"
    hyp = evaluate_hypotheses(cx, t, sizes, cfg)
    if inequality == "holds":
        verdict = "holds"
    elif inequality == "inconclusive":
        verdict = "inconclusive"
    elif any(hyp.get(name) for name in PROVEN):
        verdict = "violation"
    elif hyp["facet_threshold"]:
        verdict = "counterexample"
    else:
        verdict = "hypothesis-not-met"
    return EkrReport(t, sizes, bound, cx.labels(sigma), best.size, best.upper, best.optimal,
                     best.witness.sets(), hyp, inequality, verdict)


@dataclass
class PropEasyReport:
    t: int
    r: int
    shifted_side: int
    max_side: int
    first_face_in_shift: bool
    unstable: bool

    @property
    def holds(self) -> bool:
        return self.first_face_in_shift and self.shifted_side >= self.max_side


def check_prop_easy(cx: Complex, t: int, r: int, cfg: FieldConfig | None = None, seed: int = 0,
                    trials: int = 3) -> PropEasyReport:
    """The star of the first ``t`` shifted vertices dominates every star in the complex."""
    if r < t:
        raise ValueError("need r >= t")
    max_side, _ = star_bound(cx, t, [r])
    res = exterior_shift(cx, cfg, seed, trials)
    first = (1 << t) - 1
    in_shift = first in res.shifted.faces
    shifted_side = star_value(res.shifted, first, [r]) if in_shift else 0
    return PropEasyReport(t, r, shifted_side, max_side, in_shift, not res.stable)
