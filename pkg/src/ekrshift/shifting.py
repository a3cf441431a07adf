"""Exterior algebraic shifting over GF(p) via generic compound minors.

For a generic basis change ``g`` put ``f_S = g e_{s1} ^ ... ^ g e_{sk}``.  Its
coordinate at ``e_T`` is ``det g[T, S]``.  Working modulo the span of the
non-faces amounts to keeping only the columns ``T`` that are faces.  A
``k``-set ``S`` belongs to the shift when its row is independent of all rows
of lexicographically smaller ``k``-sets.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .complex import Complex, ComplexError, bits, is_shifted, is_subcomplex, mask_from_indices
from .family import Family, is_t_intersecting
from .fflinalg import FieldConfig, RankOracle, random_invertible

MAX_SHIFT_VERTICES = 20


class ShiftError(ValueError):
    pass


@dataclass(frozen=True)
class ShiftResult:
    shifted: Complex
    prime: int
    seeds: tuple
    trials_agreed: int
    per_size_kept: tuple  # per_size_kept[k] = kept k-sets (masks, processing order)
    unanimous: bool

    @property
    def stable(self) -> bool:
        """Unanimous over at least three independent generic matrices."""
        return self.unanimous and self.trials_agreed >= 3

    def certificate(self) -> dict:
        return {
            "prime": self.prime,
            "seeds": [list(s) if isinstance(s, tuple) else s for s in self.seeds],
            "trials_agreed": self.trials_agreed,
            "unanimous": self.unanimous,
            "stable": self.stable,
        }


@dataclass(frozen=True)
class FamilyShiftResult:
    family: Family
    underlying: ShiftResult


def _subset_order(n: int, k: int, reverse: bool) -> list[int]:
    combos = combinations(range(n), k)
    if reverse:
        # lex order with respect to the reversed vertex order
        combos = sorted(combos, key=lambda c: tuple(sorted(n - 1 - i for i in c)))
    return [mask_from_indices(c) for c in combos]


def wedge_rows(cx: Complex, g: np.ndarray, p: int, top: int | None = None):
    """Yield ``(k, subsets, M)`` with ``M[a, b] = det g[T_b, S_a]``.

    Rows run over every ``k``-subset ``S_a`` of the vertex positions (lex
    order), columns over the faces ``T_b`` of cardinality ``k`` (lex order).
    Computed by Laplace expansion along the smallest row index of ``T``, which
    only needs minors on faces of one size less.
    """
    n = cx.n
    top = cx.dim + 1 if top is None else top
    prev_rows = {0: 0}
    prev_cols = {0: 0}
    prev = np.ones((1, 1), dtype=np.int64)
    for k in range(1, top + 1):
        subsets = [mask_from_indices(c) for c in combinations(range(n), k)]
        faces = cx.layers[k] if k < len(cx.layers) else ()
        if not faces:
            return
        t_low = np.array([(T & -T).bit_length() - 1 for T in faces], dtype=np.intp)
        t_rest = np.array([prev_cols[T & (T - 1)] for T in faces], dtype=np.intp)
        members = [bits(S) for S in subsets]
        M = np.zeros((len(subsets), len(faces)), dtype=np.int64)
        for j in range(k):
            s_j = np.array([b[j] for b in members], dtype=np.intp)
            s_rest = np.array([prev_rows[S & ~(1 << b[j])] for S, b in zip(subsets, members)], dtype=np.intp)
            term = (g[t_low[None, :], s_j[:, None]] * prev[s_rest[:, None], t_rest[None, :]]) % p
            M = (M - term) % p if j % 2 else (M + term) % p
        yield k, subsets, M
        prev = M
        prev_rows = {S: a for a, S in enumerate(subsets)}
        prev_cols = {T: b for b, T in enumerate(faces)}


def _shift_once(cx: Complex, g: np.ndarray, p: int, reverse: bool) -> tuple:
    kept_by_size: list[tuple[int, ...]] = [(0,)]
    for k, subsets, M in wedge_rows(cx, g, p):
        target = cx.f_vector[k]
        row_of = {S: a for a, S in enumerate(subsets)}
        oracle = RankOracle(M.shape[1], p)
        kept = []
        for S in _subset_order(cx.n, k, reverse):
            if oracle.insert(M[row_of[S]]):
                kept.append(S)
                if oracle.rank == target:
                    break
        kept_by_size.append(tuple(kept))
    return tuple(kept_by_size)


def exterior_shift(cx: Complex, cfg: FieldConfig | None = None, seed: int = 0, trials: int = 3,
                   reverse: bool = False) -> ShiftResult:
    """Exterior algebraic shift of ``cx`` with respect to its vertex order.

    Each trial draws an independent random invertible matrix; the returned
    complex is the most common outcome and ``unanimous`` records whether all
    trials produced it.
    """
    cfg = cfg or FieldConfig()
    if cx.n > MAX_SHIFT_VERTICES:
        raise ShiftError(f"shifting is limited to {MAX_SHIFT_VERTICES} vertices, got {cx.n}")
    if trials < 1:
        raise ShiftError("trials must be at least 1")
    seeds = tuple((seed, trial) for trial in range(trials))
    outcomes = [_shift_once(cx, random_invertible(cx.n, cfg, list(s)), cfg.p, reverse) for s in seeds]
    counts = Counter(outcomes)
    best, agreed = counts.most_common(1)[0]
    faces = frozenset(m for layer in best for m in layer)
    shifted = Complex(cx.vertex_order, faces)
    return ShiftResult(shifted, cfg.p, seeds, agreed, best, agreed == trials)


def shift_family(family: Family, n: int | None = None, cfg: FieldConfig | None = None, seed: int = 0,
                 trials: int = 3) -> FamilyShiftResult:
    """Shift of an ``r``-family: the ``r``-layer of the shift of the complex it generates."""
    sizes = set(family.sizes)
    if len(sizes) > 1:
        raise ShiftError(f"family mixes cardinalities {sorted(sizes)}")
    if not family.members:
        raise ShiftError("empty family")
    (r,) = sizes
    n = len(family.vertex_order) if n is None else n
    if n < len(family.vertex_order):
        raise ShiftError("ground set smaller than the family's vertex order")
    used = 0
    for m in family.members:
        used |= m
    positions = bits(used)
    pos = {old: new for new, old in enumerate(positions)}
    gens = [mask_from_indices(pos[i] for i in bits(m)) for m in family.members]
    generated = Complex.from_masks([family.vertex_order[i] for i in positions], gens)
    res = exterior_shift(generated, cfg, seed, trials)
    order = tuple(family.vertex_order) + tuple(f"_{i}" for i in range(len(family.vertex_order), n))
    shifted = Family.from_masks(order, res.shifted.layers[r] if r < len(res.shifted.layers) else ())
    return FamilyShiftResult(shifted, res)


@dataclass
class AxiomReport:
    S1: bool | None = None
    S2: bool | None = None
    S3: bool | None = None
    S4: bool | None = None
    S5: bool | None = None
    unstable: list = field(default_factory=list)

    def violations(self) -> list[str]:
        return [name for name in ("S1", "S2", "S3", "S4", "S5") if getattr(self, name) is False]

    def as_dict(self) -> dict:
        return {"S1": self.S1, "S2": self.S2, "S3": self.S3, "S4": self.S4, "S5": self.S5,
                "unstable": list(self.unstable)}


def check_axioms(cx: Complex, sub: Complex | None = None, family: Family | None = None, t: int = 1,
                 cfg: FieldConfig | None = None, seed: int = 0, trials: int = 3) -> AxiomReport:
    """Evaluate the five shifting axioms on the given inputs.

    S2 is ``None`` unless ``cx`` is shifted; S4 needs ``sub``; S5 needs ``family``.
    """
    cfg = cfg or FieldConfig()
    report = AxiomReport()
    res = exterior_shift(cx, cfg, seed, trials)
    if not res.stable:
        report.unstable.append("complex")
    report.S1 = is_shifted(res.shifted)
    report.S3 = res.shifted.f_vector == cx.f_vector
    if is_shifted(cx):
        report.S2 = res.shifted.faces == cx.faces
    if sub is not None:
        if not is_subcomplex(sub, cx):
            raise ComplexError("sub-complex is not contained in the complex")
        sub_res = exterior_shift(sub, cfg, seed, trials)
        if not sub_res.stable:
            report.unstable.append("subcomplex")
        report.S4 = sub_res.shifted.faces <= res.shifted.faces
    if family is not None:
        ok, _ = is_t_intersecting(family, t)
        if not ok:
            raise ValueError(f"family is not {t}-intersecting")
        fres = shift_family(family, cfg=cfg, seed=seed, trials=trials)
        if not fres.underlying.stable:
            report.unstable.append("family")
        report.S5 = is_t_intersecting(fres.family, t)[0] and len(fres.family) == len(family)
    return report
