"""Near-cones, iterated near-cones and the link/shift commutation checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Sequence

from .complex import Complex, ComplexError, antistar, bits, lex_key, link, skeleton
from .fflinalg import FieldConfig
from .shifting import exterior_shift


@dataclass(frozen=True)
class NearConeCertificate:
    verdict: bool
    violating_face: tuple | None = None  # (sigma labels, w label)

    def __bool__(self) -> bool:
        return self.verdict


@dataclass(frozen=True)
class ApexSequence:
    apex: tuple
    chain: tuple  # chain[0] is the complex itself, chain[j] = ast of chain[j-1] at apex[j-1]

    @property
    def i(self) -> int:
        return len(self.apex)


def is_near_cone(cx: Complex, v: Hashable) -> NearConeCertificate:
    """Whether ``(s - {w}) | {v}`` is a face for every face ``s`` and every ``w`` in ``s``."""
    if v not in cx.index:
        raise ComplexError(f"{v!r} is not a vertex")
    apex = 1 << cx.index[v]
    faces = cx.faces
    for sigma in sorted(faces, key=lex_key):
        if sigma & apex:
            continue
        for w in bits(sigma):
            if (sigma & ~(1 << w)) | apex not in faces:
                return NearConeCertificate(False, (cx.labels(sigma), cx.vertex_order[w]))
    return NearConeCertificate(True)


def validate_apex_sequence(cx: Complex, apex: Sequence[Hashable], require_vertex: bool = True) -> ApexSequence | None:
    """Rebuild the anti-star chain for ``apex``; ``None`` if some step is not a near-cone."""
    chain = [cx]
    current = cx
    for v in apex:
        if v not in current.index or not is_near_cone(current, v):
            return None
        current = antistar(current, [v])
        if require_vertex and current.n == 0:
            return None
        chain.append(current)
    return ApexSequence(tuple(apex), tuple(chain))


def find_apex_sequence(cx: Complex, i: int, require_vertex: bool = True) -> ApexSequence | None:
    """First apex sequence of length ``i`` found by backtracking in vertex order.

    With ``require_vertex`` the last complex of the chain must keep a vertex,
    not just the empty face.
    """
    if i < 1:
        raise ValueError("i must be at least 1")

    def search(current: Complex, prefix: list, chain: list):
        if len(prefix) == i:
            return ApexSequence(tuple(prefix), tuple(chain))
        for v in current.vertex_order:
            if not is_near_cone(current, v):
                continue
            rest = antistar(current, [v])
            if rest.n == 0 and (require_vertex or len(prefix) + 1 < i):
                continue
            found = search(rest, prefix + [v], chain + [rest])
            if found is not None:
                return found
        return None

    return search(cx, [], [cx])


def largest_near_cone_index(cx: Complex, limit: int | None = None) -> tuple[int, ApexSequence | None]:
    """Best-effort largest ``i`` for which an apex sequence is found."""
    best, seq = 0, None
    limit = cx.n if limit is None else limit
    for i in range(1, limit + 1):
        found = find_apex_sequence(cx, i)
        if found is None:
            break
        best, seq = i, found
    return best, seq


def apex_order(cx: Complex, seq: ApexSequence) -> list:
    """Ambient vertex order with the apex first, remaining vertices in their given order."""
    apex = list(seq.apex)
    return apex + [v for v in cx.vertex_order if v not in seq.apex]


@dataclass
class ApexFaceReport:
    i: int
    dim: int
    hypothesis: bool  # dim >= 2i - 2
    apex_is_face: bool

    @property
    def violation(self) -> bool:
        return self.hypothesis and not self.apex_is_face


def check_apex_face(cx: Complex, seq: ApexSequence) -> ApexFaceReport:
    i = seq.i
    return ApexFaceReport(i, cx.dim, cx.dim >= 2 * i - 2, cx.mask(seq.apex) in cx.faces)


@dataclass
class SkeletonShiftReport:
    s: int
    k: int
    i: int
    in_range: bool  # s <= k - i - 1
    failures: list = field(default_factory=list)  # (sigma labels, v_t, v_j)

    @property
    def holds(self) -> bool:
        return not self.failures

    @property
    def violation(self) -> bool:
        return self.in_range and not self.holds


def check_skeleton_shifting(cx: Complex, seq: ApexSequence, s: int) -> SkeletonShiftReport:
    """Swaps toward an apex vertex stay inside the ``s``-skeleton.

    For every face of the ``s``-skeleton, every apex position ``j`` and every
    later vertex ``v_t`` in the face with ``v_j`` absent, the swapped set must
    again be a face.  Failures only count as violations when ``s <= k - i - 1``.
    """
    i, k = seq.i, cx.min_facet_cardinality
    report = SkeletonShiftReport(s, k, i, s <= k - i - 1)
    if s < 0:
        return report
    order = apex_order(cx, seq)
    pos = [cx.index[v] for v in order]  # ambient rank -> bit position
    skel = skeleton(cx, s)
    for sigma in sorted(skel.faces, key=lex_key):
        for j in range(i):
            vj = 1 << pos[j]
            if sigma & vj:
                continue
            for t in range(j + 1, len(order)):
                vt = 1 << pos[t]
                if sigma & vt and (sigma & ~vt) | vj not in skel.faces:
                    report.failures.append((cx.labels(sigma), order[t], order[j]))
    return report


def _link_positions(faces, upto: int) -> frozenset:
    """Link of the first ``upto`` positions, kept in ambient positions."""
    u = (1 << upto) - 1
    return frozenset(m & ~u for m in faces if m & u == u)


def _lift(faces, offset: int) -> frozenset:
    return frozenset(m << offset for m in faces)


def _shift_faces(cx: Complex, cfg, seed, trials):
    if cx.n == 0:
        return cx.faces, True
    res = exterior_shift(cx, cfg, seed, trials)
    return res.shifted.faces, res.stable


def _f_vector_of(faces) -> list:
    out: list[int] = []
    for m in faces:
        c = m.bit_count()
        while len(out) <= c:
            out.append(0)
        out[c] += 1
    return out


@dataclass
class LinkCommutationReport:
    i: int
    k: int
    hypothesis: bool  # dim >= 2i - 2
    apex_is_face: bool
    near_cone_link: bool | None = None
    skeleton_links: dict = field(default_factory=dict)  # s -> bool
    link_f_vector: dict = field(default_factory=dict)  # r -> (lhs, rhs)
    unstable: bool = False

    def violations(self) -> list[str]:
        if self.unstable:
            return []
        out = []
        if self.near_cone_link is False:
            out.append("near-cone link")
        out += [f"skeleton link s={s}" for s, ok in self.skeleton_links.items() if not ok]
        out += [f"link f-vector r={r}" for r, (a, b) in self.link_f_vector.items() if a != b]
        if self.hypothesis and not self.apex_is_face:
            out.append("apex not a face")
        return out


def check_link_commutation(cx: Complex, seq: ApexSequence, cfg: FieldConfig | None = None, seed: int = 0,
                           trials: int = 3) -> LinkCommutationReport:
    """Compare links in the shift with shifts of links.

    Vertex identification is positional: the ``j``-th vertex of a shifted link
    corresponds to the ``(i + j)``-th vertex of the shifted complex.
    """
    cfg = cfg or FieldConfig()
    i, k = seq.i, cx.min_facet_cardinality
    apex_mask = cx.mask(seq.apex)
    report = LinkCommutationReport(i, k, cx.dim >= 2 * i - 2, apex_mask in cx.faces)
    stable = True

    shifted, ok = _shift_faces(cx, cfg, seed, trials)
    stable &= ok
    first = seq.apex[0]
    lk_first, ok = _shift_faces(link(cx, [first]), cfg, seed, trials)
    stable &= ok
    report.near_cone_link = _link_positions(shifted, 1) == _lift(lk_first, 1)

    if report.hypothesis and report.apex_is_face:
        lk_full = link(cx, apex_mask)
        for s in range(max(0, i - 1), k - i):
            skel = skeleton(cx, s)
            lhs_faces, ok1 = _shift_faces(skel, cfg, seed, trials)
            rhs_faces, ok2 = _shift_faces(link(skel, apex_mask), cfg, seed, trials)
            stable &= ok1 and ok2
            lhs = _link_positions(lhs_faces, i)
            report.skeleton_links[s] = (lhs == _lift(rhs_faces, i))
        if k - 2 * i >= 0:
            lhs_fv = _f_vector_of(_link_positions(shifted, i))
            rhs_faces, ok = _shift_faces(lk_full, cfg, seed, trials)
            stable &= ok
            rhs_fv = _f_vector_of(rhs_faces)
            for r in range(0, k - 2 * i + 1):
                a = lhs_fv[r] if r < len(lhs_fv) else 0
                b = rhs_fv[r] if r < len(rhs_fv) else 0
                report.link_f_vector[r] = (a, b)
    report.unstable = not stable
    return report
