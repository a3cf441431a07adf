"""Finite simplicial complexes on an ordered vertex set.

Faces are stored as integer bitmasks: bit ``i`` stands for ``vertex_order[i]``.
The empty face (mask ``0``) is always present, so the f-vector is indexed by
face cardinality and starts with ``f_0 = 1``.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Hashable, Iterable, Sequence

MAX_VERTICES = 64


class ComplexError(ValueError):
    pass


def popcount(mask: int) -> int:
    return mask.bit_count()


@lru_cache(maxsize=1 << 20)
def bits(mask: int) -> tuple[int, ...]:
    """Indices of the set bits of ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def mask_from_indices(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def lex_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Sort key: by cardinality, then lexicographically on sorted indices."""
    b = bits(mask)
    return (len(b), b)


def down_closure(generators: Iterable[int]) -> frozenset[int]:
    out: set[int] = {0}
    for g in generators:
        if g not in out:
            out.update(submasks(g))
    return frozenset(out)


def maximal_masks(masks: Iterable[int]) -> list[int]:
    """Inclusion-maximal elements, in lex order."""
    ordered = sorted(set(masks), key=lambda m: -popcount(m))
    kept: list[int] = []
    for m in ordered:
        if not any(m & k == m for k in kept):
            kept.append(m)
    return sorted(kept, key=lex_key)


def remap_mask(mask: int, position_map: dict[int, int]) -> int:
    out = 0
    for i in bits(mask):
        out |= 1 << position_map[i]
    return out


@dataclass(frozen=True)
class Complex:
    """Downward-closed family of faces over an ordered vertex set.

    Construct through :func:`from_facets` or :meth:`from_masks`; the raw
    constructor trusts its arguments.
    """

    vertex_order: tuple
    faces: frozenset

    @classmethod
    def from_masks(cls, vertex_order: Sequence[Hashable], masks: Iterable[int]) -> "Complex":
        order = tuple(vertex_order)
        _check_order(order)
        faces = down_closure(masks)
        used = 0
        for m in faces:
            used |= m
        if used >> len(order):
            raise ComplexError("face mask refers to a vertex outside the order")
        if used != (1 << len(order)) - 1:
            missing = [order[i] for i in range(len(order)) if not used >> i & 1]
            raise ComplexError(f"vertices {missing} lie in no face")
        return cls(order, faces)

    @property
    def n(self) -> int:
        return len(self.vertex_order)

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertex_order)}

    @cached_property
    def facets(self) -> tuple[int, ...]:
        faces = self.faces
        out = []
        for m in faces:
            free = ~m & ((1 << self.n) - 1)
            if not any((m | (1 << i)) in faces for i in bits(free)):
                out.append(m)
        return tuple(sorted(out, key=lex_key))

    @cached_property
    def dim(self) -> int:
        return max(popcount(m) for m in self.faces) - 1

    @cached_property
    def min_facet_cardinality(self) -> int:
        return min(popcount(m) for m in self.facets)

    @cached_property
    def f_vector(self) -> tuple[int, ...]:
        counts = [0] * (self.dim + 2)
        for m in self.faces:
            counts[popcount(m)] += 1
        return tuple(counts)

    @cached_property
    def layers(self) -> tuple[tuple[int, ...], ...]:
        """Faces grouped by cardinality, each layer in lex order."""
        out: list[list[int]] = [[] for _ in range(self.dim + 2)]
        for m in self.faces:
            out[popcount(m)].append(m)
        return tuple(tuple(sorted(layer, key=lex_key)) for layer in out)

    def is_pure(self) -> bool:
        return self.min_facet_cardinality == self.dim + 1

    def mask(self, labels: Iterable[Hashable]) -> int:
        try:
            return mask_from_indices(self.index[v] for v in labels)
        except KeyError as exc:
            raise ComplexError(f"unknown vertex {exc.args[0]!r}") from None

    def labels(self, mask: int) -> tuple:
        return tuple(self.vertex_order[i] for i in bits(mask))

    def __contains__(self, face) -> bool:
        if isinstance(face, int):
            return face in self.faces
        try:
            return self.mask(face) in self.faces
        except ComplexError:
            return False

    def face_sets(self, masks: Iterable[int] | None = None) -> list[tuple]:
        masks = self.faces if masks is None else masks
        return [self.labels(m) for m in sorted(masks, key=lex_key)]

    def facet_sets(self) -> list[tuple]:
        return self.face_sets(self.facets)

    def __repr__(self) -> str:
        facets = " ".join("".join(map(str, f)) if all(len(str(v)) == 1 for v in f) else str(f)
                          for f in self.facet_sets())
        return f"Complex(order={list(self.vertex_order)}, facets=[{facets}])"


def _check_order(order: tuple) -> None:
    if len(set(order)) != len(order):
        raise ComplexError("duplicate vertex labels in vertex order")
    if len(order) > MAX_VERTICES:
        raise ComplexError(f"at most {MAX_VERTICES} vertices supported")


def from_facets(facet_list: Iterable[Iterable[Hashable]], vertex_order: Sequence[Hashable] | None = None) -> Complex:
    """Complex generated by ``facet_list``; dominated generators are absorbed.

    Without ``vertex_order`` the order is that of first appearance.
    """
    gens = [tuple(f) for f in facet_list]
    if not gens:
        raise ComplexError("empty facet list")
    if vertex_order is None:
        order: list = []
        seen = set()
        for g in gens:
            for v in g:
                if v not in seen:
                    seen.add(v)
                    order.append(v)
    else:
        order = list(vertex_order)
        _check_order(tuple(order))
    index = {v: i for i, v in enumerate(order)}
    masks = []
    for g in gens:
        try:
            masks.append(mask_from_indices(index[v] for v in g))
        except KeyError as exc:
            raise ComplexError(f"vertex {exc.args[0]!r} not in vertex order") from None
    return Complex.from_masks(order, masks)


def simplex(vertices: Sequence[Hashable] | int) -> Complex:
    if isinstance(vertices, int):
        vertices = range(1, vertices + 1)
    vertices = list(vertices)
    return from_facets([vertices], vertices)


def boundary_of_simplex(vertices: Sequence[Hashable] | int) -> Complex:
    if isinstance(vertices, int):
        vertices = range(1, vertices + 1)
    vertices = list(vertices)
    return from_facets([c for c in combinations(vertices, len(vertices) - 1)], vertices)


def faces_of_size(cx: Complex, s: int) -> tuple[int, ...]:
    """The layer of faces of cardinality ``s`` (masks in lex order)."""
    if s < 0 or s >= len(cx.layers):
        return ()
    return cx.layers[s]


def f_vector(cx: Complex) -> tuple[int, ...]:
    return cx.f_vector


def _restrict(cx: Complex, keep_mask: int, masks: Iterable[int]) -> Complex:
    """Re-index ``masks`` (all inside ``keep_mask``) onto the kept vertices."""
    kept = bits(keep_mask)
    pos = {old: new for new, old in enumerate(kept)}
    order = tuple(cx.vertex_order[i] for i in kept)
    return Complex(order, frozenset(remap_mask(m, pos) for m in masks))


def _as_mask(cx: Complex, face) -> int:
    return face if isinstance(face, int) else cx.mask(face)


def link(cx: Complex, face) -> Complex:
    sigma = _as_mask(cx, face)
    if sigma not in cx.faces:
        raise ComplexError(f"{cx.labels(sigma)} is not a face")
    if sigma == 0:
        return cx
    masks = [m & ~sigma for m in cx.faces if m & sigma == sigma]
    used = 0
    for m in masks:
        used |= m
    return _restrict(cx, used, masks)


def antistar(cx: Complex, face) -> Complex:
    sigma = _as_mask(cx, face)
    if sigma == 0:
        return cx
    masks = [m for m in cx.faces if not m & sigma]
    used = 0
    for m in masks:
        used |= m
    return _restrict(cx, used, masks)


def skeleton(cx: Complex, r: int) -> Complex:
    """Faces of dimension at most ``r``."""
    if r < 0:
        raise ComplexError("skeleton dimension must be nonnegative")
    if r >= cx.dim:
        return cx
    return Complex(cx.vertex_order, frozenset(m for m in cx.faces if popcount(m) <= r + 1))


def pure_skeleton(cx: Complex, r: int) -> Complex:
    """Subcomplex generated by the faces of dimension exactly ``r``."""
    top = faces_of_size(cx, r + 1)
    if r < 0 or not top:
        raise ComplexError(f"no face of dimension {r}")
    used = 0
    for m in top:
        used |= m
    closure = down_closure(top)
    return _restrict(cx, used, closure)


def join(a: Complex, b: Complex) -> Complex:
    if set(a.vertex_order) & set(b.vertex_order):
        raise ComplexError("join requires disjoint vertex sets")
    if not a.n or not b.n:
        raise ComplexError("join factors must have at least one vertex")
    shift = a.n
    faces = frozenset(x | (y << shift) for x in a.faces for y in b.faces)
    return Complex(a.vertex_order + b.vertex_order, faces)


def cone(cx: Complex, apex: Hashable, first: bool = True) -> Complex:
    """``apex * cx``; the apex goes first in the vertex order unless ``first`` is False."""
    point = Complex((apex,), frozenset({0, 1}))
    return join(point, cx) if first else join(cx, point)


def relabel(cx: Complex, new_order: Sequence[Hashable]) -> Complex:
    """Same faces, vertex order permuted to ``new_order`` (a permutation of the labels)."""
    new_order = tuple(new_order)
    if len(new_order) != cx.n or set(new_order) != set(cx.vertex_order):
        raise ComplexError("new order must be a permutation of the vertex labels")
    pos = {cx.index[v]: i for i, v in enumerate(new_order)}
    return Complex(new_order, frozenset(remap_mask(m, pos) for m in cx.faces))


def is_shifted(cx: Complex) -> bool:
    """Closed under replacing a vertex by any earlier vertex of the order."""
    faces = cx.faces
    for m in faces:
        for i in bits(m):
            base = m & ~(1 << i)
            for j in range(i):
                if not m >> j & 1 and (base | (1 << j)) not in faces:
                    return False
    return True


def is_subcomplex(sub: Complex, cx: Complex) -> bool:
    """Label-wise containment of faces."""
    try:
        pos = {i: cx.index[v] for i, v in enumerate(sub.vertex_order)}
    except KeyError:
        return False
    return all(remap_mask(m, pos) in cx.faces for m in sub.faces)


def parse_facet_list(source) -> Complex:
    """Read the facet-list text format.

    An optional ``vertices: a b c`` header fixes the order, then one facet per
    line as whitespace-separated tokens; ``#`` starts a comment.  Tokens that
    look like integers are read as ints.
    """
    if isinstance(source, str):
        source = io.StringIO(source)
    header = None
    facets = []
    for lineno, raw in enumerate(source, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("vertices:"):
            if header is not None or facets:
                raise ComplexError(f"line {lineno}: vertices header must come first")
            header = [_token(t) for t in line.split(":", 1)[1].split()]
            if len(set(header)) != len(header):
                raise ComplexError(f"line {lineno}: duplicate vertex labels in header")
            continue
        if ":" in line:
            raise ComplexError(f"line {lineno}: malformed line {raw.rstrip()!r}")
        facet = [_token(t) for t in line.split()]
        if len(set(facet)) != len(facet):
            raise ComplexError(f"line {lineno}: repeated vertex in facet")
        if header is not None:
            bad = [v for v in facet if v not in header]
            if bad:
                raise ComplexError(f"line {lineno}: vertex {bad[0]!r} not declared in header")
        facets.append(facet)
    if not facets:
        raise ComplexError("no facets given")
    if header is not None:
        # declared vertices lying in no facet are dropped; the rest keep the declared order
        used = {v for f in facets for v in f}
        header = [v for v in header if v in used]
    return from_facets(facets, header)


def format_facet_list(cx: Complex) -> str:
    lines = ["vertices: " + " ".join(map(str, cx.vertex_order))]
    lines += [" ".join(map(str, f)) for f in cx.facet_sets()]
    return "\n".join(lines) + "\n"


def _token(t: str):
    try:
        return int(t)
    except ValueError:
        return t
