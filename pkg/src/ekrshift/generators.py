"""Seeded corpora of complexes and families for the property sweeps.

Every generator takes a ``numpy.random.Generator``; sweeps derive one per
instance from ``(seed, instance id)`` so instances are reproducible in
isolation.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .complex import (Complex, bits, boundary_of_simplex, cone, down_closure, from_facets, mask_from_indices,
                      simplex, skeleton)
from .family import Family, is_t_intersecting
from .nearcone import validate_apex_sequence


def instance_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, index])


def exhaustive_complexes(n: int = 4) -> list[Complex]:
    """Every nonempty complex whose vertices form a subset of ``{1..n}`` (labels kept)."""
    if n > 4:
        raise ValueError("exhaustive enumeration is limited to n <= 4")
    nonempty = list(range(1, 1 << n))
    out = []
    for choice in range(1, 1 << len(nonempty)):
        family = {nonempty[b] for b in range(len(nonempty)) if choice >> b & 1}
        if any(m & ~(1 << i) not in family and m & ~(1 << i) for m in family for i in bits(m)):
            continue
        used = 0
        for m in family:
            used |= m
        labels = [i + 1 for i in bits(used)]
        pos = {old: new for new, old in enumerate(bits(used))}
        masks = [mask_from_indices(pos[i] for i in bits(m)) for m in family]
        out.append(Complex(tuple(labels), down_closure(masks)))
    return out


def random_complex(rng: np.random.Generator, n: int, max_facets: int | None = None,
                   min_size: int = 1, max_size: int | None = None) -> Complex:
    """Random generators on ``{1..n}``; unused vertices are added as isolated points."""
    max_facets = max_facets or n
    max_size = min(max_size or n, n)
    count = int(rng.integers(1, max_facets + 1))
    gens = []
    for _ in range(count):
        size = int(rng.integers(min_size, max_size + 1))
        gens.append(sorted(int(x) + 1 for x in rng.choice(n, size=size, replace=False)))
    used = {v for g in gens for v in g}
    gens += [[v] for v in range(1, n + 1) if v not in used]
    return from_facets(gens, range(1, n + 1))


def shifted_closure(masks, n: int) -> frozenset:
    seen = set(down_closure(masks))
    stack = list(seen)
    while stack:
        m = stack.pop()
        for i in bits(m):
            base = m & ~(1 << i)
            for j in range(i):
                if not m >> j & 1:
                    nxt = base | (1 << j)
                    if nxt not in seen:
                        seen.update(down_closure([nxt]))
                        stack.append(nxt)
    return frozenset(seen)


def random_shifted_complex(rng: np.random.Generator, n: int, min_size: int = 1, max_generators: int = 3) -> Complex:
    """Shifted complex generated by a few random sets of size at least ``min_size``."""
    count = int(rng.integers(1, max_generators + 1))
    gens = []
    for _ in range(count):
        size = int(rng.integers(min(min_size, n), n + 1))
        gens.append(mask_from_indices(int(x) for x in rng.choice(n, size=size, replace=False)))
    faces = shifted_closure(gens, n)
    used = 0
    for m in faces:
        used |= m
    m = used.bit_length()
    return Complex(tuple(range(1, m + 1)), faces)


def random_subcomplex(rng: np.random.Generator, cx: Complex) -> Complex:
    """Complex generated by a random nonempty selection of faces of ``cx`` (labels kept)."""
    faces = [m for m in sorted(cx.faces) if m]
    pick = [m for m in faces if rng.random() < 0.5] or [faces[int(rng.integers(len(faces)))]]
    closure = down_closure(pick)
    used = 0
    for m in closure:
        used |= m
    pos = {old: new for new, old in enumerate(bits(used))}
    order = [cx.vertex_order[i] for i in bits(used)]
    return Complex(tuple(order), frozenset(mask_from_indices(pos[i] for i in bits(m)) for m in closure))


def random_intersecting_family(rng: np.random.Generator, n: int, t: int, r: int) -> Family:
    """Greedy random ``t``-intersecting ``r``-family on ``{1..n}``."""
    candidates = [mask_from_indices(c) for c in combinations(range(n), r)]
    rng.shuffle(candidates)
    target = int(rng.integers(1, len(candidates) + 1))
    chosen: list[int] = []
    for c in candidates:
        if all((c & d).bit_count() >= t for d in chosen):
            chosen.append(c)
            if len(chosen) >= target:
                break
    fam = Family.from_masks(range(1, n + 1), chosen)
    assert is_t_intersecting(fam, t)[0]
    return fam


def _minimal_nonfaces(cx: Complex, must_contain: int = 0) -> list[int]:
    out = set()
    full = (1 << cx.n) - 1
    for m in cx.faces:
        for x in bits(full & ~m):
            g = m | (1 << x)
            if g in cx.faces or g.bit_count() < 2 or (must_contain and not g & must_contain):
                continue
            if all(g & ~(1 << y) in cx.faces for y in bits(g)):
                out.add(g)
    return sorted(out)


def base_complex(rng: np.random.Generator, m: int, labels) -> Complex:
    """A random building block on ``m`` vertices: random, skeleton, sphere or shifted."""
    kind = int(rng.integers(4))
    labels = list(labels)
    if kind == 0 or m < 3:
        cx = random_complex(rng, m, max_facets=4)
    elif kind == 1:
        d = int(rng.integers(0, m))
        cx = skeleton(simplex(m), d)
    elif kind == 2:
        cx = boundary_of_simplex(m)
    else:
        cx = random_shifted_complex(rng, m, min_size=max(1, m - 3))
        if cx.n < m:
            cx = from_facets([cx.labels(f) for f in cx.facets] + [[v] for v in range(cx.n + 1, m + 1)],
                             range(1, m + 1))
    relabel = dict(zip(range(1, m + 1), labels))
    return from_facets([[relabel[v] for v in cx.labels(f)] for f in cx.facets], labels)


def random_near_cone(rng: np.random.Generator, i: int, n_max: int = 9, extra_prob: float = 0.5):
    """An ``i``-near-cone with apex ``1..i`` and its apex sequence.

    Built inside out: a base complex is coned ``i`` times, and at each level a
    random minimal non-face of the anti-star may be filled in (containing the
    next apex vertex when there is one), which keeps the anti-star chain valid.
    """
    if n_max <= i:
        raise ValueError("need room for at least one non-apex vertex")
    m = int(rng.integers(1, n_max - i + 1))
    current = base_complex(rng, m, range(i + 1, i + m + 1))
    for j in range(i, 0, -1):
        inner = current
        current = cone(inner, j)
        if rng.random() < extra_prob:
            must = 1 << inner.index[j + 1] if j < i else 0
            cands = _minimal_nonfaces(inner, must)
            if cands:
                g = inner.labels(cands[int(rng.integers(len(cands)))])
                current = from_facets([current.labels(f) for f in current.facets] + [g], current.vertex_order)
    seq = validate_apex_sequence(current, tuple(range(1, i + 1)))
    if seq is None:
        raise AssertionError("near-cone construction produced an invalid apex sequence")
    return current, seq
