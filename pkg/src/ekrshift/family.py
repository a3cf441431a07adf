"""Set families over an ordered ground set, stored as bitmasks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .complex import Complex, ComplexError, lex_key, mask_from_indices, popcount, bits


@dataclass(frozen=True)
class Family:
    vertex_order: tuple
    members: tuple  # distinct masks in lex order

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable[Hashable]], vertex_order: Sequence[Hashable] | None = None) -> "Family":
        sets = [tuple(s) for s in sets]
        if vertex_order is None:
            order: list = []
            for s in sets:
                for v in s:
                    if v not in order:
                        order.append(v)
            vertex_order = order
        order = tuple(vertex_order)
        index = {v: i for i, v in enumerate(order)}
        try:
            masks = {mask_from_indices(index[v] for v in s) for s in sets}
        except KeyError as exc:
            raise ComplexError(f"vertex {exc.args[0]!r} not in ground set") from None
        return cls(order, tuple(sorted(masks, key=lex_key)))

    @classmethod
    def from_masks(cls, vertex_order: Sequence[Hashable], masks: Iterable[int]) -> "Family":
        return cls(tuple(vertex_order), tuple(sorted(set(masks), key=lex_key)))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(sorted(popcount(m) for m in self.members))

    def sets(self) -> list[tuple]:
        return [tuple(self.vertex_order[i] for i in bits(m)) for m in self.members]

    def within(self, cx: Complex) -> bool:
        """Whether every member is a face of ``cx`` (matched by label)."""
        pos = {}
        for i, v in enumerate(self.vertex_order):
            if v in cx.index:
                pos[i] = cx.index[v]
        for m in self.members:
            if any(i not in pos for i in bits(m)):
                return False
            if mask_from_indices(pos[i] for i in bits(m)) not in cx.faces:
                return False
        return True


def is_t_intersecting(family: Family | Iterable[int], t: int) -> tuple[bool, tuple[int, int] | None]:
    """Pairwise ``|A & B| >= t``; returns the first failing pair in lex order."""
    if t < 1:
        raise ValueError("t must be at least 1")
    members = list(family.members if isinstance(family, Family) else sorted(set(family), key=lex_key))
    for a in range(len(members)):
        x = members[a]
        for b in range(a + 1, len(members)):
            if popcount(x & members[b]) < t:
                return False, (x, members[b])
    return True, None
