"""Finite posets and the order-theoretic operations used by the Morse machinery.

A :class:`Poset` stores its strict order as per-element bitmasks, so closure,
reduction and down-set queries are cheap integer operations. Posets are
immutable; every operation returns a new object.
"""
from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

from .errors import CycleDetected, DuplicateElement, UnknownElement


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    """A finite strict partial order.

    ``elements`` fixes the display order; every set-valued result is reported
    in that order. ``relation`` is the transitively closed strict order and
    ``covers`` its transitive reduction (the edges of the Hasse diagram).
    """

    __slots__ = ("elements", "index", "_below", "__dict__")

    def __init__(self, elements: Sequence[str], below: Sequence[int]):
        self.elements = tuple(elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        self._below = tuple(below)

    # -- construction -----------------------------------------------------

    @classmethod
    def from_relations(cls, elements: Iterable[str], pairs: Iterable[tuple[str, str]] = ()) -> "Poset":
        elements = list(elements)
        index: dict[str, int] = {}
        for x in elements:
            if x in index:
                raise DuplicateElement(f"element {x!r} declared twice")
            index[x] = len(index)
        n = len(elements)
        up: list[set[int]] = [set() for _ in range(n)]
        for a, b in pairs:
            for e in (a, b):
                if e not in index:
                    raise UnknownElement(f"relation mentions undeclared element {e!r}")
            if a == b:
                raise CycleDetected(f"reflexive pair ({a}, {b})")
            up[index[a]].add(index[b])

        # Kahn's algorithm gives a linear extension or exposes a cycle.
        indeg = [0] * n
        for i in range(n):
            for j in up[i]:
                indeg[j] += 1
        order = [i for i in range(n) if indeg[i] == 0]
        k = 0
        while k < len(order):
            i = order[k]
            k += 1
            for j in sorted(up[i]):
                indeg[j] -= 1
                if indeg[j] == 0:
                    order.append(j)
        if len(order) < n:
            stuck = [elements[i] for i in range(n) if indeg[i] > 0]
            raise CycleDetected("order relation contains a cycle through " + ", ".join(stuck))

        below = [0] * n
        for i in order:
            for j in up[i]:
                below[j] |= below[i] | (1 << i)
        return cls(elements, below)

    # -- basic structure --------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.index

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and self.relation == other.relation

    def __hash__(self) -> int:
        return hash((self.elements, self.relation))

    def __repr__(self) -> str:
        return f"Poset({len(self)} elements, {len(self.covers)} covers)"

    def _idx(self, x: str) -> int:
        try:
            return self.index[x]
        except KeyError:
            raise UnknownElement(f"{x!r} is not an element of the poset") from None

    def _names(self, mask: int) -> frozenset:
        return frozenset(self.elements[i] for i in _bits(mask))

    def _mask(self, items: Iterable[str]) -> int:
        m = 0
        for x in items:
            m |= 1 << self._idx(x)
        return m

    def subset(self, items: Iterable[str]) -> frozenset:
        """Validate ``items`` as a subset of the poset."""
        items = frozenset(items)
        for x in items:
            self._idx(x)
        return items

    def sorted(self, items: Iterable[str]) -> list[str]:
        """Return ``items`` in display order."""
        return sorted(items, key=self._idx)

    def less(self, x: str, y: str) -> bool:
        return bool(self._below[self._idx(y)] >> self._idx(x) & 1)

    @cached_property
    def _above(self) -> tuple[int, ...]:
        above = [0] * len(self)
        for j, m in enumerate(self._below):
            for i in _bits(m):
                above[i] |= 1 << j
        return tuple(above)

    @cached_property
    def _cover_below(self) -> tuple[int, ...]:
        out = []
        for m in self._below:
            inner = 0
            for i in _bits(m):
                inner |= self._below[i]
            out.append(m & ~inner)
        return tuple(out)

    @cached_property
    def _cover_above(self) -> tuple[int, ...]:
        above = [0] * len(self)
        for j, m in enumerate(self._cover_below):
            for i in _bits(m):
                above[i] |= 1 << j
        return tuple(above)

    @cached_property
    def relation(self) -> frozenset:
        el = self.elements
        return frozenset((el[i], el[j]) for j, m in enumerate(self._below) for i in _bits(m))

    @cached_property
    def covers(self) -> frozenset:
        el = self.elements
        return frozenset((el[i], el[j]) for j, m in enumerate(self._cover_below) for i in _bits(m))

    def sorted_covers(self) -> list[tuple[str, str]]:
        """Cover pairs ordered by (lower, upper) display position."""
        return sorted(self.covers, key=lambda e: (self.index[e[0]], self.index[e[1]]))

    def is_cover(self, x: str, y: str) -> bool:
        return bool(self._cover_below[self._idx(y)] >> self._idx(x) & 1)

    def upper_covers(self, x: str) -> frozenset:
        return self._names(self._cover_above[self._idx(x)])

    def lower_covers(self, x: str) -> frozenset:
        return self._names(self._cover_below[self._idx(x)])

    @cached_property
    def linear_extension(self) -> tuple[str, ...]:
        """Elements sorted so that x < y implies x comes first."""
        key = [(bin(m).count("1"), i) for i, m in enumerate(self._below)]
        return tuple(self.elements[i] for _, i in sorted(key))

    def maximal(self) -> list[str]:
        return [x for x, m in zip(self.elements, self._above) if not m]

    def minimal(self) -> list[str]:
        return [x for x, m in zip(self.elements, self._below) if not m]

    # -- heights and down-sets --------------------------------------------

    @cached_property
    def _heights(self) -> dict[str, int]:
        h: dict[str, int] = {}
        for x in self.linear_extension:
            lower = self._cover_below[self.index[x]]
            h[x] = max((h[self.elements[i]] + 1 for i in _bits(lower)), default=0)
        return h

    def height(self) -> int:
        """Length of the longest chain; the empty poset has height -1."""
        return max(self._heights.values(), default=-1)

    def height_of(self, x: str) -> int:
        self._idx(x)
        return self._heights[x]

    def principal_down(self, x: str, strict: bool = False) -> frozenset:
        i = self._idx(x)
        m = self._below[i]
        if not strict:
            m |= 1 << i
        return self._names(m)

    def descending_link(self, x: str) -> frozenset:
        return self.principal_down(x, strict=True)

    def principal_up(self, x: str, strict: bool = False) -> frozenset:
        i = self._idx(x)
        m = self._above[i]
        if not strict:
            m |= 1 << i
        return self._names(m)

    def is_down_set(self, subset: Iterable[str]) -> bool:
        m = self._mask(subset)
        return all(self._below[i] & ~m == 0 for i in _bits(m))

    def is_up_set(self, subset: Iterable[str]) -> bool:
        m = self._mask(subset)
        return all(self._above[i] & ~m == 0 for i in _bits(m))

    # -- derived posets ---------------------------------------------------

    def induced_subposet(self, subset: Iterable[str]) -> "Poset":
        keep = self._mask(subset)
        kept = list(_bits(keep))
        new_index = {old: new for new, old in enumerate(kept)}
        below = []
        for old in kept:
            below.append(sum(1 << new_index[i] for i in _bits(self._below[old] & keep)))
        return Poset([self.elements[i] for i in kept], below)

    def remove(self, items: Iterable[str]) -> "Poset":
        drop = self.subset(items)
        return self.induced_subposet(x for x in self.elements if x not in drop)

    def opposite(self) -> "Poset":
        return Poset(self.elements, self._above)

    def relabel(self, mapping) -> "Poset":
        return Poset([mapping(x) for x in self.elements], self._below)

    def beat_points(self) -> list[tuple[str, str]]:
        """Up beat points (exactly one upper cover) and down beat points
        (exactly one lower cover), in display order."""
        out = []
        for i, x in enumerate(self.elements):
            if bin(self._cover_above[i]).count("1") == 1:
                out.append((x, "up"))
            if bin(self._cover_below[i]).count("1") == 1:
                out.append((x, "down"))
        return out


def from_relations(elements: Iterable[str], pairs: Iterable[tuple[str, str]] = ()) -> Poset:
    return Poset.from_relations(elements, pairs)


def join(X: Poset, Y: Poset) -> Poset:
    """Ordinal sum: every element of ``X`` lies below every element of ``Y``.

    If the identifier sets collide, the elements are renamed ``L.<id>`` and
    ``R.<id>`` respectively.
    """
    if set(X.elements) & set(Y.elements):
        X = X.relabel(lambda x: "L." + x)
        Y = Y.relabel(lambda y: "R." + y)
    n = len(X)
    all_x = (1 << n) - 1
    below = list(X._below) + [all_x | (m << n) for m in Y._below]
    return Poset(X.elements + Y.elements, below)


def chain(n: int, prefix: str = "c") -> Poset:
    names = [f"{prefix}{i}" for i in range(n)]
    return Poset.from_relations(names, zip(names, names[1:]))


def antichain(n: int, prefix: str = "p") -> Poset:
    return Poset.from_relations([f"{prefix}{i}" for i in range(n)])
