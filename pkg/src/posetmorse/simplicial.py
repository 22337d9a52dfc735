"""Simplicial complexes, order complexes and exact integer homology.

Contractibility is undecidable in general, so :func:`triviality_verdict`
combines a homology refutation with a collapse certificate and otherwise
reports the question as unresolved.
"""
from __future__ import annotations

import enum
import heapq
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .core import Poset, _bits
from .errors import ApexCollision, DimensionOutOfRange
from .smith import invariant_factors

DEFAULT_BUDGET = 100_000


class SimplicialComplex:
    """A finite abstract simplicial complex stored as the full set of simplices.

    Each simplex is a tuple of vertex names sorted by the position of the
    vertex in ``vertices``. The empty complex (no vertices) has dimension -1.
    """

    __slots__ = ("vertices", "index", "simplices", "_by_dim")

    def __init__(self, vertices: Sequence[str], simplices: Iterable[Iterable[str]] = (), close: bool = True):
        self.vertices = tuple(vertices)
        self.index = {v: i for i, v in enumerate(self.vertices)}
        if len(self.index) != len(self.vertices):
            raise ValueError("duplicate vertex")
        out = set((v,) for v in self.vertices)
        for s in simplices:
            s = tuple(sorted(set(s), key=self.index.__getitem__))
            if not s:
                continue
            if close:
                for k in range(1, len(s) + 1):
                    out.update(combinations(s, k))
            else:
                out.add(s)
        self.simplices = frozenset(out)
        self._by_dim = None

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return set(self.vertices) == set(other.vertices) and self.simplices == other.simplices

    def __hash__(self):
        return hash(self.simplices)

    def __len__(self):
        return len(self.simplices)

    def __repr__(self):
        counts = [len(self.by_dim(d)) for d in range(self.dimension + 1)]
        return f"SimplicialComplex(dim={self.dimension}, f-vector={counts})"

    def key(self, simplex) -> tuple[int, ...]:
        return tuple(self.index[v] for v in simplex)

    @property
    def dimension(self) -> int:
        return max((len(s) for s in self.simplices), default=0) - 1

    def by_dim(self, d: int) -> list[tuple[str, ...]]:
        """The d-simplices, sorted lexicographically by vertex position."""
        if self._by_dim is None:
            groups: dict[int, list] = {}
            for s in self.simplices:
                groups.setdefault(len(s) - 1, []).append(s)
            self._by_dim = {k: sorted(v, key=self.key) for k, v in groups.items()}
        return self._by_dim.get(d, [])

    def f_vector(self) -> list[int]:
        return [len(self.by_dim(d)) for d in range(self.dimension + 1)]

    def facets(self) -> list[tuple[str, ...]]:
        cofaced = set()
        for s in self.simplices:
            if len(s) > 1:
                cofaced.update(combinations(s, len(s) - 1))
        return sorted((s for s in self.simplices if s not in cofaced), key=lambda s: (len(s), self.key(s)))

    def is_closed(self) -> bool:
        return all(f in self.simplices for s in self.simplices if len(s) > 1 for f in combinations(s, len(s) - 1))


# -- constructions ----------------------------------------------------------

def order_complex(X: Poset, subset: Iterable[str] | None = None) -> SimplicialComplex:
    """Complex of non-empty chains of ``X`` (or of the subposet on ``subset``)."""
    if subset is not None:
        X = X.induced_subposet(subset)
    el = X.elements
    above = X._above
    chains: list[tuple[str, ...]] = []

    def extend(chain: list[int], allowed: int):
        for j in _bits(allowed):
            chain.append(j)
            chains.append(tuple(el[i] for i in sorted(chain)))
            extend(chain, allowed & above[j])
            chain.pop()

    extend([], (1 << len(el)) - 1)
    return SimplicialComplex(el, chains, close=False)


def cone(apex: str, L: SimplicialComplex) -> SimplicialComplex:
    if apex in L.index:
        raise ApexCollision(f"apex {apex!r} is already a vertex of the base")
    simplices = list(L.simplices) + [s + (apex,) for s in L.simplices]
    return SimplicialComplex(L.vertices + (apex,), simplices, close=False)


def simplicial_join(K: SimplicialComplex, T: SimplicialComplex) -> SimplicialComplex:
    if set(K.vertices) & set(T.vertices):
        raise ValueError("join requires disjoint vertex sets")
    simplices = list(K.simplices) + list(T.simplices)
    simplices += [s + t for s in K.simplices for t in T.simplices]
    return SimplicialComplex(K.vertices + T.vertices, simplices, close=False)


def simplex_name(simplex: Sequence[str]) -> str:
    return "{" + ",".join(simplex) + "}"


def face_poset(L: SimplicialComplex) -> Poset:
    """Poset of simplices of ``L`` ordered by proper inclusion."""
    ordered = sorted(L.simplices, key=lambda s: (len(s), L.key(s)))
    pos = {s: i for i, s in enumerate(ordered)}
    below = []
    for s in ordered:
        m = 0
        for k in range(1, len(s)):
            for f in combinations(s, k):
                m |= 1 << pos[f]
        below.append(m)
    return Poset([simplex_name(s) for s in ordered], below)


# -- homology ---------------------------------------------------------------

def euler_characteristic(L: SimplicialComplex) -> int:
    return sum((-1) ** (len(s) - 1) for s in L.simplices)


def _boundary_columns(L: SimplicialComplex, d: int) -> dict[int, dict[int, int]]:
    """Sparse boundary map from d-chains to (d-1)-chains; d = 0 is the augmentation."""
    if d == 0:
        return {j: {0: 1} for j in range(len(L.by_dim(0)))}
    faces = {s: i for i, s in enumerate(L.by_dim(d - 1))}
    cols = {}
    for j, s in enumerate(L.by_dim(d)):
        cols[j] = {faces[s[:i] + s[i + 1:]]: (-1) ** i for i in range(len(s))}
    return cols


def boundary_matrix(L: SimplicialComplex, d: int) -> np.ndarray:
    """Dense matrix of the boundary map in degree ``d``.

    Rows and columns follow :meth:`SimplicialComplex.by_dim`; in degree 0 the
    map is the augmentation onto a single row.
    """
    if d < 0 or d > L.dimension:
        raise DimensionOutOfRange(f"degree {d} outside 0..{L.dimension}")
    nrows = 1 if d == 0 else len(L.by_dim(d - 1))
    M = np.zeros((nrows, len(L.by_dim(d))), dtype=np.int64)
    for j, entries in _boundary_columns(L, d).items():
        for i, v in entries.items():
            M[i, j] = v
    return M


@dataclass(frozen=True)
class HomologySummary:
    """Reduced integral homology, kept sparse: only non-zero groups are stored.

    ``groups`` holds ``(dim, betti, torsion)`` triples sorted by dimension.
    Degree -1 appears only for the empty complex.
    """

    groups: tuple[tuple[int, int, tuple[int, ...]], ...] = ()

    @classmethod
    def from_dict(cls, betti: dict[int, int], torsion: dict[int, Sequence[int]] | None = None):
        torsion = torsion or {}
        dims = sorted(set(betti) | set(torsion))
        rows = []
        for d in dims:
            b, t = betti.get(d, 0), tuple(sorted(torsion.get(d, ())))
            if b or t:
                rows.append((d, b, t))
        return cls(tuple(rows))

    @classmethod
    def sphere(cls, n: int) -> "HomologySummary":
        return cls(((n, 1, ()),))

    def betti(self, d: int) -> int:
        return next((b for dim, b, _ in self.groups if dim == d), 0)

    def torsion(self, d: int) -> tuple[int, ...]:
        return next((t for dim, _, t in self.groups if dim == d), ())

    def is_trivial(self) -> bool:
        return not self.groups

    def first_nonzero(self):
        return self.groups[0] if self.groups else None

    def shifted(self, k: int) -> "HomologySummary":
        return HomologySummary(tuple((d + k, b, t) for d, b, t in self.groups))

    def rows(self, top: int) -> list[dict]:
        """JSON rows for degrees 0..top, plus any non-zero degree outside that range."""
        dims = set(range(0, top + 1)) | {d for d, _, _ in self.groups}
        return [{"dim": d, "betti": self.betti(d), "torsion": list(self.torsion(d))} for d in sorted(dims)]

    def __str__(self):
        if not self.groups:
            return "0"
        parts = []
        for d, b, t in self.groups:
            terms = (["Z^%d" % b if b > 1 else "Z"] if b else []) + [f"Z/{k}" for k in t]
            parts.append(f"H{d}=" + "+".join(terms))
        return ", ".join(parts)


def reduced_homology(L: SimplicialComplex) -> HomologySummary:
    top = L.dimension
    counts = {d: len(L.by_dim(d)) for d in range(top + 1)}
    counts[-1] = 1
    rank = {-1: 0, top + 1: 0}
    torsion = {}
    for d in range(0, top + 1):
        r, t = invariant_factors(_boundary_columns(L, d))
        rank[d] = r
        torsion[d - 1] = t
    betti = {d: counts[d] - rank[d] - rank[d + 1] for d in range(-1, top + 1)}
    return HomologySummary.from_dict(betti, torsion)


def betti_numbers(L: SimplicialComplex) -> list[int]:
    """Unreduced Betti numbers in degrees 0..dim."""
    h = reduced_homology(L)
    out = [h.betti(d) for d in range(L.dimension + 1)]
    if out:
        out[0] += 1
    return out


# -- collapses --------------------------------------------------------------

class _CollapseState:
    """Index-based complex with codimension-one coface counts."""

    def __init__(self, L: SimplicialComplex):
        self.simplices = {L.key(s) for s in L.simplices}
        self.cof: dict[tuple, set] = {s: set() for s in self.simplices}
        for s in self.simplices:
            if len(s) > 1:
                for f in _faces(s):
                    self.cof[f].add(s)

    def free_partner(self, s):
        if s not in self.simplices:
            return None
        c = self.cof[s]
        if len(c) != 1:
            return None
        (t,) = c
        return t if not self.cof[t] else None

    def free_pairs(self):
        out = []
        for s in self.simplices:
            t = self.free_partner(s)
            if t is not None:
                out.append((s, t))
        out.sort()
        return out

    def collapse(self, s, t):
        for f in _faces(t):
            self.cof[f].discard(t)
        for f in _faces(s):
            self.cof[f].discard(s)
        self.simplices.discard(s)
        self.simplices.discard(t)
        del self.cof[s], self.cof[t]

    def undo(self, s, t):
        self.simplices.add(s)
        self.simplices.add(t)
        self.cof[s] = {t}
        self.cof[t] = set()
        for f in _faces(t):
            if f != s:
                self.cof[f].add(t)
        for f in _faces(s):
            self.cof[f].add(s)


def _faces(s: tuple) -> list[tuple]:
    if len(s) == 1:
        return []
    return [s[:i] + s[i + 1:] for i in range(len(s))]


def _neighbourhood(s, t):
    near = set(_faces(t)) | set(_faces(s))
    for f in list(near):
        near.update(_faces(f))
    return near


def greedy_collapse(L: SimplicialComplex) -> SimplicialComplex:
    """Collapse free pairs, always taking the lexicographically smallest one."""
    st = _CollapseState(L)
    heap = st.free_pairs()
    heapq.heapify(heap)
    while heap:
        s, t = heapq.heappop(heap)
        if st.free_partner(s) != t:
            continue
        st.collapse(s, t)
        for f in _neighbourhood(s, t):
            p = st.free_partner(f)
            if p is not None:
                heapq.heappush(heap, (f, p))
    alive = {i for s in st.simplices for i in s}
    verts = [v for i, v in enumerate(L.vertices) if i in alive]
    return SimplicialComplex(verts, [tuple(L.vertices[i] for i in s) for s in st.simplices], close=False)


def collapse_search(L: SimplicialComplex, budget: int = DEFAULT_BUDGET) -> tuple[bool | None, int]:
    """Depth-first search for a collapse sequence down to a single vertex.

    Returns ``(True, steps)`` when one is found, ``(False, steps)`` when the
    whole search space was exhausted and ``(None, steps)`` when the budget of
    collapse steps ran out first.
    """
    if len(L.simplices) == 1:
        return True, 0
    st = _CollapseState(L)
    dead: set[frozenset] = set()
    steps = 0

    def dfs() -> bool | None:
        nonlocal steps
        if len(st.simplices) == 1:
            return True
        key = frozenset(st.simplices)
        if key in dead:
            return False
        exhausted = True
        for s, t in st.free_pairs():
            if steps >= budget:
                return None
            steps += 1
            st.collapse(s, t)
            res = dfs()
            st.undo(s, t)
            if res:
                return True
            if res is None:
                exhausted = False
                break
        if exhausted:
            dead.add(key)
            return False
        return None

    return dfs(), steps


class Triviality(str, enum.Enum):
    COLLAPSIBLE = "CollapsibleCertified"
    UNRESOLVED = "HomologyTrivialUnresolved"
    NOT_TRIVIAL = "NotTrivial"


@dataclass(frozen=True)
class TrivialityVerdict:
    status: Triviality
    witness: tuple | None = None
    steps: int = 0

    @property
    def certified(self) -> bool:
        return self.status is Triviality.COLLAPSIBLE

    def to_dict(self) -> dict:
        out = {"status": self.status.value}
        if self.witness is not None:
            d, b, t = self.witness
            out["witness"] = {"dim": d, "betti": b, "torsion": list(t)}
        return out


def triviality_verdict(L: SimplicialComplex, budget: int = DEFAULT_BUDGET) -> TrivialityVerdict:
    if budget <= 0:
        raise ValueError("budget must be positive")
    h = reduced_homology(L)
    if not h.is_trivial():
        return TrivialityVerdict(Triviality.NOT_TRIVIAL, h.first_nonzero())
    if len(greedy_collapse(L).simplices) == 1:
        return TrivialityVerdict(Triviality.COLLAPSIBLE)
    found, steps = collapse_search(L, budget)
    if found:
        return TrivialityVerdict(Triviality.COLLAPSIBLE, steps=steps)
    return TrivialityVerdict(Triviality.UNRESOLVED, steps=steps)


def sphere_check(L: SimplicialComplex, n: int) -> bool:
    """Whether ``L`` has the reduced homology of the n-sphere (n = -1: empty).

    A necessary condition only; homology spheres pass too.
    """
    if n < -1:
        raise ValueError("n must be at least -1")
    return reduced_homology(L) == HomologySummary.sphere(n)


def h_regular_table(X: Poset) -> list[tuple[str, int, HomologySummary, bool]]:
    rows = []
    for x in X.elements:
        h = reduced_homology(order_complex(X, X.descending_link(x)))
        n = X.height_of(x) - 1
        rows.append((x, n, h, h == HomologySummary.sphere(n)))
    return rows


def h_regular_check(X: Poset) -> bool:
    return all(ok for *_, ok in h_regular_table(X))
