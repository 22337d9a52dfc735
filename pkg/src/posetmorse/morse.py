"""Morse functions and Morse matchings on finite posets.

A Morse function strictly increases along every cover of the Hasse diagram.
A matching ``M`` on the Hasse diagram is a Morse matching when the digraph
``H_M`` (matched covers pointing up, every other cover pointing down) is
acyclic. A matched cover ``(x, y)`` is admissible for ``f`` when

1. the order complex of ``{z < y} - {x}`` is contractible, and
2. no element ``z`` has ``f(x) < f(z) < f(y)``.

Every function here takes an optional down-set ``relative``. When it is
given, the Morse data lives on the complement ``A^c`` and condition (2) only
quantifies over ``A^c``, while condition (1) still uses the descending link
in the whole poset.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .core import Poset, join
from .errors import (
    CyclicMatching,
    InvariantBroken,
    MissingValue,
    NotADownSet,
    NotAMatching,
    NotValidated,
    SynthesisFailed,
)
from .simplicial import DEFAULT_BUDGET, Triviality, TrivialityVerdict, order_complex, triviality_verdict

STRICT = "strict"
PERMISSIVE = "permissive"


@dataclass(frozen=True)
class MorseFunction:
    values: Mapping[str, Fraction]

    @classmethod
    def of(cls, values: Mapping[str, object]) -> "MorseFunction":
        return cls({k: Fraction(v) for k, v in values.items()})

    def __getitem__(self, x: str) -> Fraction:
        try:
            return self.values[x]
        except KeyError:
            raise MissingValue(f"no Morse value for {x!r}") from None

    def __hash__(self):
        return hash(frozenset(self.values.items()))

    def levels(self, domain: Iterable[str] | None = None) -> list[Fraction]:
        keys = self.values if domain is None else domain
        return sorted({self[x] for x in keys})

    def shifted(self, c) -> "MorseFunction":
        c = Fraction(c)
        return MorseFunction({k: v + c for k, v in self.values.items()})


@dataclass(frozen=True)
class Matching:
    edges: frozenset = frozenset()

    @classmethod
    def of(cls, edges: Iterable[tuple[str, str]]) -> "Matching":
        return cls(frozenset((x, y) for x, y in edges))

    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    @property
    def partner(self) -> dict[str, str]:
        out = {}
        for x, y in self.edges:
            out[x] = y
            out[y] = x
        return out

    def matched(self) -> set[str]:
        return {v for e in self.edges for v in e}

    def sorted(self, X: Poset) -> list[tuple[str, str]]:
        return sorted(self.edges, key=lambda e: (X.index[e[0]], X.index[e[1]]))


def _domain(X: Poset, relative) -> list[str]:
    if relative is None:
        return list(X.elements)
    A = X.subset(relative)
    if not X.is_down_set(A):
        raise NotADownSet("the marked subset is not a down-set")
    return [x for x in X.elements if x not in A]


def _domain_covers(X: Poset, domain: list[str]) -> list[tuple[str, str]]:
    inside = set(domain)
    return [(a, b) for a, b in X.sorted_covers() if a in inside and b in inside]


# -- functions --------------------------------------------------------------

def height_function(X: Poset) -> MorseFunction:
    return MorseFunction({x: Fraction(X.height_of(x)) for x in X.elements})


def validate_function(X: Poset, f: MorseFunction, relative=None) -> tuple[bool, tuple[str, str] | None]:
    """Check strict increase along covers; returns the first violating cover."""
    domain = _domain(X, relative)
    for x in domain:
        f[x]
    for a, b in _domain_covers(X, domain):
        if not f[a] < f[b]:
            return False, (a, b)
    return True, None


def functions_equivalent(X: Poset, f: MorseFunction, g: MorseFunction, relative=None) -> bool:
    domain = _domain(X, relative)
    fv = [f[x] for x in domain]
    gv = [g[x] for x in domain]
    n = len(domain)
    return all((fv[i] < fv[j]) == (gv[i] < gv[j]) for i in range(n) for j in range(n))


# -- matchings and H_M ------------------------------------------------------

def check_matching(X: Poset, M: Matching, relative=None) -> None:
    domain = set(_domain(X, relative))
    seen: dict[str, tuple] = {}
    for x, y in sorted(M.edges, key=lambda e: (X.index.get(e[0], -1), X.index.get(e[1], -1), e)):
        for v in (x, y):
            if v not in X:
                raise NotAMatching(f"edge ({x}, {y}) uses unknown element {v!r}")
            if v not in domain:
                raise NotAMatching(f"edge ({x}, {y}) leaves the complement of the down-set")
        if not X.is_cover(x, y):
            raise NotAMatching(f"({x}, {y}) is not a cover relation")
        for v in (x, y):
            if v in seen:
                raise NotAMatching(f"{v!r} is incident to both {seen[v]} and ({x}, {y})")
            seen[v] = (x, y)


def reversed_digraph(X: Poset, M: Matching, relative=None) -> dict[str, list[str]]:
    """Adjacency lists of H_M: matched covers upward, all other covers downward."""
    check_matching(X, M, relative)
    domain = _domain(X, relative)
    adj: dict[str, list[str]] = {x: [] for x in domain}
    for a, b in _domain_covers(X, domain):
        if (a, b) in M.edges:
            adj[a].append(b)
        else:
            adj[b].append(a)
    return adj


def _find_cycle(adj: dict[str, list[str]], order: list[str]) -> list[str] | None:
    color = dict.fromkeys(adj, 0)
    for root in order:
        if color[root]:
            continue
        stack = [(root, iter(adj[root]))]
        path = [root]
        color[root] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[node] = 2
                stack.pop()
                path.pop()
            elif color[nxt] == 1:
                return path[path.index(nxt):] + [nxt]
            elif color[nxt] == 0:
                color[nxt] = 1
                stack.append((nxt, iter(adj[nxt])))
                path.append(nxt)
    return None


def is_acyclic(X: Poset, M: Matching, relative=None) -> tuple[bool, list[str] | None]:
    """Decide acyclicity of H_M; on failure also return a directed cycle."""
    adj = reversed_digraph(X, M, relative)
    cycle = _find_cycle(adj, _domain(X, relative))
    return cycle is None, cycle


# -- admissibility ----------------------------------------------------------

@lru_cache(maxsize=65536)
def condition_one(X: Poset, x: str, y: str, budget: int = DEFAULT_BUDGET) -> TrivialityVerdict:
    """Triviality verdict for the order complex of the descending link of y minus x."""
    link = X.descending_link(y) - {x}
    return triviality_verdict(order_complex(X, link), budget)


def value_between(f: MorseFunction, domain: Iterable[str], x: str, y: str) -> str | None:
    lo, hi = f[x], f[y]
    for z in domain:
        if lo < f[z] < hi:
            return z
    return None


def edge_admissible(
    X: Poset, f: MorseFunction, edge: tuple[str, str], budget: int = DEFAULT_BUDGET, relative=None
) -> tuple[TrivialityVerdict, bool]:
    x, y = edge
    if not X.is_cover(x, y):
        raise NotAMatching(f"({x}, {y}) is not a cover relation")
    domain = _domain(X, relative)
    return condition_one(X, x, y, budget), value_between(f, domain, x, y) is None


def condition_one_passes(verdict: TrivialityVerdict, mode: str) -> bool:
    if verdict.status is Triviality.COLLAPSIBLE:
        return True
    return mode == PERMISSIVE and verdict.status is Triviality.UNRESOLVED


@dataclass
class EdgeVerdict:
    edge: tuple[str, str]
    condition1: TrivialityVerdict
    condition2: bool
    between: str | None = None

    def passes(self, mode: str) -> bool:
        return self.condition2 and condition_one_passes(self.condition1, mode)

    def to_dict(self, mode: str) -> dict:
        out = {
            "edge": list(self.edge),
            "condition1": self.condition1.to_dict(),
            "condition2": self.condition2,
            "admissible": self.passes(mode),
        }
        if self.between is not None:
            out["between"] = self.between
        return out


@dataclass
class AdmissibilityReport:
    mode: str
    acyclic: bool
    cycle: list[str] | None
    edges: list[EdgeVerdict]
    critical: list[str]
    function_ok: bool = True
    function_violation: tuple[str, str] | None = None
    relative: list[str] | None = None
    reasons: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def accepted(self) -> bool:
        return not self.reasons

    def to_dict(self) -> dict:
        out = {
            "accepted": self.accepted,
            "mode": self.mode,
            "acyclic": self.acyclic,
            "function_valid": self.function_ok,
            "critical": list(self.critical),
            "edges": [e.to_dict(self.mode) for e in self.edges],
            "reasons": list(self.reasons),
            "warnings": list(self.warnings),
        }
        if self.cycle:
            out["cycle"] = list(self.cycle)
        if self.function_violation:
            out["function_violation"] = list(self.function_violation)
        if self.relative is not None:
            out["relative"] = list(self.relative)
        return out


def validate_matching(
    X: Poset,
    f: MorseFunction,
    M: Matching,
    mode: str = STRICT,
    relative=None,
    budget: int = DEFAULT_BUDGET,
) -> AdmissibilityReport:
    if mode not in (STRICT, PERMISSIVE):
        raise ValueError(f"unknown mode {mode!r}")
    domain = _domain(X, relative)
    check_matching(X, M, relative)
    ok, violation = validate_function(X, f, relative)
    acyclic, cycle = is_acyclic(X, M, relative)
    matched = M.matched()
    report = AdmissibilityReport(
        mode=mode,
        acyclic=acyclic,
        cycle=cycle,
        edges=[],
        critical=[x for x in domain if x not in matched],
        function_ok=ok,
        function_violation=violation,
        relative=None if relative is None else X.sorted(relative),
    )
    if not ok:
        report.reasons.append(f"not a Morse function: f({violation[0]}) >= f({violation[1]}) on a cover")
    if not acyclic:
        report.reasons.append("H_M has a directed cycle: " + " -> ".join(cycle))
    for x, y in M.sorted(X):
        c1 = condition_one(X, x, y, budget)
        z = value_between(f, domain, x, y)
        ev = EdgeVerdict((x, y), c1, z is None, z)
        report.edges.append(ev)
        if c1.status is Triviality.NOT_TRIVIAL:
            report.reasons.append(f"edge ({x}, {y}): descending link of {y} minus {x} has non-zero homology")
        elif c1.status is Triviality.UNRESOLVED:
            if mode == STRICT:
                report.reasons.append(f"edge ({x}, {y}): contractibility not certified (use permissive mode)")
            else:
                report.warnings.append(f"edge ({x}, {y}): homology-trivial but not certified collapsible")
        if z is not None:
            report.reasons.append(f"edge ({x}, {y}): f({z}) lies strictly between f({x}) and f({y})")
    return report


# -- Lemma: no value strictly inside a directed path ------------------------

def check_path_property(X: Poset, f: MorseFunction, M: Matching, relative=None):
    """Verify that no directed path u ~> v in H_M admits z with f(u) < f(z) < f(v).

    Returns ``(True, None)`` or ``(False, (path, z))``.
    """
    adj = reversed_digraph(X, M, relative)
    domain = _domain(X, relative)
    values = sorted({f[z]: z for z in domain}.items())
    for u in domain:
        parent = {u: None}
        queue = deque([u])
        while queue:
            a = queue.popleft()
            for b in adj[a]:
                if b not in parent:
                    parent[b] = a
                    queue.append(b)
        for v in parent:
            if v == u or not f[u] < f[v]:
                continue
            z = next((name for val, name in values if f[u] < val < f[v]), None)
            if z is not None:
                path = [v]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return False, (path[::-1], z)
    return True, None


# -- synthesis --------------------------------------------------------------

def synthesize_function(X: Poset, M: Matching, relative=None) -> MorseFunction:
    """Build a Morse function for which every matched cover satisfies condition (2).

    Matched pairs are contracted, the contracted Hasse diagram is levelled by
    longest paths from below, and a pair at level k gets values k and k + 1/2.
    """
    acyclic, cycle = is_acyclic(X, M, relative)
    if not acyclic:
        raise CyclicMatching("H_M has a directed cycle: " + " -> ".join(cycle))
    domain = _domain(X, relative)
    node = {x: x for x in domain}
    for x, y in M.edges:
        node[y] = x
    succ: dict[str, set[str]] = {node[x]: set() for x in domain}
    indeg = dict.fromkeys(succ, 0)
    for a, b in _domain_covers(X, domain):
        na, nb = node[a], node[b]
        if na != nb and nb not in succ[na]:
            succ[na].add(nb)
            indeg[nb] += 1
    level = dict.fromkeys(succ, 0)
    queue = deque(n for n in X.sorted(succ) if indeg[n] == 0)
    done = 0
    while queue:
        n = queue.popleft()
        done += 1
        for m in X.sorted(succ[n]):
            level[m] = max(level[m], level[n] + 1)
            indeg[m] -= 1
            if indeg[m] == 0:
                queue.append(m)
    if done < len(succ):
        raise SynthesisFailed("contracted Hasse diagram is cyclic although H_M is acyclic")
    values = {}
    for x in domain:
        values[x] = Fraction(level[node[x]]) + (Fraction(1, 2) if node[x] != x else 0)
    f = MorseFunction(values)
    ok, bad = validate_function(X, f, relative)
    if not ok:
        raise SynthesisFailed(f"synthesized values violate the cover {bad}")
    for x, y in M.edges:
        if value_between(f, domain, x, y) is not None:
            raise SynthesisFailed(f"synthesized values break condition (2) on ({x}, {y})")
    return f


# -- joins ------------------------------------------------------------------

def induced_join_morse(
    X: Poset,
    f: MorseFunction,
    M: Matching,
    Y: Poset,
    g: MorseFunction,
    N: Matching,
    mode: str = STRICT,
    budget: int = DEFAULT_BUDGET,
) -> tuple[Poset, MorseFunction, Matching]:
    """Morse data on the join induced by admissible data on both factors.

    ``g`` is shifted so that it exceeds every value of ``f``; the result is
    re-validated (permissive at least) rather than trusted.
    """
    for P, h, K, side in ((X, f, M, "left"), (Y, g, N, "right")):
        rep = validate_matching(P, h, K, mode, budget=budget)
        if not rep.accepted:
            raise NotValidated(f"{side} Morse data rejected: " + "; ".join(rep.reasons))
    J = join(X, Y)
    rename_x = rename_y = str
    if J.elements[: len(X)] != X.elements:
        rename_x = lambda v: "L." + v  # noqa: E731
        rename_y = lambda v: "R." + v  # noqa: E731
    shift = max(f.values.values()) - min(g.values.values()) + 1 if len(X) and len(Y) else 0
    values = {rename_x(k): v for k, v in f.values.items()}
    values.update({rename_y(k): v + shift for k, v in g.values.items()})
    edges = [(rename_x(a), rename_x(b)) for a, b in M.edges]
    edges += [(rename_y(a), rename_y(b)) for a, b in N.edges]
    fg, MN = MorseFunction(values), Matching.of(edges)
    rep = validate_matching(J, fg, MN, PERMISSIVE, budget=budget)
    if not rep.accepted:
        raise InvariantBroken("induced Morse data on the join failed validation: " + "; ".join(rep.reasons))
    return J, fg, MN
