"""Searching for admissible Morse matchings with few critical points.

Condition (2) of admissibility depends on the Morse function, but for any
acyclic matching :func:`~posetmorse.morse.synthesize_function` produces a
function that satisfies it. The function-free searches therefore only need
acyclicity and condition (1).
"""
from __future__ import annotations

import random
import time
from collections import deque
from dataclasses import dataclass, field

from .core import Poset
from .errors import TooLarge
from .morse import (
    STRICT,
    Matching,
    MorseFunction,
    _domain,
    _domain_covers,
    condition_one,
    condition_one_passes,
    synthesize_function,
    validate_matching,
    value_between,
)
from .simplicial import DEFAULT_BUDGET

EXHAUSTIVE_LIMIT = 12


class _Hasse:
    """H_M with incremental edge flips and a cycle test for a candidate flip."""

    def __init__(self, X: Poset, domain: list[str]):
        self.down = {x: set() for x in domain}
        self.up = {x: set() for x in domain}
        for a, b in _domain_covers(X, domain):
            self.down[b].add(a)
        self.used: set[str] = set()

    def creates_cycle(self, x: str, y: str) -> bool:
        # flipping y->x into x->y closes a cycle iff y reaches x some other way
        seen = {y}
        queue = deque([y])
        while queue:
            a = queue.popleft()
            for b in self.down[a] | self.up[a]:
                if a == y and b == x:
                    continue
                if b == x:
                    return True
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        return False

    def add(self, x: str, y: str):
        self.down[y].discard(x)
        self.up[x].add(y)
        self.used.update((x, y))

    def remove(self, x: str, y: str):
        self.up[x].discard(y)
        self.down[y].add(x)
        self.used.difference_update((x, y))

    def can_add(self, x: str, y: str) -> bool:
        return x not in self.used and y not in self.used and not self.creates_cycle(x, y)


@dataclass
class SearchResult:
    matching: Matching
    critical_count: int
    function: MorseFunction
    examined: int
    seconds: float
    mode: str
    certified: bool = False
    extra: dict = field(default_factory=dict)

    def to_dict(self, X: Poset) -> dict:
        return {
            "matching": [list(e) for e in self.matching.sorted(X)],
            "critical_count": self.critical_count,
            "function": {x: str(self.function[x]) for x in self.function.values},
            "examined": self.examined,
            "seconds": round(self.seconds, 3),
            "mode": self.mode,
            "certified_minimum": self.certified,
            **self.extra,
        }


def _ordered_edges(X: Poset, edges, order, f: MorseFunction | None = None, seed: int = 0):
    edges = list(edges)
    if order == "lex":
        return edges
    if order == "by_f":
        if f is None:
            raise ValueError("the by_f order needs a Morse function")
        return sorted(edges, key=lambda e: (f[e[0]], f[e[1]]))
    if order == "random":
        rng = random.Random(seed)
        rng.shuffle(edges)
        return edges
    raise ValueError(f"unknown edge order {order!r}")


def _candidates(X: Poset, domain, mode: str, budget: int) -> list[tuple[str, str]]:
    return [e for e in _domain_covers(X, domain) if condition_one_passes(condition_one(X, *e, budget), mode)]


def greedy_matching(
    X: Poset,
    f: MorseFunction,
    order: str = "lex",
    seed: int = 0,
    mode: str = STRICT,
    budget: int = DEFAULT_BUDGET,
    relative=None,
) -> Matching:
    """Add cover edges in the given order whenever the result stays admissible for ``f``."""
    domain = _domain(X, relative)
    H = _Hasse(X, domain)
    edges = []
    for x, y in _ordered_edges(X, _candidates(X, domain, mode, budget), order, f, seed):
        if value_between(f, domain, x, y) is not None:
            continue
        if H.can_add(x, y):
            H.add(x, y)
            edges.append((x, y))
    return Matching.of(edges)


def _greedy_free(X, H: _Hasse, edges):
    added = []
    for x, y in edges:
        if H.can_add(x, y):
            H.add(x, y)
            added.append((x, y))
    return added


def _improve(X, H: _Hasse, matching: list, candidates) -> tuple[list, int]:
    """Drop one edge at a time and keep the change if two edges fit in its place."""
    tries = 0
    improved = True
    while improved:
        improved = False
        for e in list(matching):
            tries += 1
            H.remove(*e)
            trial = [c for c in candidates if c != e]
            added = _greedy_free(X, H, trial)
            if len(added) >= 2:
                matching = [m for m in matching if m != e] + added
                improved = True
                break
            for a in added:
                H.remove(*a)
            H.add(*e)
    return matching, tries


def _lex_key(X: Poset, edges) -> list:
    return sorted((X.index[a], X.index[b]) for a, b in edges)


def minimize_critical(
    X: Poset,
    restarts: int = 32,
    seed: int = 0,
    mode: str = STRICT,
    budget: int = DEFAULT_BUDGET,
    relative=None,
    time_limit: float | None = None,
) -> SearchResult:
    """Multi-restart randomized greedy plus local improvement.

    Restart 0 scans edges in display order; the others use shuffles seeded
    from ``seed``. The best matching (ties broken lexicographically) gets a
    synthesized Morse function and is re-validated.
    """
    start = time.perf_counter()
    domain = _domain(X, relative)
    cands = _candidates(X, domain, mode, budget)
    rng = random.Random(seed)
    best = None
    examined = 0
    for r in range(max(1, restarts)):
        order = list(cands)
        if r:
            rng.shuffle(order)
        H = _Hasse(X, domain)
        matching = _greedy_free(X, H, order)
        matching, tries = _improve(X, H, matching, order)
        examined += 1 + tries
        key = (-len(matching), _lex_key(X, matching))
        if best is None or key < best[0]:
            best = (key, matching)
        if time_limit is not None and time.perf_counter() - start > time_limit:
            break
    M = Matching.of(best[1])
    return _finish(X, M, domain, examined, start, mode, budget, relative, certified=False)


def _finish(X, M, domain, examined, start, mode, budget, relative, certified):
    f = synthesize_function(X, M, relative)
    report = validate_matching(X, f, M, mode, relative, budget)
    if not report.accepted:
        raise AssertionError("search produced a rejected matching: " + "; ".join(report.reasons))
    return SearchResult(
        matching=M,
        critical_count=len(domain) - 2 * len(M),
        function=f,
        examined=examined,
        seconds=time.perf_counter() - start,
        mode=mode,
        certified=certified,
    )


def exhaustive_min(
    X: Poset,
    limit: int = EXHAUSTIVE_LIMIT,
    mode: str = STRICT,
    budget: int = DEFAULT_BUDGET,
    relative=None,
) -> SearchResult:
    """Certified minimum number of critical points over all admissible matchings.

    Branch and bound over the cover edges that pass condition (1); acyclicity
    is checked incrementally and condition (2) is discharged by synthesis.
    """
    domain = _domain(X, relative)
    if len(domain) > limit:
        raise TooLarge(f"{len(domain)} elements exceed the exhaustive limit of {limit}")
    start = time.perf_counter()
    cands = _candidates(X, domain, mode, budget)
    H = _Hasse(X, domain)
    best: list = []
    current: list = []
    examined = 0

    def bound(i: int) -> int:
        free = {v for e in cands[i:] for v in e} - H.used
        return len(current) + len(free) // 2

    def visit(i: int):
        nonlocal best, examined
        examined += 1
        if len(current) > len(best):
            best = list(current)
        if i == len(cands) or bound(i) <= len(best):
            return
        x, y = cands[i]
        if H.can_add(x, y):
            H.add(x, y)
            current.append((x, y))
            visit(i + 1)
            current.pop()
            H.remove(x, y)
        visit(i + 1)

    visit(0)
    return _finish(X, Matching.of(best), domain, examined, start, mode, budget, relative, certified=True)
