"""Filtration by critical levels, built from an admissible Morse matching.

Points are removed one at a time: the source of ``H_M`` with the largest
f-value goes first. A maximal source is critical and is removed alone.
Otherwise its unique upper cover is its matched partner, and the two are
removed together. Read backwards and grouped by f-levels, the removal order
gives subposets ``X_0 ⊆ X̃_0 ⊆ X_1 ⊆ … ⊆ X_r = X``. ``X_i`` glues cones over
the descending links of the critical points at level ``t_i``, and
``X_i ⊆ X̃_i`` does not change the homotopy type. :func:`verify_filtration`
checks these claims through homology and Euler characteristics.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core import Poset
from .errors import InvariantBroken
from .morse import Matching, MorseFunction, _domain
from .simplicial import (
    HomologySummary,
    betti_numbers,
    euler_characteristic,
    order_complex,
    reduced_homology,
)

CRITICAL = "critical"
PAIR = "pair"


@dataclass(frozen=True)
class Step:
    kind: str
    x: str
    y: str | None = None

    def elements(self) -> tuple[str, ...]:
        return (self.x,) if self.y is None else (self.x, self.y)

    def to_dict(self) -> dict:
        if self.kind == CRITICAL:
            return {"remove_critical": self.x}
        return {"remove_pair": [self.x, self.y]}


def removal_trace(X: Poset, f: MorseFunction, M: Matching, relative=None) -> list[Step]:
    """Removal order of the points of ``X`` (or of ``A^c``) for an accepted matching.

    Ties between sources of maximal f-value go to the earliest element in
    display order.
    """
    domain = _domain(X, relative)
    partner = M.partner
    remaining = set(X.elements)
    live = set(domain)
    trace: list[Step] = []
    while live:
        sources = []
        for x in domain:
            if x not in live:
                continue
            ups = X.upper_covers(x) & remaining
            if any((x, w) not in M.edges for w in ups):
                continue
            p = partner.get(x)
            if p is not None and (p, x) in M.edges and p in live:
                continue
            sources.append(x)
        if not sources:
            raise InvariantBroken("H_M has no source among the remaining points")
        top = max(f[x] for x in sources)
        x = next(s for s in sources if f[s] == top)
        ups = X.upper_covers(x) & remaining
        if not ups:
            if x in partner:
                raise InvariantBroken(f"maximal source {x!r} is matched")
            step = Step(CRITICAL, x)
        else:
            (y,) = ups
            if X.upper_covers(y) & remaining:
                raise InvariantBroken(f"source {x!r} is covered by {y!r}, which is not maximal")
            step = Step(PAIR, x, y)
        trace.append(step)
        remaining.difference_update(step.elements())
        live.difference_update(step.elements())
    return trace


@dataclass
class Level:
    value: Fraction
    critical: list[str]
    pairs: list[tuple[str, str]]
    before: list[str]  # X̃_{i-1}
    attached: list[str]  # X_i
    after: list[str]  # X̃_i


@dataclass
class Filtration:
    poset: Poset
    function: MorseFunction
    matching: Matching
    base: list[str]
    levels: list[Level]
    links: dict[str, list[str]]
    relative: bool = False

    @property
    def critical(self) -> list[str]:
        return [x for lv in self.levels for x in lv.critical]

    def stages(self) -> list[tuple[str, list[str]]]:
        """Named subposets in filtration order."""
        out = []
        if self.relative:
            out.append(("A", self.base))
        for i, lv in enumerate(self.levels):
            out.append((f"X_{i}", lv.attached))
            out.append((f"X~_{i}", lv.after))
        return out

    def to_dict(self) -> dict:
        return {
            "relative": self.relative,
            "base": list(self.base),
            "levels": [
                {
                    "index": i,
                    "value": str(lv.value),
                    "critical": list(lv.critical),
                    "pairs": [list(p) for p in lv.pairs],
                    "X": list(lv.attached),
                    "X_tilde": list(lv.after),
                }
                for i, lv in enumerate(self.levels)
            ],
            "descending_links": {x: list(v) for x, v in self.links.items()},
        }


def build_filtration(trace: list[Step], X: Poset, f: MorseFunction, M: Matching, relative=None) -> Filtration:
    domain = _domain(X, relative)
    base = [x for x in X.elements if x not in set(domain)]
    replay = trace[::-1]
    levels = []
    current = list(base)
    for t in f.levels(domain):
        crit = [s.x for s in replay if s.kind == CRITICAL and f[s.x] == t]
        pairs = [(s.x, s.y) for s in replay if s.kind == PAIR and f[s.x] == t]
        before = list(current)
        current = current + crit
        attached = list(current)
        current = current + [v for p in pairs for v in p]
        levels.append(Level(t, crit, pairs, before, attached, list(current)))
    links = {x: X.sorted(X.descending_link(x)) for lv in levels for x in lv.critical}
    return Filtration(X, f, M, base, levels, links, relative=relative is not None)


def morse_filtration(X: Poset, f: MorseFunction, M: Matching, relative=None) -> Filtration:
    return build_filtration(removal_trace(X, f, M, relative), X, f, M, relative)


# -- verification -----------------------------------------------------------

@dataclass
class StageCheck:
    index: int
    value: Fraction
    homology_attached: HomologySummary
    homology_after: HomologySummary
    euler_attached: int
    euler_expected: int
    links_inside: bool

    @property
    def retract_ok(self) -> bool:
        return self.homology_attached == self.homology_after

    @property
    def euler_ok(self) -> bool:
        return self.euler_attached == self.euler_expected

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "value": str(self.value),
            "homology_X": str(self.homology_attached),
            "homology_X_tilde": str(self.homology_after),
            "homology_equal": self.retract_ok,
            "euler_X": self.euler_attached,
            "euler_expected": self.euler_expected,
            "euler_ok": self.euler_ok,
            "links_inside_previous": self.links_inside,
        }


@dataclass
class StageReport:
    stages: list[StageCheck]
    euler_total: int
    euler_base: int
    euler_cones: int
    final_homology: HomologySummary
    direct_homology: HomologySummary
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "stages": [s.to_dict() for s in self.stages],
            "global_euler": {
                "chi_X": self.euler_total,
                "chi_base": self.euler_base,
                "cone_terms": self.euler_cones,
                "ok": self.euler_total == self.euler_base + self.euler_cones,
            },
            "final_homology": str(self.final_homology),
            "direct_homology": str(self.direct_homology),
            "failures": list(self.failures),
        }


def _chi(X: Poset, items) -> int:
    return euler_characteristic(order_complex(X, items)) if items else 0


def verify_filtration(F: Filtration) -> StageReport:
    X = F.poset
    link_chi = {x: _chi(X, F.links[x]) for x in F.links}
    checks = []
    failures = []
    for i, lv in enumerate(F.levels):
        h_att = reduced_homology(order_complex(X, lv.attached))
        h_aft = reduced_homology(order_complex(X, lv.after))
        expected = _chi(X, lv.before) + sum(1 - link_chi[x] for x in lv.critical)
        inside = all(set(F.links[x]) <= set(lv.before) for x in lv.critical)
        chk = StageCheck(i, lv.value, h_att, h_aft, _chi(X, lv.attached), expected, inside)
        checks.append(chk)
        if not chk.retract_ok:
            failures.append(f"level {i}: homology of X_{i} ({h_att}) differs from X~_{i} ({h_aft})")
        if not chk.euler_ok:
            failures.append(f"level {i}: Euler characteristic {chk.euler_attached} != {expected}")
        if not inside:
            failures.append(f"level {i}: a descending link is not contained in X~_{i - 1}")
    total = _chi(X, X.elements)
    base = _chi(X, F.base)
    cones = sum(1 - c for c in link_chi.values())
    if total != base + cones:
        failures.append(f"global Euler identity fails: {total} != {base} + {cones}")
    final_items = F.levels[-1].after if F.levels else F.base
    if set(final_items) != set(X.elements):
        failures.append("the last stage is not the whole poset")
    final = reduced_homology(order_complex(X, final_items))
    direct = reduced_homology(order_complex(X))
    if final != direct:
        failures.append("final stage homology differs from the homology of the poset")
    return StageReport(checks, total, base, cones, final, direct, failures)


# -- CW summary -------------------------------------------------------------

def classify_link(h: HomologySummary, empty: bool) -> tuple[str, int | None]:
    if empty:
        return "empty", -1
    if h.is_trivial():
        return "trivial", None
    if len(h.groups) == 1 and h.groups[0][1:] == (1, ()):
        return "sphere", h.groups[0][0]
    return "other", None


def cw_summary(F: Filtration) -> dict:
    X = F.poset
    table = []
    for x in F.critical:
        link = F.links[x]
        h = reduced_homology(order_complex(X, link)) if link else HomologySummary.sphere(-1)
        kind, dim = classify_link(h, not link)
        table.append({
            "point": x,
            "value": str(F.function[x]),
            "height": X.height_of(x),
            "link_class": kind,
            "link_sphere_dim": dim,
            "link_homology": str(h),
        })
    out: dict = {"critical": table}
    K = order_complex(X)
    betti = betti_numbers(K)
    if all(r["link_class"] in ("empty", "sphere") for r in table):
        top = max([r["link_sphere_dim"] + 1 for r in table] + [len(betti) - 1, 0])
        cells = [0] * (top + 1)
        for r in table:
            cells[r["link_sphere_dim"] + 1] += 1
        base_betti = betti_numbers(order_complex(X, F.base)) if F.base else []
        ineq = []
        for d in range(top + 1):
            b = betti[d] if d < len(betti) else 0
            a = base_betti[d] if d < len(base_betti) else 0
            ineq.append({"dim": d, "betti": b, "base_betti": a, "cells": cells[d], "ok": b <= a + cells[d]})
        out["cells"] = cells
        out["morse_inequalities"] = ineq
    if not F.relative:
        positive = [r for r in table if r["height"] > 0]
        if all(r["link_class"] == "trivial" for r in positive):
            out["discrete"] = {"components": len(table) - len(positive)}
        empties = [r for r in table if r["link_class"] == "empty"]
        if len(table) == 2 and len(empties) == 1:
            top_point = next(r for r in table if r["link_class"] != "empty")["point"]
            link_h = reduced_homology(order_complex(X, F.links[top_point]))
            out["suspension"] = {
                "point": top_point,
                "link_homology": str(link_h),
                "homology": str(reduced_homology(K)),
                "matches": reduced_homology(K) == link_h.shifted(1),
            }
    return out
