"""Structured reports for the command-line interface.

Each command returns ``(exit_code, report)`` where ``report`` is a plain dict
of JSON types. The text output is the same dict dumped as YAML.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import yaml

from . import filtration as filt
from .core import join
from .errors import ValidationError
from .fileformat import PosetDocument, serialize
from .morse import STRICT, height_function, induced_join_morse, validate_matching
from .search import EXHAUSTIVE_LIMIT, exhaustive_min, minimize_critical
from .simplicial import (
    DEFAULT_BUDGET,
    HomologySummary,
    euler_characteristic,
    order_complex,
    reduced_homology,
    sphere_check,
    h_regular_table,
    triviality_verdict,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_REJECTED = 2


@dataclass
class Options:
    mode: str = STRICT
    budget: int = DEFAULT_BUDGET
    seed: int = 0
    height: bool = False
    relative: bool = False
    restarts: int = 32
    limit: int = EXHAUSTIVE_LIMIT
    plot: str | None = None


def render_text(report: dict) -> str:
    return yaml.safe_dump(report, sort_keys=False, allow_unicode=True, width=100)


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def _homology(X, items=None) -> HomologySummary:
    if items is not None and not items:
        return HomologySummary.sphere(-1)
    return reduced_homology(order_complex(X, items))


def homology_rows(h: HomologySummary, top: int) -> list[dict]:
    return h.rows(top)


def _inputs(doc: PosetDocument, opts: Options, relative: bool | None = None):
    relative = opts.relative if relative is None else relative
    X = doc.poset
    A = None
    if relative:
        if doc.down_set is None:
            raise ValidationError("relative mode needs 'A' marks in the document")
        A = doc.down_set
    if opts.height or not doc.has_values:
        f, source = height_function(X), "height"
    else:
        f, source = doc.function(), "file"
    return X, f, doc.morse_matching(), A, source


def _morse_block(doc, opts, command, relative=None):
    X, f, M, A, source = _inputs(doc, opts, relative)
    rep = validate_matching(X, f, M, opts.mode, A, opts.budget)
    K = order_complex(X)
    crit = []
    for x in rep.critical:
        crit.append({
            "point": x,
            "value": str(f[x]),
            "height": X.height_of(x),
            "link_homology": str(_homology(X, X.descending_link(x))),
        })
    domain = [x for x in X.elements if A is None or x not in set(A)]
    levels = [
        {"value": str(t), "critical": [c["point"] for c in crit if f[c["point"]] == t]}
        for t in f.levels(domain)
    ]
    block = {
        "command": command,
        "document": doc.name,
        "function": source,
        "mode": opts.mode,
        "relative": None if A is None else X.sorted(A),
        "accepted": rep.accepted,
        "reasons": rep.reasons,
        "warnings": rep.warnings,
        "acyclic": rep.acyclic,
        "critical": crit,
        "levels": levels,
        "edges": [e.to_dict(opts.mode) for e in rep.edges],
        "homology": homology_rows(reduced_homology(K), K.dimension),
    }
    if rep.cycle:
        block["cycle"] = rep.cycle
    return (X, f, M, A), rep, block


def cmd_validate(doc: PosetDocument, opts: Options):
    _, rep, block = _morse_block(doc, opts, "validate")
    return (EXIT_OK if rep.accepted else EXIT_REJECTED), block


def cmd_critical(doc: PosetDocument, opts: Options):
    _, rep, block = _morse_block(doc, opts, "critical")
    block["critical_count"] = len(block["critical"])
    return (EXIT_OK if rep.accepted else EXIT_REJECTED), block


def cmd_filtration(doc: PosetDocument, opts: Options, relative: bool | None = None):
    command = "relative-filtration" if relative else "filtration"
    (X, f, M, A), rep, block = _morse_block(doc, opts, command, relative)
    if not rep.accepted:
        return EXIT_REJECTED, block
    trace = filt.removal_trace(X, f, M, A)
    F = filt.build_filtration(trace, X, f, M, A)
    check = filt.verify_filtration(F)
    block["trace"] = [s.to_dict() for s in trace]
    block["filtration"] = F.to_dict()
    block["verification"] = check.to_dict()
    block["cw"] = filt.cw_summary(F)
    if opts.plot:
        from .plotting import plot_filtration

        plot_filtration(F, check, opts.plot)
        block["plot"] = str(opts.plot)
    return (EXIT_OK if check.ok else EXIT_REJECTED), block


def cmd_homology(doc: PosetDocument, opts: Options):
    X = doc.poset
    K = order_complex(X)
    h = reduced_homology(K)
    out = {
        "command": "homology",
        "document": doc.name,
        "elements": len(X),
        "height": X.height(),
        "f_vector": K.f_vector(),
        "euler_characteristic": euler_characteristic(K),
        "homology": homology_rows(h, K.dimension),
        "summary": str(h),
    }
    if doc.down_set is not None:
        KA = order_complex(X, doc.down_set)
        out["down_set"] = {
            "elements": X.sorted(doc.down_set),
            "is_down_set": X.is_down_set(doc.down_set),
            "homology": homology_rows(reduced_homology(KA), KA.dimension),
            "summary": str(reduced_homology(KA)),
        }
    return EXIT_OK, out


def cmd_descending_link(doc: PosetDocument, point: str, opts: Options):
    X = doc.poset
    link = X.descending_link(point)
    L = order_complex(X, link)
    n = X.height_of(point) - 1
    return EXIT_OK, {
        "command": "descending-link",
        "document": doc.name,
        "point": point,
        "height": X.height_of(point),
        "link": X.sorted(link),
        "homology": homology_rows(reduced_homology(L), L.dimension),
        "summary": str(reduced_homology(L)),
        "triviality": triviality_verdict(L, opts.budget).to_dict(),
        "sphere_of_dim_height_minus_one": sphere_check(L, n),
    }


def cmd_hregular(doc: PosetDocument, opts: Options):
    rows = [
        {"point": x, "expected_sphere_dim": n, "link_homology": str(h), "ok": ok}
        for x, n, h, ok in h_regular_table(doc.poset)
    ]
    return EXIT_OK, {
        "command": "hregular",
        "document": doc.name,
        "h_regular": all(r["ok"] for r in rows),
        "points": rows,
    }


def cmd_opposite(doc: PosetDocument, opts: Options):
    # negated values and reversed edges keep Morse data valid; a down-set does not survive
    X = doc.poset.opposite()
    name = f"{doc.name}-op" if doc.name else "opposite"
    out = PosetDocument(
        X,
        {x: -v for x, v in doc.values.items()},
        [(b, a) for a, b in doc.matching],
        name=name,
        source=f"opposite of {doc.name or 'input'}",
    )
    return EXIT_OK, out, {"command": "opposite", "document": out.name, "text": serialize(out)}


def cmd_join(left: PosetDocument, right: PosetDocument, opts: Options):
    """Join two documents, carrying induced Morse data when both sides have a matching."""
    name = f"{left.name or 'left'}*{right.name or 'right'}"
    report = {"command": "join", "document": name}
    if left.matching or right.matching or left.has_values or right.has_values:
        X, f, M, _, _ = _inputs(left, opts, relative=False)
        Y, g, N, _, _ = _inputs(right, opts, relative=False)
        J, fg, MN = induced_join_morse(X, f, M, Y, g, N, opts.mode, opts.budget)
        rep = validate_matching(J, fg, MN, opts.mode, budget=opts.budget)
        out = PosetDocument(J, dict(fg.values), MN.sorted(J), name=name, source="join with induced Morse data")
        report["accepted"] = rep.accepted
        report["critical"] = rep.critical
        report["edges"] = [e.to_dict(opts.mode) for e in rep.edges]
    else:
        out = PosetDocument(join(left.poset, right.poset), name=name, source="join")
    K = order_complex(out.poset)
    report["homology"] = homology_rows(reduced_homology(K), K.dimension)
    report["text"] = serialize(out)
    return EXIT_OK, out, report


def _search_block(doc, opts, result, command, relative):
    X = doc.poset
    A = doc.down_set if relative else None
    out = {"command": command, "document": doc.name, **result.to_dict(X)}
    out["critical"] = [x for x in X.elements if (A is None or x not in set(A)) and x not in result.matching.matched()]
    out.pop("seconds")
    return out


def cmd_search(doc: PosetDocument, opts: Options):
    A = doc.down_set if opts.relative else None
    res = minimize_critical(doc.poset, opts.restarts, opts.seed, opts.mode, opts.budget, A)
    return EXIT_OK, _search_block(doc, opts, res, "search", opts.relative)


def cmd_exhaustive(doc: PosetDocument, opts: Options):
    A = doc.down_set if opts.relative else None
    res = exhaustive_min(doc.poset, opts.limit, opts.mode, opts.budget, A)
    return EXIT_OK, _search_block(doc, opts, res, "exhaustive", opts.relative)
