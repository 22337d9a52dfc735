import random

from hypothesis import given, settings, strategies as st

from posetmorse import (
    Matching,
    MorseFunction,
    antichain,
    build_filtration,
    cw_summary,
    face_poset,
    from_relations,
    greedy_matching,
    height_function,
    load_fixture,
    morse_filtration,
    order_complex,
    reduced_homology,
    removal_trace,
    verify_filtration,
)
from posetmorse.filtration import CRITICAL, PAIR
from posetmorse.simplicial import SimplicialComplex, euler_characteristic

import oracles


def fixture_data(name, height=False):
    doc = load_fixture(name)
    X = doc.poset
    f = height_function(X) if height or not doc.has_values else doc.function()
    return X, f, doc.morse_matching(), doc.down_set


def test_antichain_trace():
    X = antichain(3)
    f = MorseFunction.of({x: 0 for x in X.elements})
    trace = removal_trace(X, f, Matching())
    assert [(s.kind, s.x) for s in trace] == [(CRITICAL, x) for x in X.elements]
    F = build_filtration(trace, X, f, Matching())
    assert len(F.levels) == 1 and set(F.levels[0].attached) == set(X.elements)
    # stages list points in reverse removal order
    assert F.levels[0].critical == [s.x for s in reversed(trace)]


def test_pair_trace():
    X = from_relations("xwy", [("x", "y"), ("w", "y")])
    f = height_function(X)
    trace = removal_trace(X, f, Matching.of([("x", "y")]))
    assert [(s.kind, s.x, s.y) for s in trace] == [(PAIR, "x", "y"), (CRITICAL, "w", None)]


def test_fig1_trace_and_levels():
    X, f, M, _ = fixture_data("fig1")
    trace = removal_trace(X, f, M)
    kinds = [s.kind for s in trace]
    assert kinds.count(CRITICAL) == 3 and kinds.count(PAIR) == 3
    assert trace[-1].kind == CRITICAL and f[trace[-1].x] == 0
    F = build_filtration(trace, X, f, M)
    assert len(F.levels[0].attached) == 1
    level1 = next(lv for lv in F.levels if lv.value == 1)
    assert level1.critical == []
    level2 = next(lv for lv in F.levels if lv.value == 2)
    assert len(level2.critical) == 1 and len(F.links[level2.critical[0]]) == 3
    check = verify_filtration(F)
    assert check.ok
    # 1 = 1 + (1 - 3) + (1 - (-1))
    link_chis = sorted(euler_characteristic(order_complex(X, F.links[x])) for x in F.critical if F.links[x])
    assert link_chis == [-1, 3]
    assert check.euler_total == 1 and check.euler_base == 0 and check.euler_cones == 1


def test_fig2_no_critical_between_2_and_5():
    X, f, M, _ = fixture_data("fig2")
    F = morse_filtration(X, f, M)
    assert not [x for x in F.critical if 2 < f[x] < 5]
    assert verify_filtration(F).ok


def test_trace_invariants_on_fixtures():
    for name in ("fig1", "fig2", "fig3-left", "fig3-right", "fig4-join", "fig5-right", "fig6"):
        X, f, M, A = fixture_data(name)
        trace = removal_trace(X, f, M, A)
        removed = [v for s in trace for v in s.elements()]
        domain = [x for x in X.elements if A is None or x not in A]
        assert sorted(removed) == sorted(domain)
        remaining = set(X.elements)
        for s in trace:
            if s.kind == PAIR:
                # x is an up beat point of what is left, y is maximal
                assert X.upper_covers(s.x) & remaining == {s.y}
                assert not X.upper_covers(s.y) & remaining
                assert (s.x, s.y) in M.edges
            else:
                assert not X.upper_covers(s.x) & remaining
            remaining -= set(s.elements())
        F = build_filtration(trace, X, f, M, A)
        assert set(F.levels[-1].after) == set(X.elements)
        assert verify_filtration(F).ok


def test_fig6_relative():
    X, f, M, A = fixture_data("fig6")
    F = morse_filtration(X, f, M, A)
    assert F.relative and F.base == X.sorted(A)
    check = verify_filtration(F)
    assert check.ok and check.euler_total == 1 and check.euler_base == 0 and check.euler_cones == 1
    assert F.critical == ["r0c4"]


def test_relative_with_everything_in_A():
    X = from_relations("ab", [("a", "b")])
    F = morse_filtration(X, height_function(X), Matching(), ["a", "b"])
    assert F.levels == [] and F.base == ["a", "b"]
    assert verify_filtration(F).ok


def test_cone_poset_single_critical():
    X = from_relations("abt", [("a", "t"), ("b", "t")])
    f = height_function(X)
    M = greedy_matching(X, f)
    F = morse_filtration(X, f, M)
    assert len(F.critical) == 1
    check = verify_filtration(F)
    assert check.ok
    assert all(s.homology_attached.is_trivial() for s in check.stages)


def test_cw_summary_fig3_left():
    X, f, M, _ = fixture_data("fig3-left")
    cw = cw_summary(morse_filtration(X, f, M))
    classes = sorted(r["link_class"] for r in cw["critical"])
    assert classes == ["empty", "other"]
    assert cw["suspension"]["matches"]
    assert cw["suspension"]["homology"] == "H2=Z^2"


def test_cw_summary_regular_triangle():
    X = face_poset(SimplicialComplex("abc", [("a", "b"), ("b", "c"), ("a", "c")]))
    f = height_function(X)
    cw = cw_summary(morse_filtration(X, f, Matching()))
    assert cw["cells"] == [3, 3]
    assert all(row["ok"] for row in cw["morse_inequalities"])


def test_cw_summary_discrete():
    X = from_relations("abcde", [("a", "c"), ("b", "c"), ("d", "e")])
    f = height_function(X)
    M = Matching.of([("a", "c")])
    cw = cw_summary(morse_filtration(X, f, M))
    assert cw["discrete"] == {"components": 2}


def test_cone_over_three_points_has_no_admissible_edge():
    # the top's link minus any bottom point is two points, so nothing can be matched
    X = from_relations("abct", [("a", "t"), ("b", "t"), ("c", "t")])
    assert len(greedy_matching(X, height_function(X))) == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_random_filtrations_verify(seed):
    rng = random.Random(seed)
    elements, pairs = oracles.random_relations(rng.randint(1, 9), rng.uniform(0.15, 0.5), rng)
    X = from_relations(elements, pairs)
    f = height_function(X)
    M = greedy_matching(X, f, order="random", seed=seed)
    F = morse_filtration(X, f, M)
    check = verify_filtration(F)
    assert check.ok, check.failures
    assert oracles.summary_dict(check.final_homology) == oracles.reduced_homology(oracles.chains(elements, pairs))
    assert reduced_homology(order_complex(X)) == check.direct_homology
