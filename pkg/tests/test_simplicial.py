import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from posetmorse import (
    SimplicialComplex,
    Triviality,
    antichain,
    boundary_matrix,
    cone,
    euler_characteristic,
    face_poset,
    from_relations,
    greedy_collapse,
    h_regular_check,
    join,
    load_fixture,
    order_complex,
    reduced_homology,
    sphere_check,
    triviality_verdict,
)
from posetmorse.errors import ApexCollision, DimensionOutOfRange
from posetmorse.simplicial import HomologySummary, betti_numbers, collapse_search, simplicial_join

import oracles


def circle_poset():
    return from_relations(["a", "b", "c", "d"], [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])


def four_cycle():
    return SimplicialComplex("abcd", [("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")])


def triangle_boundary():
    return SimplicialComplex("abc", [("a", "b"), ("b", "c"), ("a", "c")])


def dunce_hat():
    # triangle with boundary word a a a^-1, three segments per side, a ring of
    # interior vertices and a centre; no free faces, trivial homology
    p = [f"s{b}" for b in (0, 1, 2, 0, 1, 2, 0, 2, 1)]
    u = [f"u{k}" for k in range(9)]
    T = []
    for k in range(9):
        T.append((p[k], p[(k + 1) % 9], u[k]))
        T.append((p[(k + 1) % 9], u[k], u[(k + 1) % 9]))
        T.append((u[k], u[(k + 1) % 9], "z"))
    return SimplicialComplex(["s0", "s1", "s2"] + u + ["z"], T)


def random_complex(seed):
    rng = random.Random(seed)
    verts, facets = oracles.random_complex(rng.randint(1, 7), rng.randint(1, 6), rng)
    return SimplicialComplex(verts, facets)


def test_order_complex_examples():
    chain3 = from_relations("abc", [("a", "b"), ("b", "c")])
    K = order_complex(chain3)
    assert len(K) == 7 and K.dimension == 2
    K = order_complex(circle_poset())
    assert K.f_vector() == [4, 4]


def test_order_complex_matches_chain_oracle():
    for name in ("fig1", "fig2", "fig6"):
        X = load_fixture(name).poset
        K = order_complex(X)
        expected = oracles.chains(X.elements, X.covers)
        assert {frozenset(s) for s in K.simplices} == expected
        assert K.dimension == X.height()


def test_cone():
    assert len(cone("v", SimplicialComplex([]))) == 1
    path = cone("v", SimplicialComplex("ab"))
    assert path.f_vector() == [3, 2]
    assert reduced_homology(cone("v", four_cycle())).is_trivial()
    with pytest.raises(ApexCollision):
        cone("a", four_cycle())


def test_face_poset():
    X = face_poset(SimplicialComplex("ab", [("a", "b")]))
    assert len(X) == 3 and len(X.covers) == 2
    Y = face_poset(triangle_boundary())
    assert len(Y) == 6
    K = order_complex(Y)
    assert K.f_vector() == [6, 6]
    assert reduced_homology(K) == HomologySummary.sphere(1)


def test_euler_examples():
    assert euler_characteristic(SimplicialComplex("a")) == 1
    assert euler_characteristic(four_cycle()) == 0
    K = order_complex(load_fixture("fig1").poset)
    assert euler_characteristic(K) == 1 == oracles.euler(K.simplices)
    assert euler_characteristic(SimplicialComplex([])) == 0


def test_boundary_matrices():
    edge = SimplicialComplex("ab", [("a", "b")])
    assert boundary_matrix(edge, 1)[:, 0].tolist() == [-1, 1]
    assert boundary_matrix(edge, 0).tolist() == [[1, 1]]
    tri = SimplicialComplex("abc", [("a", "b", "c")])
    assert not (boundary_matrix(tri, 1) @ boundary_matrix(tri, 2)).any()
    assert not (boundary_matrix(tri, 0) @ boundary_matrix(tri, 1)).any()
    with pytest.raises(DimensionOutOfRange):
        boundary_matrix(tri, 3)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_boundary_squares_to_zero(seed):
    L = random_complex(seed)
    for d in range(1, L.dimension + 1):
        assert not (boundary_matrix(L, d - 1) @ boundary_matrix(L, d)).any()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_homology_against_sympy_oracle(seed):
    L = random_complex(seed)
    assert oracles.summary_dict(reduced_homology(L)) == oracles.reduced_homology(L.simplices)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_euler_equals_alternating_betti(seed):
    L = random_complex(seed)
    b = betti_numbers(L)
    assert euler_characteristic(L) == sum((-1) ** d * v for d, v in enumerate(b))


def test_fixture_homologies_against_oracle():
    for name in ("fig1", "fig3-left", "fig4-join", "fig6"):
        X = load_fixture(name).poset
        K = order_complex(X)
        assert oracles.summary_dict(reduced_homology(K)) == oracles.reduced_homology(K.simplices)


def test_fixture_homologies():
    h = reduced_homology(order_complex(load_fixture("fig1").poset))
    assert (h.betti(0), h.betti(1), h.betti(2)) == (0, 1, 1)
    h = reduced_homology(order_complex(load_fixture("fig6").poset))
    assert h.betti(1) == 0 and h.torsion(1) == (2,) and h.betti(2) == 0
    h = reduced_homology(order_complex(load_fixture("fig4-join").poset))
    assert h == HomologySummary.from_dict({3: 2})


def test_smith_torsion_projective_plane():
    # the 6-vertex RP^2
    facets = ["124", "126", "135", "136", "145", "234", "235", "256", "346", "456"]
    L = SimplicialComplex("123456", [tuple(f) for f in facets])
    h = reduced_homology(L)
    assert h == HomologySummary.from_dict({}, {1: [2]})
    assert oracles.summary_dict(h) == oracles.reduced_homology(L.simplices)


def test_greedy_collapse():
    simplex = SimplicialComplex("abc", [("a", "b", "c")])
    assert len(greedy_collapse(simplex)) == 1
    assert greedy_collapse(four_cycle()) == four_cycle()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_collapse_preserves_homology(seed):
    L = random_complex(seed)
    C = greedy_collapse(L)
    assert C.simplices <= L.simplices and C.is_closed()
    assert reduced_homology(C) == reduced_homology(L)


def test_triviality_verdicts():
    assert triviality_verdict(SimplicialComplex("a")).status is Triviality.COLLAPSIBLE
    v = triviality_verdict(four_cycle())
    assert v.status is Triviality.NOT_TRIVIAL and v.witness == (1, 1, ())
    # the empty complex is not contractible: its reduced homology sits in degree -1
    assert triviality_verdict(SimplicialComplex([])).status is Triviality.NOT_TRIVIAL


def test_dunce_hat_is_unresolved():
    L = dunce_hat()
    assert oracles.reduced_homology(L.simplices) == {}
    assert greedy_collapse(L) == L
    assert collapse_search(L, 1000)[0] is not True
    assert triviality_verdict(L, 1000).status is Triviality.UNRESOLVED


def test_fig1_edge_link_is_collapsible():
    X = load_fixture("fig1").poset
    doc = load_fixture("fig1")
    (x, y), = [(a, b) for a, b in doc.matching if doc.values[a] == 2 and doc.values[b] == 3]
    L = order_complex(X, X.descending_link(y) - {x})
    assert triviality_verdict(L).status is Triviality.COLLAPSIBLE


def test_sphere_checks():
    assert sphere_check(four_cycle(), 1)
    assert sphere_check(SimplicialComplex("ab"), 0)
    assert sphere_check(SimplicialComplex([]), -1)
    assert not sphere_check(four_cycle(), 2)
    assert not h_regular_check(load_fixture("fig2").poset)
    assert h_regular_check(face_poset(triangle_boundary()))


def test_opposite_complex_identical():
    for name in ("fig1", "fig5-left", "fig6"):
        X = load_fixture(name).poset
        assert order_complex(X) == order_complex(X.opposite())


def test_join_matches_simplicial_join():
    X = antichain(2)
    Y = from_relations(["q0", "q1", "q2"], [("q0", "q2")])
    J = join(X, Y)
    direct = simplicial_join(order_complex(X), order_complex(Y))
    assert order_complex(J) == direct
    assert reduced_homology(order_complex(join(antichain(2), antichain(2)))) == HomologySummary.sphere(1)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_barycentric_invariance(seed):
    L = random_complex(seed)
    assert reduced_homology(order_complex(face_poset(L))) == reduced_homology(L)


def test_int64_matrix_dtype():
    assert boundary_matrix(four_cycle(), 1).dtype == np.int64
