from itertools import combinations, product as cartesian

import pytest
from hypothesis import given, settings, strategies as st

from equicohom.errors import IndexOutOfRange
from equicohom.simplicial import (FormalSimplex, SimplicialSet, boundary, check_simplicial_identities,
                                  degeneracy_word_from_ops, product, simplex_to_tuple, standard_simplex,
                                  tuple_to_simplex)


def circle(max_dim=2):
    return SimplicialSet([["v"], ["e"]] + [[] for _ in range(max_dim - 1)],
                         {"e": (FormalSimplex("v"), FormalSimplex("v"))}, max_dim, name="S1")


def chains(poset_dims, q):
    """Strict chains of length q+1 in the product poset [m]×[n] (brute force)."""
    pts = sorted(cartesian(*(range(d + 1) for d in poset_dims)))
    leq = lambda a, b: all(x <= y for x, y in zip(a, b))
    return sum(1 for c in combinations(pts, q + 1) if all(leq(a, b) and a != b for a, b in zip(c, c[1:])))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 4), max_size=5))
def test_degeneracy_normal_form_is_confluent(ops):
    """Any operator sequence reaches a strictly decreasing word, matching the vertex-tuple model."""
    dim = 2
    ops = [min(j, dim + k) for k, j in enumerate(reversed(ops))][::-1]
    word = degeneracy_word_from_ops(ops)
    assert all(a > b for a, b in zip(word, word[1:]))
    t = list(range(dim + 1))
    for j in reversed(ops):
        t.insert(j, t[j])
    D = standard_simplex(dim, dim + len(ops))
    assert simplex_to_tuple(D.degenerate(FormalSimplex(tuple(range(dim + 1)), (), dim), word)) == tuple(t)


@pytest.mark.parametrize("X", [standard_simplex(2, 4), boundary(3, 3), circle(3)], ids=lambda X: X.name)
def test_simplicial_identities(X):
    assert X.validate() == []
    assert check_simplicial_identities(X.simplices, X.face, X.degeneracy, X.max_dim) == []


def test_faces_match_vertex_model():
    D = standard_simplex(3, 5)
    for q in range(1, 6):
        for x in D.simplices(q):
            t = simplex_to_tuple(x)
            assert tuple_to_simplex(t) == x
            for i in range(q + 1):
                assert simplex_to_tuple(D.face(x, i)) == t[:i] + t[i + 1:]


def test_restrict_and_edges():
    D = standard_simplex(3, 4)
    x = D.simplex((0, 1, 2, 3))
    assert simplex_to_tuple(D.restrict(x, (1, 1, 3))) == (1, 1, 3)
    assert simplex_to_tuple(D.edge01(x)) == (0, 1)
    assert simplex_to_tuple(D.vertex(x, 2)) == (2,)
    with pytest.raises(IndexOutOfRange):
        D.restrict(x, (2, 1))
    with pytest.raises(IndexOutOfRange):
        D.face(x, 4)


def test_product_counts():
    S = circle(2)
    I = standard_simplex(1, 2)
    assert product(S, I).counts == (2, 4, 2)
    for m, n in [(1, 1), (2, 1), (2, 2)]:
        P = product(standard_simplex(m, 3), standard_simplex(n, 3), 3)
        assert P.counts == tuple(chains((m, n), q) for q in range(4))
        assert check_simplicial_identities(P.simplices, P.face, P.degeneracy, 3) == []


def test_components_and_subcomplex():
    X = SimplicialSet([["a", "b", "c"], ["ab"]], {"ab": (FormalSimplex("b"), FormalSimplex("a"))}, 1)
    assert sorted(map(sorted, X.components())) == [["a", "b"], ["c"]]
    assert X.subcomplex(["a", "b", "ab"]).counts == (2, 1)
    assert X.truncate(0).counts == (3,)


def test_validate_reports_bad_faces():
    X = SimplicialSet([["a", "b"], ["e"], ["t"]],
                      {"e": (FormalSimplex("b"), FormalSimplex("a")),
                       "t": (FormalSimplex("e", (), 1), FormalSimplex("e", (), 1), FormalSimplex("e", (), 1))}, 2)
    assert X.validate()
