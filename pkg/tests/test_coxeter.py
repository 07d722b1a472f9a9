import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ckrigidity import coxeter
from ckrigidity.coxeter import DefiningGraph, GraphError, normal_form

from oracles import tits_ball_sizes, tits_matrices, word_matrix

FIG7_BALL = [1, 8, 44, 224, 1124, 5624, 28124]  # frozen from the matrix-representation BFS


def words(graph, max_len=8):
    return st.lists(st.sampled_from(graph.vertices), max_size=max_len).map(tuple)


def test_empty_word_is_identity(graph):
    assert normal_form(graph, ()) == ()


def test_commuting_pair_cancels(graph):
    assert normal_form(graph, ("v1", "v2", "v1", "v2")) == ()


def test_non_commuting_pair_is_reduced(graph):
    assert normal_form(graph, ("v1", "v3", "v1")) == ("v1", "v3", "v1")


def test_shortlex_sorts_commuting_letters(graph):
    assert normal_form(graph, ("v2", "v1")) == ("v1", "v2")


def test_unknown_generator(graph):
    with pytest.raises(GraphError):
        normal_form(graph, ("x9",))


def test_product_order(graph):
    assert coxeter.product_order(graph, "v1", "v2") == 2
    assert coxeter.product_order(graph, "v1", "v3") == float("inf")
    assert coxeter.product_order(graph, "w1", "w1") == 1


def test_ball_sizes_small_groups():
    dinf = DefiningGraph.from_edges(["s", "t"], [])
    assert coxeter.ball_sizes(dinf, 3) == [1, 2, 2, 2]
    square = DefiningGraph.from_edges("abcd", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
    assert sum(coxeter.ball_sizes(square, 2)) == 13


def test_ball_sizes_fig7_against_matrix_oracle(graph):
    edges = [tuple(e) for e in graph.edges]
    assert tits_ball_sizes(graph.vertices, edges, 6) == FIG7_BALL
    assert coxeter.ball_sizes(graph, 6) == FIG7_BALL


def test_ball_is_ordered_and_normal(graph):
    ball = coxeter.enumerate_ball(graph, 3)
    assert ball[0] == ()
    assert [len(w) for w in ball] == sorted(len(w) for w in ball)
    assert all(normal_form(graph, w) == w for w in ball)


def test_finite_and_center():
    k3 = DefiningGraph.from_edges("abc", [("a", "b"), ("b", "c"), ("a", "c")])
    assert coxeter.is_finite(k3)
    assert coxeter.center_generators(k3) == {"a", "b", "c"}
    assert not coxeter.is_finite(coxeter.fig7_graph())
    assert coxeter.center_generators(coxeter.fig7_graph()) == set()


def test_special_subgroup(graph):
    sub = coxeter.special_subgroup(graph, ["v1", "v3", "w2", "w4"])
    assert len(sub.edges) == 4
    with pytest.raises(GraphError):
        coxeter.special_subgroup(graph, ["v1", "zz"])


def test_graph_json_round_trip(graph):
    again = DefiningGraph.from_json(graph.to_json())
    assert again.vertices == graph.vertices and again.edges == graph.edges


@pytest.mark.parametrize("doc", [{"edges": []}, {"vertices": ["a"], "edges": [["a", "b"]]},
                                 {"vertices": ["a", "a"]}, {"vertices": ["a"], "edges": [["a", "a"]]}])
def test_bad_graph_documents(doc):
    with pytest.raises(GraphError):
        DefiningGraph.from_json(doc)


def test_parse_word():
    assert coxeter.parse_word("v1, v2") == ("v1", "v2")
    assert coxeter.parse_word("") == ()


def test_fig7_cycles(graph):
    assert len(graph.edges) == 12
    assert len(coxeter.chordless_four_cycles(graph)) == 11


@given(st.data())
def test_normal_form_idempotent_and_equal_to_matrix(graph, data):
    w = data.draw(words(graph))
    nf = normal_form(graph, w)
    assert normal_form(graph, nf) == nf
    assert len(nf) <= len(w) and len(nf) % 2 == len(w) % 2
    mats = tits_matrices(graph.vertices, [tuple(e) for e in graph.edges])
    n = len(graph.vertices)
    assert np.array_equal(word_matrix(mats, w, n), word_matrix(mats, nf, n))


@given(st.data())
def test_word_times_inverse_is_trivial(graph, data):
    w = data.draw(words(graph))
    assert coxeter.multiply(graph, w, coxeter.inverse(w)) == ()
    assert normal_form(graph, coxeter.inverse(w)) == normal_form(graph, coxeter.inverse(normal_form(graph, w)))


@given(st.data())
def test_equal_elements_have_equal_normal_forms(graph, data):
    a, b = data.draw(words(graph, 6)), data.draw(words(graph, 6))
    mats = tits_matrices(graph.vertices, [tuple(e) for e in graph.edges])
    n = len(graph.vertices)
    same = np.array_equal(word_matrix(mats, a, n), word_matrix(mats, b, n))
    assert same == (normal_form(graph, a) == normal_form(graph, b))


def test_normal_form_exhaustive_length_four(graph):
    mats = tits_matrices(graph.vertices, [tuple(e) for e in graph.edges])
    by_matrix = {}
    for w in itertools.product(graph.vertices, repeat=4):
        nf = normal_form(graph, w)
        key = word_matrix(mats, w, 8).tobytes()
        assert by_matrix.setdefault(key, nf) == nf
