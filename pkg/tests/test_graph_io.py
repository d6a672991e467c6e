"""Graph construction rules and text-format round trips."""

import numpy as np
import pytest
from hypothesis import given, settings

from triadnet import DirectedGraph, read_arclist, read_matrix, write_arclist, write_matrix

from conftest import digraphs


def test_rejects_self_links():
    with pytest.raises(ValueError):
        DirectedGraph(np.eye(3))
    g = DirectedGraph.empty(3)
    with pytest.raises(ValueError):
        g.add_arc(1, 1)


def test_rejects_non_binary_and_non_square():
    with pytest.raises(ValueError):
        DirectedGraph(np.full((3, 3), 2))
    with pytest.raises(ValueError):
        DirectedGraph(np.zeros((2, 3)))


def test_arc_operations():
    g = DirectedGraph.empty(4)
    g.add_arc(0, 1)
    assert g.has_arc(0, 1) and not g.has_arc(1, 0)
    with pytest.raises(ValueError):
        g.add_arc(0, 1)
    g.remove_arc(0, 1)
    with pytest.raises(ValueError):
        g.remove_arc(0, 1)
    assert g.arc_count() == 0


@settings(max_examples=25, deadline=None)
@given(g=digraphs())
def test_matrix_round_trip(tmp_path_factory, g):
    path = tmp_path_factory.mktemp("io") / "g.txt"
    write_matrix(g, path)
    assert read_matrix(path) == g


@settings(max_examples=25, deadline=None)
@given(g=digraphs())
def test_arclist_round_trip(tmp_path_factory, g):
    path = tmp_path_factory.mktemp("io") / "g.arcs"
    write_arclist(g, path)
    if g.arc_count() == 0:
        with pytest.raises(ValueError):
            read_arclist(path)
        return
    back = read_arclist(path, n=g.n)
    assert back == g


def test_arclist_indices_are_one_based(tmp_path):
    path = tmp_path / "g.arcs"
    path.write_text("1 2\n3 1\n")
    g = read_arclist(path)
    assert g.n == 3
    assert g.has_arc(0, 1) and g.has_arc(2, 0)


def test_read_matrix_validates_shape(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("3\n0 1\n0 0 0\n0 0 0\n")
    with pytest.raises(ValueError):
        read_matrix(path)
    path.write_text("2\n0 1\n1 1\n")
    with pytest.raises(ValueError):
        read_matrix(path)  # nonzero diagonal
