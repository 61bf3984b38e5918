from fractions import Fraction
import itertools
import json

import networkx as nx
import pytest
import sympy
from hypothesis import given, strategies as st

from stskel.errors import ResourceLimitError
from stskel.graph import (
    DegreeMax,
    GraphInstance,
    LeafMax,
    LeafMaxInSubset,
    LeavesOnlyIn,
    SpanningTree,
    count_spanning_trees,
    edge_index,
    edge_pair,
    enumerate_spanning_trees,
    filter_family,
    instance_from_json,
    instance_to_json,
    is_spanning_tree,
    leaf_count,
    num_edges,
    random_instance,
)


def laplacian_minor_det(n):
    """Independent matrix-tree oracle via sympy."""
    lap = sympy.Matrix(n, n, lambda i, j: n - 1 if i == j else -1)
    return int(lap[1:, 1:].det())


@pytest.mark.parametrize("n", range(2, 9))
def test_edge_index_round_trip(n):
    seen = set()
    for i, j in itertools.combinations(range(n), 2):
        idx = edge_index(i, j, n)
        assert edge_pair(idx, n) == (i, j)
        assert edge_index(j, i, n) == idx
        seen.add(idx)
    assert seen == set(range(num_edges(n)))


def test_edge_index_rejects_loops_and_range():
    with pytest.raises(ValueError):
        edge_index(2, 2, 4)
    with pytest.raises(ValueError):
        edge_index(0, 4, 4)


@pytest.mark.parametrize("n, expected", [(2, 1), (4, 16), (6, 1296)])
def test_count_spanning_trees(n, expected):
    assert laplacian_minor_det(n) == expected
    assert count_spanning_trees(n) == expected


@pytest.mark.parametrize("n, expected", [(3, 3), (4, 16), (5, 125)])
def test_enumeration_sizes(n, expected):
    assert laplacian_minor_det(n) == expected
    assert len(enumerate_spanning_trees(GraphInstance.unit(n))) == expected


@pytest.mark.parametrize("n", range(2, 8))
def test_enumeration_complete_sorted_and_valid(n):
    trees = enumerate_spanning_trees(n)
    assert len(trees) == count_spanning_trees(n) == laplacian_minor_det(n)
    edge_lists = [t.edges for t in trees]
    assert edge_lists == sorted(edge_lists)
    assert len(set(edge_lists)) == len(edge_lists)
    for t in trees[:: max(1, len(trees) // 200)]:
        assert is_spanning_tree(t.edges, n)
        g = nx.Graph(t.pairs)
        g.add_nodes_from(range(n))
        assert nx.is_tree(g)


def test_enumeration_cap():
    with pytest.raises(ResourceLimitError, match="max_n=8"):
        enumerate_spanning_trees(9)
    with pytest.raises(ResourceLimitError, match="max_n=4"):
        enumerate_spanning_trees(5, max_n=4)


def test_triangle_trees_are_two_edge_subsets():
    trees = enumerate_spanning_trees(3)
    assert [t.edges for t in trees] == [tuple(c) for c in itertools.combinations(range(3), 2)]


def test_spanning_tree_validation():
    with pytest.raises(ValueError):
        SpanningTree.from_pairs([(0, 1), (1, 2), (0, 2)], 4)
    with pytest.raises(ValueError):
        SpanningTree.from_pairs([(0, 1), (2, 3)], 4)


def test_leaf_count_examples():
    assert leaf_count(SpanningTree.from_pairs([(0, 1), (0, 2), (0, 3)], 4)) == 3
    assert leaf_count(SpanningTree.from_pairs([(0, 1), (1, 2), (2, 3)], 4)) == 2
    assert leaf_count(SpanningTree.from_pairs([(0, 1), (1, 2), (1, 3), (3, 4)], 5), 5) == 3


@pytest.mark.parametrize("n", range(2, 7))
def test_every_tree_has_two_leaves(n):
    assert all(leaf_count(t) >= 2 for t in enumerate_spanning_trees(n))


def test_filter_degree_two_gives_hamiltonian_paths():
    trees = enumerate_spanning_trees(4)
    stars = [t for t in trees if max(t.degrees) == 3]
    assert len(stars) == 4
    paths = filter_family(trees, DegreeMax(2))
    assert len(paths) == 16 - len(stars) == 12
    assert all(sorted(t.degrees) == [1, 1, 2, 2] for t in paths)


def test_filter_leaf_max_three_keeps_all():
    trees = enumerate_spanning_trees(4)
    assert filter_family(trees, LeafMax(3)) == trees


def test_filter_leaves_only_in():
    trees = enumerate_spanning_trees(4)
    kept = filter_family(trees, LeavesOnlyIn({0, 1}))
    expected = [t for t in trees if set(t.leaves()) <= {0, 1}]
    assert kept == expected
    assert sorted(t.pairs for t in kept) == sorted([
        SpanningTree.from_pairs([(0, 2), (2, 3), (3, 1)], 4).pairs,
        SpanningTree.from_pairs([(0, 3), (3, 2), (2, 1)], 4).pairs,
    ])


def test_filter_leaf_max_in_subset():
    trees = enumerate_spanning_trees(5)
    u = {0, 1, 2}
    kept = filter_family(trees, LeafMaxInSubset(u, 1))
    assert kept == [t for t in trees if len(set(t.leaves()) & u) <= 1]


@pytest.mark.parametrize("n", range(3, 8))
def test_vacuous_constraints_are_identity(n):
    trees = enumerate_spanning_trees(n)
    assert filter_family(trees, DegreeMax(n - 1)) == trees
    assert filter_family(trees, LeafMax(n - 1)) == trees


@pytest.mark.parametrize("constraint, n", [
    (LeafMax(4), 4), (LeafMax(0), 4), (DegreeMax(5), 5),
    (LeafMaxInSubset({0, 1}, 2), 4), (LeavesOnlyIn({7}), 4),
])
def test_filter_rejects_bad_parameters(constraint, n):
    with pytest.raises(ValueError):
        filter_family(enumerate_spanning_trees(n), constraint)


def test_instance_json_round_trip():
    g = random_instance(5, seed=3, subset_u=[0, 2])
    doc = json.loads(json.dumps(instance_to_json(g)))
    assert instance_from_json(doc) == g


def test_instance_json_parsing():
    rows = [[i, j, "3/2" if (i, j) == (0, 1) else 1] for i, j in itertools.combinations(range(3), 2)]
    g = instance_from_json({"n": 3, "weights": rows, "subset": [0, 1]})
    assert g.weights[edge_index(0, 1, 3)] == Fraction(3, 2)
    assert g.subset_u == {0, 1}


@pytest.mark.parametrize("doc", [
    {"n": 3, "weights": [[0, 1, 1], [0, 2, 1]]},                       # missing edge
    {"n": 3, "weights": [[0, 1, 1], [1, 0, 2], [0, 2, 1], [1, 2, 1]]},  # duplicate
    {"n": 3, "weights": [[0, 1, 1], [0, 2, 1], [1, 3, 1]]},             # out of range
    {"n": 3, "weights": [[0, 1, "1.5"], [0, 2, 1], [1, 2, 1]]},         # decimal
    {"n": 3, "weights": [[0, 1, 1], [0, 2, 1], [1, 2, 1]], "subset": [5]},
])
def test_instance_json_rejects(doc):
    with pytest.raises(ValueError):
        instance_from_json(doc)


def test_random_instance_is_seeded():
    a, b = random_instance(6, 11), random_instance(6, 11)
    assert a == b
    assert a != random_instance(6, 12)
    for w in a.weights:
        assert Fraction(1, 10) <= w <= 100
        assert w.denominator <= 10


@given(st.integers(min_value=3, max_value=6), st.data())
def test_tree_weight_is_exact_sum(n, data):
    trees = enumerate_spanning_trees(n)
    t = trees[data.draw(st.integers(0, len(trees) - 1))]
    seed = data.draw(st.integers(0, 10_000))
    g = random_instance(n, seed)
    assert g.tree_weight(t) == sum(g.weights[e] for e in t.edges)
