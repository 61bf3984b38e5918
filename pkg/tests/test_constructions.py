from decimal import Decimal
from math import factorial
import json

import pytest
from hypothesis import given, settings, strategies as st

from stskel.constructions import (
    DegreeFamilySpec,
    HamiltonianPath,
    LeafFamilySpec,
    clique_bound,
    dc_family_trees,
    dc_lift,
    dc_paths,
    dc_project,
    dc_projection_report,
    dc_transfer_report,
    hamiltonian_paths,
    hp_vertex_set,
    lc_family,
    lc_family_trees,
    lc_lift,
    lc_paths,
    lc_project,
    lc_projection_report,
    lc_transfer_report,
    lifted_clique_check,
    spine_length,
    tsp_vertex_set,
    verify_hp_tsp_merge,
)
from stskel.errors import ContractViolation
from stskel.graph import SpanningTree, enumerate_spanning_trees, leaf_count


def leaf_specs(n):
    for k in range(2, n - 1):
        for split in range(1, k):
            yield LeafFamilySpec.canonical(n, k, split)


def degree_specs(n):
    for k in range(2, n):
        if spine_length(n, k) >= 2:
            yield DegreeFamilySpec.canonical(n, k)


# ---------------------------------------------------------------------------
# Hamiltonian paths
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("ground, u, w, count", [
    ({0, 1}, 0, 1, 1), ({0, 1, 2}, 0, 2, 1), (range(5), 0, 4, 6), (range(6), 1, 3, 24),
])
def test_hp_counts(ground, u, w, count):
    vs = hp_vertex_set(ground, u, w, 6)
    assert len(vs) == count == factorial(len(list(ground)) - 2)


def test_hp_single_edge():
    vs = hp_vertex_set({2, 4}, 2, 4, 5)
    assert vs.labels == ("2-4",)
    assert sum(vs.vectors[0]) == 1


def test_hamiltonian_path_basics():
    p = HamiltonianPath((0, 3, 1))
    assert p.endpoints == (0, 1)
    assert p.pairs() == [(0, 3), (1, 3)]
    assert p.oriented(1).vertices == (1, 3, 0)
    with pytest.raises(ValueError):
        HamiltonianPath((0, 1, 0))
    with pytest.raises(ValueError):
        hamiltonian_paths({0, 1}, 0, 0)


# ---------------------------------------------------------------------------
# leaf family
# ---------------------------------------------------------------------------

def test_leaf_family_n5():
    spec = LeafFamilySpec(5, 2, 0, 2, (3,), (4,))
    trees = lc_family_trees(spec)
    assert len(trees) == 1
    assert set(trees[0].pairs) == {(0, 1), (1, 2), (0, 3), (2, 4)}
    assert lc_project(trees[0], spec).vertices == (0, 1, 2)
    assert lc_lift(HamiltonianPath((0, 1, 2)), spec) == trees[0]


def test_leaf_family_n6_k2():
    spec = LeafFamilySpec(6, 2, 0, 1, (4,), (5,))
    labels = [p.label() for p in lc_paths(spec)]
    assert labels == ["0-2-3-1", "0-3-2-1"]
    trees = lc_family_trees(spec)
    assert len(trees) == 2
    for t in trees:
        p = lc_project(t, spec)
        assert len(p.vertices) == 4 and p.endpoints == (0, 1)


def test_leaf_family_n6_k3():
    assert len(lc_family(LeafFamilySpec(6, 3, 0, 1, (3, 4), (5,)))) == 1


@pytest.mark.parametrize("n", range(4, 9))
def test_leaf_family_properties(n):
    for spec in leaf_specs(n):
        trees = lc_family_trees(spec)
        assert len(trees) == factorial(n - spec.k - 2)
        for t in trees:
            assert leaf_count(t) == spec.k
            assert frozenset(t.leaves()) == spec.leaf_set
            assert lc_lift(lc_project(t, spec), spec) == t
        for p in lc_paths(spec):
            assert lc_project(lc_lift(p, spec), spec) == p
        assert lc_projection_report(spec).ok


@pytest.mark.parametrize("n", range(4, 8))
def test_leaf_family_equals_filtered_trees(n):
    for spec in leaf_specs(n):
        pendant = set(spec.pendant_pairs())
        filtered = [t for t in enumerate_spanning_trees(n)
                    if frozenset(t.leaves()) == spec.leaf_set and pendant <= set(t.pairs)]
        assert sorted(filtered, key=lambda t: t.edges) == \
            sorted(lc_family_trees(spec), key=lambda t: t.edges)


def test_leaf_spec_rejects_bad_input():
    with pytest.raises(ValueError):
        LeafFamilySpec(5, 2, 0, 0, (3,), (4,))
    with pytest.raises(ValueError):
        LeafFamilySpec(5, 2, 0, 1, (3,), (3,))
    with pytest.raises(ValueError):
        LeafFamilySpec(5, 2, 0, 1, (3, 4), ())
    with pytest.raises(ValueError):
        LeafFamilySpec(4, 3, 0, 1, (2,), (3,))
    spec = LeafFamilySpec.canonical(6, 2)
    with pytest.raises(ValueError):
        lc_lift(HamiltonianPath((0, 2, 1)), spec)


def test_leaf_project_rejects_non_member():
    spec = LeafFamilySpec.canonical(6, 2)
    star = SpanningTree.from_pairs([(0, v) for v in range(1, 6)], 6)
    with pytest.raises(ContractViolation):
        lc_project(star, spec)
    # pendant edges present but a leaf carries an extra edge
    bad = SpanningTree.from_pairs([(0, 2), (1, 3), (2, 4), (4, 5), (1, 5)], 6)
    with pytest.raises(ContractViolation):
        lc_project(bad, spec)


@settings(max_examples=40, deadline=None)
@given(st.integers(5, 8), st.data())
def test_leaf_family_under_relabeling(n, data):
    k = data.draw(st.integers(2, n - 2))
    split = data.draw(st.integers(1, k - 1))
    perm = data.draw(st.permutations(range(n)))
    spec = LeafFamilySpec(n, k, perm[0], perm[1], tuple(perm[2:2 + split]),
                          tuple(perm[2 + split:2 + k]))
    assert lc_projection_report(spec).ok


# ---------------------------------------------------------------------------
# degree family
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("n, k, s", [(6, 3, 2), (8, 3, 3), (10, 3, 4), (11, 4, 3), (7, 2, 5)])
def test_spine_length(n, k, s):
    assert spine_length(n, k) == s


def test_degree_family_n6_k3():
    spec = DegreeFamilySpec.canonical(6, 3)
    assert spec.groups == ((0,), (1, 2), (3, 4), (5,))
    trees = dc_family_trees(spec)
    assert len(trees) == 1
    t = trees[0]
    assert set(t.pairs) == {(1, 2), (3, 4), (0, 1), (3, 5), (1, 3)}
    assert max(t.degrees) == 3
    assert dc_project(t, spec).vertices == (1, 3)


def test_degree_family_n11_k4():
    spec = DegreeFamilySpec.canonical(11, 4)
    assert spec.s == 3
    for t in dc_family_trees(spec):
        p = dc_project(t, spec)
        assert len(p.vertices) == 3
        assert dc_lift(p, spec) == t


@pytest.mark.parametrize("n", range(4, 9))
def test_degree_family_properties(n):
    for spec in degree_specs(n):
        trees = dc_family_trees(spec)
        assert len(trees) == factorial(spec.s - 2)
        v1, vs = spec.spine[0], spec.spine[-1]
        for t in trees:
            assert max(t.degrees) <= spec.k
            assert min(t.degrees[v1], t.degrees[vs]) >= spec.k - 1
            assert dc_lift(dc_project(t, spec), spec) == t
        for p in dc_paths(spec):
            assert dc_project(dc_lift(p, spec), spec) == p
        assert dc_projection_report(spec).ok


def test_degree_family_size_by_enumeration():
    # k=2 families are Hamiltonian paths of K_n from v_0 to v_{s+1} via v_1 and v_s
    spec = DegreeFamilySpec.canonical(7, 2)
    trees = dc_family_trees(spec)
    fixed = set(spec.fixed_pairs())
    ends = (spec.groups[0][0], spec.groups[-1][0])
    direct = [t for t in enumerate_spanning_trees(7)
              if max(t.degrees) <= 2 and fixed <= set(t.pairs)
              and all(t.degrees[v] == 1 for v in ends)]
    assert len(direct) == factorial(spec.s - 2) == 6
    assert sorted(t.edges for t in trees) == sorted(t.edges for t in direct)


def test_degree_spec_rejects_bad_input():
    with pytest.raises(ValueError):
        DegreeFamilySpec.canonical(5, 3)  # s = 1
    with pytest.raises(ValueError):
        DegreeFamilySpec(6, 3, ((0,), (1, 2), (3,), (4, 5)))
    with pytest.raises(ValueError):
        DegreeFamilySpec(6, 3, ((0,), (1, 2), (3, 4), (4,)))


def test_degree_project_rejects_non_member():
    spec = DegreeFamilySpec.canonical(7, 2)
    star = SpanningTree.from_pairs([(0, v) for v in range(1, 7)], 7)
    with pytest.raises(ContractViolation):
        dc_project(star, spec)


# ---------------------------------------------------------------------------
# adjacency transfer and tours
# ---------------------------------------------------------------------------

def test_transfer_n6_k2():
    rep = lc_transfer_report(LeafFamilySpec.canonical(6, 2))
    assert rep.ok and rep.pairs_checked == 1
    doc = json.loads(rep.to_json())
    assert set(doc) >= {"lemma", "params", "pairs_checked", "counterexamples", "wall_time_ms"}


def test_transfer_degree_k2_n6():
    rep = dc_transfer_report(DegreeFamilySpec.canonical(6, 2))
    assert rep.ok and rep.pairs_checked == 1


def test_singleton_family_transfer_is_vacuous():
    rep = dc_transfer_report(DegreeFamilySpec.canonical(8, 3))
    assert rep.ok and rep.pairs_checked == 0


def test_tsp_vertex_set_counts():
    assert len(tsp_vertex_set(range(4), 4)) == 3
    assert len(tsp_vertex_set(range(5), 5)) == 12


@pytest.mark.parametrize("size, pairs", [(4, 1), (5, 15)])
def test_hp_tsp_merge(size, pairs):
    rep = verify_hp_tsp_merge(range(size), 0, size - 1)
    assert rep.ok and rep.pairs_checked == pairs
    assert rep.details["closure_agreements"] == pairs


def test_hp_tsp_merge_trivial():
    assert verify_hp_tsp_merge(range(3), 0, 2).pairs_checked == 0


# ---------------------------------------------------------------------------
# bounds and lifting
# ---------------------------------------------------------------------------

def test_bound_examples():
    b = clique_bound("tsp", n=242)
    assert b.exponent == "1" and b.value == 2
    b = clique_bound("lcmst", n=203, k=2)
    assert b.m == 200 and b.exponent == "1/2"
    assert abs(b.value - Decimal(2).sqrt()) < Decimal("1e-25")
    b = clique_bound("dcmst", s=1)
    assert b.exponent == "-9/2" and b.vacuous
    assert abs(b.value - Decimal(2) ** Decimal("-4.5")) < Decimal("1e-25")


def test_bound_arguments():
    assert clique_bound("rlsmst", u_size=10, k=3).m == 6
    assert clique_bound("svmst", n=10, u_size=4).m == 5
    assert clique_bound("dcmst", n=10, k=3).m == 3


@pytest.mark.parametrize("kwargs", [
    {"theorem": "lcmst", "n": 5, "k": 5}, {"theorem": "tsp", "n": 2},
    {"theorem": "dcmst", "s": 0}, {"theorem": "svmst", "n": 4, "u_size": 4},
    {"theorem": "rlsmst", "u_size": 3}, {"theorem": "nope", "n": 5},
])
def test_bound_domain(kwargs):
    with pytest.raises(ValueError):
        clique_bound(**kwargs)


def test_lifted_clique_n6():
    rep = lifted_clique_check(LeafFamilySpec.canonical(6, 2))
    assert rep.ok
    assert rep.details["hp_clique_number"] == len(rep.details["lifted_clique"]) == 2
    assert rep.details["bound"]["vacuous"]


def test_lifted_clique_degree_singleton():
    rep = lifted_clique_check(DegreeFamilySpec.canonical(8, 3))
    assert rep.ok and rep.details["hp_clique_number"] == 1
