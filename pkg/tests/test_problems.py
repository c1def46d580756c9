import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qubomap.errors import CapacityError, FeasibilityError, InstanceError
from qubomap.lucas import clique_example_graph, complete_graph, mst_example_graph
from qubomap.problems import (
    BinAssignment,
    BinPackingInstance,
    CliqueInstance,
    CliqueSet,
    Coloring,
    ColoringInstance,
    DegreeMstInstance,
    Digraph,
    FeedbackEdgeSet,
    FeedbackVertexSet,
    FesInstance,
    FvsInstance,
    Graph,
    GraphPartitionInstance,
    NumberPartitionInstance,
    Partition,
    RootedTree,
    SteinerInstance,
    SubsetSelection,
    SubsetSumInstance,
    WeightedGraph,
    brute_force_optimum,
    check_feasible,
    enumerate_small_instances,
    objective,
    problem_of,
    topological_order,
)

G = clique_example_graph()


def test_clique_feasibility():
    inst = CliqueInstance(G)
    assert check_feasible(inst, CliqueSet(frozenset({0, 1, 2}))).ok
    report = check_feasible(inst, CliqueSet(frozenset({0, 1, 2, 3})))
    assert not report.ok
    assert "missing edge (1, 3)" in str(report)


def test_uncoloured_vertex_reported():
    report = check_feasible(ColoringInstance(complete_graph(5), 2), Coloring((0, 0, 1, 1, None)))
    assert any("uncoloured vertex 4" in v for v in report.violations)


def test_variant_mismatch_is_type_error():
    with pytest.raises(TypeError):
        check_feasible(CliqueInstance(G), Coloring((0, 0, 0, 0)))


def test_objective_examples():
    mst = DegreeMstInstance(mst_example_graph(), 2)
    path = RootedTree(frozenset({(0, 1), (0, 2), (2, 4), (3, 4)}))
    assert objective(mst, path) == 10**6 + 3
    bins = BinPackingInstance((3, 3, 3), 5, 3)
    assert objective(bins, BinAssignment((0, 1, 2))) == 3
    assert objective(SubsetSumInstance((1, 2, 3), 6), SubsetSelection(frozenset({0, 1, 2}))) == 0
    assert objective(CliqueInstance(G), CliqueSet(frozenset({0, 2, 3}))) == -3


def test_objective_rejects_structurally_invalid():
    with pytest.raises(FeasibilityError):
        objective(CliqueInstance(G), CliqueSet(frozenset({0, 1, 2, 3})))


def test_brute_force_examples():
    cliques = brute_force_optimum(CliqueInstance(G))
    assert {c.vertices for c in cliques} == {frozenset({0, 1, 2}), frozenset({0, 2, 3})}
    fvs = brute_force_optimum(FvsInstance(complete_graph(3)))
    assert sorted(len(f.vertices) for f in fvs) == [1, 1, 1]


def test_brute_force_capacity():
    with pytest.raises(CapacityError):
        brute_force_optimum(CliqueInstance(complete_graph(8)), size_cap=100)


def test_unbalanced_partition_has_no_solution():
    assert brute_force_optimum(GraphPartitionInstance(complete_graph(3), 2)) == []


@pytest.mark.parametrize("make", [
    lambda: Graph(2, ((0, 0),)),
    lambda: Graph(2, ((0, 1), (1, 0))),
    lambda: Graph(2, ((0, 2),)),
    lambda: WeightedGraph.from_lists(2, [(0, 1)], [0]),
    lambda: BinPackingInstance((4,), 3, 1),
    lambda: SteinerInstance(mst_example_graph(), frozenset({0})),
    lambda: DegreeMstInstance(mst_example_graph(), 1),
    lambda: CliqueInstance(Graph(3, ())),
    lambda: NumberPartitionInstance((1, 2), 1),
])
def test_invalid_instances_rejected(make):
    with pytest.raises(InstanceError):
        make()


def test_fes_feasibility_uses_acyclicity():
    inst = FesInstance(Digraph(2, ((0, 1), (1, 0))))
    assert not check_feasible(inst, FeedbackEdgeSet(frozenset())).ok
    assert check_feasible(inst, FeedbackEdgeSet(frozenset({(1, 0)}))).ok


@given(st.integers(2, 5).flatmap(lambda n: st.tuples(
    st.just(n),
    st.sets(st.sampled_from([(u, v) for u in range(n) for v in range(n) if u != v]), min_size=1),
    st.data())))
def test_fes_feasibility_agrees_with_topological_sort(args):
    n, arcs, data = args
    deleted = data.draw(st.sets(st.sampled_from(sorted(arcs))))
    inst = FesInstance(Digraph(n, tuple(sorted(arcs))))
    kept = [a for a in arcs if a not in deleted]
    assert check_feasible(inst, FeedbackEdgeSet(frozenset(deleted))).ok == (topological_order(n, kept) is not None)


def test_corpus_counts():
    small = list(enumerate_small_instances("connected_graphs", max_vertices=3))
    assert sorted(len(g.edges) for g in small) == [1, 2, 3]  # P2, P3, K3
    assert len(list(enumerate_small_instances("digraphs", max_vertices=2))) == 3
    four = list(enumerate_small_instances("connected_graphs", max_vertices=4))
    assert len(four) == 9
    assert list(enumerate_small_instances("bin_packing", max_objects=2, max_capacity=3))


def test_corpus_is_deterministic():
    a = list(enumerate_small_instances("n3dm", max_n=2))
    assert a == list(enumerate_small_instances("n3dm", max_n=2))


def _small_instances():
    for g in enumerate_small_instances("connected_graphs", max_vertices=4):
        yield CliqueInstance(g)
        yield ColoringInstance(g, 2)
        yield FvsInstance(g)
        if g.num_vertices % 2 == 0:
            yield GraphPartitionInstance(g, 2)
    for g in enumerate_small_instances("connected_graphs", max_vertices=4):
        wg = WeightedGraph.from_lists(g.num_vertices, g.edges, [1 + k % 3 for k in range(len(g.edges))])
        yield DegreeMstInstance(wg, 2)
        yield SteinerInstance(wg, frozenset({0, g.num_vertices - 1}))
    yield from enumerate_small_instances("bin_packing", max_objects=3, max_capacity=3)
    for values in enumerate_small_instances("integer_sets", max_size=4):
        yield NumberPartitionInstance(values, 2)
        yield SubsetSumInstance(values, 3)
    yield from enumerate_small_instances("n3dm", max_n=2)
    for dg in itertools.islice(enumerate_small_instances("digraphs", max_vertices=3), 0, None, 5):
        yield FesInstance(dg)


@pytest.mark.parametrize("inst", list(_small_instances()), ids=lambda i: type(i).__name__)
def test_brute_force_optima_are_valid_and_minimal(inst):
    prob = problem_of(inst)
    optima = brute_force_optimum(inst)
    valid = [s for s in prob.candidates(inst) if not prob.structural(inst, s)]
    if not valid:
        assert optima == []
        return
    best = min(objective(inst, s) for s in valid)
    assert optima and all(objective(inst, s) == best for s in optima)
    for sol in optima:
        report = check_feasible(inst, sol)
        # exact-satisfaction problems may have no solution meeting the target
        assert report.ok or prob.satisfaction(inst, sol)


def test_partition_requires_disjoint_cover():
    inst = NumberPartitionInstance((1, 2, 3), 2)
    report = check_feasible(inst, Partition((frozenset({0, 1}), frozenset({1, 2}))))
    assert any("2 parts" in v for v in report.violations)


def test_fvs_feasibility():
    tri = FvsInstance(complete_graph(3))
    assert not check_feasible(tri, FeedbackVertexSet(frozenset())).ok
    assert check_feasible(tri, FeedbackVertexSet(frozenset({2}))).ok
