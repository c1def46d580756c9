import pytest
from hypothesis import given, settings
from strategies import clique_cases, degree_mst_cases, fes_cases, fvs_cases, steiner_cases

from qubomap import lucas
from qubomap.encoders import build, build_coloring, build_fvs, build_steiner, canonical_encode, decode
from qubomap.encoders import expected_energy, validate_weights
from qubomap.encoders.base import PenaltyWeights
from qubomap.lucas import (
    build_clique_lucas,
    build_coloring_lucas,
    build_fes_lucas,
    build_fvs_lucas,
    build_lucas,
    build_steiner_lucas,
    clique_example_graph,
    complete_graph,
)
from qubomap.problems import (
    CliqueInstance,
    Coloring,
    ColoringInstance,
    FeedbackEdgeSet,
    FeedbackVertexSet,
    FesInstance,
    FvsInstance,
    Graph,
    RootedTree,
    SteinerInstance,
    WeightedGraph,
    enumerate_small_instances,
    is_forest,
)
from qubomap.solvers import exhaustive_solve


def _minimum(em):
    return exhaustive_solve(em.model).best_energy


def test_catalog_has_required_cases():
    names = lucas.case_names()
    assert len(names) >= 5
    assert {"clique-B4C", "coloring-uncoloured", "mst-degree-exploit", "fvs-empty-set",
            "fes-height-exploit"} <= set(names)


@pytest.mark.parametrize("name", lucas.case_names())
def test_catalog_case_relations(name):
    case = lucas.get_case(name)
    result = lucas.verify_case(case)
    failed = [text for text, ok in result.checks if not ok]
    assert not failed
    e = result.energies
    assert e["incorrect_exploit"] < e["incorrect_honest"]
    assert e["corrected_exploit"] > e["corrected_honest"]


@pytest.mark.parametrize("name", lucas.case_names())
def test_catalog_exploit_is_never_feasible(name):
    case = lucas.get_case(name)
    for em in (case.incorrect, case.corrected):
        _, report = decode(em, em.assignment(case.exploit, strict=False))
        assert not report.ok


def test_unknown_case():
    with pytest.raises(KeyError):
        lucas.get_case("nope")


def test_clique_figure_graph_matches_example():
    assert clique_example_graph().edges == ((0, 1), (0, 2), (0, 3), (1, 2), (2, 3))


def test_clique_strict_range_lacks_top_indicator():
    em = build_clique_lucas(CliqueInstance(clique_example_graph()))
    assert em.num_vars == 6
    assert ("y", 4) not in em.registry
    ext = build_clique_lucas(CliqueInstance(clique_example_graph()), extended_range=True)
    assert ("y", 4) in ext.registry


def test_clique_weak_constraints_admit_b_le_c():
    inst = CliqueInstance(clique_example_graph())
    w = PenaltyWeights(a=10, b=2, c=3)
    assert not validate_weights(inst, w, "lucas")
    assert validate_weights(inst, w)


def test_clique_exploit_energy_formula():
    inst = CliqueInstance(clique_example_graph())
    w = PenaltyWeights(a=10, b=2, c=3)
    em = build_clique_lucas(inst, w, extended_range=True)
    bits = em.assignment([("x", v) for v in range(4)] + [("y", 4)])
    assert em.energy(bits) == w.b - 4 * w.c


def test_coloring_k5_shared_weight():
    em = build_coloring_lucas(ColoringInstance(complete_graph(5), 2), 1)
    result = exhaustive_solve(em.model)
    assert result.best_energy == 3
    assert all(None in decode(em, b)[0].colors for b in result.minima)


def test_coloring_proper_structure_best_is_four():
    em = build_coloring_lucas(ColoringInstance(complete_graph(5), 2), 1)
    assert em.energy(canonical_encode(em, Coloring((0, 0, 0, 1, 1)))) == 4


def test_coloring_colourable_instances_have_no_defect():
    for g in enumerate_small_instances("connected_graphs", max_vertices=4):
        inst = ColoringInstance(g, 4)
        assert _minimum(build_coloring_lucas(inst)) == _minimum(build_coloring(inst)) == 0
    assert _minimum(build_coloring_lucas(ColoringInstance(complete_graph(3), 3))) == 0


def test_steiner_edge_flags_are_redundant():
    wg = WeightedGraph.from_lists(3, [(0, 1), (1, 2)], [2, 3])
    inst = SteinerInstance(wg, frozenset({0, 2}))
    old, new = build_steiner_lucas(inst, strict=False), build_steiner(inst)
    assert old.num_vars == new.num_vars + len(wg.edges)
    w = new.weights
    old = build_steiner_lucas(inst, w, strict=False)
    assert _minimum(old) == _minimum(new) == 5 * w.b
    tree = RootedTree(frozenset(wg.edges))
    assert old.energy(canonical_encode(old, tree)) == new.energy(canonical_encode(new, tree))


def test_fvs_original_triangle_zero():
    case = lucas.get_case("fvs-empty-set")
    em = case.incorrect
    assert em.energy(em.assignment(case.exploit)) == 0


def test_fvs_original_on_a_tree_has_no_defect():
    em = build_fvs_lucas(FvsInstance(Graph(2, ((0, 1),))))
    result = exhaustive_solve(em.model)
    assert result.best_energy == 0
    assert decode(em, result.best)[0].vertices == frozenset()


def test_fvs_symmetrized_penalises_adjacent_deletions():
    inst = FvsInstance(complete_graph(4))
    em = build_fvs_lucas(inst, PenaltyWeights(a=2, b=1), "symmetrized")
    honest = canonical_encode(em, FeedbackVertexSet(frozenset({2, 3})))
    assert em.part_energy("A", honest) > 0
    assert em.energy(honest) > em.weights.b * 2


def test_fvs_acyclic_minima_agree():
    for g in enumerate_small_instances("connected_graphs", max_vertices=3):
        if not is_forest(g.num_vertices, g.edges):
            continue
        inst = FvsInstance(g)
        assert _minimum(build_fvs_lucas(inst)) == _minimum(build_fvs(inst)) == 0


def test_fvs_unknown_variant():
    with pytest.raises(ValueError):
        build_fvs_lucas(FvsInstance(complete_graph(3)), variant="mirrored")


def test_fes_honest_scores_b():
    em = build_fes_lucas(FesInstance(lucas.fes_example_digraph()), PenaltyWeights(a=9, b=2))
    assert em.energy(canonical_encode(em, FeedbackEdgeSet(frozenset({(4, 5)})))) == 2


def test_build_lucas_dispatch():
    em = build_lucas(ColoringInstance(complete_graph(3), 3))
    assert em.kind == "coloring_lucas"
    assert build_lucas(FvsInstance(complete_graph(3)), variant="symmetrized").options["variant"] == "symmetrized"
    with pytest.raises(TypeError):
        build_lucas(object())


@settings(max_examples=60)
@given(clique_cases())
def test_clique_lucas_canonical(case):
    inst, sol, energy_of = case
    em = build_clique_lucas(inst, extended_range=True, strict=False)
    bits = canonical_encode(em, sol)
    assert em.part_energy("A", bits) == 0
    assert em.energy(bits) == energy_of(em.weights) == expected_energy(em, sol)


@settings(max_examples=60)
@given(degree_mst_cases())
def test_mst_lucas_canonical(case):
    inst, sol, energy_of = case
    em = build_lucas(inst)
    bits = canonical_encode(em, sol)
    assert em.part_energy("A", bits) == 0
    assert em.energy(bits) == energy_of(em.weights) == expected_energy(em, sol)


@settings(max_examples=60)
@given(steiner_cases())
def test_steiner_lucas_canonical(case):
    inst, sol, energy_of = case
    em = build_lucas(inst)
    bits = canonical_encode(em, sol)
    assert em.part_energy("A", bits) == 0
    assert em.energy(bits) == energy_of(em.weights) == expected_energy(em, sol)


@settings(max_examples=60)
@given(fes_cases())
def test_fes_lucas_canonical(case):
    inst, sol, _ = case
    em = build_lucas(inst)
    bits = canonical_encode(em, sol)
    assert em.part_energy("A", bits) == 0
    assert em.energy(bits) == em.weights.b * len(sol.arcs) == expected_energy(em, sol)


@settings(max_examples=60)
@given(fvs_cases())
def test_fvs_lucas_expected_energy(case):
    inst, sol, _ = case
    for variant in ("original", "symmetrized"):
        em = build_lucas(inst, variant=variant)
        assert em.energy(canonical_encode(em, sol)) == expected_energy(em, sol)
    # the corrected model charges only the deletion count
    em = build(inst)
    assert em.energy(canonical_encode(em, sol)) == em.weights.c * len(sol.vertices)
