"""The original (flawed) formulations and the configurations that break them.

Each ``build_*_lucas`` reproduces a source Hamiltonian term for term, with its
weaker admissibility rule registered under the ``"lucas"`` variant. The
counterexample catalog pairs each flawed model with its corrected counterpart
and two configurations: an honest encoding of a true optimum and an exploit
that the flawed model prefers although it is not a valid solution.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field

from .encoders.base import (
    EncodedModel,
    PenaltyWeights,
    canonical_encode,
    decode,
    finish,
    gt,
    register_codec,
    register_rule,
    resolve_weights,
)
from .encoders.feedback import (
    add_height_order,
    add_kept_match,
    add_unique_heights,
    build_fes,
    fes_canonical,
    fes_decode,
    fes_labels,
)
from .encoders.graphs import (
    _coloring_canonical,
    _coloring_decode,
    build_clique,
    build_coloring,
    clique_hamiltonian,
    coloring_hamiltonian,
)
from .encoders.trees import (
    _decode_tree,
    _mst_canonical,
    _tree_expected,
    add_degree_match,
    add_depth_consistency,
    add_edge_cost,
    add_fvs_vertex_terms,
    add_flag_match,
    add_parent_terms,
    add_single_root,
    add_steiner_core,
    arc_sum,
    build_degree_mst,
    build_fvs,
    depth_terms,
    fvs_canonical,
    fvs_decode,
    fvs_labels,
    mst_labels,
    steiner_canonical,
    steiner_labels,
    tree_ones,
)
from .problems import (
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
    RootedTree,
    SteinerInstance,
    WeightedGraph,
    objective,
)
from .qubo import QuboBuilder, VariableRegistry

# ---------------------------------------------------------------------- clique


def build_clique_lucas(inst: CliqueInstance, w: PenaltyWeights | None = None, *,
                       extended_range: bool = False, strict: bool = True) -> EncodedModel:
    """Size indicators ``y[2..Δ]`` under the weak rule ``A > ΔB, C < A - ΔB``.

    ``extended_range=True`` adds ``y[Δ+1]`` while keeping the weak rule, which
    isolates the missing ``C < B`` condition.
    """
    w = resolve_weights(inst, w, "lucas", strict, {})
    d = inst.graph.max_degree
    return clique_hamiltonian(inst, w, max_size=d + 1 if extended_range else d)


def _clique_lucas_rule(inst, w, options):
    d = inst.graph.max_degree
    return gt(w.a, d * w.b, "A > Δ·B") + gt(w.a - d * w.b, w.c, "C < A - Δ·B")


def _clique_lucas_default(inst, options):
    # the source suggests B = C
    d = inst.graph.max_degree
    return PenaltyWeights(a=d + 2, b=1, c=1)


register_rule("clique", "lucas", "abc", _clique_lucas_rule, _clique_lucas_default)


# ------------------------------------------------------------------- colouring


def build_coloring_lucas(inst: ColoringInstance, a: int | None = None) -> EncodedModel:
    """One-hot and conflict terms sharing the single weight A."""
    w = PenaltyWeights(a=1 if a is None else a)
    return coloring_hamiltonian(inst, w.a, w.a, w, kind="coloring_lucas", conflict_part="A")


register_rule("coloring", "lucas", "a", lambda inst, w, options: [],
              lambda inst, options: PenaltyWeights(a=1))
register_codec("coloring_lucas", _coloring_canonical, _coloring_decode,
               lambda em, sol: em.weights.a * objective(em.problem, sol))


# ------------------------------------------------------------------ tree problems


def add_edge_flag_match(b: QuboBuilder, weight, edges, d) -> None:
    """``(y[u,v] - sum_i (x[u,v,i] + x[v,u,i]))**2``, the redundant edge-flag term."""
    for u, v in edges:
        b.square("A", weight, [(("y", u, v), 1)] + arc_sum(u, v, d, -1))


def build_degree_mst_lucas(inst: DegreeMstInstance, w: PenaltyWeights | None = None, *,
                           strict: bool = True) -> EncodedModel:
    """Keeps the edge flags ``y[u,v]`` and has no one-hot constraint on ``z[v,.]``."""
    w = resolve_weights(inst, w, "lucas", strict, {})
    wg, d, n = inst.wgraph, inst.depth_bound, inst.wgraph.num_vertices
    b = QuboBuilder(VariableRegistry(mst_labels(inst, with_edge_flags=True)))
    add_single_root(b, w.a, range(n))
    for v in range(n):
        b.square("A", w.a, depth_terms(v, d), const=-1)
    add_edge_flag_match(b, w.a, wg.edges, d)
    add_parent_terms(b, w.a, wg.graph, d)
    add_degree_match(b, w.a, inst)
    add_depth_consistency(b, w.a, wg.edges, d)
    add_edge_cost(b, w.b, wg, d)
    return finish(b, inst, w, "degree_mst_lucas")


def _with_edge_flags(canonical):
    def wrapped(em, sol, root):
        return list(canonical(em, sol, root)) + [("y", u, v) for u, v in sorted(sol.edges)]
    return wrapped


def _tree_rule(inst, w, options):
    return gt(w.a, inst.wgraph.max_cost * w.b, "A > max(c)·B")


def _tree_default(inst, options):
    return PenaltyWeights(a=inst.wgraph.max_cost + 1, b=1)


register_rule("degree_mst", "lucas", "ab", _tree_rule, _tree_default)
register_codec(
    "degree_mst_lucas",
    _with_edge_flags(_mst_canonical),
    lambda em, bits: (_decode_tree(em, bits, em.problem.wgraph, em.problem.depth_bound), []),
    _tree_expected,
)


def build_steiner_lucas(inst: SteinerInstance, w: PenaltyWeights | None = None, *,
                        strict: bool = True) -> EncodedModel:
    """Steiner tree including the edge-flag term, plus the tree-cost objective."""
    w = resolve_weights(inst, w, "lucas", strict, {})
    b = QuboBuilder(VariableRegistry(steiner_labels(inst, with_edge_flags=True)))
    add_steiner_core(b, w.a, inst)
    add_edge_flag_match(b, w.a, inst.wgraph.edges, inst.depth_bound)
    add_edge_cost(b, w.b, inst.wgraph, inst.depth_bound)
    return finish(b, inst, w, "steiner_lucas")


register_rule("steiner", "lucas", "ab", _tree_rule, _tree_default)
register_codec(
    "steiner_lucas",
    _with_edge_flags(steiner_canonical),
    lambda em, bits: (_decode_tree(em, bits, em.problem.wgraph, em.problem.depth_bound), []),
    _tree_expected,
)


# ------------------------------------------------------------ feedback vertex set

FVS_VARIANTS = ("original", "symmetrized")


def build_fvs_lucas(inst: FvsInstance, w: PenaltyWeights | None = None, variant: str = "original", *,
                    strict: bool = True) -> EncodedModel:
    """Feedback vertex set with the per-edge term ``(1 - sum_i (x + x + y + y))**2``.

    ``original`` keeps the edge flags inside the depth sum, so each flag is
    counted once per depth level, and has no mirrored flag term.
    ``symmetrized`` moves the flags outside the sum and adds
    ``(y[v,u] - y[u])**2``.
    """
    if variant not in FVS_VARIANTS:
        raise ValueError(f"variant must be one of {FVS_VARIANTS}, got {variant!r}")
    w = resolve_weights(inst, w, "lucas", strict, {})
    g, d = inst.graph, inst.depth_bound
    flag_coef = d if variant == "original" else 1
    b = QuboBuilder(VariableRegistry(fvs_labels(inst)))
    add_fvs_vertex_terms(b, w.a, inst)
    for u, v in g.edges:
        b.square("A", w.a, arc_sum(u, v, d) + [(("y", u, v), flag_coef), (("y", v, u), flag_coef)],
                 const=-1)
    add_flag_match(b, w.a, inst, mirrored=variant == "symmetrized")
    add_parent_terms(b, w.a, g, d)
    add_depth_consistency(b, w.a, g.edges, d)
    for v in g.vertices:
        b.linear("B", ("y", v), w.b)
    return finish(b, inst, w, "fvs_lucas", variant=variant)


def _fvs_lucas_expected(em, sol):
    """B|F| plus the edge-term residue left by edges touching F."""
    d = em.problem.depth_bound
    flag = d if em.options["variant"] == "original" else 1
    total = em.weights.b * len(sol.vertices)
    for u, v in em.problem.graph.edges:
        hits = (u in sol.vertices) + (v in sol.vertices)
        total += em.weights.a * (1 - flag * hits) ** 2 if hits else 0
    return total


register_rule("fvs", "lucas", "ab", lambda inst, w, options: gt(w.a, w.b, "A > B"),
              lambda inst, options: PenaltyWeights(a=2, b=1))
register_codec("fvs_lucas", fvs_canonical, fvs_decode, _fvs_lucas_expected)


# -------------------------------------------------------------- feedback edge set


def build_fes_lucas(inst: FesInstance, w: PenaltyWeights | None = None, *, strict: bool = True) -> EncodedModel:
    """Height-order term inside the A block; deleted arcs counted at weight B."""
    w = resolve_weights(inst, w, "lucas", strict, {})
    b = QuboBuilder(VariableRegistry(fes_labels(inst)))
    add_unique_heights(b, w.a, inst)
    add_kept_match(b, w.a, inst)
    add_height_order(b, "A", w.a, inst)
    for u, v in inst.digraph.arcs:
        b.constant("B", w.b)
        b.linear("B", ("y", u, v), -w.b)
    return finish(b, inst, w, "fes_lucas", omit_y=False)


register_rule("fes", "lucas", "ab", lambda inst, w, options: gt(w.a, w.b, "A > B"),
              lambda inst, options: PenaltyWeights(a=2, b=1))
register_codec("fes_lucas", fes_canonical, fes_decode, lambda em, sol: em.weights.b * len(sol.arcs))


def build_lucas(inst, weights: PenaltyWeights | None = None, **options) -> EncodedModel:
    """Flawed model for any problem that has one."""
    if isinstance(inst, CliqueInstance):
        return build_clique_lucas(inst, weights, **options)
    if isinstance(inst, ColoringInstance):
        options.pop("strict", None)
        return build_coloring_lucas(inst, None if weights is None else weights.a, **options)
    builders = {
        DegreeMstInstance: build_degree_mst_lucas,
        SteinerInstance: build_steiner_lucas,
        FvsInstance: build_fvs_lucas,
        FesInstance: build_fes_lucas,
    }
    builder = builders.get(type(inst))
    if builder is None:
        raise TypeError(f"no flawed formulation for {type(inst).__name__}")
    return builder(inst, weights, **options)


# -------------------------------------------------------------------- fixtures


def clique_example_graph() -> Graph:
    """Four vertices, five edges; the maximum cliques are {0,1,2} and {0,2,3}."""
    return Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)])


def mst_example_graph() -> WeightedGraph:
    """Five vertices where the only degree-2 spanning trees use the 10**6 edge."""
    return WeightedGraph.from_lists(5, [(0, 1), (0, 2), (0, 3), (2, 4), (3, 4)], [1, 1, 1, 10**6, 1])


def fes_example_digraph() -> Digraph:
    """Six vertices, nine arcs; deleting (4,5) alone makes it acyclic."""
    return Digraph(6, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 1), (4, 5), (5, 0), (5, 1)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


# -------------------------------------------------------------------- catalog


@dataclass(frozen=True)
class CounterexampleCase:
    """A flawed model, its correction, and the configurations that separate them.

    ``exploit`` lists the labels set to 1; labels missing from one model's
    registry (such as edge flags the corrected model dropped) are ignored there.
    ``expected`` pins exact energies under keys ``incorrect_exploit``,
    ``incorrect_honest``, ``corrected_exploit`` and ``corrected_honest``.
    """

    name: str
    summary: str
    incorrect: EncodedModel
    corrected: EncodedModel
    exploit: tuple
    honest: object
    expected: Mapping = field(default_factory=dict)
    notes: str = ""


@dataclass(frozen=True)
class CaseResult:
    case: CounterexampleCase
    energies: Mapping
    checks: tuple  # (description, passed)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)


def _mst_exploit() -> tuple:
    wg = mst_example_graph()
    edges = [(0, 1), (0, 2), (0, 3), (3, 4)]
    ones, _ = tree_ones(5, edges, range(5), 2, root=0)
    degree = {0: (1, 2), 1: (1,), 2: (1,), 3: (2,), 4: (1,)}
    ones += [("z", v, j) for v, js in degree.items() for j in js]
    ones += [("y", u, v) for u, v in edges]
    assert all(e in wg.cost for e in edges)
    return tuple(ones)


def counterexample_catalog() -> list[CounterexampleCase]:
    cases = []

    g = clique_example_graph()
    inst = CliqueInstance(g)
    weak = PenaltyWeights(a=10, b=2, c=3)
    cases.append(CounterexampleCase(
        name="clique-B4C",
        summary="weak clique weights (B <= C) reward taking all four vertices",
        incorrect=build_clique_lucas(inst, weak, extended_range=True),
        corrected=build_clique(inst, PenaltyWeights(a=9, b=2, c=1)),
        exploit=tuple([("x", v) for v in g.vertices] + [("y", 4)]),
        honest=CliqueSet(frozenset({0, 1, 2})),
        expected={"incorrect_exploit": weak.b - 4 * weak.c, "incorrect_honest": -3 * weak.c,
                  "corrected_exploit": -2, "corrected_honest": -3},
        notes="size indicator range extended to Δ+1 so that y[4] exists",
    ))

    k5 = ColoringInstance(complete_graph(5), 2)
    cases.append(CounterexampleCase(
        name="coloring-uncoloured",
        summary="a shared weight makes leaving a vertex uncoloured cheaper than a conflict",
        incorrect=build_coloring_lucas(k5, 1),
        corrected=build_coloring(k5, PenaltyWeights(a=5, b=1)),
        exploit=(("x", 0, 0), ("x", 1, 0), ("x", 2, 1), ("x", 3, 1)),
        honest=Coloring((0, 0, 0, 1, 1)),
        expected={"incorrect_exploit": 3, "incorrect_honest": 4,
                  "corrected_exploit": 7, "corrected_honest": 4},
    ))

    mst = DegreeMstInstance(mst_example_graph(), 2)
    mw = PenaltyWeights(a=10**6 + 1, b=1)
    cases.append(CounterexampleCase(
        name="mst-degree-exploit",
        summary="two degree indicators on one vertex let it exceed the degree bound",
        incorrect=build_degree_mst_lucas(mst, mw),
        corrected=build_degree_mst(mst, mw),
        exploit=_mst_exploit(),
        honest=RootedTree(frozenset({(0, 1), (0, 2), (2, 4), (3, 4)})),
        expected={"incorrect_exploit": 4, "incorrect_honest": 10**6 + 3,
                  "corrected_exploit": mw.a + 4, "corrected_honest": 10**6 + 3},
    ))

    tri = FvsInstance(complete_graph(3))
    cases.append(CounterexampleCase(
        name="fvs-empty-set",
        summary="an unmirrored edge flag hides the cycle's extra edge at zero cost",
        incorrect=build_fvs_lucas(tri, PenaltyWeights(a=2, b=1), "original"),
        corrected=build_fvs(tri, PenaltyWeights(a=5, b=2, c=1)),
        exploit=(("x", 0, 0), ("x", 1, 1), ("x", 2, 1), ("x", 0, 1, 1), ("x", 0, 2, 1), ("y", 2, 1)),
        honest=FeedbackVertexSet(frozenset({0})),
        expected={"incorrect_exploit": 0, "incorrect_honest": 1,
                  "corrected_exploit": 5, "corrected_honest": 1},
    ))

    k4 = FvsInstance(complete_graph(4))
    cases.append(CounterexampleCase(
        name="fvs-symmetrized-adjacent",
        summary="with the mirror term, deleting two adjacent vertices still costs A",
        incorrect=build_fvs_lucas(k4, PenaltyWeights(a=2, b=1), "symmetrized"),
        corrected=build_fvs(k4, PenaltyWeights(a=5, b=2, c=1)),
        exploit=(("x", 0, 0), ("x", 1, 1), ("x", 2, 1), ("x", 0, 1, 1), ("x", 0, 2, 1),
                 ("y", 3), ("y", 0, 3), ("y", 1, 3), ("y", 2, 3)),
        honest=FeedbackVertexSet(frozenset({2, 3})),
        expected={"incorrect_exploit": 3, "incorrect_honest": 4,
                  "corrected_exploit": 3, "corrected_honest": 2},
        notes="complete graph on four vertices stands in for the unrecoverable figure graph",
    ))

    fes = FesInstance(fes_example_digraph())
    honest = FeedbackEdgeSet(frozenset({(4, 5)}))
    lucas_fes = build_fes_lucas(fes, PenaltyWeights(a=9, b=2))
    extra = (("x", 1, 5), ("y", 4, 5), ("x", 4, 5, 2))
    cases.append(CounterexampleCase(
        name="fes-height-exploit",
        summary="a second height on one vertex makes the height-order term negative",
        incorrect=lucas_fes,
        corrected=build_fes(fes, PenaltyWeights(a=9, b=2, c=1)),
        exploit=tuple(fes_canonical(lucas_fes, honest)) + extra,
        honest=honest,
        expected={"incorrect_exploit": 0, "incorrect_honest": 2,
                  "corrected_exploit": 7, "corrected_honest": 1},
        notes="termwise: +A for the double height, -3A from arcs into vertex 1, "
              "+2A from the misplaced arc (4,5), so the flawed energy is 0",
    ))
    return cases


def case_names() -> list[str]:
    return [c.name for c in counterexample_catalog()]


def get_case(name: str) -> CounterexampleCase:
    for c in counterexample_catalog():
        if c.name == name:
            return c
    raise KeyError(f"unknown case {name!r}; known: {', '.join(case_names())}")


def verify_case(case: CounterexampleCase) -> CaseResult:
    """Evaluate both models at both configurations and check the relations."""
    energies = {}
    for side, em in (("incorrect", case.incorrect), ("corrected", case.corrected)):
        energies[f"{side}_exploit"] = em.energy(em.assignment(case.exploit, strict=False))
        energies[f"{side}_honest"] = em.energy(canonical_encode(em, case.honest))
    _, report = decode(case.corrected, case.corrected.assignment(case.exploit, strict=False))
    honest_bits = canonical_encode(case.corrected, case.honest)
    checks = [
        ("incorrect model prefers the exploit", energies["incorrect_exploit"] < energies["incorrect_honest"]),
        ("corrected model prefers the honest solution",
         energies["corrected_exploit"] > energies["corrected_honest"]),
        ("exploit decodes to an invalid solution", not report.ok),
        ("honest encoding has zero penalty in the corrected model",
         case.corrected.part_energy("A", honest_bits) == 0),
    ]
    for key, value in case.expected.items():
        checks.append((f"{key} == {value}", energies[key] == value))
    return CaseResult(case, energies, tuple(checks))


def verify_catalog() -> list[CaseResult]:
    return [verify_case(c) for c in counterexample_catalog()]
