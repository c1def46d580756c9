"""Hypothesis strategies: random instances paired with feasible solutions.

Each ``*_cases`` strategy yields ``(instance, solution, energy_fn)`` where
``energy_fn(weights)`` is the analytic energy of the canonical encoding,
written out here independently of the package's own codecs.
"""

from __future__ import annotations

import itertools

from hypothesis import strategies as st

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
    N3dmInstance,
    NumberPartitionInstance,
    Partition,
    RootedTree,
    SteinerInstance,
    SubsetSelection,
    SubsetSumInstance,
    TripleMatching,
    WeightedGraph,
    is_forest,
)
from qubomap.qubo import QuboModel


def _edge(u, v):
    return (u, v) if u < v else (v, u)


@st.composite
def graphs(draw, min_vertices=2, max_vertices=6, connected=False):
    n = draw(st.integers(min_vertices, max_vertices))
    pairs = list(itertools.combinations(range(n), 2))
    edges = set(draw(st.sets(st.sampled_from(pairs), min_size=1 if not connected else 0)))
    if connected:
        edges |= set(draw(spanning_trees(n)))
    return Graph(n, tuple(sorted(edges)))


@st.composite
def spanning_trees(draw, n):
    """Random labelled tree on ``n`` vertices as a sorted edge tuple."""
    perm = draw(st.permutations(range(n)))
    edges = []
    for k in range(1, n):
        parent = draw(st.integers(0, k - 1))
        edges.append(_edge(perm[k], perm[parent]))
    return tuple(sorted(edges))


@st.composite
def qubo_models(draw, max_vars=8, max_coef=9):
    n = draw(st.integers(0, max_vars))
    coef = st.integers(-max_coef, max_coef).filter(bool)
    linear = draw(st.dictionaries(st.integers(0, n - 1), coef)) if n else {}
    pairs = list(itertools.combinations(range(n), 2))
    quadratic = draw(st.dictionaries(st.sampled_from(pairs), coef)) if pairs else {}
    offset = draw(st.integers(-max_coef, max_coef))
    return QuboModel(n, linear, quadratic, offset)


def weights3(max_value=12):
    return st.tuples(*(st.integers(1, max_value) for _ in range(3)))


# ---------------------------------------------------------------- instance + solution


@st.composite
def clique_cases(draw):
    g = draw(graphs(max_vertices=7))
    u, v = draw(st.sampled_from(g.edges))
    clique = {u, v}
    for w in draw(st.permutations(range(g.num_vertices))):
        if draw(st.booleans()) and all(g.has_edge(w, x) for x in clique if x != w):
            clique.add(w)
    return CliqueInstance(g), CliqueSet(frozenset(clique)), lambda w: -w.c * len(clique)


@st.composite
def coloring_cases(draw):
    n = draw(st.integers(2, 6))
    k = draw(st.integers(2, 4))
    colors = tuple(draw(st.lists(st.integers(0, k - 1), min_size=n, max_size=n)))
    pairs = [p for p in itertools.combinations(range(n), 2) if colors[p[0]] != colors[p[1]]]
    if not pairs:
        pairs = [(0, 1)]
    edges = draw(st.sets(st.sampled_from(pairs), min_size=1))
    g = Graph(n, tuple(sorted(edges)))
    conflicts = sum(colors[a] == colors[b] for a, b in g.edges)
    return ColoringInstance(g, k), Coloring(colors), lambda w: w.b * conflicts


def _costed(draw, g):
    costs = draw(st.lists(st.integers(1, 20), min_size=len(g.edges), max_size=len(g.edges)))
    return WeightedGraph.from_lists(g.num_vertices, g.edges, costs)


@st.composite
def degree_mst_cases(draw):
    n = draw(st.integers(2, 6))
    tree = draw(spanning_trees(n))
    pairs = list(itertools.combinations(range(n), 2))
    extra = draw(st.sets(st.sampled_from(pairs)))
    g = Graph(n, tuple(sorted(set(tree) | extra)))
    wg = _costed(draw, g)
    deg = max(sum(v in e for e in tree) for v in range(n))
    inst = DegreeMstInstance(wg, max(2, deg) + draw(st.integers(0, 1)))
    cost = sum(wg.cost[e] for e in tree)
    return inst, RootedTree(frozenset(tree)), lambda w: w.b * cost


@st.composite
def steiner_cases(draw):
    n = draw(st.integers(2, 6))
    tree = draw(spanning_trees(n))
    pairs = list(itertools.combinations(range(n), 2))
    g = Graph(n, tuple(sorted(set(tree) | draw(st.sets(st.sampled_from(pairs))))))
    wg = _costed(draw, g)
    # grow a connected subtree of the spanning tree from a random edge
    sub = {draw(st.sampled_from(tree))}
    for e in draw(st.permutations(tree)):
        touched = {v for s in sub for v in s}
        if e not in sub and (e[0] in touched or e[1] in touched) and draw(st.booleans()):
            sub.add(e)
    verts = sorted({v for e in sub for v in e})
    terminals = frozenset(draw(st.sets(st.sampled_from(verts), min_size=2)))
    cost = sum(wg.cost[e] for e in sub)
    return SteinerInstance(wg, terminals), RootedTree(frozenset(sub)), lambda w: w.b * cost


@st.composite
def fvs_cases(draw):
    g = draw(graphs(max_vertices=6))
    kept = []
    removed = set()
    for v in draw(st.permutations(range(g.num_vertices))):
        trial = kept + [v]
        sub = [e for e in g.edges if e[0] in trial and e[1] in trial]
        if draw(st.integers(0, 4)) and is_forest(g.num_vertices, sub):
            kept = trial
        else:
            removed.add(v)
    return FvsInstance(g), FeedbackVertexSet(frozenset(removed)), lambda w: w.c * len(removed)


@st.composite
def fes_cases(draw):
    n = draw(st.integers(2, 5))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    arcs = sorted(draw(st.sets(st.sampled_from(pairs), min_size=1, max_size=8)))
    order = draw(st.permutations(range(n)))
    pos = {v: k for k, v in enumerate(order)}
    back = {a for a in arcs if pos[a[0]] > pos[a[1]]}
    extra = draw(st.sets(st.sampled_from(arcs)))
    deleted = frozenset(back | extra)
    return FesInstance(Digraph(n, tuple(arcs))), FeedbackEdgeSet(deleted), lambda w: w.c * len(deleted)


@st.composite
def bin_packing_cases(draw):
    cap = draw(st.integers(1, 5))
    k = draw(st.integers(1, 4))
    ws = tuple(draw(st.lists(st.integers(1, cap), min_size=k, max_size=k)))
    load = [0] * k
    bins = []
    for w in ws:
        b = draw(st.sampled_from([i for i in range(k) if load[i] + w <= cap]))
        load[b] += w
        bins.append(b)
    used = len(set(bins))
    return BinPackingInstance(ws, cap, k), BinAssignment(tuple(bins)), lambda w: w.b * used


@st.composite
def number_partition_cases(draw):
    m = draw(st.integers(2, 3))
    values = tuple(draw(st.lists(st.integers(1, 6), min_size=1, max_size=6)))
    labels = draw(st.lists(st.integers(0, m - 1), min_size=len(values), max_size=len(values)))
    parts = tuple(frozenset(i for i, j in enumerate(labels) if j == p) for p in range(m))
    sums = [sum(values[i] for i in p) for p in parts]
    spread = sum((a - b) ** 2 for a, b in itertools.combinations(sums, 2))
    return NumberPartitionInstance(values, m), Partition(parts), lambda w: w.b * spread


@st.composite
def graph_partition_cases(draw):
    m = draw(st.integers(2, 3))
    size = draw(st.integers(1, 3))
    g = draw(graphs(min_vertices=m * size, max_vertices=m * size))
    perm = draw(st.permutations(range(g.num_vertices)))
    parts = tuple(frozenset(perm[p * size:(p + 1) * size]) for p in range(m))
    where = {v: p for p, part in enumerate(parts) for v in part}
    cut = sum(where[u] != where[v] for u, v in g.edges)
    return GraphPartitionInstance(g, m), Partition(parts), lambda w: 2 * w.c * cut


@st.composite
def subset_sum_cases(draw):
    values = tuple(draw(st.lists(st.integers(-5, 9), min_size=1, max_size=6)))
    chosen = frozenset(draw(st.sets(st.integers(0, len(values) - 1))))
    target = draw(st.integers(-10, 30))
    residual = sum(values[i] for i in chosen) - target
    return SubsetSumInstance(values, target), SubsetSelection(chosen), lambda w: residual ** 2


@st.composite
def n3dm_cases(draw):
    n = draw(st.integers(1, 3))
    xs = tuple(draw(st.lists(st.integers(1, 5), min_size=n, max_size=n)))
    ys = tuple(draw(st.lists(st.integers(1, 5), min_size=n, max_size=n)))
    zs = tuple(draw(st.lists(st.integers(1, 5), min_size=n, max_size=n)))
    b = draw(st.integers(3, 15))
    p = draw(st.permutations(range(n)))
    q = draw(st.permutations(range(n)))
    triples = tuple((i, p[i], q[i]) for i in range(n))
    miss = sum((xs[a] + ys[c] + zs[d] - b) ** 2 for a, c, d in triples)
    return N3dmInstance(xs, ys, zs, b), TripleMatching(triples), lambda w: w.b * miss


CASES = {
    "clique": clique_cases(),
    "coloring": coloring_cases(),
    "degree_mst": degree_mst_cases(),
    "steiner": steiner_cases(),
    "fvs": fvs_cases(),
    "fes": fes_cases(),
    "bin_packing": bin_packing_cases(),
    "number_partition": number_partition_cases(),
    "graph_partition": graph_partition_cases(),
    "subset_sum": subset_sum_cases(),
    "n3dm": n3dm_cases(),
}
