"""Depth-tracking tree encodings: degree-bounded MST, Steiner tree, feedback vertex set.

Shared variables, with ``d`` the depth bound:

* ``x[v,i]``   vertex ``v`` sits at depth ``i`` (0..d)
* ``x[u,v,i]`` the tree edge between u and v points from u (depth i-1) to v
  (depth i), i in 1..d; both orientations exist for every edge

Registry order is vertex-depth labels (vertex-major), then arc-depth labels
(edge-major, orientation ``(u,v)`` before ``(v,u)``), then problem-specific
labels.
"""

from __future__ import annotations

from ..errors import EncodingError
from ..problems import (
    DegreeMstInstance,
    FeedbackVertexSet,
    FvsInstance,
    RootedTree,
    SteinerInstance,
    objective,
)
from ..qubo import QuboBuilder, VariableRegistry
from .base import (
    PenaltyWeights,
    finish,
    forest_layout,
    gt,
    register_codec,
    register_rule,
    resolve_weights,
)

# ----------------------------------------------------------------- term helpers


def vertex_depth_labels(n: int, d: int) -> list:
    return [("x", v, i) for v in range(n) for i in range(d + 1)]


def arc_depth_labels(edges, d: int) -> list:
    out = []
    for u, v in edges:
        out += [("x", u, v, i) for i in range(1, d + 1)]
        out += [("x", v, u, i) for i in range(1, d + 1)]
    return out


def arc_sum(u, v, d, coef=1) -> list:
    """Terms of ``coef * sum_i (x[u,v,i] + x[v,u,i])``."""
    return [(("x", u, v, i), coef) for i in range(1, d + 1)] + [(("x", v, u, i), coef) for i in range(1, d + 1)]


def add_single_root(b: QuboBuilder, weight, vertices) -> None:
    b.square("A", weight, [(("x", v, 0), 1) for v in vertices], const=-1)


def depth_terms(v, d, coef=1) -> list:
    return [(("x", v, i), coef) for i in range(d + 1)]


def add_parent_terms(b: QuboBuilder, weight, graph, d) -> None:
    """``weight * sum_v sum_{i>=1} (x[v,i] - sum_u x[u,v,i])**2``: one parent per non-root."""
    for v in graph.vertices:
        for i in range(1, d + 1):
            b.square("A", weight, [(("x", v, i), 1)] + [(("x", u, v, i), -1) for u in graph.neighbours(v)])


def add_depth_consistency(b: QuboBuilder, weight, edges, d, part="A") -> None:
    """``x[u,v,i] (2 - x[u,i-1] - x[v,i])`` for both orientations of every edge."""
    for u, v in edges:
        for tail, head in ((u, v), (v, u)):
            for i in range(1, d + 1):
                arc = ("x", tail, head, i)
                b.linear(part, arc, 2 * weight)
                b.quadratic(part, arc, ("x", tail, i - 1), -weight)
                b.quadratic(part, arc, ("x", head, i), -weight)


def add_edge_cost(b: QuboBuilder, weight, wgraph, d) -> None:
    for (u, v), c in wgraph.cost.items():
        for lab, coef in arc_sum(u, v, d):
            b.linear("B", lab, weight * c * coef)


def tree_ones(n, edges, vertices, d, root=None) -> tuple[list, dict]:
    """Depth and arc labels set to 1 for the forest ``edges`` on ``vertices``."""
    depth, parent, roots = forest_layout(n, edges, vertices, d, root)
    ones = [("x", v, depth[v]) for v in sorted(depth)]
    ones += [("x", p, v, depth[v]) for v, p in sorted(parent.items())]
    return ones, depth


def _decode_tree(em, bits, wgraph, d):
    reg = em.registry
    used = frozenset(
        (u, v) for u, v in wgraph.edges if any(reg.value(bits, lab) for lab, _ in arc_sum(u, v, d))
    )
    roots = [v for v in range(wgraph.num_vertices) if reg.value(bits, ("x", v, 0))]
    return RootedTree(used, roots[0] if len(roots) == 1 else None)


def _mst_scale(inst):
    # two degree indicators on one vertex admit up to Δ-1 extra tree edges for a single A
    return inst.wgraph.max_cost * max(1, inst.max_degree - 1)


def _mst_rule(inst, w, options):
    return gt(w.a, _mst_scale(inst) * w.b, "A > max(1,Δ-1)·max(c)·B")


def _mst_default(inst, options):
    return PenaltyWeights(a=_mst_scale(inst) + 1, b=1)


def _steiner_scale(inst):
    # dropping one terminal can shed a whole branch, so A must exceed any tree's cost
    costs = sorted(inst.wgraph.cost.values(), reverse=True)
    return sum(costs[: inst.wgraph.num_vertices - 1])


def _steiner_rule(inst, w, options):
    return gt(w.a, _steiner_scale(inst) * w.b, "A > B·(largest tree cost)")


def _steiner_default(inst, options):
    return PenaltyWeights(a=_steiner_scale(inst) + 1, b=1)


def _tree_expected(em, sol):
    return em.weights.b * objective(em.problem, sol)


# ------------------------------------------------------------ degree-bounded MST


def mst_labels(inst: DegreeMstInstance, with_edge_flags=False) -> list:
    wg, d = inst.wgraph, inst.depth_bound
    labels = vertex_depth_labels(wg.num_vertices, d) + arc_depth_labels(wg.edges, d)
    if with_edge_flags:
        labels += [("y", u, v) for u, v in wg.edges]
    labels += [("z", v, j) for v in range(wg.num_vertices) for j in range(1, inst.max_degree + 1)]
    return labels


def add_degree_match(b: QuboBuilder, weight, inst: DegreeMstInstance) -> None:
    """``(sum_j j z[v,j] - tree degree of v)**2`` per vertex."""
    g, d = inst.wgraph.graph, inst.depth_bound
    for v in g.vertices:
        terms = [(("z", v, j), j) for j in range(1, inst.max_degree + 1)]
        for u in g.neighbours(v):
            terms += arc_sum(u, v, d, -1)
        b.square("A", weight, terms)


def build_degree_mst(inst: DegreeMstInstance, w: PenaltyWeights | None = None, *, strict: bool = True):
    w = resolve_weights(inst, w, "corrected", strict, {})
    wg, d, n = inst.wgraph, inst.depth_bound, inst.wgraph.num_vertices
    b = QuboBuilder(VariableRegistry(mst_labels(inst)))
    add_single_root(b, w.a, range(n))
    for v in range(n):
        b.square("A", w.a, depth_terms(v, d), const=-1)
    add_parent_terms(b, w.a, wg.graph, d)
    for v in range(n):
        b.square("A", w.a, [(("z", v, j), 1) for j in range(1, inst.max_degree + 1)], const=-1)
    add_degree_match(b, w.a, inst)
    add_depth_consistency(b, w.a, wg.edges, d)
    add_edge_cost(b, w.b, wg, d)
    return finish(b, inst, w, "degree_mst")


def mst_tree_ones(em, sol, root) -> list:
    """Depth/arc labels of ``sol`` without the degree indicators."""
    inst = em.problem
    ones, _ = tree_ones(inst.wgraph.num_vertices, sol.edges, range(inst.wgraph.num_vertices),
                        inst.depth_bound, root)
    return ones


def _tree_degrees(n, edges):
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    return deg


def _mst_canonical(em, sol, root):
    n = em.problem.wgraph.num_vertices
    ones = mst_tree_ones(em, sol, root)
    for v, k in enumerate(_tree_degrees(n, sol.edges)):
        if not 1 <= k <= em.problem.max_degree:
            raise EncodingError(f"vertex {v} has tree degree {k} outside 1..{em.problem.max_degree}")
        ones.append(("z", v, k))
    return ones


register_rule("degree_mst", "corrected", "ab", _mst_rule, _mst_default)
register_codec(
    "degree_mst",
    _mst_canonical,
    lambda em, bits: (_decode_tree(em, bits, em.problem.wgraph, em.problem.depth_bound), []),
    _tree_expected,
)


# ------------------------------------------------------------------ Steiner tree


def steiner_labels(inst: SteinerInstance, with_edge_flags=False) -> list:
    wg, d = inst.wgraph, inst.depth_bound
    labels = vertex_depth_labels(wg.num_vertices, d) + arc_depth_labels(wg.edges, d)
    labels += [("y", v) for v in range(wg.num_vertices) if v not in inst.terminals]
    if with_edge_flags:
        labels += [("y", u, v) for u, v in wg.edges]
    return labels


def add_steiner_core(b: QuboBuilder, weight, inst: SteinerInstance) -> None:
    wg, d, n = inst.wgraph, inst.depth_bound, inst.wgraph.num_vertices
    add_single_root(b, weight, range(n))
    for v in range(n):
        if v in inst.terminals:
            b.square("A", weight, depth_terms(v, d), const=-1)
        else:
            b.square("A", weight, [(("y", v), 1)] + depth_terms(v, d, -1))
    add_parent_terms(b, weight, wg.graph, d)
    add_depth_consistency(b, weight, wg.edges, d)


def build_steiner(inst: SteinerInstance, w: PenaltyWeights | None = None, *, strict: bool = True):
    """Steiner tree with the tree-cost objective; the redundant edge-flag term is left out."""
    w = resolve_weights(inst, w, "corrected", strict, {})
    b = QuboBuilder(VariableRegistry(steiner_labels(inst)))
    add_steiner_core(b, w.a, inst)
    add_edge_cost(b, w.b, inst.wgraph, inst.depth_bound)
    return finish(b, inst, w, "steiner")


def steiner_canonical(em, sol, root):
    inst = em.problem
    ones, depth = tree_ones(inst.wgraph.num_vertices, sol.edges, sol.vertices, inst.depth_bound, root)
    ones += [("y", v) for v in sorted(depth) if v not in inst.terminals]
    return ones


register_rule("steiner", "corrected", "ab", _steiner_rule, _steiner_default)
register_codec(
    "steiner",
    steiner_canonical,
    lambda em, bits: (_decode_tree(em, bits, em.problem.wgraph, em.problem.depth_bound), []),
    _tree_expected,
)


# -------------------------------------------------------- undirected feedback set


def fvs_labels(inst: FvsInstance) -> list:
    g, d = inst.graph, inst.depth_bound
    labels = vertex_depth_labels(g.num_vertices, d)
    labels += [("y", v) for v in g.vertices]
    for u, v in g.edges:
        labels += [("y", u, v), ("y", v, u)]
    return labels + arc_depth_labels(g.edges, d)


def add_fvs_vertex_terms(b: QuboBuilder, weight, inst: FvsInstance) -> None:
    """``(1 - y[v] - sum_i x[v,i])**2``: a vertex is deleted or has one depth."""
    for v in inst.graph.vertices:
        b.square("A", weight, [(("y", v), 1)] + depth_terms(v, inst.depth_bound), const=-1)


def add_flag_match(b: QuboBuilder, weight, inst: FvsInstance, mirrored: bool) -> None:
    """``(y[u,v] - y[v])**2`` per edge, plus ``(y[v,u] - y[u])**2`` when mirrored."""
    for u, v in inst.graph.edges:
        b.square("A", weight, [(("y", u, v), 1), (("y", v), -1)])
        if mirrored:
            b.square("A", weight, [(("y", v, u), 1), (("y", u), -1)])


def build_fvs(inst: FvsInstance, w: PenaltyWeights | None = None, *, strict: bool = True):
    """Feedback vertex set via a spanning forest of the kept vertices.

    The per-edge forest term is linear: ``B * (keep(u,v) - arcs(u,v))`` where
    ``keep = 1 - (y[u,v] + y[v,u] - y[u,v] y[v,u])`` is 1 exactly when neither
    endpoint is deleted. Every kept edge missing from the forest costs B, so
    each surviving cycle is charged B > C.
    """
    w = resolve_weights(inst, w, "corrected", strict, {})
    g, d = inst.graph, inst.depth_bound
    b = QuboBuilder(VariableRegistry(fvs_labels(inst)))
    add_fvs_vertex_terms(b, w.a, inst)
    add_flag_match(b, w.a, inst, mirrored=True)
    add_parent_terms(b, w.a, g, d)
    add_depth_consistency(b, w.a, g.edges, d)
    for u, v in g.edges:
        b.constant("B", w.b)
        b.linear("B", ("y", u, v), -w.b)
        b.linear("B", ("y", v, u), -w.b)
        b.quadratic("B", ("y", u, v), ("y", v, u), w.b)
        for lab, coef in arc_sum(u, v, d, -1):
            b.linear("B", lab, w.b * coef)
    for v in g.vertices:
        b.linear("C", ("y", v), w.c)
    return finish(b, inst, w, "fvs")


def fvs_canonical(em, sol, root):
    inst = em.problem
    g, removed = inst.graph, sol.vertices
    kept = [v for v in g.vertices if v not in removed]
    forest = [e for e in g.edges if e[0] not in removed and e[1] not in removed]
    ones, _ = tree_ones(g.num_vertices, forest, kept, inst.depth_bound, root)
    ones += [("y", v) for v in sorted(removed)]
    for u, v in g.edges:
        if v in removed:
            ones.append(("y", u, v))
        if u in removed:
            ones.append(("y", v, u))
    return ones


def fvs_decode(em, bits):
    reg = em.registry
    return FeedbackVertexSet(frozenset(v for v in em.problem.graph.vertices if reg.value(bits, ("y", v)))), []


def _fvs_rule(inst, w, options):
    return gt(w.a, w.b + 2 * w.c, "A > B + 2C") + gt(w.b, w.c, "B > C")


def _fvs_default(inst, options):
    c = 1
    b = c + 1
    return PenaltyWeights(a=b + 2 * c + 1, b=b, c=c)


register_rule("fvs", "corrected", "abc", _fvs_rule, _fvs_default)
register_codec("fvs", fvs_canonical, fvs_decode, lambda em, sol: em.weights.c * len(sol.vertices))
