"""Directed feedback edge set through vertex heights.

Variables (N vertices, heights 1..N):

* ``x[v,i]``   vertex ``v`` has height ``i``
* ``y[u,v]``   arc ``(u,v)`` is kept (not in the feedback set)
* ``x[u,v,i]`` kept arc ``(u,v)`` has edge-height ``i`` in 1..N-1, i.e. leaves
  a vertex of height ``i`` towards a higher vertex

With ``omit_y=True`` the ``y`` flags are dropped and an arc counts as kept when
one of its edge-height bits is set.
"""

from __future__ import annotations

from ..problems import FeedbackEdgeSet, FesInstance
from ..qubo import QuboBuilder, VariableRegistry
from .base import PenaltyWeights, finish, gt, register_codec, register_rule, resolve_weights


def fes_labels(inst: FesInstance, omit_y: bool = False) -> list:
    d = inst.digraph
    n = d.num_vertices
    labels = [("x", v, i) for v in d.vertices for i in range(1, n + 1)]
    if not omit_y:
        labels += [("y", u, v) for u, v in d.arcs]
    labels += [("x", u, v, i) for u, v in d.arcs for i in range(1, n)]
    return labels


def add_unique_heights(b: QuboBuilder, weight, inst: FesInstance) -> None:
    n = inst.digraph.num_vertices
    for v in inst.digraph.vertices:
        b.square("A", weight, [(("x", v, i), 1) for i in range(1, n + 1)], const=-1)


def add_kept_match(b: QuboBuilder, weight, inst: FesInstance) -> None:
    """``(y[u,v] - sum_i x[u,v,i])**2``: a kept arc has exactly one edge-height."""
    n = inst.digraph.num_vertices
    for u, v in inst.digraph.arcs:
        b.square("A", weight, [(("y", u, v), 1)] + [(("x", u, v, i), -1) for i in range(1, n)])


def add_height_order(b: QuboBuilder, part: str, weight, inst: FesInstance) -> None:
    """``x[u,v,i] (2 - x[u,i] - sum_{j>i} x[v,j])`` for every arc and edge-height."""
    n = inst.digraph.num_vertices
    for u, v in inst.digraph.arcs:
        for i in range(1, n):
            arc = ("x", u, v, i)
            b.linear(part, arc, 2 * weight)
            b.quadratic(part, arc, ("x", u, i), -weight)
            for j in range(i + 1, n + 1):
                b.quadratic(part, arc, ("x", v, j), -weight)


def add_deleted_count(b: QuboBuilder, part: str, weight, inst: FesInstance, omit_y: bool) -> None:
    n = inst.digraph.num_vertices
    for u, v in inst.digraph.arcs:
        b.constant(part, weight)
        if omit_y:
            for i in range(1, n):
                b.linear(part, ("x", u, v, i), -weight)
        else:
            b.linear(part, ("y", u, v), -weight)


def build_fes(inst: FesInstance, w: PenaltyWeights | None = None, *, omit_y: bool = False,
              strict: bool = True):
    """Height ordering enforced at weight B, deleted arcs counted at weight C."""
    w = resolve_weights(inst, w, "corrected", strict, {"omit_y": omit_y})
    b = QuboBuilder(VariableRegistry(fes_labels(inst, omit_y)))
    add_unique_heights(b, w.a, inst)
    if not omit_y:
        add_kept_match(b, w.a, inst)
    add_height_order(b, "B", w.b, inst)
    add_deleted_count(b, "C", w.c, inst, omit_y)
    return finish(b, inst, w, "fes", omit_y=omit_y)


def _fes_rule(inst, w, options):
    d = inst.digraph.max_degree
    if options.get("omit_y"):
        bound, text = inst.digraph.num_vertices * d * w.b, "A > N·Δ·B"
    else:
        bound, text = d * w.b, "A > Δ·B"
    return gt(w.a, bound, text) + gt(w.b, w.c, "B > C")


def _fes_default(inst, options):
    d = inst.digraph.max_degree
    c = 1
    b = c + 1
    scale = inst.digraph.num_vertices * d if options.get("omit_y") else d
    return PenaltyWeights(a=scale * b + 1, b=b, c=c)


register_rule("fes", "corrected", "abc", _fes_rule, _fes_default)


def height_order(n: int, arcs) -> list[int]:
    """Vertices of an acyclic digraph from lowest to highest height.

    Sources are peeled off one at a time; among available vertices the most
    recently freed is taken first, and vertices freed together are pushed in
    ascending order.
    """
    indeg = [0] * n
    out = [[] for _ in range(n)]
    for u, v in arcs:
        out[u].append(v)
        indeg[v] += 1
    stack = [v for v in range(n) if indeg[v] == 0]
    order = []
    while stack:
        u = stack.pop()
        order.append(u)
        for v in sorted(out[u]):
            indeg[v] -= 1
            if indeg[v] == 0:
                stack.append(v)
    if len(order) != n:
        raise ValueError("digraph has a cycle")
    return order


def fes_canonical(em, sol, root=None):
    d = em.problem.digraph
    kept = [a for a in d.arcs if a not in sol.arcs]
    height = {v: k + 1 for k, v in enumerate(height_order(d.num_vertices, kept))}
    ones = [("x", v, height[v]) for v in d.vertices]
    for u, v in kept:
        if not em.options.get("omit_y"):
            ones.append(("y", u, v))
        ones.append(("x", u, v, height[u]))
    return ones


def fes_decode(em, bits):
    d, reg = em.problem.digraph, em.registry
    n = d.num_vertices
    if em.options.get("omit_y"):
        kept = {a for a in d.arcs if any(reg.value(bits, ("x", *a, i)) for i in range(1, n))}
    else:
        kept = {a for a in d.arcs if reg.value(bits, ("y", *a))}
    return FeedbackEdgeSet(frozenset(a for a in d.arcs if a not in kept)), []


register_codec("fes", fes_canonical, fes_decode, lambda em, sol: em.weights.c * len(sol.arcs))
