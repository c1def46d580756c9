"""Clique, graph colouring and graph partitioning encodings."""

from __future__ import annotations

import itertools
from fractions import Fraction

from ..errors import EncodingError
from ..problems import (
    CliqueInstance,
    CliqueSet,
    Coloring,
    ColoringInstance,
    Graph,
    GraphPartitionInstance,
    Partition,
    objective,
)
from ..qubo import QuboBuilder, VariableRegistry
from .base import (
    PenaltyWeights,
    finish,
    gt,
    register_codec,
    register_rule,
    resolve_weights,
)

# ---------------------------------------------------------------------- clique


def log_size_coefficients(max_degree: int) -> list[int]:
    """Bit weights encoding clique sizes ``2 .. max_degree + 2`` as ``2 + sum``.

    The first ``M = floor(log2(max_degree + 1))`` bits carry powers of two and a
    correction bit carries ``max_degree - 2**M + 1``; the correction bit is
    dropped when that weight is zero.
    """
    m = (max_degree + 1).bit_length() - 1
    coeffs = [1 << k for k in range(m)]
    tail = max_degree - (1 << m) + 1
    if tail:
        coeffs.append(tail)
    return coeffs


def _size_terms(inst, encoding, max_size):
    """Labels and the affine size expression ``(terms, const)``."""
    if encoding == "one_hot":
        labels = [("y", i) for i in range(2, max_size + 1)]
        return labels, [(lab, lab[1]) for lab in labels], 0
    if encoding == "log":
        coeffs = log_size_coefficients(inst.graph.max_degree)
        labels = [("yt", k) for k in range(len(coeffs))]
        return labels, list(zip(labels, coeffs)), 2
    raise EncodingError(f"unknown clique size encoding {encoding!r}")


def clique_hamiltonian(inst: CliqueInstance, w: PenaltyWeights, *, encoding="one_hot",
                       max_size=None, kind="clique"):
    """Max-clique Hamiltonian with size indicators up to ``max_size``.

    ``max_size`` defaults to Δ+1, the largest clique the graph can hold.
    """
    g = inst.graph
    if max_size is None:
        max_size = g.max_degree + 1
    size_labels, size, size_const = _size_terms(inst, encoding, max_size)
    reg = VariableRegistry([("x", v) for v in g.vertices] + size_labels)
    b = QuboBuilder(reg)
    a_, b_, c_ = w.a, w.b, w.c
    if encoding == "one_hot":
        b.square("A", a_, [(lab, 1) for lab in size_labels], const=-1)
    b.square("A", a_, size + [(("x", v), -1) for v in g.vertices], const=size_const)
    # B * K(K-1)/2 with K the encoded size
    half = Fraction(b_, 2)
    b.square("B", half, size, const=size_const)
    for lab, coef in size:
        b.linear("B", lab, -half * coef)
    b.constant("B", -half * size_const)
    for u, v in g.edges:
        b.quadratic("B", ("x", u), ("x", v), -b_)
    for v in g.vertices:
        b.linear("C", ("x", v), -c_)
    return finish(b, inst, w, kind, encoding=encoding, max_size=max_size)


def build_clique(inst: CliqueInstance, w: PenaltyWeights | None = None, encoding: str = "one_hot",
                 *, strict: bool = True):
    w = resolve_weights(inst, w, "corrected", strict, {"encoding": encoding})
    return clique_hamiltonian(inst, w, encoding=encoding)


def _clique_rule(inst, w, options):
    d = inst.graph.max_degree
    return gt(w.a, d * w.b, "A > Δ·B") + gt(w.a - d * w.b, w.c, "C < A - Δ·B") + gt(w.b, w.c, "C < B")


def _clique_default(inst, options):
    d = inst.graph.max_degree
    c = 1
    b = c + 1
    return PenaltyWeights(a=d * b + c + 1, b=b, c=c)


register_rule("clique", "corrected", "abc", _clique_rule, _clique_default)


def _clique_canonical(em, sol, root):
    k = len(sol.vertices)
    ones = [("x", v) for v in sorted(sol.vertices)]
    if em.options["encoding"] == "one_hot":
        if not 2 <= k <= em.options["max_size"]:
            raise EncodingError(f"clique size {k} outside encodable range 2..{em.options['max_size']}")
        return ones + [("y", k)]
    coeffs = log_size_coefficients(em.problem.graph.max_degree)
    r = k - 2
    if not 0 <= r <= sum(coeffs):
        raise EncodingError(f"clique size {k} outside encodable range")
    m = (em.problem.graph.max_degree + 1).bit_length() - 1
    bits = []
    if r >= 1 << m:
        bits.append(m)
        r -= coeffs[m]
    bits += [t for t in range(m) if r >> t & 1]
    return ones + [("yt", t) for t in sorted(bits)]


def _clique_decode(em, bits):
    reg = em.registry
    return CliqueSet(frozenset(v for v in em.problem.graph.vertices if reg.value(bits, ("x", v)))), []


def _clique_expected(em, sol):
    return -em.weights.c * len(sol.vertices)


register_codec("clique", _clique_canonical, _clique_decode, _clique_expected)


# -------------------------------------------------------------------- colouring


def coloring_hamiltonian(inst: ColoringInstance, one_hot_weight: int, conflict_weight: int,
                         w, kind="coloring", conflict_part="B"):
    g, n = inst.graph, inst.n_colors
    reg = VariableRegistry([("x", v, i) for v in g.vertices for i in range(n)])
    b = QuboBuilder(reg)
    for v in g.vertices:
        b.square("A", one_hot_weight, [(("x", v, i), 1) for i in range(n)], const=-1)
    for u, v in g.edges:
        for i in range(n):
            b.quadratic(conflict_part, ("x", u, i), ("x", v, i), conflict_weight)
    return finish(b, inst, w, kind)


def build_coloring(inst: ColoringInstance, w: PenaltyWeights | None = None, *, strict: bool = True):
    w = resolve_weights(inst, w, "corrected", strict, {})
    return coloring_hamiltonian(inst, w.a, w.b, w)


def build_two_coloring(graph: Graph):
    """Single-bit colours: one unit of energy per monochromatic edge."""
    inst = ColoringInstance(graph, 2)
    reg = VariableRegistry([("x", v) for v in graph.vertices])
    b = QuboBuilder(reg)
    for u, v in graph.edges:
        b.constant("H", 1)
        b.linear("H", ("x", u), -1)
        b.linear("H", ("x", v), -1)
        b.quadratic("H", ("x", u), ("x", v), 2)
    return finish(b, inst, None, "two_coloring")


def _coloring_rule(inst, w, options):
    d = inst.graph.max_degree
    return gt(w.a, d * w.b, "A > Δ·B")


def _coloring_default(inst, options):
    return PenaltyWeights(a=inst.graph.max_degree + 1, b=1)


register_rule("coloring", "corrected", "ab", _coloring_rule, _coloring_default)


def _coloring_canonical(em, sol, root):
    return [("x", v, c) for v, c in enumerate(sol.colors)]


def _coloring_decode(em, bits):
    reg, n = em.registry, em.problem.n_colors
    colors, notes = [], []
    for v in em.problem.graph.vertices:
        on = [i for i in range(n) if reg.value(bits, ("x", v, i))]
        if len(on) > 1:
            notes.append(f"vertex {v} assigned {len(on)} colours {on}")
        colors.append(on[0] if len(on) == 1 else None)
    return Coloring(tuple(colors)), notes


def _coloring_expected(em, sol):
    return em.weights.b * objective(em.problem, sol)


register_codec("coloring", _coloring_canonical, _coloring_decode, _coloring_expected)


def _two_canonical(em, sol, root):
    if any(c not in (0, 1) for c in sol.colors):
        raise EncodingError("binary colouring needs colours 0 and 1")
    return [("x", v) for v, c in enumerate(sol.colors) if c == 1]


def _two_decode(em, bits):
    return Coloring(tuple(int(b) for b in bits)), []


register_codec("two_coloring", _two_canonical, _two_decode, lambda em, sol: objective(em.problem, sol))


# -------------------------------------------------------------- graph partitioning


def build_graph_partition(inst: GraphPartitionInstance, w: PenaltyWeights | None = None, *,
                          strict: bool = True):
    w = resolve_weights(inst, w, "corrected", strict, {})
    g, m = inst.graph, inst.parts
    reg = VariableRegistry([("x", v, j) for v in g.vertices for j in range(m)])
    b = QuboBuilder(reg)
    for v in g.vertices:
        b.square("A", w.a, [(("x", v, j), 1) for j in range(m)], const=-1)
    for j1, j2 in itertools.combinations(range(m), 2):
        b.square("B", w.b, [(("x", v, j1), 1) for v in g.vertices] + [(("x", v, j2), -1) for v in g.vertices])
    for j in range(m):
        for u, v in g.edges:
            b.linear("C", ("x", u, j), w.c)
            b.linear("C", ("x", v, j), w.c)
            b.quadratic("C", ("x", u, j), ("x", v, j), -2 * w.c)
    return finish(b, inst, w, "graph_partition")


def _gp_bound(inst):
    m, n, d = inst.parts, inst.graph.num_vertices, inst.graph.max_degree
    return min(m * d, n), m * (m + 2)


def _gp_rule(inst, w, options):
    num, den = _gp_bound(inst)
    # A > CΔ also rules out dropping vertices from every part, which frees at
    # most C per incident cut edge; the shift argument alone does not cover it
    return (gt(w.a, w.b, "A > B") + gt(w.a, w.c * inst.graph.max_degree, "A > CΔ")
            + gt(w.b, Fraction(w.c * num, den), "B > C·min(mΔ,N)/(m(m+2))"))


def _gp_default(inst, options):
    num, den = _gp_bound(inst)
    c = 1
    b = c * num // den + 1
    return PenaltyWeights(a=max(b, c * inst.graph.max_degree) + 1, b=b, c=c)


register_rule("graph_partition", "corrected", "abc", _gp_rule, _gp_default)


def _partition_canonical(em, sol, root):
    return [("x", i, j) for j, part in enumerate(sol.parts) for i in sorted(part)]


def partition_decode(em, bits, size, parts):
    reg = em.registry
    return Partition(tuple(
        frozenset(i for i in range(size) if reg.value(bits, ("x", i, j))) for j in range(parts)
    )), []


register_codec(
    "graph_partition",
    _partition_canonical,
    lambda em, bits: partition_decode(em, bits, em.problem.graph.num_vertices, em.problem.parts),
    lambda em, sol: 2 * em.weights.c * objective(em.problem, sol),
)
