"""Bin packing, number partitioning, subset sum and numerical 3D matching."""

from __future__ import annotations

from ..problems import (
    BinAssignment,
    BinPackingInstance,
    N3dmInstance,
    NumberPartitionInstance,
    SubsetSelection,
    SubsetSumInstance,
    TripleMatching,
    objective,
)
from ..qubo import QuboBuilder, VariableRegistry
from .base import PenaltyWeights, finish, gt, register_codec, register_rule, resolve_weights
from .graphs import _partition_canonical, partition_decode

# ------------------------------------------------------------------ bin packing


def bin_packing_labels(inst: BinPackingInstance) -> list:
    n, k, cap = inst.num_bins, len(inst.weights), inst.capacity
    return (
        [("x", i, j) for i in range(n) for j in range(k)]
        + [("x", i) for i in range(n)]
        + [("y", i, lvl) for i in range(n) for lvl in range(1, cap + 1)]
    )


def build_bin_packing(inst: BinPackingInstance, w: PenaltyWeights | None = None, *, strict: bool = True):
    """``x[i,j]`` object j in bin i, ``x[i]`` bin i used, ``y[i,k]`` bin i filled to level k."""
    w = resolve_weights(inst, w, "corrected", strict, {})
    n, k, cap = inst.num_bins, len(inst.weights), inst.capacity
    b = QuboBuilder(VariableRegistry(bin_packing_labels(inst)))
    levels = range(1, cap + 1)
    for i in range(n):
        b.square("A", w.a, [(("x", i), 1)] + [(("y", i, lvl), -1) for lvl in levels])
    for j in range(k):
        b.square("A", w.a, [(("x", i, j), 1) for i in range(n)], const=-1)
    for i in range(n):
        b.square("A", w.a, [(("y", i, lvl), lvl) for lvl in levels]
                 + [(("x", i, j), -inst.weights[j]) for j in range(k)])
    for i in range(n):
        for j in range(k):
            b.product("A", w.a, [(("x", i), -1)], [(("x", i, j), 1)], left_const=1)
    for i in range(n):
        b.linear("B", ("x", i), w.b)
    return finish(b, inst, w, "bin_packing")


register_rule(
    "bin_packing", "corrected", "ab",
    lambda inst, w, options: gt(w.a, 2 * w.b, "A > 2·B"),
    lambda inst, options: PenaltyWeights(a=3, b=1),
)


def _bin_canonical(em, sol, root):
    inst = em.problem
    load = {}
    for j, i in enumerate(sol.bins):
        load[i] = load.get(i, 0) + inst.weights[j]
    ones = [("x", i, j) for j, i in enumerate(sol.bins)]
    for i in sorted(load):
        ones += [("x", i), ("y", i, load[i])]
    return ones


def _bin_decode(em, bits):
    inst, reg = em.problem, em.registry
    bins, notes = [], []
    for j in range(len(inst.weights)):
        on = [i for i in range(inst.num_bins) if reg.value(bits, ("x", i, j))]
        if len(on) > 1:
            notes.append(f"object {j} placed in {len(on)} bins {on}")
        bins.append(on[0] if len(on) == 1 else None)
    return BinAssignment(tuple(bins)), notes


register_codec("bin_packing", _bin_canonical, _bin_decode,
               lambda em, sol: em.weights.b * objective(em.problem, sol))


# ---------------------------------------------------------- number partitioning


def build_number_partition(inst: NumberPartitionInstance, w: PenaltyWeights | None = None, *,
                           strict: bool = True):
    """``x[i,j]`` value i in part j; pairwise squared sum differences at weight B."""
    w = resolve_weights(inst, w, "corrected", strict, {})
    s, m = inst.values, inst.parts
    b = QuboBuilder(VariableRegistry([("x", i, j) for i in range(len(s)) for j in range(m)]))
    for i in range(len(s)):
        b.square("A", w.a, [(("x", i, j), 1) for j in range(m)], const=-1)
    for j1 in range(m):
        for j2 in range(j1 + 1, m):
            b.square("B", w.b, [(("x", i, j1), v) for i, v in enumerate(s)]
                     + [(("x", i, j2), -v) for i, v in enumerate(s)])
    return finish(b, inst, w, "number_partition")


def _np_bound(inst):
    return inst.parts * max(inst.values) ** 2


register_rule(
    "number_partition", "corrected", "ab",
    lambda inst, w, options: gt(w.a, w.b * _np_bound(inst), "A > B·m·max s²"),
    lambda inst, options: PenaltyWeights(a=_np_bound(inst) + 1, b=1),
)

register_codec(
    "number_partition",
    _partition_canonical,
    lambda em, bits: partition_decode(em, bits, len(em.problem.values), em.problem.parts),
    lambda em, sol: em.weights.b * objective(em.problem, sol),
)


# ------------------------------------------------------------------- subset sum


def build_subset_sum(inst: SubsetSumInstance):
    """``(sum_i s_i x_i - t)**2``; zero exactly at subsets hitting the target."""
    s = inst.values
    b = QuboBuilder(VariableRegistry([("x", i) for i in range(len(s))]))
    b.square("H", 1, [(("x", i), v) for i, v in enumerate(s)], const=-inst.target)
    return finish(b, inst, None, "subset_sum")


register_rule("subset_sum", "corrected", "", lambda inst, w, options: [], lambda inst, options: None)

register_codec(
    "subset_sum",
    lambda em, sol, root: [("x", i) for i in sorted(sol.indices)],
    lambda em, bits: (SubsetSelection(frozenset(i for i, v in enumerate(bits) if v)), []),
    lambda em, sol: objective(em.problem, sol),
)


# ---------------------------------------------------------------------- N3DM


def n3dm_labels(inst: N3dmInstance) -> list:
    n = inst.n
    return [(name, i, j) for name in ("x", "y", "z") for i in range(n) for j in range(n)]


def build_n3dm(inst: N3dmInstance, w: PenaltyWeights | None = None, *, strict: bool = True):
    """``x[i,j]`` (likewise ``y``, ``z``): element i of its set sits in triple j."""
    w = resolve_weights(inst, w, "corrected", strict, {})
    n = inst.n
    sets = {"x": inst.xs, "y": inst.ys, "z": inst.zs}
    b = QuboBuilder(VariableRegistry(n3dm_labels(inst)))
    for name in sets:
        for i in range(n):
            b.square("A", w.a, [((name, i, j), 1) for j in range(n)], const=-1)
        for j in range(n):
            b.square("A", w.a, [((name, i, j), 1) for i in range(n)], const=-1)
    for j in range(n):
        b.square("B", w.b, [((name, i, j), vals[i]) for name, vals in sets.items() for i in range(n)],
                 const=-inst.b)
    return finish(b, inst, w, "n3dm")


def _n3dm_bound(inst):
    return sum(max(v * v for v in vals) for vals in (inst.xs, inst.ys, inst.zs))


register_rule(
    "n3dm", "corrected", "ab",
    lambda inst, w, options: gt(w.a, w.b * _n3dm_bound(inst), "A > B·Σ max s²"),
    lambda inst, options: PenaltyWeights(a=_n3dm_bound(inst) + 1, b=1),
)


def _n3dm_canonical(em, sol, root):
    return [(name, t[axis], j) for j, t in enumerate(sol.triples) for axis, name in enumerate("xyz")]


def _n3dm_decode(em, bits):
    n, reg = em.problem.n, em.registry
    triples, notes = [], []
    for j in range(n):
        picks = []
        for name in "xyz":
            on = [i for i in range(n) if reg.value(bits, (name, i, j))]
            if len(on) != 1:
                notes.append(f"triple {j} has {len(on)} elements from {name.upper()}")
            picks.append(on[0] if len(on) == 1 else None)
        if None not in picks:
            triples.append(tuple(picks))
    return TripleMatching(tuple(triples)), notes


register_codec("n3dm", _n3dm_canonical, _n3dm_decode,
               lambda em, sol: em.weights.b * objective(em.problem, sol))
