"""Problem instances, domain solutions, validators and brute-force oracles.

Vertices, objects and list elements are 0-based. Colours, parts, bins and
matching slots are 0-based labels as well.

Feasibility is split in two layers. *Structural* violations make a solution
meaningless for the objective (a vertex coloured twice, an object in no bin).
*Satisfaction* violations leave the objective defined: an improper colouring
still has a conflict count, an unequal partition still has an imbalance. For
the exact-satisfaction problems (colouring, number partitioning, subset sum,
numerical 3D matching) the objective is that residual, so it equals zero
exactly on feasible solutions and the oracle returns the least-residual
solutions when no feasible one exists.
"""

from __future__ import annotations

import itertools
from collections import deque
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

from .errors import CapacityError, FeasibilityError, InstanceError

DEFAULT_SIZE_CAP = 1 << 21


# --------------------------------------------------------------------------- graphs


def _edge(u, v) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; edges are stored as sorted ``(u, v)`` with u < v."""

    num_vertices: int
    edges: tuple = ()

    def __post_init__(self):
        n = int(self.num_vertices)
        if n < 0:
            raise InstanceError("num_vertices must be nonnegative")
        seen = set()
        for e in self.edges:
            u, v = (int(t) for t in e)
            if u == v:
                raise InstanceError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InstanceError(f"edge ({u},{v}) has an endpoint outside 0..{n - 1}")
            key = _edge(u, v)
            if key in seen:
                raise InstanceError(f"parallel edge {key}")
            seen.add(key)
        object.__setattr__(self, "num_vertices", n)
        object.__setattr__(self, "edges", tuple(sorted(seen)))

    @property
    def vertices(self) -> range:
        return range(self.num_vertices)

    @cached_property
    def _adjacency(self) -> list:
        adj = [[] for _ in range(self.num_vertices)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for a in adj:
            a.sort()
        return adj

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def neighbours(self, v: int) -> list[int]:
        return self._adjacency[v]

    def degree(self, v: int) -> int:
        return len(self._adjacency[v])

    @property
    def max_degree(self) -> int:
        return max((self.degree(v) for v in self.vertices), default=0)

    def has_edge(self, u, v) -> bool:
        return u != v and _edge(u, v) in self.edge_set

    def is_connected(self) -> bool:
        return self.num_vertices <= 1 or len(_components(self.num_vertices, self.edges)[0]) == 1


@dataclass(frozen=True)
class WeightedGraph:
    graph: Graph
    cost: Mapping = field(default_factory=dict)

    def __post_init__(self):
        cost = {}
        for e, c in self.cost.items():
            cost[_edge(*e)] = c
        if set(cost) != set(self.graph.edges):
            raise InstanceError("every edge needs exactly one cost")
        for e, c in cost.items():
            if isinstance(c, bool) or int(c) != c or c < 1:
                raise InstanceError(f"edge cost for {e} must be a positive integer, got {c!r}")
        object.__setattr__(self, "cost", {e: int(cost[e]) for e in self.graph.edges})

    @classmethod
    def from_lists(cls, num_vertices: int, edges: Sequence, costs: Sequence[int]) -> WeightedGraph:
        if len(edges) != len(costs):
            raise InstanceError("costs must align with edges")
        g = Graph(num_vertices, tuple(tuple(e) for e in edges))
        return cls(g, {_edge(*e): c for e, c in zip(edges, costs)})

    @property
    def num_vertices(self) -> int:
        return self.graph.num_vertices

    @property
    def edges(self) -> tuple:
        return self.graph.edges

    @property
    def max_cost(self) -> int:
        return max(self.cost.values(), default=0)


@dataclass(frozen=True)
class Digraph:
    num_vertices: int
    arcs: tuple = ()

    def __post_init__(self):
        n = int(self.num_vertices)
        seen = set()
        for a in self.arcs:
            u, v = (int(t) for t in a)
            if u == v:
                raise InstanceError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InstanceError(f"arc ({u},{v}) has an endpoint outside 0..{n - 1}")
            if (u, v) in seen:
                raise InstanceError(f"duplicate arc ({u},{v})")
            seen.add((u, v))
        object.__setattr__(self, "num_vertices", n)
        object.__setattr__(self, "arcs", tuple(sorted(seen)))

    @property
    def vertices(self) -> range:
        return range(self.num_vertices)

    def degree(self, v: int) -> int:
        """Total (in + out) degree."""
        return sum((u == v) + (w == v) for u, w in self.arcs)

    @property
    def max_degree(self) -> int:
        return max((self.degree(v) for v in self.vertices), default=0)


# ------------------------------------------------------------------------ instances


def _positive_int(value, what, minimum=1):
    if isinstance(value, bool) or int(value) != value or value < minimum:
        raise InstanceError(f"{what} must be an integer >= {minimum}, got {value!r}")
    return int(value)


def _depth_default(obj, n):
    d = obj.depth_bound
    d = n // 2 if d is None else _positive_int(d, "depth_bound")
    object.__setattr__(obj, "depth_bound", d)


@dataclass(frozen=True)
class CliqueInstance:
    graph: Graph

    def __post_init__(self):
        if self.graph.max_degree < 1:
            raise InstanceError("clique instance needs at least one edge")


@dataclass(frozen=True)
class ColoringInstance:
    graph: Graph
    n_colors: int

    def __post_init__(self):
        object.__setattr__(self, "n_colors", _positive_int(self.n_colors, "n_colors"))


@dataclass(frozen=True)
class DegreeMstInstance:
    wgraph: WeightedGraph
    max_degree: int
    depth_bound: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "max_degree", _positive_int(self.max_degree, "max_degree", 2))
        if self.wgraph.num_vertices < 2 or not self.wgraph.graph.is_connected():
            raise InstanceError("degree-bounded MST needs a connected graph with at least 2 vertices")
        _depth_default(self, self.wgraph.num_vertices)


@dataclass(frozen=True)
class SteinerInstance:
    wgraph: WeightedGraph
    terminals: frozenset
    depth_bound: int | None = None

    def __post_init__(self):
        u = frozenset(int(t) for t in self.terminals)
        if len(u) < 2:
            raise InstanceError("Steiner instance needs at least 2 terminals")
        if not all(0 <= t < self.wgraph.num_vertices for t in u):
            raise InstanceError("terminal outside vertex range")
        object.__setattr__(self, "terminals", u)
        _depth_default(self, self.wgraph.num_vertices)


@dataclass(frozen=True)
class FvsInstance:
    graph: Graph
    depth_bound: int | None = None

    def __post_init__(self):
        if self.graph.num_vertices < 2:
            raise InstanceError("feedback vertex set instance needs at least 2 vertices")
        _depth_default(self, self.graph.num_vertices)


@dataclass(frozen=True)
class FesInstance:
    digraph: Digraph

    def __post_init__(self):
        if self.digraph.num_vertices < 2:
            raise InstanceError("feedback edge set instance needs at least 2 vertices")


@dataclass(frozen=True)
class BinPackingInstance:
    weights: tuple
    capacity: int
    num_bins: int

    def __post_init__(self):
        w = tuple(_positive_int(x, "object weight") for x in self.weights)
        if not w:
            raise InstanceError("bin packing needs at least one object")
        cap = _positive_int(self.capacity, "capacity")
        if cap < max(w):
            raise InstanceError("capacity must be at least the largest weight")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "capacity", cap)
        object.__setattr__(self, "num_bins", _positive_int(self.num_bins, "num_bins"))


@dataclass(frozen=True)
class NumberPartitionInstance:
    values: tuple
    parts: int

    def __post_init__(self):
        v = tuple(_positive_int(x, "value") for x in self.values)
        if not v:
            raise InstanceError("number partitioning needs at least one value")
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "parts", _positive_int(self.parts, "parts", 2))


@dataclass(frozen=True)
class GraphPartitionInstance:
    graph: Graph
    parts: int

    def __post_init__(self):
        object.__setattr__(self, "parts", _positive_int(self.parts, "parts", 2))
        if self.graph.num_vertices < 1:
            raise InstanceError("graph partitioning needs at least one vertex")


def _int(x, what):
    if isinstance(x, bool) or int(x) != x:
        raise InstanceError(f"{what} must be an integer, got {x!r}")
    return int(x)


@dataclass(frozen=True)
class SubsetSumInstance:
    values: tuple
    target: int

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(_int(x, "value") for x in self.values))
        object.__setattr__(self, "target", _int(self.target, "target"))


@dataclass(frozen=True)
class N3dmInstance:
    xs: tuple
    ys: tuple
    zs: tuple
    b: int

    def __post_init__(self):
        sets = [tuple(_int(x, "element") for x in s) for s in (self.xs, self.ys, self.zs)]
        if not (len(sets[0]) == len(sets[1]) == len(sets[2]) >= 1):
            raise InstanceError("X, Y and Z must be nonempty and equally sized")
        for name, s in zip(("xs", "ys", "zs"), sets):
            object.__setattr__(self, name, s)
        object.__setattr__(self, "b", _int(self.b, "b"))

    @property
    def n(self) -> int:
        return len(self.xs)


# ------------------------------------------------------------------------ solutions


@dataclass(frozen=True)
class CliqueSet:
    vertices: frozenset


@dataclass(frozen=True)
class Coloring:
    """Colour per vertex; ``None`` marks an uncoloured vertex."""

    colors: tuple


@dataclass(frozen=True)
class RootedTree:
    """Tree by its edge set. The root is informational and ignored by equality."""

    edges: frozenset
    root: int | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(_edge(*e) for e in self.edges))

    @property
    def vertices(self) -> frozenset:
        return frozenset(v for e in self.edges for v in e)


@dataclass(frozen=True)
class FeedbackVertexSet:
    vertices: frozenset


@dataclass(frozen=True)
class FeedbackEdgeSet:
    arcs: frozenset


@dataclass(frozen=True)
class BinAssignment:
    """Bin per object; ``None`` marks an unplaced object."""

    bins: tuple


@dataclass(frozen=True)
class Partition:
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(frozenset(p) for p in self.parts))


@dataclass(frozen=True)
class SubsetSelection:
    indices: frozenset


@dataclass(frozen=True)
class TripleMatching:
    """Index triples ``(i_x, i_y, i_z)``, kept sorted."""

    triples: tuple

    def __post_init__(self):
        object.__setattr__(self, "triples", tuple(sorted(tuple(t) for t in self.triples)))


@dataclass(frozen=True)
class FeasibilityReport:
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self):
        return "ok" if self.ok else "; ".join(self.violations)


# ------------------------------------------------------------------- graph helpers


def _components(n, edges):
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    cycle = False
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            cycle = True
        else:
            parent[ru] = rv
    comps: dict[int, list] = {}
    for v in range(n):
        comps.setdefault(find(v), []).append(v)
    return sorted(comps.values()), cycle


def is_forest(n: int, edges) -> bool:
    return not _components(n, edges)[1]


def topological_order(n: int, arcs) -> list[int] | None:
    """Kahn's algorithm; ``None`` when the digraph has a cycle."""
    indeg = [0] * n
    out = [[] for _ in range(n)]
    for u, v in arcs:
        out[u].append(v)
        indeg[v] += 1
    queue = deque(v for v in range(n) if indeg[v] == 0)
    order = []
    while queue:
        u = queue.popleft()
        order.append(u)
        for v in out[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    return order if len(order) == n else None


def _tree_violations(n, edges, allowed, must_cover):
    out = []
    for e in sorted(edges):
        if e not in allowed:
            out.append(f"edge {e} not in graph")
    if out:
        return out
    verts = {v for e in edges for v in e}
    comps, cycle = _components(n, edges)
    if cycle:
        out.append("tree contains a cycle")
    touched = [c for c in comps if len(c) > 1]
    if len(touched) > 1:
        out.append("tree is disconnected")
    for v in sorted(must_cover):
        if v not in verts:
            out.append(f"vertex {v} not in tree")
    return out


# ------------------------------------------------------------------ problem table


class _Problem(NamedTuple):
    tag: str
    solution_type: type
    structural: object  # (inst, sol) -> list[str]
    satisfaction: object  # (inst, sol) -> list[str]
    objective: object  # (inst, sol) -> int
    candidates: object  # inst -> iterator of solutions
    space: object  # inst -> int


def _none(inst, sol):
    return []


# clique


def _clique_structural(inst, sol):
    g = inst.graph
    bad = [v for v in sorted(sol.vertices) if not 0 <= v < g.num_vertices]
    if bad:
        return [f"vertex {v} out of range" for v in bad]
    edges = set(g.edges)
    return [f"missing edge {e}" for e in itertools.combinations(sorted(sol.vertices), 2) if e not in edges]


def _clique_candidates(inst):
    n = inst.graph.num_vertices
    for mask in range(1 << n):
        yield CliqueSet(frozenset(v for v in range(n) if mask >> v & 1))


# colouring


def _coloring_structural(inst, sol):
    g, out = inst.graph, []
    if len(sol.colors) != g.num_vertices:
        return [f"colouring covers {len(sol.colors)} of {g.num_vertices} vertices"]
    for v, c in enumerate(sol.colors):
        if c is None:
            out.append(f"uncoloured vertex {v}")
        elif not 0 <= c < inst.n_colors:
            out.append(f"vertex {v} has invalid colour {c}")
    return out


def _conflicts(inst, sol):
    return [e for e in inst.graph.edges if sol.colors[e[0]] == sol.colors[e[1]]]


def _coloring_satisfaction(inst, sol):
    return [f"conflict edge {e}" for e in _conflicts(inst, sol)]


def _coloring_candidates(inst):
    for cols in itertools.product(range(inst.n_colors), repeat=inst.graph.num_vertices):
        yield Coloring(cols)


# trees


def _mst_structural(inst, sol):
    wg = inst.wgraph
    n = wg.num_vertices
    out = _tree_violations(n, sol.edges, set(wg.edges), range(n))
    if len(sol.edges) != n - 1 and not out:
        out.append("spanning tree must have N-1 edges")
    deg = [0] * n
    for u, v in sol.edges:
        deg[u] += 1
        deg[v] += 1
    out += [f"vertex {v} has degree {d} > {inst.max_degree}" for v, d in enumerate(deg) if d > inst.max_degree]
    return out


def _tree_cost(inst, sol):
    return sum(inst.wgraph.cost[e] for e in sol.edges)


def _mst_candidates(inst):
    for es in itertools.combinations(inst.wgraph.edges, inst.wgraph.num_vertices - 1):
        yield RootedTree(frozenset(es))


def _steiner_structural(inst, sol):
    wg = inst.wgraph
    out = _tree_violations(wg.num_vertices, sol.edges, set(wg.edges), inst.terminals)
    if not sol.edges:
        out.append("tree is empty")
    return out


def _steiner_candidates(inst):
    edges = inst.wgraph.edges
    for mask in range(1, 1 << len(edges)):
        yield RootedTree(frozenset(e for k, e in enumerate(edges) if mask >> k & 1))


# feedback sets


def _fvs_structural(inst, sol):
    g = inst.graph
    if any(not 0 <= v < g.num_vertices for v in sol.vertices):
        return ["feedback vertex out of range"]
    rest = [e for e in g.edges if e[0] not in sol.vertices and e[1] not in sol.vertices]
    return [] if is_forest(g.num_vertices, rest) else ["graph minus F contains a cycle"]


def _fvs_candidates(inst):
    n = inst.graph.num_vertices
    for mask in range(1 << n):
        yield FeedbackVertexSet(frozenset(v for v in range(n) if mask >> v & 1))


def _fes_structural(inst, sol):
    d = inst.digraph
    arcs = set(d.arcs)
    if not sol.arcs <= arcs:
        return [f"arc {a} not in digraph" for a in sorted(sol.arcs - arcs)]
    rest = [a for a in d.arcs if a not in sol.arcs]
    return [] if topological_order(d.num_vertices, rest) is not None else ["digraph minus F contains a cycle"]


def _fes_candidates(inst):
    arcs = inst.digraph.arcs
    for mask in range(1 << len(arcs)):
        yield FeedbackEdgeSet(frozenset(a for k, a in enumerate(arcs) if mask >> k & 1))


# bin packing


def _bin_structural(inst, sol):
    if len(sol.bins) != len(inst.weights):
        return [f"assignment covers {len(sol.bins)} of {len(inst.weights)} objects"]
    out, load = [], [0] * inst.num_bins
    for j, b in enumerate(sol.bins):
        if b is None:
            out.append(f"object {j} not placed")
        elif not 0 <= b < inst.num_bins:
            out.append(f"object {j} in invalid bin {b}")
        else:
            load[b] += inst.weights[j]
    out += [f"bin {i} load {x} exceeds capacity {inst.capacity}" for i, x in enumerate(load) if x > inst.capacity]
    return out


def _bin_objective(inst, sol):
    return len({b for b in sol.bins})


def _bin_candidates(inst):
    for bins in itertools.product(range(inst.num_bins), repeat=len(inst.weights)):
        yield BinAssignment(bins)


# partitions


def _partition_structural(n, m, sol):
    if len(sol.parts) != m:
        return [f"expected {m} parts, got {len(sol.parts)}"]
    out, count = [], [0] * n
    for p in sol.parts:
        for i in p:
            if not 0 <= i < n:
                out.append(f"element {i} out of range")
            else:
                count[i] += 1
    for i, c in enumerate(count):
        if c == 0:
            out.append(f"element {i} in no part")
        elif c > 1:
            out.append(f"element {i} in {c} parts")
    return out


def _part_sums(inst, sol):
    return [sum(inst.values[i] for i in p) for p in sol.parts]


def _np_structural(inst, sol):
    return _partition_structural(len(inst.values), inst.parts, sol)


def _np_satisfaction(inst, sol):
    sums = _part_sums(inst, sol)
    return [] if len(set(sums)) == 1 else [f"unequal part sums {sums}"]


def _np_objective(inst, sol):
    sums = _part_sums(inst, sol)
    return sum((a - b) ** 2 for a, b in itertools.combinations(sums, 2))


def _assignments_to_partitions(n, m):
    for labels in itertools.product(range(m), repeat=n):
        yield Partition(tuple(frozenset(i for i in range(n) if labels[i] == j) for j in range(m)))


def _gp_structural(inst, sol):
    out = _partition_structural(inst.graph.num_vertices, inst.parts, sol)
    if not out:
        sizes = [len(p) for p in sol.parts]
        if len(set(sizes)) != 1:
            out.append(f"unequal part sizes {sizes}")
    return out


def _gp_objective(inst, sol):
    where = {v: j for j, p in enumerate(sol.parts) for v in p}
    return sum(where[u] != where[v] for u, v in inst.graph.edges)


# subset sum


def _ss_structural(inst, sol):
    return [f"index {i} out of range" for i in sorted(sol.indices) if not 0 <= i < len(inst.values)]


def _ss_residual(inst, sol):
    return sum(inst.values[i] for i in sol.indices) - inst.target


def _ss_satisfaction(inst, sol):
    r = _ss_residual(inst, sol)
    return [] if r == 0 else [f"subset sum misses target by {r}"]


def _ss_candidates(inst):
    n = len(inst.values)
    for mask in range(1 << n):
        yield SubsetSelection(frozenset(i for i in range(n) if mask >> i & 1))


# numerical 3D matching


def _n3dm_structural(inst, sol):
    n = inst.n
    if len(sol.triples) != n:
        return [f"matching has {len(sol.triples)} triples, expected {n}"]
    out = []
    for axis, name in enumerate("XYZ"):
        used = sorted(t[axis] for t in sol.triples)
        if used != list(range(n)):
            out.append(f"elements of {name} not covered exactly once")
    return out


def _triple_sums(inst, sol):
    return [inst.xs[a] + inst.ys[b] + inst.zs[c] for a, b, c in sol.triples]


def _n3dm_satisfaction(inst, sol):
    return [f"triple {t} sums to {s} != {inst.b}" for t, s in zip(sol.triples, _triple_sums(inst, sol)) if s != inst.b]


def _n3dm_objective(inst, sol):
    return sum((s - inst.b) ** 2 for s in _triple_sums(inst, sol))


def _n3dm_candidates(inst):
    n = inst.n
    for p in itertools.permutations(range(n)):
        for q in itertools.permutations(range(n)):
            yield TripleMatching(tuple((i, p[i], q[i]) for i in range(n)))


def _factorial(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


PROBLEMS: dict[type, _Problem] = {
    CliqueInstance: _Problem(
        "clique", CliqueSet, _clique_structural, _none,
        lambda inst, sol: -len(sol.vertices), _clique_candidates,
        lambda inst: 1 << inst.graph.num_vertices),
    ColoringInstance: _Problem(
        "coloring", Coloring, _coloring_structural, _coloring_satisfaction,
        lambda inst, sol: len(_conflicts(inst, sol)), _coloring_candidates,
        lambda inst: inst.n_colors ** inst.graph.num_vertices),
    DegreeMstInstance: _Problem(
        "degree_mst", RootedTree, _mst_structural, _none, _tree_cost, _mst_candidates,
        lambda inst: _binomial(len(inst.wgraph.edges), inst.wgraph.num_vertices - 1)),
    SteinerInstance: _Problem(
        "steiner", RootedTree, _steiner_structural, _none, _tree_cost, _steiner_candidates,
        lambda inst: 1 << len(inst.wgraph.edges)),
    FvsInstance: _Problem(
        "fvs", FeedbackVertexSet, _fvs_structural, _none,
        lambda inst, sol: len(sol.vertices), _fvs_candidates,
        lambda inst: 1 << inst.graph.num_vertices),
    FesInstance: _Problem(
        "fes", FeedbackEdgeSet, _fes_structural, _none,
        lambda inst, sol: len(sol.arcs), _fes_candidates,
        lambda inst: 1 << len(inst.digraph.arcs)),
    BinPackingInstance: _Problem(
        "bin_packing", BinAssignment, _bin_structural, _none, _bin_objective, _bin_candidates,
        lambda inst: inst.num_bins ** len(inst.weights)),
    NumberPartitionInstance: _Problem(
        "number_partition", Partition, _np_structural, _np_satisfaction, _np_objective,
        lambda inst: _assignments_to_partitions(len(inst.values), inst.parts),
        lambda inst: inst.parts ** len(inst.values)),
    GraphPartitionInstance: _Problem(
        "graph_partition", Partition, _gp_structural, _none, _gp_objective,
        lambda inst: _assignments_to_partitions(inst.graph.num_vertices, inst.parts),
        lambda inst: inst.parts ** inst.graph.num_vertices),
    SubsetSumInstance: _Problem(
        "subset_sum", SubsetSelection, _ss_structural, _ss_satisfaction,
        lambda inst, sol: _ss_residual(inst, sol) ** 2, _ss_candidates,
        lambda inst: 1 << len(inst.values)),
    N3dmInstance: _Problem(
        "n3dm", TripleMatching, _n3dm_structural, _n3dm_satisfaction, _n3dm_objective,
        _n3dm_candidates, lambda inst: _factorial(inst.n) ** 2),
}

PROBLEM_TAGS = {p.tag: t for t, p in PROBLEMS.items()}


def _binomial(n, k):
    if k < 0 or k > n:
        return 0
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def problem_of(instance) -> _Problem:
    try:
        return PROBLEMS[type(instance)]
    except KeyError:
        raise TypeError(f"not a problem instance: {type(instance).__name__}") from None


def problem_tag(instance) -> str:
    return problem_of(instance).tag


def _check_variant(prob, sol):
    if not isinstance(sol, prob.solution_type):
        raise TypeError(f"{prob.tag} expects {prob.solution_type.__name__}, got {type(sol).__name__}")


def structural_violations(instance, sol) -> list[str]:
    prob = problem_of(instance)
    _check_variant(prob, sol)
    return prob.structural(instance, sol)


def check_feasible(instance, sol) -> FeasibilityReport:
    """All violated constraints of the problem definition."""
    prob = problem_of(instance)
    _check_variant(prob, sol)
    out = prob.structural(instance, sol)
    if not out:
        out = prob.satisfaction(instance, sol)
    return FeasibilityReport(tuple(out))


def objective(instance, sol) -> int:
    """Domain objective (lower is better); residual for exact-satisfaction problems."""
    bad = structural_violations(instance, sol)
    if bad:
        raise FeasibilityError("; ".join(bad))
    return problem_of(instance).objective(instance, sol)


def brute_force_optimum(instance, size_cap: int = DEFAULT_SIZE_CAP) -> list:
    """Every optimal domain solution, by exhaustive enumeration of domain objects.

    Returns an empty list when no structurally valid solution exists (e.g. a
    disconnected Steiner instance or a graph partition with m not dividing N).
    """
    prob = problem_of(instance)
    space = prob.space(instance)
    if space > size_cap:
        raise CapacityError(f"{prob.tag} search space {space} exceeds cap {size_cap}")
    best, optima = None, []
    seen = set()
    for sol in prob.candidates(instance):
        if prob.structural(instance, sol) or sol in seen:
            continue
        seen.add(sol)
        val = prob.objective(instance, sol)
        if best is None or val < best:
            best, optima = val, [sol]
        elif val == best:
            optima.append(sol)
    return optima


# -------------------------------------------------------------- small-instance corpus


def _canonical_graph(n, edges):
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(sorted(_edge(perm[u], perm[v]) for u, v in edges))
        if best is None or key < best:
            best = key
    return best


def _connected_graphs(max_vertices, min_vertices=2):
    for n in range(min_vertices, max_vertices + 1):
        pairs = list(itertools.combinations(range(n), 2))
        seen = set()
        for mask in range(1, 1 << len(pairs)):
            edges = [p for k, p in enumerate(pairs) if mask >> k & 1]
            g = Graph(n, tuple(edges))
            if not g.is_connected():
                continue
            key = _canonical_graph(n, edges)
            if key in seen:
                continue
            seen.add(key)
            yield Graph(n, key)


def _digraphs(max_vertices, max_arcs=None):
    for n in range(2, max_vertices + 1):
        pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
        for k in range(1, len(pairs) + 1):
            if max_arcs is not None and k > max_arcs:
                break
            for arcs in itertools.combinations(pairs, k):
                yield Digraph(n, arcs)


def enumerate_small_instances(family: str, **limits) -> Iterator:
    """Deterministic test corpus.

    ``connected_graphs`` (max_vertices): connected simple graphs with at least
    two vertices, one per isomorphism class. ``digraphs`` (max_vertices,
    max_arcs): every nonempty labelled arc set. ``bin_packing`` (max_objects,
    max_capacity): weights up to the capacity with one bin per object.
    ``integer_sets`` (max_size, max_value, min_value): sorted value tuples.
    ``n3dm`` (max_n, max_value): sorted X, Y, Z with every attainable b.
    """
    if family == "connected_graphs":
        yield from _connected_graphs(limits.get("max_vertices", 4))
    elif family == "digraphs":
        yield from _digraphs(limits.get("max_vertices", 3), limits.get("max_arcs"))
    elif family == "bin_packing":
        for k in range(1, limits.get("max_objects", 2) + 1):
            for cap in range(1, limits.get("max_capacity", 3) + 1):
                for w in itertools.combinations_with_replacement(range(1, cap + 1), k):
                    yield BinPackingInstance(w, cap, k)
    elif family == "integer_sets":
        lo, hi = limits.get("min_value", 1), limits.get("max_value", 3)
        for k in range(1, limits.get("max_size", 6) + 1):
            yield from itertools.combinations_with_replacement(range(lo, hi + 1), k)
    elif family == "n3dm":
        hi = limits.get("max_value", 2)
        for n in range(1, limits.get("max_n", 2) + 1):
            sets = list(itertools.combinations_with_replacement(range(1, hi + 1), n))
            for xs, ys, zs in itertools.product(sets, repeat=3):
                for b in range(3, 3 * hi + 1):
                    yield N3dmInstance(xs, ys, zs, b)
    else:
        raise ValueError(f"unknown instance family {family!r}")
