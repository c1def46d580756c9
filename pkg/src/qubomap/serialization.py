"""JSON instance documents and the plain-text QUBO file format.

An instance document is a JSON object with a ``"problem"`` tag and the
fields of that problem::

    {"problem": "degree_mst",
     "graph": {"num_vertices": 3, "edges": [[0, 1], [1, 2]]},
     "costs": [4, 1], "max_degree": 2,
     "penalty": {"A": 5, "B": 1}}

``"penalty"`` holds optional weights A/B/C and ``"options"`` optional encoder
options (``encoding``, ``omit_y``, ``variant``).

A QUBO file lists a header, the offset and variable labels as comments, then
the linear and quadratic coefficients::

    p qubo <num_vars> <num_linear> <num_quadratic>
    c offset <int>
    c var <index> <label>
    <i> <i> <h_i>
    <i> <j> <J_ij>
"""

from __future__ import annotations

import json
from collections.abc import Mapping
from dataclasses import dataclass, field

from .encoders.base import EncodedModel, PenaltyWeights
from .errors import ParseError, QuboError
from .problems import (
    BinPackingInstance,
    CliqueInstance,
    ColoringInstance,
    DegreeMstInstance,
    Digraph,
    FesInstance,
    FvsInstance,
    Graph,
    GraphPartitionInstance,
    N3dmInstance,
    NumberPartitionInstance,
    SteinerInstance,
    SubsetSumInstance,
    WeightedGraph,
    problem_tag,
)
from .qubo import QuboModel, VariableRegistry, format_label, parse_label

OPTION_KEYS = {"encoding", "omit_y", "variant", "extended_range"}


@dataclass(frozen=True)
class InstanceDocument:
    instance: object
    weights: PenaltyWeights | None = None
    options: Mapping = field(default_factory=dict)


def _get(doc, key, kind=None):
    if key not in doc:
        raise ParseError(f"missing field {key!r}")
    value = doc[key]
    if kind is list and not isinstance(value, list):
        raise ParseError(f"field {key!r} must be a list")
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise ParseError(f"field {key!r} must be an integer")
    return value


def _graph(doc) -> Graph:
    g = _get(doc, "graph")
    if not isinstance(g, dict):
        raise ParseError("field 'graph' must be an object")
    edges = _get(g, "edges", list)
    for e in edges:
        if not (isinstance(e, list) and len(e) == 2):
            raise ParseError(f"graph.edges entry {e!r} must be a pair")
    return Graph(_get(g, "num_vertices", int), tuple(tuple(e) for e in edges))


def _wgraph(doc) -> WeightedGraph:
    g = _graph(doc)
    edges = [tuple(e) for e in doc["graph"]["edges"]]
    return WeightedGraph.from_lists(g.num_vertices, edges, _get(doc, "costs", list))


def _opt_int(doc, key):
    return None if doc.get(key) is None else _get(doc, key, int)


_PARSERS = {
    "clique": lambda d: CliqueInstance(_graph(d)),
    "coloring": lambda d: ColoringInstance(_graph(d), _get(d, "n_colors", int)),
    "degree_mst": lambda d: DegreeMstInstance(_wgraph(d), _get(d, "max_degree", int), _opt_int(d, "depth_bound")),
    "steiner": lambda d: SteinerInstance(_wgraph(d), frozenset(_get(d, "terminals", list)),
                                         _opt_int(d, "depth_bound")),
    "fvs": lambda d: FvsInstance(_graph(d), _opt_int(d, "depth_bound")),
    "fes": lambda d: FesInstance(_digraph(d)),
    "bin_packing": lambda d: BinPackingInstance(tuple(_get(d, "weights", list)), _get(d, "capacity", int),
                                                _get(d, "num_bins", int)),
    "number_partition": lambda d: NumberPartitionInstance(tuple(_get(d, "values", list)), _get(d, "parts", int)),
    "graph_partition": lambda d: GraphPartitionInstance(_graph(d), _get(d, "parts", int)),
    "subset_sum": lambda d: SubsetSumInstance(tuple(_get(d, "values", list)), _get(d, "target", int)),
    "n3dm": lambda d: N3dmInstance(tuple(_get(d, "X", list)), tuple(_get(d, "Y", list)),
                                   tuple(_get(d, "Z", list)), _get(d, "b", int)),
}


def _digraph(doc) -> Digraph:
    g = _get(doc, "digraph")
    if not isinstance(g, dict):
        raise ParseError("field 'digraph' must be an object")
    arcs = _get(g, "arcs", list)
    for a in arcs:
        if not (isinstance(a, list) and len(a) == 2):
            raise ParseError(f"digraph.arcs entry {a!r} must be a pair")
    return Digraph(_get(g, "num_vertices", int), tuple(tuple(a) for a in arcs))


def parse_instance(text: str) -> InstanceDocument:
    """Validated instance, weights and options from a JSON document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError("instance document must be a JSON object")
    tag = doc.get("problem")
    if tag not in _PARSERS:
        raise ParseError(f"unknown problem tag {tag!r}; expected one of {', '.join(sorted(_PARSERS))}")
    try:
        inst = _PARSERS[tag](doc)
    except ParseError:
        raise
    except (QuboError, TypeError, ValueError) as exc:
        raise ParseError(f"{tag}: {exc}") from None

    weights = None
    if doc.get("penalty") is not None:
        p = doc["penalty"]
        if not isinstance(p, dict) or set(p) - {"A", "B", "C"}:
            raise ParseError("field 'penalty' must map A, B, C to integers")
        try:
            weights = PenaltyWeights(p.get("A"), p.get("B"), p.get("C"))
        except QuboError as exc:
            raise ParseError(f"penalty: {exc}") from None
    options = doc.get("options") or {}
    if not isinstance(options, dict) or set(options) - OPTION_KEYS:
        raise ParseError(f"field 'options' accepts only {sorted(OPTION_KEYS)}")
    return InstanceDocument(inst, weights, dict(options))


def _graph_doc(g: Graph) -> dict:
    return {"num_vertices": g.num_vertices, "edges": [list(e) for e in g.edges]}


def _costs(wg: WeightedGraph) -> list:
    return [wg.cost[e] for e in wg.edges]


def instance_to_dict(inst) -> dict:
    tag = problem_tag(inst)
    doc: dict = {"problem": tag}
    if tag in ("clique", "coloring", "fvs", "graph_partition"):
        doc["graph"] = _graph_doc(inst.graph)
    if tag == "coloring":
        doc["n_colors"] = inst.n_colors
    elif tag == "graph_partition":
        doc["parts"] = inst.parts
    elif tag == "fvs":
        doc["depth_bound"] = inst.depth_bound
    elif tag in ("degree_mst", "steiner"):
        doc["graph"] = _graph_doc(inst.wgraph.graph)
        doc["costs"] = _costs(inst.wgraph)
        if tag == "degree_mst":
            doc["max_degree"] = inst.max_degree
        else:
            doc["terminals"] = sorted(inst.terminals)
        doc["depth_bound"] = inst.depth_bound
    elif tag == "fes":
        doc["digraph"] = {"num_vertices": inst.digraph.num_vertices, "arcs": [list(a) for a in inst.digraph.arcs]}
    elif tag == "bin_packing":
        doc.update(weights=list(inst.weights), capacity=inst.capacity, num_bins=inst.num_bins)
    elif tag == "number_partition":
        doc.update(values=list(inst.values), parts=inst.parts)
    elif tag == "subset_sum":
        doc.update(values=list(inst.values), target=inst.target)
    elif tag == "n3dm":
        doc.update(X=list(inst.xs), Y=list(inst.ys), Z=list(inst.zs), b=inst.b)
    return doc


def render_instance(inst, weights: PenaltyWeights | None = None, options: Mapping | None = None) -> str:
    doc = instance_to_dict(inst)
    if weights is not None:
        doc["penalty"] = weights.as_dict()
    if options:
        doc["options"] = dict(options)
    return json.dumps(doc, indent=2) + "\n"


# ------------------------------------------------------------------- QUBO files


def export_qubo(model: QuboModel | EncodedModel, registry: VariableRegistry | None = None) -> str:
    if isinstance(model, EncodedModel):
        model, registry = model.model, model.registry
    if registry is not None and len(registry) != model.num_vars:
        raise ValueError("registry size does not match the model")
    lines = [f"p qubo {model.num_vars} {len(model.linear)} {len(model.quadratic)}", f"c offset {model.offset}"]
    if registry is not None:
        lines += [f"c var {k} {format_label(lab)}" for k, lab in enumerate(registry.labels)]
    lines += [f"{i} {i} {c}" for i, c in model.linear.items()]
    lines += [f"{i} {j} {c}" for (i, j), c in model.quadratic.items()]
    return "\n".join(lines) + "\n"


def _ints(parts, lineno):
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"line {lineno}: expected integers") from None


def import_qubo(text: str) -> tuple[QuboModel, VariableRegistry | None]:
    """Parse a QUBO file; the registry is ``None`` when no labels are given."""
    header = None
    offset = 0
    labels: dict[int, tuple] = {}
    linear: dict[int, int] = {}
    quadratic: dict[tuple, int] = {}
    prev = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "p":
            if header is not None or len(parts) != 5 or parts[1] != "qubo":
                raise ParseError(f"line {lineno}: malformed header")
            header = _ints(parts[2:], lineno)
            continue
        if parts[0] == "c":
            if len(parts) == 3 and parts[1] == "offset":
                offset = _ints(parts[2:], lineno)[0]
            elif len(parts) == 4 and parts[1] == "var":
                k = _ints(parts[2:3], lineno)[0]
                if k in labels:
                    raise ParseError(f"line {lineno}: duplicate label for variable {k}")
                try:
                    labels[k] = parse_label(parts[3])
                except ValueError as exc:
                    raise ParseError(f"line {lineno}: {exc}") from None
            continue
        if header is None:
            raise ParseError(f"line {lineno}: body line before header")
        if len(parts) != 3:
            raise ParseError(f"line {lineno}: expected '<i> <j> <coef>'")
        i, j, c = _ints(parts, lineno)
        key = (i, j)
        if i > j:
            raise ParseError(f"line {lineno}: unordered pair ({i},{j})")
        if key in linear or key in quadratic or (i == j and i in linear):
            raise ParseError(f"line {lineno}: duplicate entry ({i},{j})")
        if prev is not None and (i != j) == (prev[0] != prev[1]) and key <= prev:
            raise ParseError(f"line {lineno}: entries out of ascending order")
        if prev is not None and i == j and prev[0] != prev[1]:
            raise ParseError(f"line {lineno}: linear entry after quadratic entries")
        prev = key
        if i == j:
            linear[i] = c
        else:
            quadratic[key] = c
    if header is None:
        raise ParseError("missing 'p qubo' header")
    n, nlin, nquad = header
    if (nlin, nquad) != (len(linear), len(quadratic)):
        raise ParseError(f"header counts ({nlin}, {nquad}) do not match body ({len(linear)}, {len(quadratic)})")
    try:
        model = QuboModel(n, linear, quadratic, offset)
    except QuboError as exc:
        raise ParseError(str(exc)) from None
    registry = None
    if labels:
        if sorted(labels) != list(range(n)):
            raise ParseError("variable labels must cover every index exactly once")
        registry = VariableRegistry(tuple(labels[k] for k in range(n)))
    return model, registry
