"""Shared encoder machinery: penalty weights, encoded models, codec dispatch."""

from __future__ import annotations

from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from ..errors import DimensionError, EncodingError, WeightError
from ..problems import FeasibilityReport, check_feasible, problem_tag, structural_violations
from ..qubo import QuboBuilder, QuboModel, VariableRegistry, energy


@dataclass(frozen=True)
class PenaltyWeights:
    """Positive integer constants scaling the Hamiltonian blocks.

    Constants a problem does not use are left as ``None``.
    """

    a: int | None = None
    b: int | None = None
    c: int | None = None

    def __post_init__(self):
        for name in "abc":
            v = getattr(self, name)
            if v is None:
                continue
            if isinstance(v, bool) or int(v) != v or v < 1:
                raise WeightError([f"{name.upper()} must be a positive integer, got {v!r}"])
            object.__setattr__(self, name, int(v))

    def as_dict(self) -> dict:
        return {k.upper(): v for k, v in (("a", self.a), ("b", self.b), ("c", self.c)) if v is not None}

    def __str__(self):
        return ", ".join(f"{k}={v}" for k, v in self.as_dict().items()) or "none"


@dataclass(frozen=True)
class EncodedModel:
    """A QUBO model together with everything needed to interpret its bits."""

    model: QuboModel
    registry: VariableRegistry
    problem: object
    weights: PenaltyWeights | None
    kind: str
    options: Mapping = field(default_factory=dict)
    parts: Mapping = field(default_factory=dict, repr=False)

    @property
    def num_vars(self) -> int:
        return self.model.num_vars

    def energy(self, bits: Sequence[int]) -> int:
        return energy(self.model, bits)

    def part_energy(self, part: str, bits: Sequence[int]) -> int:
        """Energy of one block (``"A"`` is the penalty block); 0 when absent."""
        model = self.parts.get(part)
        return 0 if model is None else energy(model, bits)

    def assignment(self, ones, *, strict: bool = True) -> tuple:
        return self.registry.assignment(ones, strict=strict)


class Codec(NamedTuple):
    canonical: Callable  # (em, sol, root) -> iterable of labels set to 1
    decode: Callable  # (em, bits) -> (sol, notes)
    expected_energy: Callable  # (em, sol) -> int


_CODECS: dict[str, Codec] = {}


def register_codec(kind: str, canonical, decode, expected_energy) -> None:
    _CODECS[kind] = Codec(canonical, decode, expected_energy)


def _codec(em: EncodedModel) -> Codec:
    try:
        return _CODECS[em.kind]
    except KeyError:
        raise EncodingError(f"no codec registered for model kind {em.kind!r}") from None


def canonical_encode(em: EncodedModel, sol, *, root: int | None = None) -> tuple:
    """Bit assignment representing ``sol`` with every constraint block satisfied.

    Tree-shaped solutions are rooted at a centre vertex unless ``root`` is given.
    """
    bad = structural_violations(em.problem, sol)
    if bad:
        raise EncodingError("cannot encode invalid solution: " + "; ".join(bad))
    ones = _codec(em).canonical(em, sol, root)
    return em.registry.assignment(ones)


def decode(em: EncodedModel, bits: Sequence[int]) -> tuple[object, FeasibilityReport]:
    """Domain solution read off the primary decision variables, plus its report.

    Bit patterns the solution type cannot express (an object in two bins, a
    vertex with two colours) are mapped to ``None`` and described in the report.
    """
    if len(bits) != em.num_vars:
        raise DimensionError(f"assignment has {len(bits)} bits, model has {em.num_vars}")
    sol, notes = _codec(em).decode(em, bits)
    report = check_feasible(em.problem, sol)
    return sol, FeasibilityReport(tuple(notes) + report.violations)


def expected_energy(em: EncodedModel, sol) -> int:
    """Analytic energy of ``canonical_encode(em, sol)`` from the domain objective."""
    return _codec(em).expected_energy(em, sol)


def finish(builder: QuboBuilder, inst, weights, kind, **options) -> EncodedModel:
    model, parts = builder.build()
    return EncodedModel(model, builder.registry, inst, weights, kind, dict(options), parts)


# --------------------------------------------------------------------- weight rules


class WeightRule(NamedTuple):
    constants: str  # which of "abc" are used
    check: Callable  # (inst, w, options) -> list of violations
    default: Callable  # (inst, options) -> PenaltyWeights


_RULES: dict[tuple, WeightRule] = {}


def register_rule(tag: str, variant: str, constants: str, check, default) -> None:
    _RULES[(tag, variant)] = WeightRule(constants, check, default)


def _rule(inst, variant) -> WeightRule | None:
    key = (problem_tag(inst), variant)
    if key not in _RULES:
        raise EncodingError(f"no {variant} formulation for {key[0]}")
    return _RULES[key]


def default_weights(inst, variant: str = "corrected", **options) -> PenaltyWeights | None:
    """Smallest integer weights clearing every strict bound by exactly one.

    Constants are fixed in dependency order (C, then B, then A). Returns
    ``None`` for problems whose Hamiltonian carries no penalty constants.
    """
    rule = _rule(inst, variant)
    return None if not rule.constants else rule.default(inst, options)


def validate_weights(inst, w: PenaltyWeights | None, variant: str = "corrected", **options) -> list[str]:
    """Every violated admissibility inequality, evaluated exactly."""
    rule = _rule(inst, variant)
    if not rule.constants:
        return []
    if w is None:
        return ["penalty weights required"]
    missing = [k.upper() for k in rule.constants if getattr(w, k) is None]
    if missing:
        return [f"weight {k} required" for k in missing]
    return rule.check(inst, w, options)


def resolve_weights(inst, w, variant, strict, options) -> PenaltyWeights | None:
    if w is None:
        return default_weights(inst, variant, **options)
    if strict:
        bad = validate_weights(inst, w, variant, **options)
        if bad:
            raise WeightError(bad)
    return w


def gt(lhs, rhs, text) -> list[str]:
    """``[]`` if lhs > rhs else a violation message."""
    if Fraction(lhs) > Fraction(rhs):
        return []
    return [f"{text} required ({lhs} <= {rhs})"]


# ---------------------------------------------------------------- tree helpers


def bfs_depths(n: int, edges, root: int) -> tuple[dict, dict]:
    """Depths and parents of the component of ``root`` in the forest ``edges``."""
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    depth, parent = {root: 0}, {}
    frontier = [root]
    while frontier:
        nxt = []
        for u in frontier:
            for v in sorted(adj[u]):
                if v not in depth:
                    depth[v] = depth[u] + 1
                    parent[v] = u
                    nxt.append(v)
        frontier = nxt
    return depth, parent


def centre(n: int, edges, component) -> int:
    """Vertex of least eccentricity within ``component``; lowest index on ties."""
    best, best_ecc = None, None
    for v in sorted(component):
        ecc = max(bfs_depths(n, edges, v)[0].values())
        if best_ecc is None or ecc < best_ecc:
            best, best_ecc = v, ecc
    return best


def forest_layout(n: int, edges, vertices, depth_bound: int, root: int | None = None):
    """Root each tree of the forest on ``vertices`` and return (depth, parent, roots).

    ``root`` pins the root of its own component; every other component is
    rooted at its centre. Raises :class:`EncodingError` when a depth exceeds
    ``depth_bound``.
    """
    remaining = set(vertices)
    depth, parent, roots = {}, {}, []
    if root is not None and root not in remaining:
        raise EncodingError(f"root {root} is not a vertex of the solution")
    order = ([root] if root is not None else []) + sorted(remaining)
    for start in order:
        if start not in remaining:
            continue
        comp_depth, _ = bfs_depths(n, edges, start)
        comp = set(comp_depth)
        r = start if start == root else centre(n, edges, comp)
        d, p = bfs_depths(n, edges, r)
        if max(d.values()) > depth_bound:
            raise EncodingError(f"tree rooted at {r} has depth {max(d.values())} > bound {depth_bound}")
        depth.update(d)
        parent.update(p)
        roots.append(r)
        remaining -= comp
    return depth, parent, roots
