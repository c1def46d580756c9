"""Oracle-equivalence checks: exhaustive QUBO minima against domain brute force."""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field

from .encoders import build, decode
from .problems import (
    CliqueInstance,
    ColoringInstance,
    DegreeMstInstance,
    FesInstance,
    FvsInstance,
    GraphPartitionInstance,
    NumberPartitionInstance,
    SteinerInstance,
    SubsetSumInstance,
    WeightedGraph,
    brute_force_optimum,
    enumerate_small_instances,
    objective,
    problem_tag,
    structural_violations,
)
from .solvers import DEFAULT_VAR_CAP, exhaustive_solve


@dataclass(frozen=True)
class SweepCase:
    instance: object
    options: dict = field(default_factory=dict)

    @property
    def name(self) -> str:
        opts = "".join(f" {k}={v}" for k, v in sorted(self.options.items()))
        return f"{problem_tag(self.instance)}{opts}: {self.instance}"


@dataclass(frozen=True)
class SweepOutcome:
    case: SweepCase
    num_vars: int
    optimum: int | None
    minima: int
    failures: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.failures


def check_case(case: SweepCase, var_cap: int = DEFAULT_VAR_CAP) -> SweepOutcome:
    """Solve the corrected model exactly and compare every minimum with the oracle."""
    inst = case.instance
    em = build(inst, None, **case.options)
    optima = brute_force_optimum(inst)
    target = objective(inst, optima[0]) if optima else None
    result = exhaustive_solve(em.model, var_cap=var_cap)
    failures = []
    if target is None:
        failures.append("oracle found no structurally valid solution")
    for bits in result.minima:
        sol, report = decode(em, bits)
        bad = structural_violations(inst, sol)
        if bad:
            failures.append(f"minimum {''.join(map(str, bits))} decodes infeasible: {'; '.join(bad)}")
            continue
        if optima and optima[0].__class__ is not sol.__class__:
            failures.append(f"decoded type {type(sol).__name__} differs from oracle")
            continue
        got = objective(inst, sol)
        if target is not None and got != target:
            failures.append(f"minimum {''.join(map(str, bits))} has objective {got}, oracle {target}")
    return SweepOutcome(case, em.num_vars, target, len(result.minima), tuple(failures))


def _model_size(case: SweepCase) -> int:
    return build(case.instance, None, **case.options).num_vars


def sweep_cases(var_cap: int = DEFAULT_VAR_CAP, extended: bool = False) -> Iterator[SweepCase]:
    """The small-instance corpus of the oracle sweep.

    Connected graphs up to four vertices for clique, colouring (2 and 3
    colours) and graph partition (every m dividing N); labelled digraphs on up
    to three vertices for FES; integer sets of at most six values for number
    partition (m = 2, 3) and subset sum (every target from 0 to the total
    plus one); N3DM with N <= 2. ``extended`` adds the tree and feedback
    vertex problems on three-vertex graphs. Models above ``var_cap`` are
    skipped.
    """
    graphs = list(enumerate_small_instances("connected_graphs", max_vertices=4))
    cases: list[SweepCase] = []
    for g in graphs:
        cases.append(SweepCase(CliqueInstance(g)))
        cases.append(SweepCase(CliqueInstance(g), {"encoding": "log"}))
        for n in (2, 3):
            cases.append(SweepCase(ColoringInstance(g, n)))
        for m in range(2, g.num_vertices + 1):
            if g.num_vertices % m == 0:
                cases.append(SweepCase(GraphPartitionInstance(g, m)))
    for dg in enumerate_small_instances("digraphs", max_vertices=3):
        cases.append(SweepCase(FesInstance(dg)))
    for values in enumerate_small_instances("integer_sets", max_size=6, max_value=3):
        for m in (2, 3):
            cases.append(SweepCase(NumberPartitionInstance(values, m)))
        for t in range(sum(values) + 2):
            cases.append(SweepCase(SubsetSumInstance(values, t)))
    for inst in enumerate_small_instances("n3dm", max_n=2, max_value=2):
        cases.append(SweepCase(inst))
    if extended:
        cases.extend(_tree_cases())
    for case in cases:
        if _model_size(case) <= var_cap:
            yield case


def _tree_cases() -> Iterator[SweepCase]:
    for g in enumerate_small_instances("connected_graphs", max_vertices=3):
        costs = [1 + k for k in range(len(g.edges))]
        wg = WeightedGraph.from_lists(g.num_vertices, g.edges, costs)
        yield SweepCase(DegreeMstInstance(wg, 2))
        yield SweepCase(SteinerInstance(wg, frozenset({0, g.num_vertices - 1})))
        yield SweepCase(FvsInstance(g))
