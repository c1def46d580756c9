"""Command-line interface: ``qubomap {build,solve,decode,oracle,verify-paper}``.

Exit codes: 0 success, 2 invalid input or inadmissible weights, 3 capacity
exceeded, 4 a catalogued counterexample failed verification.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import lucas
from .encoders import build as build_corrected
from .encoders import build_two_coloring, decode, validate_weights
from .encoders.base import EncodedModel, PenaltyWeights, default_weights
from .errors import CapacityError, ParseError, QuboError, WeightError
from .problems import (
    BinAssignment,
    CliqueSet,
    Coloring,
    ColoringInstance,
    FeedbackEdgeSet,
    FeedbackVertexSet,
    Partition,
    RootedTree,
    SubsetSelection,
    TripleMatching,
    brute_force_optimum,
    objective,
    structural_violations,
)
from .serialization import export_qubo, parse_instance
from .solvers import DEFAULT_VAR_CAP, AnnealParams, anneal, exhaustive_solve

EXIT_OK, EXIT_INVALID, EXIT_CAPACITY, EXIT_FAIL = 0, 2, 3, 4


def format_solution(sol) -> str:
    def fmt_set(s):
        return "{" + ", ".join(str(v) for v in sorted(s)) + "}"

    if isinstance(sol, CliqueSet):
        return f"clique {fmt_set(sol.vertices)}"
    if isinstance(sol, Coloring):
        return "colours " + " ".join(f"{v}:{'-' if c is None else c}" for v, c in enumerate(sol.colors))
    if isinstance(sol, RootedTree):
        edges = ", ".join(f"({u},{v})" for u, v in sorted(sol.edges))
        return f"tree edges [{edges}]" + ("" if sol.root is None else f" root {sol.root}")
    if isinstance(sol, FeedbackVertexSet):
        return f"feedback vertices {fmt_set(sol.vertices)}"
    if isinstance(sol, FeedbackEdgeSet):
        return "feedback arcs [" + ", ".join(f"({u},{v})" for u, v in sorted(sol.arcs)) + "]"
    if isinstance(sol, BinAssignment):
        return "bins " + " ".join(f"{j}:{'-' if b is None else b}" for j, b in enumerate(sol.bins))
    if isinstance(sol, Partition):
        return "parts " + " | ".join(fmt_set(p) for p in sol.parts)
    if isinstance(sol, SubsetSelection):
        return f"subset {fmt_set(sol.indices)}"
    if isinstance(sol, TripleMatching):
        return "triples " + " ".join(f"({a},{b},{c})" for a, b, c in sol.triples)
    return repr(sol)


def _parse_weights(text: str) -> PenaltyWeights:
    parts = [p.strip() for p in text.split(",")]
    if not 1 <= len(parts) <= 3:
        raise ParseError("--weights expects A[,B[,C]]")
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"--weights values must be integers, got {text!r}") from None
    return PenaltyWeights(*values)


def _load(args):
    path = Path(args.instance)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return parse_instance(text)


def _options(doc, args) -> dict:
    options = dict(doc.options)
    if getattr(args, "encoding", None):
        options["encoding"] = args.encoding
    return options


def _weights(doc, args, variant, options):
    if getattr(args, "default_weights", False):
        return default_weights(doc.instance, variant, **_rule_options(options))
    if getattr(args, "weights", None):
        return _parse_weights(args.weights)
    if doc.weights is not None:
        return doc.weights
    return default_weights(doc.instance, variant, **_rule_options(options))


def _rule_options(options):
    return {k: v for k, v in options.items() if k in ("encoding", "omit_y")}


def make_model(doc, args) -> tuple[EncodedModel, list[str]]:
    """Model for the document plus the admissibility violations of its weights."""
    inst = doc.instance
    variant = "lucas" if args.lucas else "corrected"
    options = _options(doc, args)
    if options.get("encoding") == "binary":
        if not isinstance(inst, ColoringInstance) or inst.n_colors != 2:
            raise ParseError("binary encoding needs a two-colour colouring instance")
        return build_two_coloring(inst.graph), []
    w = _weights(doc, args, variant, options)
    violations = validate_weights(inst, w, variant, **_rule_options(options))
    builder = lucas.build_lucas if args.lucas else build_corrected
    try:
        em = builder(inst, w, strict=False, **options)
    except TypeError:
        raise ParseError(f"options {sorted(options)} not supported for {type(inst).__name__}") from None
    return em, violations


def _print_weights(em, violations, variant):
    print(f"variables: {em.num_vars}")
    if em.weights is not None:
        print(f"weights: {em.weights}")
    if violations:
        for v in violations:
            print(f"inadmissible ({variant}): {v}")
    else:
        print(f"admissible ({variant}): ok")


def cmd_build(args) -> int:
    doc = _load(args)
    em, violations = make_model(doc, args)
    _print_weights(em, violations, "lucas" if args.lucas else "corrected")
    if violations:
        return EXIT_INVALID
    text = export_qubo(em)
    if args.output:
        Path(args.output).write_text(text)
        print(f"wrote {args.output}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _report_solution(em, bits):
    sol, report = decode(em, bits)
    print(f"solution: {format_solution(sol)}")
    print(f"feasibility: {report}")
    if not structural_violations(em.problem, sol):
        print(f"objective: {objective(em.problem, sol)}")
    else:
        print("objective: undefined")
    return report


def cmd_solve(args) -> int:
    doc = _load(args)
    em, violations = make_model(doc, args)
    _print_weights(em, violations, "lucas" if args.lucas else "corrected")
    if violations:
        return EXIT_INVALID
    if args.solver == "exhaustive":
        result = exhaustive_solve(em.model, var_cap=args.cap)
    else:
        result = anneal(em.model, AnnealParams(num_restarts=args.restarts, sweeps=args.sweeps, seed=args.seed))
    print(f"solver: {args.solver}")
    print(f"energy: {result.best_energy}")
    if args.solver == "exhaustive":
        print(f"minima: {len(result.minima)}")
    print("bits: " + "".join(str(b) for b in result.best))
    _report_solution(em, result.best)
    return EXIT_OK


def cmd_decode(args) -> int:
    doc = _load(args)
    em, _ = make_model(doc, args)
    text = args.bits
    if Path(text).is_file():
        text = Path(text).read_text()
    bits = [int(c) for c in text if c in "01"]
    if len(bits) != em.num_vars:
        raise ParseError(f"expected {em.num_vars} bits, got {len(bits)}")
    print(f"energy: {em.energy(bits)}")
    _report_solution(em, bits)
    return EXIT_OK


def cmd_oracle(args) -> int:
    doc = _load(args)
    optima = brute_force_optimum(doc.instance, size_cap=args.cap)
    print(f"optimum: {objective(doc.instance, optima[0])}")
    print(f"optimal solutions: {len(optima)}")
    for sol in optima[: args.show]:
        print(f"  {format_solution(sol)}")
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    if args.list:
        for c in lucas.counterexample_catalog():
            print(f"{c.name}: {c.summary}")
        return EXIT_OK
    if args.all:
        cases = lucas.counterexample_catalog()
    elif args.case:
        try:
            cases = [lucas.get_case(args.case)]
        except KeyError as exc:
            raise ParseError(str(exc.args[0])) from None
    else:
        raise ParseError("give a case name, --all or --list")
    failed = 0
    for case in cases:
        res = lucas.verify_case(case)
        e = res.energies
        status = "PASS" if res.passed else "FAIL"
        print(f"{status} {case.name}: incorrect exploit {e['incorrect_exploit']} vs honest "
              f"{e['incorrect_honest']}; corrected exploit {e['corrected_exploit']} vs honest "
              f"{e['corrected_honest']}")
        for text, ok in res.checks:
            if not ok:
                print(f"    failed: {text}")
        failed += not res.passed
    print(f"{len(cases) - failed}/{len(cases)} cases pass")
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qubomap", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def model_flags(sp):
        sp.add_argument("instance", help="JSON instance document")
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--weights", help="penalty weights A[,B[,C]]")
        g.add_argument("--default-weights", action="store_true", help="ignore weights in the document")
        sp.add_argument("--lucas", action="store_true", help="use the original formulation and its weight rule")
        sp.add_argument("--encoding", choices=["one_hot", "log", "binary"])

    b = sub.add_parser("build", help="write the QUBO file for an instance")
    model_flags(b)
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_build)

    s = sub.add_parser("solve", help="build, solve, decode and validate")
    model_flags(s)
    s.add_argument("--solver", choices=["exhaustive", "anneal"], default="exhaustive")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--cap", type=int, default=DEFAULT_VAR_CAP, help="exhaustive variable cap")
    s.add_argument("--restarts", type=int, default=AnnealParams.num_restarts)
    s.add_argument("--sweeps", type=int, default=AnnealParams.sweeps)
    s.set_defaults(func=cmd_solve)

    d = sub.add_parser("decode", help="decode a bit string against an instance")
    model_flags(d)
    d.add_argument("bits", help="bit string, or a file containing one")
    d.set_defaults(func=cmd_decode)

    o = sub.add_parser("oracle", help="domain brute-force optimum")
    o.add_argument("instance")
    o.add_argument("--cap", type=int, default=1 << 21, help="search-space cap")
    o.add_argument("--show", type=int, default=5, help="optimal solutions to list")
    o.set_defaults(func=cmd_oracle)

    v = sub.add_parser("verify-paper", help="check the counterexample catalog")
    v.add_argument("case", nargs="?")
    v.add_argument("--all", action="store_true")
    v.add_argument("--list", action="store_true")
    v.set_defaults(func=cmd_verify_paper)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (WeightError, ParseError, QuboError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
