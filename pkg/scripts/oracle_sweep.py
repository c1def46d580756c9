"""Compare exhaustive QUBO minima with domain brute force over the small-instance corpus."""

import argparse
import time
from collections import Counter

from qubomap.sweep import check_case, sweep_cases


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--cap", type=int, default=24, help="largest model to solve exhaustively")
    p.add_argument("--basic", action="store_true", help="skip tree and feedback-vertex families")
    args = p.parse_args()

    start = time.perf_counter()
    per_kind, failures = Counter(), []
    for case in sweep_cases(var_cap=args.cap, extended=not args.basic):
        outcome = check_case(case, var_cap=args.cap)
        per_kind[type(case.instance).__name__] += 1
        if not outcome.ok:
            failures.append(outcome)
    for kind, count in sorted(per_kind.items()):
        print(f"{kind:28s} {count:5d} cases")
    print(f"{sum(per_kind.values())} cases, {len(failures)} failures, {time.perf_counter() - start:.1f}s")
    for outcome in failures:
        print(f"FAIL {outcome.case.name}: {'; '.join(outcome.failures)}")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
