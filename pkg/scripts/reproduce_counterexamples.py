"""Print the energies of every catalogued counterexample under both formulations."""

from qubomap import lucas


def main() -> int:
    failed = 0
    for case in lucas.counterexample_catalog():
        res = lucas.verify_case(case)
        e = res.energies
        print(f"{case.name}  [{'PASS' if res.passed else 'FAIL'}]")
        print(f"  {case.summary}")
        print(f"  original : exploit {e['incorrect_exploit']:>10}  honest {e['incorrect_honest']:>10}")
        print(f"  corrected: exploit {e['corrected_exploit']:>10}  honest {e['corrected_honest']:>10}")
        for text, ok in res.checks:
            if not ok:
                print(f"  failed: {text}")
        failed += not res.passed
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
