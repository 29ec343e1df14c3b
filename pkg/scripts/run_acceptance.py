"""Run the acceptance battery from the command line.

Thin wrapper over logchart.suite for day-to-day use:

    python3 scripts/run_acceptance.py                 # full scale
    python3 scripts/run_acceptance.py --scale smoke
    python3 scripts/run_acceptance.py --only cech-exactness
    python3 scripts/run_acceptance.py --inject-fault saturation

Exit status is 0 iff every selected criterion passed.
"""

import argparse
import sys

from logchart import suite


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--scale", choices=sorted(suite.SCALES), default="full")
    parser.add_argument("--seed", type=int, default=suite.DEFAULT_SEED)
    parser.add_argument(
        "--inject-fault", choices=("saturation",), default=None, dest="fault"
    )
    parser.add_argument(
        "--only",
        action="append",
        default=[],
        metavar="CRITERION",
        help="restrict to a named criterion (repeatable)",
    )
    args = parser.parse_args()

    known = [name for name, _ in suite.CRITERIA]
    for name in args.only:
        if name not in known:
            parser.error(f"unknown criterion {name!r}; known: {', '.join(known)}")

    report = suite.run_suite(
        scale=args.scale,
        seed=args.seed,
        fault=args.fault,
        only=tuple(args.only),
    )
    width = max(len(r.name) for r in report.results)
    for r in report.results:
        mark = "PASS" if r.passed else "FAIL"
        print(f"{mark}  {r.name:<{width}}  {r.seconds:7.2f}s  {r.detail}")
        if r.counterexample:
            print(f"      counterexample: {r.counterexample}")
    total = sum(r.seconds for r in report.results)
    print(
        f"{'ok' if report.passed else 'FAILED'}: scale={report.scale} "
        f"seed={report.seed} threads={report.threads} total={total:.1f}s"
    )
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
