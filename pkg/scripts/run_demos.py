#!/usr/bin/env python3
"""Run every built-in demo end to end and summarize the verdicts."""

import sys

from eulcat.cli import DEMOS, main


def run() -> int:
    failures = []
    for name in sorted(DEMOS):
        print(f"=== demo {name} " + "=" * (40 - len(name)))
        code = main(["demo", name])
        print()
        if code != 0:
            failures.append(name)
    if failures:
        print(f"FAILED: {', '.join(failures)}")
        return 1
    print(f"all {len(DEMOS)} demos PASS")
    return 0


if __name__ == "__main__":
    sys.exit(run())
