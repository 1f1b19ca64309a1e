#!/usr/bin/env python3
"""Randomized cross-check of the homotopy colimit formula and the group
action theorems, at configurable scale.

Example:
    python scripts/randomized_audit.py --instances 500 --seed 42
"""

import argparse
import sys
import time
from random import Random

from eulcat import randgen
from eulcat.eulerchar import chi_scwol
from eulcat.fincat import classify
from eulcat.groupact import chi_theorems, quotient, skeletal_reduction
from eulcat.hocolim import check_hocolim_formula, grothendieck


def audit(instances: int, seed: int) -> int:
    rng = Random(seed)
    t0 = time.time()
    failures = 0

    for i in range(instances):
        d = randgen.random_strict_diagram(rng)
        rep = check_hocolim_formula(d, "chiL")
        flags = classify(grothendieck(d).category)
        if not (rep.equal and flags.is_directly_finite and flags.is_EI):
            failures += 1
            print(f"FORMULA FAIL at instance {i}: lhs={rep.lhs} rhs={rep.rhs}")
    print(
        f"homotopy colimit formula: {instances} instances, "
        f"{failures} failures, {time.time() - t0:.2f}s"
    )

    t0 = time.time()
    action_failures = 0
    n_free = max(10, instances // 4)
    for i in range(n_free):
        action = randgen.random_free_action(rng)
        q = quotient(action)
        if chi_scwol(q.category) * action.group.order != chi_scwol(action.space):
            action_failures += 1
            print(f"FREE-QUOTIENT FAIL at instance {i}")
    print(f"free quotient law: {n_free} instances, {action_failures} failures, {time.time() - t0:.2f}s")

    t0 = time.time()
    reduction_failures = 0
    n_actions = max(10, instances // 10)
    for i in range(n_actions):
        action = randgen.random_action(rng)
        if not skeletal_reduction(action).report.all_hold():
            reduction_failures += 1
            print(f"REDUCTION FAIL at instance {i}")
        if not chi_theorems(action).all_hold():
            reduction_failures += 1
            print(f"CHI-THEOREMS FAIL at instance {i}")
    print(
        f"skeletal reduction + chi theorems: {n_actions} actions, "
        f"{reduction_failures} failures, {time.time() - t0:.2f}s"
    )

    return 1 if failures or action_failures or reduction_failures else 0


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--instances", type=int, default=200)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    return audit(args.instances, args.seed)


if __name__ == "__main__":
    sys.exit(main())
