"""Check the zeta/Alexander identity on random products of symplectic transvections.

    python3 scripts/identity_sweep.py --count 200 --seed 1
"""

import argparse
import random
import time
from collections import Counter

from fibercount.monodromy import MonodromyData, MonodromyError, random_symplectic, zeta_alexander_identity


def sweep(count: int, seed: int, max_length: int) -> tuple[Counter, list]:
    rng = random.Random(seed)
    tally, failures = Counter(), []
    while tally["checked"] < count:
        g = rng.choice((1, 2, 3))
        A = random_symplectic(g, rng.randint(1, max_length), rng)
        try:
            rep = zeta_alexander_identity(MonodromyData.of(A))
        except MonodromyError:
            tally["skipped (det(I - A) = 0)"] += 1
            continue
        tally["checked"] += 1
        tally[f"genus {g}"] += 1
        if not rep.ok:
            failures.append(A)
    return tally, failures


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-length", type=int, default=12, help="longest word in the generators")
    args = ap.parse_args()

    start = time.perf_counter()
    tally, failures = sweep(args.count, args.seed, args.max_length)
    for key in sorted(tally):
        print(f"{key}: {tally[key]}")
    print(f"failures: {len(failures)}")
    for A in failures:
        print(f"  {A}")
    print(f"elapsed: {time.perf_counter() - start:.2f} s")
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
