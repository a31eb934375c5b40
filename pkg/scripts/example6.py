"""Genus-3 worked example: write the TOML input and evaluate Q.

    python3 scripts/example6.py                      # evaluate from the builders
    python3 scripts/example6.py --write data/example6.toml
"""

import argparse
import time

from fibercount.monodromy import MonodromyData, alexander_polynomial, small_delta
from fibercount.surgery import A0, block_sum, example_routes, example_y_sums, surgery_Q, example_chord_sums


def toml_text(delta: int = 1, eps: int = 1) -> str:
    A = block_sum(A0, A0, A0)
    lines = [
        "# Genus-3 mapping torus with monodromy A0 + A0 + A0, two Y-surgeries, delta = eps = 1.",
        "# Y(1)_0 = Y(y'..) + Y(x..) and Y(2)_0 = Y(w'..) + Y(z..), each over the 3! gradient labelings.",
        "# Chords y'_a -> z_a read (1 - tA)^-1 at (2a-1, 2a-1); chords w'_a -> x_a read tA(1 - tA)^-1 at (2a, 2a).",
        "",
        "[monodromy]",
        "genus = 3",
        "matrix = [" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in A) + "]",
        "",
        "[surgery]",
        "n = 1",
        "k_max = 3",
    ]
    for ys in example_y_sums(delta, eps):
        lines += ["", "[[surgery.y]]", "terms = ["]
        for c, legs in ys.terms:
            legs_s = ", ".join(f'"{l}"' for l in legs)
            lines.append(f'  {{coeff = "{c}", legs = [{legs_s}]}},')
        lines.append("]")
    for k in (1, 2, 3):
        lines += ["", "[[surgery.chords]]", "terms = ["]
        for r in example_routes(k):
            lines.append(f'  {{x = "{r.x}", y = "{r.y}", matrix = "{r.matrix}", row = {r.row}, col = {r.col}}},')
        lines.append("]")
    return "\n".join(lines) + "\n"


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--write", metavar="PATH", help="write the TOML input document and exit")
    args = ap.parse_args()
    if args.write:
        with open(args.write, "w", encoding="utf-8") as fh:
            fh.write(toml_text())
        print(f"wrote {args.write}")
        return
    start = time.perf_counter()
    m = MonodromyData.of(block_sum(A0, A0, A0))
    r = surgery_Q(example_y_sums(), example_chord_sums(), small_delta(m), alexander_polynomial(m), 3)
    print("before O_delta:", r.before_reduction)
    print("Q =", r.value)
    print("pairing:", r.pairing)
    print(f"elapsed {time.perf_counter() - start:.2f}s")


if __name__ == "__main__":
    main()
