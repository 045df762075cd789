#!/usr/bin/env python3
"""Sweep the rectangle (L, alpha) grid: phase map, crossover curve, CSV.

Prints an ASCII phase map of the two solution regimes (corner-cut set vs
capped-substrip family), tabulates the crossover curve alpha_bar(L), and
writes the full grid as CSV through the CLI so the artifact matches the
documented schema.  With --verify every cell is also cross-checked against
the polygonal oracle, which is slower.
"""

import argparse
import pathlib
import sys

from alphacheeger import CaseTag, alpha_bar, classify_rectangle, cli, m_of_alpha


def phase_map(alphas, lengths):
    print("phase map (o = cut corners, = = substrip family, b = boundary)")
    header = "        " + " ".join(f"{length:5.1f}" for length in lengths)
    print(header)
    glyph = {
        CaseTag.UNIQUE_CUT_CORNERS: "o",
        CaseTag.UNIQUE_BOUNDARY_CASE: "b",
        CaseTag.TOPPED_FAMILY: "=",
    }
    for alpha in alphas:
        row = [glyph[classify_rectangle(length, alpha).case_tag]
               for length in lengths]
        print(f"  a={alpha:4.2f} " + "     ".join(row))


def crossover_table(lengths):
    print("\ncrossover curve: below alpha_bar(L) the corners are cut,")
    print("above it the capped substrip family takes over")
    print(f"  {'L':>6}  {'alpha_bar(L)':>14}  {'M(alpha_bar)+2':>15}")
    for length in lengths:
        bar = alpha_bar(length)
        print(f"  {length:6.2f}  {bar:14.10f}  {m_of_alpha(bar) + 2.0:15.10f}")


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--alphas", default="1.05:1.95:0.05",
                        help="comma list or start:stop:step")
    parser.add_argument("--lengths", default="2:13:0.5")
    parser.add_argument("--csv", default="out/rectangle_sweep.csv")
    parser.add_argument("--segments", type=int, default=500)
    parser.add_argument("--verify", action="store_true",
                        help="cross-check each cell against the polygonal oracle")
    args = parser.parse_args(argv)

    alphas = cli.parse_value_list(args.alphas)
    lengths = cli.parse_value_list(args.lengths)
    phase_map(alphas, lengths)
    crossover_table((2.0, 2.5, 3.0, 4.0, 6.0, 10.0, 20.0, 50.0))

    target = pathlib.Path(args.csv)
    target.parent.mkdir(parents=True, exist_ok=True)
    sweep_argv = ["sweep", "--alphas", args.alphas, "--lengths", args.lengths,
                  "--csv", str(target), "--segments", str(args.segments)]
    if args.verify:
        sweep_argv.append("--verify")
    print()
    return cli.main(sweep_argv)


if __name__ == "__main__":
    sys.exit(main())
