#!/usr/bin/env python3
"""Classify a gallery of curved domains and render each one to SVG.

The gallery walks the interesting branches: a short rectangle whose corners
get cut, a U-shaped strip carrying a whole family of equally good substrips,
a pair of equal-length spines where only the bend radius decides between
cut corners and the substrip family, and a circular annulus at its tie point
where the whole domain and the substrip family are equally good.

Each domain is written as a curve file and then classified through the CLI,
so the output doubles as a demonstration of the documented interfaces.
"""

import argparse
import json
import math
import pathlib
import sys

from alphacheeger import Ordering, annulus_substrip_wins, cli

HOOK_PIECES = [["arc", 1.05, 1.71], ["line", 10.64], ["arc", 1.05, 1.71]]
GENTLE_PIECES = [["arc", 8.0, 1.05 * 1.71 / 8.0], ["line", 10.64],
                 ["arc", 8.0, 1.05 * 1.71 / 8.0]]
HOOK_LENGTH = 2 * 1.05 * 1.71 + 10.64

# alpha tuned so the substrip needs all but 2.5 units of the hook spine
TIGHT_M = HOOK_LENGTH - 2.5
TIGHT_ALPHA = (2.0 + 2.0 * TIGHT_M / math.pi) / (1.0 + 2.0 * TIGHT_M / math.pi)

RING_RADIUS = 4.0


def ring_tie_alpha(length):
    """Bisect the closed-form comparison to the whole-vs-family tie."""
    lo, hi = 1.000001, 1.999999
    while hi - lo > 1e-14:
        mid = 0.5 * (lo + hi)
        if annulus_substrip_wins(length, mid, eps_tie=0.0) is Ordering.ANNULUS_BETTER:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def show(title, argv):
    print(f"\n=== {title} ===")
    code = cli.main(argv)
    if code != 0:
        raise SystemExit(f"CLI exited with {code} for: {' '.join(argv)}")


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", default="out/gallery")
    parser.add_argument("--segments", type=int, default=500)
    args = parser.parse_args(argv)

    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    seg = str(args.segments)

    def curve_file(name, spec):
        path = out / name
        path.write_text(json.dumps(spec, indent=2), encoding="utf-8")
        return str(path)

    show("short rectangle: unique cut-corner set",
         ["rect", "--length", "3", "--alpha", "1.5", "--segments", seg,
          "--svg", str(out / "rectangle_cut_corners.svg")])

    u_path = curve_file("u_spine.json", {
        "primitive": "path",
        "pieces": [["line", 6.0], ["arc", 1.6, math.pi], ["line", 4.0]],
    })
    show("U-shaped strip: a substrip family, drawn at three anchors",
         ["strip", u_path, "--alpha", "1.5", "--segments", seg,
          "--svg", str(out / "u_strip_family.svg")])

    hook_path = curve_file("hook_spine.json",
                           {"primitive": "path", "pieces": HOOK_PIECES})
    gentle_path = curve_file("gentle_spine.json",
                             {"primitive": "path", "pieces": GENTLE_PIECES})
    alpha = f"{TIGHT_ALPHA:.12f}"
    show("tight bends: the substrip cannot fit, corners get cut instead",
         ["strip", hook_path, "--alpha", alpha, "--segments", seg,
          "--svg", str(out / "hook_blocked.svg")])
    show("gentle bends, same piece lengths: the family fits again",
         ["strip", gentle_path, "--alpha", alpha, "--segments", seg,
          "--svg", str(out / "gentle_admitted.svg")])

    ring_path = curve_file("ring.json",
                           {"primitive": "circle", "radius": RING_RADIUS})
    tie = ring_tie_alpha(2.0 * math.pi * RING_RADIUS)
    show(f"annulus at its tie point (alpha = {tie:.10f})",
         ["strip", ring_path, "--alpha", f"{tie:.15f}", "--segments", seg,
          "--svg", str(out / "ring_tie.svg")])

    print(f"\nfigures and curve files in {out}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
