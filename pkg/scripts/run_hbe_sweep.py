#!/usr/bin/env python3
"""Compare layouts by hexbin error across a range of bin widths.

Fits one model per (layout, b1) cell on the bundled S-curve and prints
the HBE table that separates locality-preserving layouts from broken
ones. The same sweep is available through `liftmesh sweep` for csv
inputs.
"""

import argparse

import liftmesh as lm


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=5000)
    parser.add_argument("--b1", type=int, nargs="+", default=[10, 15, 20, 25, 30])
    parser.add_argument("--q", type=float, default=0.1)
    parser.add_argument("--hd-thresh", type=float, default=0.0)
    args = parser.parse_args()

    highd, layout = lm.make_scurve(n=args.n)
    layouts = {
        "intrinsic": layout,
        "shuffled": lm.shuffled_layout(layout),
    }
    records = lm.hbe_sweep(highd, layouts, args.b1, args.q, args.hd_thresh)

    print(f"{'layout':<12}{'b1':>5}{'a1':>12}{'Error':>14}{'HBE':>10}")
    for rec in records:
        if rec.hbe is None:
            print(f"{rec.layout:<12}{rec.b1:>5}  failed: {rec.failure}")
        else:
            print(
                f"{rec.layout:<12}{rec.b1:>5}{rec.a1:>12.6f}"
                f"{rec.error:>14.3f}{rec.hbe:>10.5f}"
            )


if __name__ == "__main__":
    main()
