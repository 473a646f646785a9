#!/usr/bin/env python3
"""End-to-end demo: fit the bundled S-curve, export every artifact.

Writes the model, the four SVG views, and the explorer bundle into
--out-dir, then prints the serve command that opens the linked views.
"""

import argparse
from pathlib import Path

import liftmesh as lm
from liftmesh.render import VIEWS, render_view


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=5000)
    parser.add_argument("--b1", type=int, default=21)
    parser.add_argument("--q", type=float, default=0.1)
    parser.add_argument("--hd-thresh", type=float, default=0.0)
    parser.add_argument("--out-dir", default="demo")
    args = parser.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    highd, layout = lm.make_scurve(n=args.n)
    model = lm.fit_model(highd, layout, args.b1, args.q, args.hd_thresh)
    lm.save_model(model, out / "model.json")
    summary = lm.summarize_errors(highd, model)
    print(f"fit: m={model.m} bins, {model.mesh.n_edges} edges, "
          f"Error={summary.error:.3f}, HBE={summary.hbe:.5f}")

    for view in VIEWS:
        (out / f"{view}.svg").write_text(render_view(model, view))
    print(f"wrote {len(VIEWS)} SVG views")

    bundle = lm.build_bundle(highd, layout, model)
    lm.save_bundle(bundle, out / "bundle.json")
    print(f"wrote {out}/bundle.json")
    print(f"next: liftmesh serve --bundle {out}/bundle.json --assets frontend")


if __name__ == "__main__":
    main()
