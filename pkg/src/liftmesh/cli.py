"""Command-line front door.

Subcommands cover the whole workflow: fit a model, predict embeddings
for new points, compute residual diagnostics, sweep bin widths across
layouts, render static SVG views, export the visualization bundle, and
serve the explorer UI. Exit codes: 0 success, 2 usage or validation
failure, 1 internal error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from http.server import SimpleHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .bundle import build_bundle, load_labels, save_bundle
from .evaluate import augment_residuals, hbe_sweep, predict_embedding, summarize_errors
from .exceptions import ConfigError, LiftmeshError
from .ingest import load_embedding, load_highd
from .lift import fit_model
from .mesh import DEFAULT_EDGE_CUTOFF_FACTOR
from .render import VIEWS, render_view
from .serialize import load_model, save_model


@dataclass(frozen=True)
class RunConfig:
    """Validated knobs for a fit-like command."""

    highd_path: Path
    nldr_paths: dict[str, Path]
    output: Path
    b1: int
    q: float
    hd_thresh: float
    md_thresh: float | None
    edge_cutoff_factor: float
    retriangulate: bool
    seed: int | None = None


def _parse_b1_spec(spec: str) -> list[int]:
    """Accept '5:40:5' (inclusive range) or '5,10,20' or a single value."""
    try:
        if ":" in spec:
            parts = [int(v) for v in spec.split(":")]
            if len(parts) == 2:
                start, stop, step = parts[0], parts[1], 1
            elif len(parts) == 3:
                start, stop, step = parts
            else:
                raise ValueError
            if step <= 0 or stop < start:
                raise ValueError
            return list(range(start, stop + 1, step))
        return [int(v) for v in spec.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"bad --b1 spec {spec!r}; use START:STOP[:STEP] or a comma list") from None


def _parse_layout_args(pairs: list[str]) -> dict[str, Path]:
    layouts: dict[str, Path] = {}
    for item in pairs:
        if "=" in item:
            name, path = item.split("=", 1)
        else:
            name, path = Path(item).stem, item
        if name in layouts:
            raise ConfigError(f"duplicate layout name {name!r}")
        layouts[name] = Path(path)
    return layouts


def _fmt(v: float) -> str:
    return repr(float(v))


def cmd_fit(args) -> int:
    cfg = RunConfig(
        highd_path=Path(args.highd),
        nldr_paths={"layout": Path(args.nldr)},
        output=Path(args.output),
        b1=args.b1,
        q=args.q,
        hd_thresh=args.hd_thresh,
        md_thresh=args.md_thresh,
        edge_cutoff_factor=args.edge_cutoff_factor,
        retriangulate=args.retriangulate,
    )
    highd = load_highd(cfg.highd_path)
    emb = load_embedding(cfg.nldr_paths["layout"])
    model = fit_model(
        highd, emb, cfg.b1, cfg.q, cfg.hd_thresh, cfg.md_thresh,
        edge_cutoff_factor=cfg.edge_cutoff_factor,
        retriangulate=cfg.retriangulate,
    )
    save_model(model, cfg.output)
    print(f"wrote {cfg.output} (m={model.m} bins, {model.mesh.n_edges} edges)")
    return 0


def cmd_predict(args) -> int:
    model = load_model(args.model)
    queries = load_highd(args.queries)
    with open(args.output, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["pred_emb_1", "pred_emb_2", "ID", "pred_h"])
        if queries.n:
            pred = predict_embedding(queries, model)
            for i in range(queries.n):
                writer.writerow(
                    [
                        _fmt(pred.pred_emb[i, 0]),
                        _fmt(pred.pred_emb[i, 1]),
                        int(pred.ids[i]),
                        int(pred.pred_h[i]),
                    ]
                )
    print(f"wrote {args.output} ({queries.n} rows)")
    return 0


def cmd_errors(args) -> int:
    model = load_model(args.model)
    highd = load_highd(args.highd)
    summary = summarize_errors(highd, model)
    res = augment_residuals(highd, model)
    Path(args.summary).write_text(
        json.dumps({"Error": summary.error, "HBE": summary.hbe}, indent=2) + "\n"
    )
    p = highd.p
    with open(args.residuals, "w", newline="") as fh:
        writer = csv.writer(fh)
        header = (
            ["ID"]
            + [f"x{j+1}" for j in range(p)]
            + ["pred_h"]
            + [f"model_x{j+1}" for j in range(p)]
            + [f"residual_x{j+1}" for j in range(p)]
            + [f"sq_error_x{j+1}" for j in range(p)]
            + [f"abs_error_x{j+1}" for j in range(p)]
            + ["row_wise_total_error", "row_wise_abs_error"]
        )
        writer.writerow(header)
        for i in range(highd.n):
            row = (
                [int(res.ids[i])]
                + [_fmt(v) for v in res.coords[i]]
                + [int(res.pred_h[i])]
                + [_fmt(v) for v in res.model_coords[i]]
                + [_fmt(v) for v in res.residuals[i]]
                + [_fmt(v) for v in res.sq_errors[i]]
                + [_fmt(v) for v in res.abs_errors[i]]
                + [_fmt(res.row_total[i]), _fmt(res.row_abs[i])]
            )
            writer.writerow(row)
    print(f"wrote {args.summary} and {args.residuals} (Error={summary.error:.6g}, HBE={summary.hbe:.6g})")
    return 0


def cmd_sweep(args) -> int:
    highd = load_highd(args.highd)
    layout_paths = _parse_layout_args(args.nldr)
    layouts = {name: load_embedding(path) for name, path in layout_paths.items()}
    b1_values = _parse_b1_spec(args.b1)
    records = hbe_sweep(
        highd, layouts, b1_values, args.q, args.hd_thresh, args.md_thresh,
        edge_cutoff_factor=args.edge_cutoff_factor,
    )
    with open(args.output, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["layout", "b1", "a1", "Error", "HBE"])
        for rec in records:
            writer.writerow(
                [
                    rec.layout,
                    rec.b1,
                    "" if rec.a1 is None else _fmt(rec.a1),
                    "" if rec.error is None else _fmt(rec.error),
                    "" if rec.hbe is None else _fmt(rec.hbe),
                ]
            )
    failures = [r for r in records if r.failure]
    for rec in failures:
        print(f"warning: {rec.layout} b1={rec.b1} failed: {rec.failure}", file=sys.stderr)
    print(f"wrote {args.output} ({len(records)} rows, {len(failures)} failed cells)")
    return 0


def cmd_render(args) -> int:
    model = load_model(args.model)
    svg = render_view(model, args.view)
    Path(args.output).write_text(svg)
    print(f"wrote {args.output}")
    return 0


def cmd_export_bundle(args) -> int:
    model = load_model(args.model)
    highd = load_highd(args.highd)
    emb = load_embedding(args.nldr)
    labels = load_labels(args.labels) if args.labels else None
    bundle = build_bundle(highd, emb, model, labels)
    save_bundle(bundle, args.output)
    print(f"wrote {args.output} (n={bundle['metadata']['n']}, m={bundle['metadata']['m']})")
    return 0


_FALLBACK_INDEX = b"""<!DOCTYPE html>
<html><head><title>liftmesh</title></head>
<body>
<h1>liftmesh bundle server</h1>
<p>No UI assets directory was configured. The data bundle is at
<a href="/bundle.json">/bundle.json</a>. Build the explorer UI under
frontend/ and pass it with --assets to get the linked views.</p>
</body></html>
"""


class _BundleHandler(SimpleHTTPRequestHandler):
    bundle_path: Path
    assets_dir: Path | None

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def do_GET(self):
        if self.path.split("?", 1)[0] == "/bundle.json":
            try:
                payload = self.bundle_path.read_bytes()
            except OSError:
                self.send_error(404, "bundle not found")
                return
            self.send_response(200)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(payload)))
            self.end_headers()
            self.wfile.write(payload)
            return
        if self.assets_dir is None:
            if self.path.split("?", 1)[0] in ("/", "/index.html"):
                self.send_response(200)
                self.send_header("Content-Type", "text/html; charset=utf-8")
                self.send_header("Content-Length", str(len(_FALLBACK_INDEX)))
                self.end_headers()
                self.wfile.write(_FALLBACK_INDEX)
            else:
                self.send_error(404, "no such file")
            return
        super().do_GET()


def make_server(bundle: Path, assets: Path | None, host: str, port: int) -> ThreadingHTTPServer:
    """Bind the file server; raises OSError if the port is taken."""
    handler = type(
        "Handler",
        (_BundleHandler,),
        {"bundle_path": Path(bundle), "assets_dir": assets},
    )
    if assets is not None:
        base = handler

        def factory(*fargs, **fkw):
            return base(*fargs, directory=str(assets), **fkw)

        return ThreadingHTTPServer((host, port), factory)
    return ThreadingHTTPServer((host, port), handler)


def cmd_serve(args) -> int:
    bundle = Path(args.bundle)
    if not bundle.exists():
        raise ConfigError(f"bundle file not found: {bundle}")
    assets = Path(args.assets) if args.assets else None
    if assets is not None and not assets.is_dir():
        raise ConfigError(f"assets directory not found: {assets}")
    try:
        server = make_server(bundle, assets, args.host, args.port)
    except OSError as exc:
        print(f"error: cannot bind {args.host}:{args.port}: {exc}", file=sys.stderr)
        return 2
    host, port = server.server_address[:2]
    print(f"serving on http://{host}:{port}/ (bundle at /bundle.json); Ctrl-C to stop")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liftmesh",
        description="Fit, score, and explore hexagon-mesh models of 2-D embeddings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fit = sub.add_parser("fit", help="fit a model and write model.json")
    fit.add_argument("--highd", required=True, help="p-D data csv (ID, x1..xp)")
    fit.add_argument("--nldr", required=True, help="2-D layout csv (ID, emb1, emb2)")
    fit.add_argument("--b1", type=int, required=True, help="bins along the x axis")
    fit.add_argument("--q", type=float, default=0.1, help="buffer proportion in (0, 0.5)")
    fit.add_argument("--hd-thresh", type=float, default=0.0, dest="hd_thresh",
                     help="drop bins with count <= this")
    fit.add_argument("--md-thresh", type=float, default=None, dest="md_thresh",
                     help="also drop bins with mean neighbor density below this")
    fit.add_argument("--edge-cutoff-factor", type=float,
                     default=DEFAULT_EDGE_CUTOFF_FACTOR, dest="edge_cutoff_factor",
                     help="drop mesh edges longer than this multiple of a1")
    fit.add_argument("--retriangulate", action="store_true",
                     help="rebuild the mesh from surviving bins instead of filtering")
    fit.add_argument("-o", "--output", default="model.json")
    fit.set_defaults(func=cmd_fit)

    predict = sub.add_parser("predict", help="predict 2-D positions for p-D queries")
    predict.add_argument("--model", required=True)
    predict.add_argument("--queries", required=True, help="query csv (ID, x1..xp)")
    predict.add_argument("-o", "--output", default="predictions.csv")
    predict.set_defaults(func=cmd_predict)

    errors = sub.add_parser("errors", help="residual diagnostics and summary scores")
    errors.add_argument("--model", required=True)
    errors.add_argument("--highd", required=True)
    errors.add_argument("--summary", default="summary.json")
    errors.add_argument("--residuals", default="residuals.csv")
    errors.set_defaults(func=cmd_errors)

    sweep = sub.add_parser("sweep", help="HBE across bin widths and layouts")
    sweep.add_argument("--highd", required=True)
    sweep.add_argument("--nldr", required=True, action="append",
                       help="layout as NAME=PATH (repeatable)")
    sweep.add_argument("--b1", required=True,
                       help="b1 values: START:STOP[:STEP] or comma list")
    sweep.add_argument("--q", type=float, default=0.1)
    sweep.add_argument("--hd-thresh", type=float, default=0.0, dest="hd_thresh")
    sweep.add_argument("--md-thresh", type=float, default=None, dest="md_thresh")
    sweep.add_argument("--edge-cutoff-factor", type=float,
                       default=DEFAULT_EDGE_CUTOFF_FACTOR, dest="edge_cutoff_factor")
    sweep.add_argument("-o", "--output", default="sweep.csv")
    sweep.set_defaults(func=cmd_sweep)

    render = sub.add_parser("render", help="static SVG view of a model")
    render.add_argument("--model", required=True)
    render.add_argument("--view", required=True, choices=VIEWS)
    render.add_argument("-o", "--output", default="view.svg")
    render.set_defaults(func=cmd_render)

    export = sub.add_parser("export-bundle", help="write the explorer UI bundle")
    export.add_argument("--model", required=True)
    export.add_argument("--highd", required=True)
    export.add_argument("--nldr", required=True)
    export.add_argument("--labels", default=None,
                        help="optional ID,label csv attaching categories")
    export.add_argument("-o", "--output", default="bundle.json")
    export.set_defaults(func=cmd_export_bundle)

    serve = sub.add_parser("serve", help="serve UI assets plus /bundle.json")
    serve.add_argument("--bundle", required=True)
    serve.add_argument("--assets", default=None, help="directory of UI assets")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8731)
    serve.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LiftmeshError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 1
    except Exception as exc:  # noqa: BLE001 - last-resort diagnostics
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
