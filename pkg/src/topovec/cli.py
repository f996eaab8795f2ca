"""Command-line driver.

Subcommands: ``generate`` (synthetic datasets), ``persistence`` (point cloud /
image -> barcode CSV), ``vectorize`` (barcode files -> feature matrix CSV),
``fit`` (ensemble models -> JSON), ``bench`` (full experiment -> JSON report),
``methods`` (print the catalogue with parameter grids) and ``serve`` (HTTP
service).
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import io, methods
from .barcode import Barcode, BarcodeError, EssentialPolicy, normalize
from .datasets import FAMILIES, SyntheticSpec, generate_dataset
from .ensemble import model_from_json, model_to_json
from .experiment import (
    DEFAULT_MAX_DIM,
    DEFAULT_MAX_SCALE,
    run_experiment,
    vectorize_collection,
)
from .filtration import (
    DEFAULT_PIXEL_BUDGET,
    DEFAULT_POINT_BUDGET,
    PointCloud,
    ResourceBudgetError,
    cubical_complex,
    rips_complex,
)
from .reduction import compute_persistence

DEFAULT_BENCH_METHODS = (
    "persistence_statistics",
    "entropy_summary",
    "algebraic_functions",
    "tropical_coordinates",
    "betti_curve",
    "persistence_landscape",
    "persistence_silhouette",
    "atol",
)


def _policy_from_args(args) -> EssentialPolicy:
    if args.essential_policy == "drop":
        return EssentialPolicy("drop")
    return EssentialPolicy("clamp", args.clamp_value)


def _parse_params(pairs: list[str]) -> dict:
    params = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise SystemExit(f"--param expects name=value, got {pair!r}")
        name, value = pair.split("=", 1)
        params[name.strip()] = value.strip()
    return params


def _parse_dims(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(d) for d in text.split(",") if d != "")
    except ValueError:
        raise SystemExit(f"--dims expects a comma-separated list of integers, got {text!r}")
    if not dims:
        raise SystemExit("--dims must list at least one dimension")
    return dims


def _grid_help() -> str:
    lines = ["method parameter grids (documented sweep values):"]
    for info in methods.list_methods():
        if not info.params:
            lines.append(f"  {info.id}: (no parameters)")
            continue
        parts = []
        for p in info.params:
            grid = f" grid={list(p.grid)}" if p.grid else ""
            parts.append(f"{p.name}={p.default!r}{grid}")
        lines.append(f"  {info.id}: " + ", ".join(parts))
    return "\n".join(lines)


def cmd_generate(args) -> int:
    spec = SyntheticSpec(
        families=tuple(args.family),
        samples_per_class=args.samples_per_class,
        points_per_sample=args.points,
        noise=args.noise,
        seed=args.seed,
        image_size=args.image_size,
    )
    samples, labels = generate_dataset(spec)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rows = []
    for i, (sample, label) in enumerate(zip(samples, labels)):
        if isinstance(sample, PointCloud):
            name = f"sample_{i:04d}.csv"
            io.write_point_cloud(sample, out / name)
        else:
            name = f"sample_{i:04d}.pgm"
            io.write_pgm(sample.to_matrix(), out / name)
        rows.append(f"{name},{label},{spec.families[label]}")
    (out / "labels.csv").write_text("file,label,family\n" + "\n".join(rows) + "\n")
    (out / "manifest.json").write_text(
        json.dumps(
            {
                "families": list(spec.families),
                "samples_per_class": spec.samples_per_class,
                "points_per_sample": spec.points_per_sample,
                "noise": spec.noise,
                "seed": spec.seed,
                "image_size": spec.image_size,
            },
            indent=2,
            sort_keys=True,
        )
        + "\n"
    )
    print(f"wrote {len(samples)} samples to {out}")
    return 0


def cmd_persistence(args) -> int:
    path = Path(args.input)
    kind = args.type
    if kind == "auto":
        kind = "image" if path.suffix.lower() == ".pgm" else "points"
    if kind == "points":
        pc = io.read_point_cloud(path)
        fc = rips_complex(
            pc, max_scale=args.max_scale, max_dim=args.max_dim, point_budget=args.point_budget
        )
    else:
        img = io.read_image(path)
        fc = cubical_complex(img, direction=args.direction, pixel_budget=args.pixel_budget)
    barcodes = compute_persistence(fc)
    if not args.raw:
        policy = _policy_from_args(args)
        barcodes = {d: normalize(b, policy) for d, b in barcodes.items()}
    io.write_barcodes(barcodes, args.out)
    counts = {d: b.n_bars for d, b in barcodes.items()}
    print(f"wrote {args.out}: bars per dim {counts}")
    return 0


def _load_barcode_files(paths, policy) -> list[dict[int, Barcode]]:
    sets = []
    for p in paths:
        barcodes = io.read_barcodes(p)
        sets.append({d: normalize(b, policy) for d, b in barcodes.items()})
    return sets


def cmd_vectorize(args) -> int:
    policy = _policy_from_args(args)
    barcode_sets = _load_barcode_files(args.barcodes, policy)
    params = methods.resolve_params(args.method, _parse_params(args.param))
    dims = _parse_dims(args.dims)
    if args.model:
        model, _meta = model_from_json(Path(args.model).read_text())
        states = {d: model for d in dims}
    else:
        # common ranges / grids / models are fitted on the input batch itself
        from .experiment import fit_states

        states = fit_states(args.method, barcode_sets, params, dims, args.seed)
    matrix, labels, warnings = vectorize_collection(
        barcode_sets, args.method, params, dims, states
    )
    for warning in warnings:
        print(f"warning: {warning}", file=sys.stderr)
    lines = [",".join(labels)]
    lines += [",".join(repr(v) for v in row) for row in matrix]
    Path(args.out).write_text("\n".join(lines) + "\n")
    print(f"wrote {args.out}: {matrix.shape[0]} x {matrix.shape[1]}")
    if args.pgm_dir:
        if args.method != "persistence_image":
            raise SystemExit("--pgm-dir only applies to --method persistence_image")
        pgm_dir = Path(args.pgm_dir)
        pgm_dir.mkdir(parents=True, exist_ok=True)
        n = params["resolution"]
        for i, row in enumerate(matrix):
            for block, dim in enumerate(dims):
                pixels = row[block * n * n : (block + 1) * n * n].reshape(n, n)
                # flip so high lifespans sit at the top of the picture
                io.write_pgm(pixels[::-1], pgm_dir / f"sample_{i:04d}_dim{dim}.pgm")
        print(f"wrote {matrix.shape[0] * len(dims)} PGM images to {pgm_dir}")
    return 0


def cmd_fit(args) -> int:
    policy = _policy_from_args(args)
    barcode_sets = _load_barcode_files(args.barcodes, policy)
    params = methods.resolve_params(args.method, _parse_params(args.param))
    info = methods.get_method(args.method).info
    if not info.requires_fit:
        raise SystemExit(f"method {args.method} does not persist a fitted model")
    dim = args.fit_dim
    training = [bs.get(dim, Barcode(dim)) for bs in barcode_sets]
    state = methods.fit_state(args.method, training, params, seed=args.seed)
    text = model_to_json(state, method=args.method, params=params, seed=args.seed)
    Path(args.out).write_text(text + "\n")
    print(f"wrote {args.out}")
    return 0


def cmd_bench(args) -> int:
    spec = SyntheticSpec(
        families=tuple(args.family),
        samples_per_class=args.samples_per_class,
        points_per_sample=args.points,
        noise=args.noise,
        seed=args.seed,
        image_size=args.image_size,
    )
    method_list = []
    for m in args.methods.split(","):
        m = m.strip()
        if m:
            methods.get_method(m)  # validate early
            method_list.append(m)
    started = time.perf_counter()
    report = run_experiment(
        spec,
        method_list,
        split_ratio=args.split_ratio,
        k_nn=args.k_nn,
        seed=args.seed,
        workers=args.workers,
    )
    Path(args.out).write_text(report.to_json())
    elapsed = time.perf_counter() - started
    print(f"wrote {args.out} ({elapsed:.1f}s total)", file=sys.stderr)
    for r in report.results:
        print(f"  {r.method}: accuracy {r.accuracy:.3f} ({r.wall_clock_seconds:.1f}s)",
              file=sys.stderr)
    if args.timings:
        Path(args.timings).write_text(report.to_json(include_timings=True))
    return 0


def cmd_methods(args) -> int:
    if args.json:
        payload = []
        for info in methods.list_methods():
            payload.append(
                {
                    "id": info.id,
                    "label": info.label,
                    "category": info.category,
                    "render_hint": info.render_hint,
                    "requires_fit": info.requires_fit,
                    "params": [
                        {
                            "name": p.name,
                            "kind": p.kind,
                            "default": p.default,
                            "grid": list(p.grid),
                            "choices": list(p.choices),
                            "doc": p.doc,
                        }
                        for p in info.params
                    ],
                }
            )
        print(json.dumps(payload, indent=2))
    else:
        print(_grid_help())
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(static_dir=args.static_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def _add_policy_args(parser) -> None:
    parser.add_argument(
        "--essential-policy",
        choices=("clamp", "drop"),
        default="clamp",
        help="how to resolve infinite bars (clamp uses --clamp-value, or the "
        "largest finite death of the same barcode when unset)",
    )
    parser.add_argument("--clamp-value", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topovec",
        description=__doc__,
        epilog=_grid_help(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a synthetic labeled dataset")
    p.add_argument("--family", action="append", required=True, choices=FAMILIES,
                   help="repeat to get one class per family")
    p.add_argument("--samples-per-class", type=int, default=20)
    p.add_argument("--points", type=int, default=50, help="points per sample")
    p.add_argument("--noise", type=float, default=0.05)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--image-size", type=int, default=24)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("persistence", help="compute barcodes from a point cloud or image")
    p.add_argument("input")
    p.add_argument("--type", choices=("auto", "points", "image"), default="auto")
    p.add_argument("--max-scale", type=float, default=DEFAULT_MAX_SCALE)
    p.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM)
    p.add_argument("--direction", choices=("upper_star", "lower_star"), default="upper_star")
    p.add_argument("--point-budget", type=int, default=DEFAULT_POINT_BUDGET)
    p.add_argument("--pixel-budget", type=int, default=DEFAULT_PIXEL_BUDGET)
    p.add_argument("--raw", action="store_true",
                   help="keep essential and zero-length bars instead of normalizing")
    _add_policy_args(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_persistence)

    p = sub.add_parser("vectorize", help="barcode CSV files -> feature matrix CSV")
    p.add_argument("barcodes", nargs="+", help="barcode CSV files, one sample each")
    p.add_argument("--method", required=True, choices=methods.METHOD_IDS)
    p.add_argument("--param", action="append", metavar="NAME=VALUE")
    p.add_argument("--dims", default="0,1",
                   help="homology dimensions to use; several are concatenated")
    p.add_argument("--model", help="fitted model JSON for ensemble methods")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pgm-dir",
                   help="with --method persistence_image, also write each image as PGM here")
    _add_policy_args(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_vectorize)

    p = sub.add_parser("fit", help="fit an ensemble model on barcode files")
    p.add_argument("barcodes", nargs="+")
    p.add_argument("--method", required=True, choices=("adaptive_template", "atol"))
    p.add_argument("--param", action="append", metavar="NAME=VALUE")
    p.add_argument("--fit-dim", type=int, default=1,
                   help="homology dimension whose bars train the model")
    p.add_argument("--seed", type=int, default=0)
    _add_policy_args(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("bench", help="synthetic classification experiment -> JSON report")
    p.add_argument("--family", action="append", required=True, choices=FAMILIES)
    p.add_argument("--samples-per-class", type=int, default=100)
    p.add_argument("--points", type=int, default=50)
    p.add_argument("--noise", type=float, default=0.05)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--image-size", type=int, default=24)
    p.add_argument("--methods", default=",".join(DEFAULT_BENCH_METHODS))
    p.add_argument("--split-ratio", type=float, default=0.7)
    p.add_argument("--k-nn", type=int, default=5)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timings", help="optional sidecar JSON including wall-clock numbers")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("methods", help="print the method catalogue")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_methods)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--static-dir", help="serve a built web UI from this directory")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        BarcodeError,
        io.BarcodeFileError,
        methods.ParameterError,
        ResourceBudgetError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
