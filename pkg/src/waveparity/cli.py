"""Command line interface.

Subcommands: run, encode, dwt, features, plot, sweep. A flat key = value
config file can seed any run; explicit flags override file values. Exit
codes: 0 success, 1 usage or configuration error, 2 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import sys
from dataclasses import dataclass
from pathlib import Path

from .codec import LSB_FIRST, encode, pad_length
from .config import (
    DEFAULT_BOUNDARY_BAND,
    DEFAULT_BUCKET_SIZE,
    build_config,
    config_updates_from_strings,
    parse_config_file,
    parse_range_value,
    parse_weights_value,
)
from .errors import ConfigError, WaveparityError
from .evaluation import evaluate, report_json, scatter_data, sweep, sweep_json, default_sweep_grid
from .features import FEATURE_NAMES
from .figures import render_scatter_svg, save_run_figures
from .pipeline import fit_cells, run_pipeline, scores_table
from .wavelet import get_filter, wavedec


@dataclass(frozen=True)
class OutputArtifact:
    """A file written by a subcommand, identified by its content hash."""

    kind: str
    path: Path
    checksum: str


def sha256_file(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


class _Parser(argparse.ArgumentParser):
    # usage problems exit 1; argparse's default would exit 2
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="waveparity", description=__doc__)
    parser.add_argument("--config", metavar="PATH", help="flat key = value config file")
    parser.add_argument("--out-dir", metavar="PATH", default=".", help="artifact directory")
    parser.add_argument(
        "--seed", type=int, default=None, help="RNG seed, used only with --init random"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute the full pipeline and write artifacts")
    _add_config_flags(run)
    run.add_argument("--bucket-size", type=int, default=None, help="magnitude bucket width")
    run.add_argument("--boundary-band", type=float, default=None, help="|score-0.5| band")
    run.add_argument(
        "--no-figures", action="store_true", help="skip the matplotlib PNG figures"
    )
    run.set_defaults(func=cmd_run)

    enc = sub.add_parser("encode", help="print an integer's binary sample sequence")
    enc.add_argument("n", type=int)
    enc.add_argument("--length", type=int, default=None, help="power-of-two sample count")
    enc.add_argument("--bit-order", choices=("lsb_first", "msb_first"), default=LSB_FIRST)
    enc.set_defaults(func=cmd_encode)

    dwt = sub.add_parser("dwt", help="print multi-level coefficients of one integer as CSV")
    dwt.add_argument("n", type=int)
    dwt.add_argument("--wavelet", default="haar")
    dwt.add_argument("--levels", type=int, default=3)
    dwt.add_argument("--length", type=int, default=None)
    dwt.add_argument("--bit-order", choices=("lsb_first", "msb_first"), default=LSB_FIRST)
    dwt.add_argument("--out", metavar="PATH", default=None, help="write CSV here instead of stdout")
    dwt.set_defaults(func=cmd_dwt)

    feats = sub.add_parser("features", help="print the feature table for a range as CSV")
    _add_config_flags(feats)
    feats.add_argument("--out", metavar="PATH", default=None, help="write CSV here instead of stdout")
    feats.set_defaults(func=cmd_features)

    plot = sub.add_parser("plot", help="render the score scatter SVG from a scores CSV")
    plot.add_argument("scores_csv", metavar="SCORES_CSV")
    plot.add_argument("--range", default=None, help="restrict to start:end")
    plot.add_argument("--out", metavar="PATH", default=None, help="output SVG path")
    plot.set_defaults(func=cmd_plot)

    swp = sub.add_parser("sweep", help="rank configurations over a grid config file")
    swp.add_argument("grid_file", metavar="GRID_FILE")
    swp.add_argument("--bucket-size", type=int, default=None)
    swp.add_argument("--boundary-band", type=float, default=None)
    swp.set_defaults(func=cmd_sweep)

    return parser


def _add_config_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--range", default=None, help="inclusive integer range start:end")
    sub.add_argument("--wavelet", default=None, help="haar or db4")
    sub.add_argument("--levels", type=int, default=None, help="decomposition depth")
    sub.add_argument("--bit-order", choices=("lsb_first", "msb_first"), default=None)
    sub.add_argument("--weights", default=None, help="default, uniform, or w1:w2:...")
    sub.add_argument("--threshold", type=float, default=None)
    sub.add_argument(
        "--include-approx",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="add the final approximation as an extra feature level",
    )
    sub.add_argument("--kmeans-tolerance", type=float, default=None)
    sub.add_argument("--kmeans-max-iterations", type=int, default=None)
    sub.add_argument("--init", default=None, help="minmax, random, or random:<seed>")


def _config_from_args(args) -> tuple:
    """Defaults < config file < explicit flags; returns (RunConfig, extras)."""
    updates: dict = {}
    extras: dict = {}
    if args.config:
        updates, extras = config_updates_from_strings(parse_config_file(args.config))
    if getattr(args, "range", None):
        updates["range_start"], updates["range_end"] = parse_range_value(args.range)
    simple = {
        "wavelet": "wavelet",
        "levels": "num_levels",
        "bit_order": "bit_order",
        "threshold": "threshold",
        "include_approx": "include_approx",
        "kmeans_tolerance": "kmeans_tolerance",
        "kmeans_max_iterations": "kmeans_max_iterations",
        "init": "kmeans_init",
    }
    for attr, field in simple.items():
        value = getattr(args, attr, None)
        if value is not None:
            updates[field] = value
    if getattr(args, "weights", None) is not None:
        updates["weights"] = parse_weights_value(args.weights)
    if args.seed is not None:
        updates["seed"] = args.seed
    if getattr(args, "bucket_size", None) is not None:
        extras["bucket_size"] = args.bucket_size
    if getattr(args, "boundary_band", None) is not None:
        extras["boundary_band"] = args.boundary_band
    extras.setdefault("bucket_size", DEFAULT_BUCKET_SIZE)
    extras.setdefault("boundary_band", DEFAULT_BOUNDARY_BAND)
    return build_config(updates), extras


def cmd_run(args) -> int:
    config, extras = _config_from_args(args)
    result = run_pipeline(config)
    report = evaluate(
        result, bucket_size=extras["bucket_size"], boundary_band=extras["boundary_band"]
    )
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    artifacts: list[OutputArtifact] = []

    scores_path = out_dir / "scores.csv"
    scores_path.write_text(scores_table(result), encoding="utf-8")
    artifacts.append(OutputArtifact("scores_csv", scores_path, sha256_file(scores_path)))

    svg_path = out_dir / "scatter.svg"
    points = scatter_data(result.integers, result.scores, result.labels)
    svg_path.write_text(
        render_scatter_svg(points, x_min=config.range_start, x_max=config.range_end),
        encoding="utf-8",
    )
    artifacts.append(OutputArtifact("scatter_svg", svg_path, sha256_file(svg_path)))

    if not args.no_figures:
        for kind, path in save_run_figures(result, report, out_dir):
            artifacts.append(OutputArtifact(kind, path, sha256_file(path)))

    report_path = out_dir / "report.json"
    report_path.write_text(
        report_json(report, [(a.kind, a.path.name, a.checksum) for a in artifacts]),
        encoding="utf-8",
    )

    print(
        f"accuracy={report.overall_accuracy:.6f} "
        f"delta_vs_reference={report.delta_vs_reference:+.6f} n={report.n}"
    )
    print(f"wrote {len(artifacts) + 1} artifacts to {out_dir}")
    return 0


def cmd_encode(args) -> int:
    length = args.length if args.length is not None else pad_length(args.n)
    signal = encode(args.n, length, args.bit_order)
    print(" ".join(str(int(s)) for s in signal.samples))
    return 0


def _coeff_rows(decomp) -> list[str]:
    rows = ["level,kind,index,value"]
    for j, detail in enumerate(decomp.details, start=1):
        for i, value in enumerate(detail):
            rows.append(f"{j},detail,{i},{value:.17g}")
    for i, value in enumerate(decomp.final_approx):
        rows.append(f"{decomp.num_levels},approx,{i},{value:.17g}")
    return rows


def cmd_dwt(args) -> int:
    length = args.length
    if length is None:
        length = max(pad_length(args.n), 1 << args.levels)
    signal = encode(args.n, length, args.bit_order)
    decomp = wavedec(signal.samples, get_filter(args.wavelet), args.levels)
    text = "\n".join(_coeff_rows(decomp)) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_features(args) -> int:
    config, _ = _config_from_args(args)
    fitted = fit_cells(config)
    tensor = fitted.feature_tensor
    lines = ["n,level,feature,value"]
    for i, n in enumerate(fitted.integers):
        for j in range(tensor.num_levels):
            for f, feature in enumerate(FEATURE_NAMES):
                lines.append(f"{int(n)},{j + 1},{feature},{tensor.values[i, j, f]:.17g}")
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _read_scores_csv(path) -> list[tuple[int, float, int]]:
    points = []
    try:
        with open(path, newline="", encoding="utf-8") as handle:
            reader = csv.DictReader(handle)
            if reader.fieldnames is None or not {"n", "label", "score"} <= set(reader.fieldnames):
                raise ConfigError(f"{path}: expected columns n,label,score,prediction")
            for row in reader:
                label = row["label"].strip()
                if label not in ("odd", "even"):
                    raise ConfigError(f"{path}: bad label {label!r}")
                points.append((int(row["n"]), float(row["score"]), 1 if label == "odd" else 0))
    except (ValueError, TypeError, KeyError) as exc:
        raise ConfigError(f"{path}: malformed scores CSV ({exc})") from None
    return points


def cmd_plot(args) -> int:
    points = _read_scores_csv(args.scores_csv)
    x_min = x_max = None
    if args.range:
        x_min, x_max = parse_range_value(args.range)
        points = [p for p in points if x_min <= p[0] <= x_max]
    out_path = Path(args.out) if args.out else Path(args.out_dir) / "scatter.svg"
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(render_scatter_svg(points, x_min=x_min, x_max=x_max), encoding="utf-8")
    print(f"wrote {out_path} ({len(points)} points)")
    return 0


def cmd_sweep(args) -> int:
    mapping = parse_config_file(args.grid_file)
    grid_raw = {k[len("sweep_"):]: v for k, v in mapping.items() if k.startswith("sweep_")}
    base_raw = {k: v for k, v in mapping.items() if not k.startswith("sweep_")}
    updates, extras = config_updates_from_strings(base_raw)
    if args.seed is not None:
        updates["seed"] = args.seed
    base = build_config(updates)
    if getattr(args, "bucket_size", None) is not None:
        extras["bucket_size"] = args.bucket_size
    if getattr(args, "boundary_band", None) is not None:
        extras["boundary_band"] = args.boundary_band
    extras.setdefault("bucket_size", DEFAULT_BUCKET_SIZE)
    extras.setdefault("boundary_band", DEFAULT_BOUNDARY_BAND)

    grid: dict = {}
    for key, value in grid_raw.items():
        parts = [part.strip() for part in value.split(",") if part.strip()]
        if not parts:
            raise ConfigError(f"sweep_{key} lists no values")
        if key == "weights":
            grid[key] = [parse_weights_value(part) for part in parts]
        elif key == "include_approx":
            grid[key] = [part.lower() in ("true", "yes", "1", "on") for part in parts]
        elif key == "num_levels":
            grid[key] = [int(part) for part in parts]
        else:
            grid[key] = parts
    if not grid:
        grid = default_sweep_grid()

    entries = sweep(
        base, grid, bucket_size=extras["bucket_size"], boundary_band=extras["boundary_band"]
    )
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    report_path = out_dir / "sweep_report.json"
    report_path.write_text(sweep_json(entries), encoding="utf-8")
    for rank, entry in enumerate(entries, start=1):
        if entry.report is None:
            print(f"{rank}. failed: {entry.error} config={entry.config.sort_key()}")
        else:
            print(
                f"{rank}. accuracy={entry.report.overall_accuracy:.6f} "
                f"delta_vs_reference={entry.report.delta_vs_reference:+.6f} "
                f"config={entry.config.sort_key()}"
            )
    print(f"wrote {report_path}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except OSError as exc:
        print(f"waveparity: I/O error: {exc}", file=sys.stderr)
        return 2
    except WaveparityError as exc:
        print(f"waveparity: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
