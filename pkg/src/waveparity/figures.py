"""Figure rendering: a dependency-free SVG scatter plus matplotlib report figures.

The SVG path is hand-written so its output is byte-deterministic and easy to
assert on (one circle per data point, one threshold line). The matplotlib
figures accompany the run report as PNGs.
"""

from __future__ import annotations

from pathlib import Path

WIDTH = 720
HEIGHT = 440
MARGIN_LEFT = 64
MARGIN_RIGHT = 24
MARGIN_TOP = 24
MARGIN_BOTTOM = 56

ODD_COLOR = "red"
EVEN_COLOR = "blue"


def _nice_step(span: float) -> float:
    """A 1/2/5-style tick step giving roughly four intervals."""
    if span <= 0:
        return 1.0
    raw = span / 4
    magnitude = 10.0 ** int(f"{raw:e}".split("e")[1])
    for mult in (1.0, 2.0, 5.0, 10.0):
        if raw <= mult * magnitude:
            return mult * magnitude
    return 10.0 * magnitude


def render_scatter_svg(points, x_min=None, x_max=None) -> str:
    """Self-contained SVG scatter of oddness scores.

    points: iterable of (n, score, parity) with parity 1 for odd. Odd points
    are red, even points blue; a dashed reference line marks the 0.5
    threshold, and axis labels plus a legend are embedded.
    """
    pts = [(int(n), float(s), int(parity)) for n, s, parity in points]
    if x_min is None:
        x_min = min((p[0] for p in pts), default=0)
    if x_max is None:
        x_max = max((p[0] for p in pts), default=1)
    span = max(x_max - x_min, 1)
    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def sx(n: float) -> float:
        return MARGIN_LEFT + (n - x_min) / span * plot_w

    def sy(score: float) -> float:
        return MARGIN_TOP + (1.0 - score) * plot_h

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]

    axis_y = MARGIN_TOP + plot_h
    lines.append('<g id="axes" stroke="black" stroke-width="1" fill="none">')
    lines.append(f'<line x1="{MARGIN_LEFT}" y1="{axis_y}" x2="{MARGIN_LEFT + plot_w}" y2="{axis_y}"/>')
    lines.append(f'<line x1="{MARGIN_LEFT}" y1="{MARGIN_TOP}" x2="{MARGIN_LEFT}" y2="{axis_y}"/>')
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        y = sy(frac)
        lines.append(f'<line x1="{MARGIN_LEFT - 4}" y1="{y:.2f}" x2="{MARGIN_LEFT}" y2="{y:.2f}"/>')
    step = _nice_step(span)
    tick = (x_min // step) * step
    x_ticks = []
    while tick <= x_max:
        if tick >= x_min:
            x_ticks.append(tick)
        tick += step
    for t in x_ticks:
        x = sx(t)
        lines.append(f'<line x1="{x:.2f}" y1="{axis_y}" x2="{x:.2f}" y2="{axis_y + 4}"/>')
    lines.append("</g>")

    lines.append('<g id="tick-labels" font-family="sans-serif" font-size="11" fill="black">')
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        lines.append(
            f'<text x="{MARGIN_LEFT - 8}" y="{sy(frac) + 4:.2f}" text-anchor="end">{frac:g}</text>'
        )
    for t in x_ticks:
        label = f"{t:g}"
        lines.append(
            f'<text x="{sx(t):.2f}" y="{axis_y + 16}" text-anchor="middle">{label}</text>'
        )
    lines.append("</g>")

    lines.append(
        f'<text id="x-label" x="{MARGIN_LEFT + plot_w / 2:.2f}" y="{HEIGHT - 12}" '
        'text-anchor="middle" font-family="sans-serif" font-size="13">n</text>'
    )
    lines.append(
        f'<text id="y-label" x="16" y="{MARGIN_TOP + plot_h / 2:.2f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 16 {MARGIN_TOP + plot_h / 2:.2f})">oddness score</text>'
    )

    y_mid = sy(0.5)
    lines.append(
        f'<line id="threshold" x1="{MARGIN_LEFT}" y1="{y_mid:.2f}" '
        f'x2="{MARGIN_LEFT + plot_w}" y2="{y_mid:.2f}" stroke="black" '
        'stroke-width="1" stroke-dasharray="6 4"/>'
    )

    lines.append('<g id="points">')
    for n, score, parity in pts:
        color = ODD_COLOR if parity == 1 else EVEN_COLOR
        lines.append(
            f'<circle cx="{sx(n):.2f}" cy="{sy(score):.2f}" r="2.5" '
            f'fill="{color}" fill-opacity="0.6"/>'
        )
    lines.append("</g>")

    legend_x = MARGIN_LEFT + plot_w - 86
    lines.append('<g id="legend" font-family="sans-serif" font-size="12">')
    lines.append(f'<rect x="{legend_x - 8}" y="{MARGIN_TOP + 2}" width="92" height="40" fill="white" stroke="black" stroke-width="0.5"/>')
    lines.append(f'<circle cx="{legend_x}" cy="{MARGIN_TOP + 14}" r="4" fill="{ODD_COLOR}"/>')
    lines.append(f'<text x="{legend_x + 10}" y="{MARGIN_TOP + 18}">odd</text>')
    lines.append(f'<circle cx="{legend_x}" cy="{MARGIN_TOP + 30}" r="4" fill="{EVEN_COLOR}"/>')
    lines.append(f'<text x="{legend_x + 10}" y="{MARGIN_TOP + 34}">even</text>')
    lines.append("</g>")

    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def save_run_figures(result, report, out_dir) -> list[tuple[str, Path]]:
    """Render the matplotlib report figures next to the delimited outputs.

    Returns (kind, path) pairs for the artifact list.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[tuple[str, Path]] = []

    odd = result.labels == 1
    fig, ax = plt.subplots(figsize=(8.0, 4.5), dpi=150)
    ax.scatter(
        result.integers[~odd], result.scores[~odd],
        s=6, c="tab:blue", label="even", alpha=0.55, linewidths=0,
    )
    ax.scatter(
        result.integers[odd], result.scores[odd],
        s=6, c="tab:red", label="odd", alpha=0.55, linewidths=0,
    )
    ax.axhline(0.5, color="black", linewidth=1.0, linestyle="--")
    ax.set_xlabel("n")
    ax.set_ylabel("oddness score")
    ax.set_ylim(-0.02, 1.02)
    ax.legend(loc="upper right", framealpha=0.9)
    fig.tight_layout()
    scatter_path = out_dir / "scatter.png"
    fig.savefig(scatter_path)
    plt.close(fig)
    written.append(("scatter_png", scatter_path))

    buckets = report.magnitude_buckets
    fig, ax = plt.subplots(figsize=(8.0, 4.0), dpi=150)
    centers = [(b.lower + b.upper) / 2 for b in buckets]
    widths = [max((b.upper - b.lower) * 0.85, 0.8) for b in buckets]
    ax.bar(centers, [b.accuracy for b in buckets], width=widths, color="tab:purple", alpha=0.8)
    ax.axhline(0.5, color="black", linewidth=1.0, linestyle="--", label="chance")
    ax.set_xlabel("n")
    ax.set_ylabel("accuracy")
    ax.set_ylim(0.0, 1.05)
    ax.legend(loc="upper right")
    fig.tight_layout()
    bucket_path = out_dir / "bucket_accuracy.png"
    fig.savefig(bucket_path)
    plt.close(fig)
    written.append(("bucket_accuracy_png", bucket_path))

    return written
