"""Static SVG log-log convergence charts (rms vs dx).

Hand-generated SVG keeps the artifact dependency-free and byte-stable:
pixel coordinates are formatted with two decimals and every element is
emitted in a fixed order. Reference lines of slope 1 and slope 2 are
anchored at the coarsest point of the ddin fx series (or the first plotted
series when that one is absent); series without strictly positive rms
values cannot appear on a log axis and are skipped with a note.
"""

from __future__ import annotations

import math

from .analysis import StudyReport

WIDTH, HEIGHT = 720, 540
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 185, 45, 60

QUANTITY_COLORS = {
    "fx": "#1f77b4",
    "fy": "#2ca02c",
    "fxx": "#d62728",
    "fxy": "#9467bd",
    "fyy": "#e07b00",
}
METHOD_DASHES = {"ddin": "", "ddinw": "7,3", "fd": "2,3"}


def _collect_series(report: StudyReport):
    """(label, method, quantity, [(log10 dx, log10 rms)]) per plottable series."""
    series = []
    skipped = []
    keys = []
    for cell in report.cells:
        key = (cell.method, cell.quantity)
        if key not in keys:
            keys.append(key)
    for method, quantity in keys:
        cells = sorted(
            (
                c
                for c in report.cells
                if c.method == method and c.quantity == quantity
            ),
            key=lambda c: -c.dx,
        )
        label = f"{method.value} {quantity}"
        values = [(c.dx, c.rms) for c in cells if c.rms is not None]
        if not values or any(r <= 0 for _, r in values):
            skipped.append(label)
            continue
        points = [(math.log10(dx), math.log10(r)) for dx, r in values]
        series.append((label, method.value, quantity, points))
    return series, skipped


def _px(value: float) -> str:
    return f"{value:.2f}"


class _Axes:
    def __init__(self, xlo, xhi, ylo, yhi):
        if xhi - xlo < 1e-9:
            xlo, xhi = xlo - 0.5, xhi + 0.5
        if yhi - ylo < 1e-9:
            ylo, yhi = ylo - 0.5, yhi + 0.5
        padx, pady = 0.06 * (xhi - xlo), 0.06 * (yhi - ylo)
        self.xlo, self.xhi = xlo - padx, xhi + padx
        self.ylo, self.yhi = ylo - pady, yhi + pady
        self.w = WIDTH - MARGIN_L - MARGIN_R
        self.h = HEIGHT - MARGIN_T - MARGIN_B

    def x(self, v: float) -> float:
        return MARGIN_L + (v - self.xlo) / (self.xhi - self.xlo) * self.w

    def y(self, v: float) -> float:
        return MARGIN_T + (self.yhi - v) / (self.yhi - self.ylo) * self.h


def _decade_ticks(lo: float, hi: float) -> list[int]:
    return list(range(math.ceil(lo), math.floor(hi) + 1))


def svg_lines(report: StudyReport) -> list[str]:
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
        f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    title = (
        f"rms error vs dx &#8212; {report.config.function.name}, "
        f"seed {report.config.seed}"
    )
    out.append(
        f'<text x="{MARGIN_L}" y="24" font-family="monospace" '
        f'font-size="14">{title}</text>'
    )

    series, skipped = _collect_series(report)
    if not series:
        out.append(
            f'<text x="{WIDTH // 2}" y="{HEIGHT // 2}" text-anchor="middle" '
            f'font-family="monospace" font-size="14">no plottable series</text>'
        )
        out.extend(_skip_notes(skipped))
        out.append("</svg>")
        return out

    pts = [p for _, _, _, ps in series for p in ps]
    ax = _Axes(
        min(x for x, _ in pts),
        max(x for x, _ in pts),
        min(y for _, y in pts),
        max(y for _, y in pts),
    )

    # frame and decade ticks
    out.append(
        f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{ax.w}" height="{ax.h}" '
        f'fill="none" stroke="black" stroke-width="1"/>'
    )
    for e in _decade_ticks(ax.xlo, ax.xhi):
        px = _px(ax.x(e))
        out.append(
            f'<line x1="{px}" y1="{MARGIN_T}" x2="{px}" '
            f'y2="{MARGIN_T + ax.h}" stroke="#dddddd" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{px}" y="{MARGIN_T + ax.h + 16}" text-anchor="middle" '
            f'font-family="monospace" font-size="11">1e{e}</text>'
        )
    for e in _decade_ticks(ax.ylo, ax.yhi):
        py = _px(ax.y(e))
        out.append(
            f'<line x1="{MARGIN_L}" y1="{py}" x2="{MARGIN_L + ax.w}" '
            f'y2="{py}" stroke="#dddddd" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{MARGIN_L - 6}" y="{py}" text-anchor="end" '
            f'dominant-baseline="middle" font-family="monospace" '
            f'font-size="11">1e{e}</text>'
        )
    out.append(
        f'<text x="{MARGIN_L + ax.w / 2:.2f}" y="{HEIGHT - 14}" '
        f'text-anchor="middle" font-family="monospace" font-size="12">dx</text>'
    )
    out.append(
        f'<text x="18" y="{MARGIN_T + ax.h / 2:.2f}" text-anchor="middle" '
        f'font-family="monospace" font-size="12" '
        f'transform="rotate(-90 18 {MARGIN_T + ax.h / 2:.2f})">rms</text>'
    )

    # slope-1 / slope-2 references through the anchor point
    anchor = None
    for label, method, quantity, points in series:
        if method == "ddin" and quantity == "fx":
            anchor = points[0]  # coarsest (series sorted by descending dx)
            break
    if anchor is None:
        anchor = series[0][3][0]
    for slope, dash in ((1, "9,5"), (2, "3,5")):
        x0, y0 = ax.xlo, anchor[1] + slope * (ax.xlo - anchor[0])
        x1, y1 = ax.xhi, anchor[1] + slope * (ax.xhi - anchor[0])
        out.append(
            f'<line x1="{_px(ax.x(x0))}" y1="{_px(ax.y(y0))}" '
            f'x2="{_px(ax.x(x1))}" y2="{_px(ax.y(y1))}" stroke="#888888" '
            f'stroke-width="1" stroke-dasharray="{dash}"/>'
        )
        out.append(
            f'<text x="{MARGIN_L + ax.w - 4}" '
            f'y="{_px(ax.y(y1 - 0.04 * (ax.yhi - ax.ylo)))}" text-anchor="end" '
            f'font-family="monospace" font-size="10" '
            f'fill="#888888">slope {slope}</text>'
        )

    legend_y = MARGIN_T + 8
    for label, method, quantity, points in series:
        color = QUANTITY_COLORS[quantity]
        dash = METHOD_DASHES.get(method, "")
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        path = " ".join(
            f"{_px(ax.x(x))},{_px(ax.y(y))}" for x, y in points
        )
        out.append(
            f'<polyline points="{path}" fill="none" stroke="{color}" '
            f'stroke-width="1.5"{dash_attr}/>'
        )
        for x, y in points:
            out.append(
                f'<circle cx="{_px(ax.x(x))}" cy="{_px(ax.y(y))}" r="3" '
                f'fill="{color}"/>'
            )
        lx = WIDTH - MARGIN_R + 12
        out.append(
            f'<line x1="{lx}" y1="{legend_y}" x2="{lx + 24}" y2="{legend_y}" '
            f'stroke="{color}" stroke-width="1.5"{dash_attr}/>'
        )
        out.append(
            f'<text x="{lx + 30}" y="{legend_y + 4}" font-family="monospace" '
            f'font-size="11">{label}</text>'
        )
        legend_y += 18

    out.extend(_skip_notes(skipped))
    out.append("</svg>")
    return out


def _skip_notes(skipped: list[str]) -> list[str]:
    notes = []
    y = HEIGHT - 30
    for label in skipped:
        notes.append(
            f'<text x="{MARGIN_L}" y="{y}" font-family="monospace" '
            f'font-size="10" fill="#aa3333">warning: series {label} skipped '
            f"(no positive rms values)</text>"
        )
        y -= 12
    return notes


def emit_svg_plot(report: StudyReport, path) -> None:
    """Write the log-log convergence chart for a study report."""
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(svg_lines(report)))
        fh.write("\n")
