"""Deterministic SVG and ASCII renderings of heat maps.

The SVG is assembled by hand (no plotting library) so repeated runs emit
byte-identical files.  Colours follow a fixed linear scale from 0 V/m to
``vmax`` through an 11-anchor perceptual ramp; the ASCII preview
quantises the same scale to 10 character levels.
"""

import numpy as np

# Dark-blue to yellow perceptual ramp, sampled at 11 equispaced anchors.
_RAMP = (
    (68, 1, 84), (71, 39, 117), (62, 73, 137), (49, 104, 142),
    (38, 130, 142), (31, 158, 137), (53, 183, 121), (110, 206, 88),
    (181, 222, 43), (253, 231, 37), (255, 255, 110),
)

_ASCII_LEVELS = " .:-=+*#%@"

_CELL = 64
_MARGIN_LEFT = 56
_MARGIN_BOTTOM = 40
_MARGIN_TOP = 34
_BAR_WIDTH = 18
_BAR_GAP = 24


def _colour(t):
    """RGB for t in [0, 1] by linear interpolation between ramp anchors."""
    t = min(max(t, 0.0), 1.0)
    pos = t * (len(_RAMP) - 1)
    i = min(int(pos), len(_RAMP) - 2)
    frac = pos - i
    r, g, b = (
        round(_RAMP[i][c] + frac * (_RAMP[i + 1][c] - _RAMP[i][c])) for c in range(3)
    )
    return f"#{r:02x}{g:02x}{b:02x}"


def heatmap_svg(heatmap, vmax=None, markers=()):
    """Render a heat map as an SVG colour grid.

    ``markers`` are (x, y) positions drawn as open circles (user
    locations).  ``vmax`` pins the top of the colour scale; default is
    the map maximum.
    """
    xs = np.asarray(heatmap.grid.x_values, dtype=float)
    ys = np.asarray(heatmap.grid.y_values, dtype=float)
    rows = heatmap.as_grid_rows()
    top = float(vmax) if vmax is not None else float(heatmap.values.max())
    if top <= 0:
        top = 1.0

    n_x, n_y = len(xs), len(ys)
    plot_w = n_x * _CELL
    plot_h = n_y * _CELL
    width = _MARGIN_LEFT + plot_w + _BAR_GAP + _BAR_WIDTH + 64
    height = _MARGIN_TOP + plot_h + _MARGIN_BOTTOM

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{_MARGIN_LEFT}" y="20" font-family="monospace" font-size="14">'
        f"scenario {heatmap.scenario_id} &#8212; RMS E-field (V/m), scale 0 to {top:.3g}</text>",
    ]

    # Cells: x ascending to the right, y ascending upward (array side at bottom).
    for iy in range(n_y):
        for ix in range(n_x):
            cx = _MARGIN_LEFT + ix * _CELL
            cy = _MARGIN_TOP + (n_y - 1 - iy) * _CELL
            val = rows[iy, ix]
            out.append(
                f'<rect x="{cx}" y="{cy}" width="{_CELL}" height="{_CELL}" '
                f'fill="{_colour(val / top)}"><title>x={xs[ix]:g} y={ys[iy]:g} '
                f"E={val:.6g} V/m</title></rect>"
            )
            out.append(
                f'<text x="{cx + _CELL / 2:g}" y="{cy + _CELL / 2 + 4:g}" '
                f'font-family="monospace" font-size="10" text-anchor="middle" '
                f'fill="{"black" if val / top > 0.6 else "white"}">{val:.2g}</text>'
            )

    # Axis labels.
    for ix, x in enumerate(xs):
        out.append(
            f'<text x="{_MARGIN_LEFT + ix * _CELL + _CELL / 2:g}" '
            f'y="{_MARGIN_TOP + plot_h + 16}" font-family="monospace" font-size="11" '
            f'text-anchor="middle">{x:g}</text>'
        )
    for iy, y in enumerate(ys):
        out.append(
            f'<text x="{_MARGIN_LEFT - 8}" '
            f'y="{_MARGIN_TOP + (n_y - 1 - iy) * _CELL + _CELL / 2 + 4:g}" '
            f'font-family="monospace" font-size="11" text-anchor="end">{y:g}</text>'
        )
    out.append(
        f'<text x="{_MARGIN_LEFT + plot_w / 2:g}" y="{height - 10}" '
        f'font-family="monospace" font-size="12" text-anchor="middle">x (m)</text>'
    )
    out.append(
        f'<text x="14" y="{_MARGIN_TOP + plot_h / 2:g}" font-family="monospace" '
        f'font-size="12" text-anchor="middle" '
        f'transform="rotate(-90 14 {_MARGIN_TOP + plot_h / 2:g})">y (m)</text>'
    )

    # User markers.
    x0, x1 = xs[0], xs[-1]
    y0, y1 = ys[0], ys[-1]
    for mx, my in markers:
        if not (x0 - 0.5 <= mx <= x1 + 0.5 and y0 - 0.5 <= my <= y1 + 0.5):
            continue
        px = _MARGIN_LEFT + (mx - x0) / max(x1 - x0, 1e-12) * (plot_w - _CELL) + _CELL / 2
        py = _MARGIN_TOP + (y1 - my) / max(y1 - y0, 1e-12) * (plot_h - _CELL) + _CELL / 2
        out.append(
            f'<circle cx="{px:.2f}" cy="{py:.2f}" r="10" fill="none" '
            f'stroke="white" stroke-width="2.5"/>'
        )

    # Colour bar.
    bar_x = _MARGIN_LEFT + plot_w + _BAR_GAP
    steps = 40
    step_h = plot_h / steps
    for i in range(steps):
        t = 1.0 - i / (steps - 1)
        out.append(
            f'<rect x="{bar_x}" y="{_MARGIN_TOP + i * step_h:.2f}" '
            f'width="{_BAR_WIDTH}" height="{step_h + 0.5:.2f}" fill="{_colour(t)}"/>'
        )
    for frac in (0.0, 0.5, 1.0):
        out.append(
            f'<text x="{bar_x + _BAR_WIDTH + 6}" '
            f'y="{_MARGIN_TOP + (1 - frac) * plot_h + 4:.2f}" '
            f'font-family="monospace" font-size="11">{frac * top:.3g}</text>'
        )

    out.append("</svg>")
    return "\n".join(out) + "\n"


def heatmap_ascii(heatmap, vmax=None):
    """10-level character rendering, far rows on top, array side at the bottom."""
    rows = heatmap.as_grid_rows()
    xs = heatmap.grid.x_values
    ys = heatmap.grid.y_values
    top = float(vmax) if vmax is not None else float(heatmap.values.max())
    if top <= 0:
        top = 1.0

    lines = [f"scenario {heatmap.scenario_id}: RMS E-field, "
             f"'{_ASCII_LEVELS[0]}'=0 to '{_ASCII_LEVELS[-1]}'={top:.3g} V/m"]
    for iy in range(len(ys) - 1, -1, -1):
        chars = []
        for val in rows[iy]:
            level = min(int(val / top * len(_ASCII_LEVELS)), len(_ASCII_LEVELS) - 1)
            chars.append(_ASCII_LEVELS[level] * 2)
        lines.append(f"y={ys[iy]:>4g} |{''.join(chars)}|")
    lines.append(f"        x: {xs[0]:g} to {xs[-1]:g} step {heatmap.grid.spacing:g} m")
    return "\n".join(lines) + "\n"
