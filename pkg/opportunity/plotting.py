"""
SVG rendering of the feasible region.

The document is emitted by hand with a fixed coordinate transform, a fixed
element order and ``%.9g`` numbers, so the same input always produces the
same bytes.
"""

import logging
from dataclasses import dataclass
from xml.sax.saxutils import escape

from .fairopt import min_error_eo
from .metrics import MetricPoint, bayes, metric_point
from .region import contains, zonotope_region

logger = logging.getLogger(__name__)

MARKER_TOLERANCE = 1e-6
MARGIN_PX = 40
MARKER_RADIUS = 4

LAYERS = ("polygon", "eo_axis", "bayes", "constants", "optimal_eo")

MARKER_COLORS = {
    "bayes": "#d62728",
    "constant": "#2ca02c",
    "optimal_eo": "#9467bd",
}


@dataclass(frozen=True)
class PlotSpec:
    """Canvas size, axis ranges and enabled layers of a region figure."""

    width_px: int = 480
    height_px: int = 480
    error_range: tuple = (0.0, 1.0)
    opp_diff_range: tuple = (-1.0, 1.0)
    layers: tuple = LAYERS

    def to_canvas(self, point):
        """Map a metric point to pixel coordinates (y grows downwards)."""
        (x0, x1), (y0, y1) = self.error_range, self.opp_diff_range
        inner_w = self.width_px - 2 * MARGIN_PX
        inner_h = self.height_px - 2 * MARGIN_PX
        px = MARGIN_PX + (point.error - x0) / (x1 - x0) * inner_w
        py = MARGIN_PX + (y1 - point.opp_diff) / (y1 - y0) * inner_h
        return px, py


def _num(value):
    return "%.9g" % value


def _marker(spec, region, name, point, color):
    if not contains(region, point, MARKER_TOLERANCE):
        logger.debug("Marker %s at %r lies outside the region, skipped", name, point)
        return None
    cx, cy = spec.to_canvas(point)
    return (
        f'<circle class="{name}" cx="{_num(cx)}" cy="{_num(cy)}" '
        f'r="{MARKER_RADIUS}" fill="{color}"/>'
    )


def render_region_svg(source, region=None, spec=None):
    """
    Render the region of ``source`` as an SVG document.

    Args:
        source (DataSource): the data source.
        region (RegionPolygon): precomputed region; computed when omitted.
        spec (PlotSpec): canvas and layers; defaults to a 480x480 canvas.

    Returns:
        str: the SVG text, newline-terminated.

    Raises:
        UndefinedEO: a group has no positive-label mass.
    """
    spec = spec or PlotSpec()
    if region is None:
        region = zonotope_region(source)
    layers = set(spec.layers)
    w, h = spec.width_px, spec.height_px

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">',
        f'<rect x="0" y="0" width="{w}" height="{h}" fill="#ffffff"/>',
    ]

    (x0, x1), _ = spec.error_range, spec.opp_diff_range
    if "eo_axis" in layers:
        ax, ay = spec.to_canvas(MetricPoint(x0, 0.0))
        bx, by = spec.to_canvas(MetricPoint(x1, 0.0))
        lines.append(
            f'<line class="eo_axis" x1="{_num(ax)}" y1="{_num(ay)}" x2="{_num(bx)}" '
            f'y2="{_num(by)}" stroke="#888888" stroke-dasharray="4 3"/>'
        )

    if "polygon" in layers:
        coords = " ".join(
            f"{_num(px)},{_num(py)}" for px, py in (spec.to_canvas(v) for v in region.vertices)
        )
        if len(region) >= 3:
            lines.append(
                f'<polygon class="region" points="{coords}" fill="#1f77b4" '
                f'fill-opacity="0.35" stroke="#1f77b4"/>'
            )
        else:
            lines.append(f'<polyline class="region" points="{coords}" fill="none" stroke="#1f77b4"/>')

    markers = []
    if "bayes" in layers:
        markers.append(("bayes", metric_point(source, bayes(source)), MARKER_COLORS["bayes"]))
    if "constants" in layers:
        positive = float(source.dot(source.P, source.Q))
        markers.append(("constant", MetricPoint(positive, 0.0), MARKER_COLORS["constant"]))
        markers.append(("constant", MetricPoint(1 - positive, 0.0), MARKER_COLORS["constant"]))
    if "optimal_eo" in layers:
        best = min_error_eo(source, 0)
        markers.append(
            (
                "optimal_eo",
                MetricPoint(float(best.error), float(best.opp_diff)),
                MARKER_COLORS["optimal_eo"],
            )
        )
    for name, point, color in markers:
        point = MetricPoint(float(point.error), float(point.opp_diff))
        element = _marker(spec, region, name, point, color)
        if element is not None:
            lines.append(element)

    if region.degenerate:
        lines.append(
            f'<text class="annotation" x="{MARGIN_PX}" y="{MARGIN_PX // 2}" '
            f'font-family="sans-serif" font-size="12">{escape("degenerate")}</text>'
        )

    lines.append(
        f'<text class="label" x="{w // 2}" y="{h - 8}" font-family="sans-serif" '
        f'font-size="12" text-anchor="middle">error</text>'
    )
    lines.append(
        f'<text class="label" x="12" y="{h // 2}" font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 12 {h // 2})" text-anchor="middle">opportunity difference</text>'
    )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
