"""Minimal SVG emission for polygons and circles.

Fixed 1000 x 1000 viewport with automatic world-to-viewport scaling, a small
legend, and arrowheads marking edge directions.  Styling is cosmetic only;
coordinates are formatted with fixed precision so output is deterministic.
"""

import math

import numpy as np

VIEW = 1000.0
MARGIN = 60.0


class SvgCanvas:
    def __init__(self):
        self._points: list[tuple[float, float]] = []
        self._elements: list[tuple] = []
        self._legend: list[tuple[str, str]] = []

    def add_polygon(self, vertices, color: str, label: str, dashed: bool = False):
        verts = [(float(x), float(y)) for x, y in np.asarray(vertices, dtype=float)]
        self._points.extend(verts)
        self._elements.append(("polygon", verts, color, dashed))
        self._legend.append((label, color))

    def add_circle(self, center, radius: float, color: str, label: str):
        cx, cy = float(center[0]), float(center[1])
        radius = abs(float(radius))
        self._points.extend([(cx - radius, cy - radius), (cx + radius, cy + radius)])
        self._elements.append(("circle", (cx, cy), radius, color))
        self._legend.append((label, color))

    def add_point(self, point, color: str, label: str | None = None):
        self._points.append((float(point[0]), float(point[1])))
        self._elements.append(("point", (float(point[0]), float(point[1])), color))
        if label:
            self._legend.append((label, color))

    def _transform(self):
        xs = [p[0] for p in self._points]
        ys = [p[1] for p in self._points]
        x_lo, x_hi = min(xs), max(xs)
        y_lo, y_hi = min(ys), max(ys)
        span = max(x_hi - x_lo, y_hi - y_lo, 1e-9)
        scale = (VIEW - 2 * MARGIN) / span
        x_mid = 0.5 * (x_lo + x_hi)
        y_mid = 0.5 * (y_lo + y_hi)

        def to_view(p):
            # SVG y axis points down.
            return (
                VIEW / 2 + (p[0] - x_mid) * scale,
                VIEW / 2 - (p[1] - y_mid) * scale,
            )

        return to_view, scale

    def render(self, title: str) -> str:
        to_view, scale = self._transform()
        parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{VIEW:.0f}" '
            f'height="{VIEW:.0f}" viewBox="0 0 {VIEW:.0f} {VIEW:.0f}">',
            f'<rect width="{VIEW:.0f}" height="{VIEW:.0f}" fill="white"/>',
            f'<text x="20" y="30" font-size="20" font-family="monospace">{title}</text>',
        ]
        for element in self._elements:
            if element[0] == "polygon":
                _, verts, color, dashed = element
                view = [to_view(p) for p in verts]
                path = " ".join(f"{x:.2f},{y:.2f}" for x, y in view)
                dash = ' stroke-dasharray="8 6"' if dashed else ""
                parts.append(
                    f'<polygon points="{path}" fill="none" stroke="{color}" '
                    f'stroke-width="2"{dash}/>'
                )
                parts.extend(self._arrows(verts, to_view, color))
            elif element[0] == "circle":
                _, center, radius, color = element
                cx, cy = to_view(center)
                parts.append(
                    f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{radius * scale:.2f}" '
                    f'fill="none" stroke="{color}" stroke-width="1.5"/>'
                )
            elif element[0] == "point":
                _, point, color = element
                cx, cy = to_view(point)
                parts.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="4" fill="{color}"/>')
        for i, (label, color) in enumerate(self._legend):
            y = 60 + 24 * i
            parts.append(f'<rect x="20" y="{y - 12}" width="14" height="14" fill="{color}"/>')
            parts.append(
                f'<text x="42" y="{y}" font-size="16" font-family="monospace">{label}</text>'
            )
        parts.append("</svg>")
        return "\n".join(parts)

    @staticmethod
    def _arrows(verts, to_view, color):
        out = []
        n = len(verts)
        for i in range(n):
            a = np.asarray(verts[i])
            b = np.asarray(verts[(i + 1) % n])
            mid = to_view(0.5 * (a + b))
            av, bv = to_view(a), to_view(b)
            angle = math.atan2(bv[1] - av[1], bv[0] - av[0])
            size = 9.0
            tip = (mid[0] + size * math.cos(angle), mid[1] + size * math.sin(angle))
            wing1 = (
                mid[0] + size * math.cos(angle + 2.5),
                mid[1] + size * math.sin(angle + 2.5),
            )
            wing2 = (
                mid[0] + size * math.cos(angle - 2.5),
                mid[1] + size * math.sin(angle - 2.5),
            )
            pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in (tip, wing1, wing2))
            out.append(f'<polygon points="{pts}" fill="{color}"/>')
        return out


def render_slopes_svg(report: dict) -> str:
    """Figure for a slopes analysis: critical polygons with inscribed circles."""
    canvas = SvgCanvas()
    critical = report["critical"]
    if critical["exceptional"]:
        canvas._points.append((0.0, 0.0))
        canvas._points.append((1.0, 1.0))
        return canvas.render("exceptional configuration space (perimeter sum ~ 0)")
    colors = ("#1f77b4", "#d62728")
    for point, color, dashed in zip(critical["points"], colors, (False, True)):
        label = f"critical polygon r={point['inradius']:+.4f}, index {point['index_eigen']}"
        canvas.add_polygon(point["vertices"], color, label, dashed=dashed)
        canvas.add_circle(point["incenter"], point["inradius"], color, "inscribed circle")
        canvas.add_point(point["incenter"], color)
    return canvas.render("tangential critical points of the perimeter")


def render_cyclic_svg(report: dict) -> str:
    """Figure for a cyclic analysis: polygon, circumscribed circle, dual polygon."""
    canvas = SvgCanvas()
    radius = report["input"]["radius"]
    center = report["input"]["center"]
    phis = report["input"]["phis_rad"]
    vertices = [
        [center[0] + radius * math.cos(p), center[1] + radius * math.sin(p)] for p in phis
    ]
    canvas.add_polygon(vertices, "#1f77b4", "cyclic polygon")
    canvas.add_circle(center, radius, "#7f7f7f", "circumscribed circle")
    canvas.add_polygon(report["dual"]["vertices"], "#d62728", "dual tangential polygon", dashed=True)
    canvas.add_point(center, "#7f7f7f", "center")
    title = (
        f"cyclic polygon: winding {report['invariants']['winding']}, "
        f"tangent sum {report['invariants']['bifurcation_sum']:.4f}"
    )
    return canvas.render(title)
