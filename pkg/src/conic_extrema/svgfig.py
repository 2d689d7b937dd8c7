"""SVG rendering of conic figures.

Every conic is drawn as a single <path> element: parabolas by adaptive
polyline sampling clipped to the viewport, circles and horocycles as
exact two-arc ellipse paths.  World coordinates are mapped to SVG pixels
with the y axis flipped.
"""

from __future__ import annotations

import numpy as np

from .horocycle import Horocycle
from .parabola import apex_form


class SvgFigure:
    """Accumulates drawing elements over a rectangular world viewport."""

    def __init__(self, viewport=(-4.0, 4.0, -4.0, 4.0), width_px: int = 640):
        self.xmin, self.xmax, self.ymin, self.ymax = (float(v) for v in viewport)
        self.width_px = int(width_px)
        self.scale = self.width_px / (self.xmax - self.xmin)
        self.height_px = int(round((self.ymax - self.ymin) * self.scale))
        self.elements: list[str] = []

    # world -> pixel, y flipped
    def _map(self, pt):
        x, y = float(pt[0]), float(pt[1])
        return (x - self.xmin) * self.scale, (self.ymax - y) * self.scale

    def _fmt(self, v: float) -> str:
        return f"{v:.3f}"

    def _style(self, stroke, width, fill="none", dash=None):
        s = f'fill="{fill}" stroke="{stroke}" stroke-width="{self._fmt(width * self.scale)}"'
        if dash:
            s += f' stroke-dasharray="{self._fmt(dash * self.scale)}"'
        return s

    def add_polyline_path(self, chains, stroke="black", width=0.015, dash=None):
        """One <path> made of M/L subpaths, one per chain of world points."""
        parts = []
        for chain in chains:
            if len(chain) < 2:
                continue
            pts = [self._map(p) for p in chain]
            parts.append(
                "M "
                + " L ".join(f"{self._fmt(x)} {self._fmt(y)}" for x, y in pts)
            )
        if parts:
            d = " ".join(parts)
            self.elements.append(f'<path d="{d}" {self._style(stroke, width, dash=dash)} />')

    def add_ellipse_path(
        self, center, r_major: float, r_minor: float, major_angle: float,
        stroke="black", width=0.015, dash=None,
    ):
        """Exact ellipse as one <path> of two half arcs (angles in world frame)."""
        major = np.array([np.cos(major_angle), np.sin(major_angle)])
        p1 = np.asarray(center, float) + r_major * major
        p2 = np.asarray(center, float) - r_major * major
        x1, y1 = self._map(p1)
        x2, y2 = self._map(p2)
        # y flip: the svg-frame rotation of the major axis
        rot = np.degrees(np.arctan2(-major[1], major[0]))
        rx = self._fmt(r_major * self.scale)
        ry = self._fmt(r_minor * self.scale)
        d = (
            f"M {self._fmt(x1)} {self._fmt(y1)} "
            f"A {rx} {ry} {self._fmt(rot)} 0 1 {self._fmt(x2)} {self._fmt(y2)} "
            f"A {rx} {ry} {self._fmt(rot)} 0 1 {self._fmt(x1)} {self._fmt(y1)} Z"
        )
        self.elements.append(f'<path d="{d}" {self._style(stroke, width, dash=dash)} />')

    def add_circle_path(self, center, r: float, **kw):
        self.add_ellipse_path(center, r, r, 0.0, **kw)

    def add_horocycle(self, h: Horocycle, **kw):
        tangent_angle = h.theta + 0.5 * np.pi
        self.add_ellipse_path(h.center, h.a, h.a**2, tangent_angle, **kw)

    def add_parabola(self, conic, stroke="black", width=0.015, dash=None, points=512):
        """Parabola clipped to the viewport, adaptively sampled."""
        apex, angle, p = apex_form(conic if not hasattr(conic, "conic") else conic.conic)
        uy = np.array([np.cos(angle), np.sin(angle)])
        ux = np.array([uy[1], -uy[0]])
        diag = float(np.hypot(self.xmax - self.xmin, self.ymax - self.ymin))
        reach = diag + float(np.linalg.norm(apex - [self.xmin, self.ymin]))
        s_max = reach + np.sqrt(2.0 * p * reach) + 1.0

        def at(s):
            return apex + s * ux + (s * s / (2.0 * p)) * uy

        ss = self._adaptive_params(at, -s_max, s_max, points)
        pts = np.array([at(s) for s in ss])
        chains = self._clip_chain(pts)
        self.add_polyline_path(chains, stroke=stroke, width=width, dash=dash)

    def _adaptive_params(self, at, lo, hi, base):
        """Parameter samples refined where the chord deviates from the curve."""
        ss = list(np.linspace(lo, hi, base // 4))
        out = []
        tol = 0.25 / self.scale
        stack = [(ss[i], ss[i + 1]) for i in range(len(ss) - 1)]
        while stack and len(out) < 4 * base:
            a, b = stack.pop()
            mid = 0.5 * (a + b)
            pa, pb, pm = at(a), at(b), at(mid)
            dev = np.linalg.norm(pm - 0.5 * (pa + pb))
            if dev > tol and (b - a) > (hi - lo) / (8 * base):
                stack.append((a, mid))
                stack.append((mid, b))
            else:
                out.append(a)
        out.append(hi)
        return np.sort(np.array(out))

    def _inside(self, pt):
        return self.xmin <= pt[0] <= self.xmax and self.ymin <= pt[1] <= self.ymax

    def _clip_chain(self, pts):
        """Split a polyline into the sub-chains lying inside the viewport."""
        chains = []
        cur = []
        for i, pt in enumerate(pts):
            if self._inside(pt):
                if not cur and i > 0:
                    cur.append(self._border_point(pts[i - 1], pt))
                cur.append(pt)
            else:
                if cur:
                    cur.append(self._border_point(pt, cur[-1]))
                    chains.append(cur)
                    cur = []
        if cur:
            chains.append(cur)
        return chains

    def _border_point(self, outside, inside):
        lo, hi = 0.0, 1.0  # inside + t (outside - inside); t=0 inside
        for _ in range(40):
            mid = 0.5 * (lo + hi)
            pt = inside + mid * (np.asarray(outside, float) - inside)
            if self._inside(pt):
                lo = mid
            else:
                hi = mid
        return inside + lo * (np.asarray(outside, float) - inside)

    def add_line(self, normal, offset: float, **kw):
        """Boundary line {x : normal . x = offset}, clipped to the viewport."""
        n = np.asarray(normal, float)
        t = np.array([-n[1], n[0]])
        base = n * offset / (n @ n)
        center = np.array([0.5 * (self.xmin + self.xmax), 0.5 * (self.ymin + self.ymax)])
        base = base + ((center - base) @ t) * t  # closest point to viewport center
        diag = np.hypot(self.xmax - self.xmin, self.ymax - self.ymin)
        ss = np.linspace(-diag, diag, 65)
        pts = base[None, :] + ss[:, None] * t[None, :]
        self.add_polyline_path(self._clip_chain(pts), **kw)

    def add_segment(self, p1, p2, **kw):
        p1 = np.asarray(p1, float)
        p2 = np.asarray(p2, float)
        ss = np.linspace(0.0, 1.0, 33)[:, None]
        pts = p1[None, :] * (1.0 - ss) + p2[None, :] * ss
        self.add_polyline_path(self._clip_chain(pts), **kw)

    def add_point(self, pt, r: float = 0.03, fill="black"):
        x, y = self._map(pt)
        self.elements.append(
            f'<circle cx="{self._fmt(x)}" cy="{self._fmt(y)}" '
            f'r="{self._fmt(r * self.scale)}" fill="{fill}" />'
        )

    def add_label(self, pt, text: str, fill="black", dx=0.06, dy=0.06):
        x, y = self._map((pt[0] + dx, pt[1] + dy))
        self.elements.append(
            f'<text x="{self._fmt(x)}" y="{self._fmt(y)}" '
            f'font-size="{self._fmt(0.12 * self.scale)}" fill="{fill}">{text}</text>'
        )

    def to_xml(self) -> str:
        body = "\n  ".join(self.elements)
        return (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{self.width_px}" height="{self.height_px}" '
            f'viewBox="0 0 {self.width_px} {self.height_px}">\n'
            f"  {body}\n</svg>\n"
        )

    def write(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_xml())
