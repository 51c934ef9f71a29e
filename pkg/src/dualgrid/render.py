"""SVG output: primal in blue, dual in red, y axis pointing up."""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import quoteattr

from .placement import GridDrawing
from .quad import QuadGraph


@dataclass(frozen=True)
class RenderStyle:
    primal_color: str = "blue"
    dual_color: str = "red"
    vertex_radius: float = 0.15
    scale: int = 20
    show_grid: bool = False
    margin: int = 1

    def __post_init__(self) -> None:
        if self.scale < 1:
            raise ValueError("scale must be at least 1")


def _num(v: float) -> str:
    return f"{v:g}"


def render_svg(q: QuadGraph, d: GridDrawing, style: RenderStyle | None = None) -> str:
    """Deterministic SVG 1.1 document for a finished drawing."""
    st = style or RenderStyle()
    pts = list(d.coords.values())
    if d.bend_point is not None:
        pts.append(d.bend_point)
    top = max(max(p[0] for p in pts), max(p[1] for p in pts))
    size = top + 2 * st.margin
    s = st.scale
    px = size * s

    def x(v: int) -> str:
        return _num((v + st.margin) * s)

    def y(v: int) -> str:
        return _num((top - v + st.margin) * s)

    bent = frozenset(d.bend_edge) if d.bend_edge else None
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{px}" height="{px}" '
        f'viewBox="0 0 {px} {px}">',
        f'<rect width="{px}" height="{px}" fill="white"/>',
    ]
    if st.show_grid:
        out.append('<g class="grid" stroke="#dddddd" stroke-width="1">')
        for i in range(top + 1):
            out.append(f'<line x1="{x(i)}" y1="{y(0)}" x2="{x(i)}" y2="{y(top)}"/>')
            out.append(f'<line x1="{x(0)}" y1="{y(i)}" x2="{x(top)}" y2="{y(i)}"/>')
        out.append("</g>")

    width = _num(max(1.0, s / 10))
    for cls, color, edges in (
        ("primal", st.primal_color, q.primal_edges),
        ("dual", st.dual_color, q.dual_edges),
    ):
        out.append(f'<g class="{cls}-edges" stroke={quoteattr(color)} stroke-width="{width}" fill="none">')
        for a, b in sorted(tuple(sorted(e)) for e in edges):
            pa, pb = d.coords[a], d.coords[b]
            if frozenset((a, b)) == bent and d.bend_point is not None:
                pm = d.bend_point
                out.append(
                    f'<polyline points="{x(pa[0])},{y(pa[1])} {x(pm[0])},{y(pm[1])} {x(pb[0])},{y(pb[1])}"/>'
                )
            else:
                out.append(f'<line x1="{x(pa[0])}" y1="{y(pa[1])}" x2="{x(pb[0])}" y2="{y(pb[1])}"/>')
        out.append("</g>")

    r = _num(st.vertex_radius * s)
    for cls, color, primal in (("primal", st.primal_color, True), ("dual", st.dual_color, False)):
        out.append(f'<g class="{cls}-vertices" fill={quoteattr(color)}>')
        for v in sorted(k for k in q.graph.vertex_ids if q.is_primal(k) == primal):
            p = d.coords[v]
            out.append(f'<circle cx="{x(p[0])}" cy="{y(p[1])}" r="{r}"><title>{v}</title></circle>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
