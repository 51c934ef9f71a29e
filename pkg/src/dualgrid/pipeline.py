"""The whole chain from a primal embedding to a checked drawing."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MalformedDocument
from .graph import PlanarGraph
from .labeling import CanonicalLabeling, compute_labeling
from .placement import Engine, GridDrawing, embed
from .quad import BendOn, QuadGraph, build_quad
from .report import VerificationReport
from .verify import verify_all


@dataclass(frozen=True)
class Result:
    quad: QuadGraph
    labeling: CanonicalLabeling
    drawing: GridDrawing


def draw(
    g: PlanarGraph,
    *,
    bend_on: BendOn = "primal",
    engine: Engine = "offset",
    check: bool = True,
    outer_edge: tuple[str, str] | None = None,
    trace: list | None = None,
    debug: bool = False,
) -> Result:
    """Radial graph, labeling and placement of ``g``.

    ``check=False`` skips the quadratic 3-connectivity and labeling checks so
    that large inputs stay linear.
    """
    q = build_quad(g, check=check, bend_on=bend_on, outer_edge=outer_edge)
    c = compute_labeling(q, check=check)
    d = embed(q, c, engine=engine, trace=trace, debug=debug)
    return Result(q, c, d)


def quad_for_drawing(g: PlanarGraph, d: GridDrawing) -> QuadGraph:
    """Rebuild the radial graph a drawing was made from."""
    if d.outer_quad is None:
        return build_quad(g, check=False, bend_on=d.bend_on)  # type: ignore[arg-type]
    u, _, w, _ = d.outer_quad
    if not (u.startswith("p:") and w.startswith("p:")):
        raise MalformedDocument("outer_quad must start with a primal vertex", outer_quad=list(d.outer_quad))
    q = build_quad(g, check=False, bend_on=d.bend_on, outer_edge=(u[2:], w[2:]))  # type: ignore[arg-type]
    if q.outer_quad != d.outer_quad:
        raise MalformedDocument(
            "drawing's outer quad does not match the graph",
            expected=list(q.outer_quad),
            got=list(d.outer_quad),
        )
    return q


def verify_drawing(g: PlanarGraph, d: GridDrawing) -> VerificationReport:
    return verify_all(quad_for_drawing(g, d), d)
