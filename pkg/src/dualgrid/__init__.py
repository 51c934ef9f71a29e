"""Simultaneous integer-grid drawings of a 3-connected planar graph and its dual."""

from .errors import DualGridError
from .generate import GenSpec, platonic, random_graph
from .graph import Face, PlanarGraph, check_three_connected, parse_graph
from .labeling import CanonicalLabeling, compute_labeling, verify_labeling
from .pipeline import Result, draw, quad_for_drawing, verify_drawing
from .placement import GridDrawing, embed
from .quad import QuadGraph, build_quad, select_outer_quad
from .render import RenderStyle, render_svg
from .report import VerificationReport
from .verify import check_angles, check_requirements, check_strict_convexity, verify_all

__all__ = [
    "CanonicalLabeling",
    "DualGridError",
    "Face",
    "GenSpec",
    "GridDrawing",
    "PlanarGraph",
    "QuadGraph",
    "RenderStyle",
    "Result",
    "VerificationReport",
    "build_quad",
    "check_angles",
    "check_requirements",
    "check_strict_convexity",
    "check_three_connected",
    "compute_labeling",
    "draw",
    "embed",
    "parse_graph",
    "platonic",
    "quad_for_drawing",
    "random_graph",
    "render_svg",
    "select_outer_quad",
    "verify_all",
    "verify_drawing",
    "verify_labeling",
]
