"""Heegaard diagrams with link curves: data model, moves, planar links and surgery."""

from .diagram import Crossing, Curve, HeegaardLinkDiagram, lens_space_diagram, s1xs2_diagram, s3_diagram
from .moves import (
    apply_move,
    basepoint,
    destabilize,
    handle_slide,
    parse_move,
    reverse,
    stabilize,
    three_point,
    two_point_cancel,
    two_point_create,
)
from .planar import PlanarLinkPresentation, framed_braid, linking_matrix
from .surgery import from_planar_link, is_sorted, sort_link_crossings, surgery, surgery_all

__all__ = [
    "Crossing",
    "Curve",
    "HeegaardLinkDiagram",
    "PlanarLinkPresentation",
    "apply_move",
    "basepoint",
    "destabilize",
    "framed_braid",
    "from_planar_link",
    "handle_slide",
    "is_sorted",
    "lens_space_diagram",
    "parse_move",
    "linking_matrix",
    "reverse",
    "s1xs2_diagram",
    "s3_diagram",
    "sort_link_crossings",
    "stabilize",
    "surgery",
    "surgery_all",
    "three_point",
    "two_point_cancel",
    "two_point_create",
]
