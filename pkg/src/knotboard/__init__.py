"""Checkerboard-surface invariants of knot diagrams on surfaces."""

from .maps import (
    BLACK,
    WHITE,
    CheckerboardColoring,
    CombinatorialMap,
    CrossingClass,
    DiagramError,
    FaceSet,
    GaussCode,
    KnotboardError,
    PDError,
    checkerboard_coloring,
    classify_crossings,
    crossing_sign,
    faces,
    flip_crossing,
    gauss_code,
    genus,
    parse_pd,
    to_pd,
    writhe,
)

__version__ = "0.1.0"
