"""Unit-distance graphs in regular-polygon Minkowski planes, with exact arithmetic."""

from .exact_field import QuadExt, q_arith, q_sign
from .polygon_metric import (
    Location,
    Metric,
    Point4,
    SidePoint,
    classify_point,
    embed_float,
    orbit,
    polygon_vertices,
    rotate_step,
    side_point,
)

__version__ = "0.1.0"

__all__ = [
    "Location",
    "Metric",
    "Point4",
    "QuadExt",
    "SidePoint",
    "classify_point",
    "embed_float",
    "orbit",
    "polygon_vertices",
    "q_arith",
    "q_sign",
    "rotate_step",
    "side_point",
]
