"""Upper half-space model and the vertex table of the fundamental domain."""

from .upper_half_space import (
    VERTICES,
    EdgeAction,
    HPoint,
    act,
    edge_action,
    fixes_point,
    maps_point_set,
    vertex_name,
    vertex_table,
)

__all__ = [
    "VERTICES",
    "EdgeAction",
    "HPoint",
    "act",
    "edge_action",
    "fixes_point",
    "maps_point_set",
    "vertex_name",
    "vertex_table",
]
