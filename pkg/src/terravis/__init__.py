"""Exact visibility structures on 1.5D polyhedral terrains.

A 1.5D terrain is an x-monotone polygonal chain.  Given viewpoints placed
on terrain vertices this package computes, with exact arithmetic:

* the visibility map (which maximal terrain intervals are seen by at
  least one viewpoint),
* the colored visibility map (the exact subset of viewpoints seeing each
  interval), and
* the Voronoi visibility map (the closest viewpoint seeing each
  interval, if any),

optionally with a common sight-distance limit.  Every map produced by
the fast sweep algorithms can be cross-checked against an independent
brute-force oracle.
"""

from .exactnum import Rational, QuadExt, ExactX, mpq, exact_cmp
from .geometry import Point2, Ray2, Line2, orient, bisector, cmp_dist
from .geometry import ray_edge_intersection, circle_edge_intersections
from .terrain import Terrain, ViewpointSet, GeneralPositionReport, validate, point_at
from .terrain import FIX_FLAT, FIX_PEAK, FIX_VALLEY, FIX_APEX
from .generators import gen_comb, gen_random
from .maps import IntervalMap, ColVisMap
from .rayshoot import ShootIndex, shoot_ray, shoot_arc
from .vis_sweep import build_left_vis, merge_vis, build_vis
from .colvis_sweep import build_left_colvis, merge_colvis, build_colvis
from .colvis_sweep import simultaneous_reappearance_audit
from .vorvis import build_vorvis_dnc, build_vorvis, is_always_closer, first_region_change
from .limited import build_colvis_limited, build_vis_limited, build_vorvis_limited
from .oracle import oracle_sees, oracle_map, OracleTimeout
from .formats import (FormatError, num_to_str, num_from_str,
                      serialize_terrain, parse_terrain,
                      serialize_map, parse_map, map_to_json, map_from_json)

__all__ = [
    "Rational", "QuadExt", "ExactX", "mpq", "exact_cmp",
    "Point2", "Ray2", "Line2", "orient", "bisector", "cmp_dist",
    "ray_edge_intersection", "circle_edge_intersections",
    "Terrain", "ViewpointSet", "GeneralPositionReport", "validate", "point_at",
    "FIX_FLAT", "FIX_PEAK", "FIX_VALLEY", "FIX_APEX",
    "gen_comb", "gen_random",
    "IntervalMap", "ColVisMap",
    "ShootIndex", "shoot_ray", "shoot_arc",
    "build_left_vis", "merge_vis", "build_vis",
    "build_left_colvis", "merge_colvis", "build_colvis",
    "simultaneous_reappearance_audit",
    "build_vorvis_dnc", "build_vorvis", "is_always_closer", "first_region_change",
    "build_colvis_limited", "build_vis_limited", "build_vorvis_limited",
    "oracle_sees", "oracle_map", "OracleTimeout",
    "FormatError", "num_to_str", "num_from_str",
    "serialize_terrain", "parse_terrain",
    "serialize_map", "parse_map", "map_to_json", "map_from_json",
]
