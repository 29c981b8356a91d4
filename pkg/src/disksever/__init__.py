"""Balanced line separators for unit-disk and disk intersection graphs."""

from .centerpoint import DepthReport, exact_centerpoint, halfplane_depth
from .diskgraph import IntersectionGraph, build_graph, is_connected
from .generators import (LowerBoundParams, choose_k, gen_arbitrary_radii, gen_lower_bound,
                         gen_random, gen_random_disjoint, gen_snake)
from .geom import Disk, Instance, Line, SideClass, classify_all, side_of, signed_distance
from .separators import (InfeasibleError, SeparatorResult, axis_parallel_separator,
                         best_line_for_slope, line_through_point_separator,
                         optimal_line_separator, random_line_separator)

__version__ = "0.1.0"
