"""Split triangle-free plane graphs into a linear forest and a forest."""

from .generator import gen_cube, gen_cycle, gen_grid, gen_path, gen_quadrangulation, sparsify
from .instance import Coloring, Instance, parse_instance, saturate_q, validate_instance
from .oracle import enumerate_valid, exists_partition
from .partitioner import InternalIncompleteness, InvalidInstance, partition, replay, valid_color
from .plane_graph import PlaneGraph, parse_plane_graph, validate_plane_graph
from .verifier import check_partition, check_valid

__all__ = [
    "Coloring",
    "Instance",
    "InternalIncompleteness",
    "InvalidInstance",
    "PlaneGraph",
    "check_partition",
    "check_valid",
    "enumerate_valid",
    "exists_partition",
    "gen_cube",
    "gen_cycle",
    "gen_grid",
    "gen_path",
    "gen_quadrangulation",
    "parse_instance",
    "parse_plane_graph",
    "partition",
    "replay",
    "saturate_q",
    "sparsify",
    "valid_color",
    "validate_instance",
    "validate_plane_graph",
]
