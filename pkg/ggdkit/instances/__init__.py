from ggdkit.instances.families import (
    orbit_demo_pair,
    orbit_demo_path,
    tight_edit_path,
    tight_ged,
    tight_pair,
    wiggle_edit_path,
    wiggle_pair,
    wiggle_path_cost,
)
from ggdkit.instances.randomgraphs import random_edit_path, random_graph
from ggdkit.instances.reduction import (
    ReductionLayout,
    ThreePartitionInstance,
    blob,
    brute_force_3partition,
    encode_reduction,
    partition_to_matching,
    reduction_no_instance,
)

__all__ = [
    "ReductionLayout",
    "ThreePartitionInstance",
    "blob",
    "brute_force_3partition",
    "encode_reduction",
    "orbit_demo_pair",
    "orbit_demo_path",
    "partition_to_matching",
    "random_edit_path",
    "random_graph",
    "reduction_no_instance",
    "tight_edit_path",
    "tight_ged",
    "tight_pair",
    "wiggle_edit_path",
    "wiggle_pair",
    "wiggle_path_cost",
]
