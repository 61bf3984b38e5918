"""Spanning tree polytopes with leaf and degree constraints: skeletons, cliques, exact solvers."""

__version__ = "0.1.0"

from .errors import ContractViolation, ResourceLimitError
from .graph import (
    DegreeMax,
    GraphInstance,
    LeafMax,
    LeafMaxInSubset,
    LeavesOnlyIn,
    SpanningTree,
    count_spanning_trees,
    edge_index,
    edge_pair,
    enumerate_spanning_trees,
    filter_family,
    leaf_count,
)
from .skeleton import (
    SkeletonGraph,
    VertexSet,
    adjacent,
    build_skeleton,
    char_vector,
    clique_number,
    integral_hull_check,
    mst_hrep_satisfied,
)
