"""Exact metric dimension and edge metric dimension toolkit.

Solvers for both dimensions of connected graphs, constructors for the
gadget families that realize any prescribed (dim, edim) pair, a graph6
codec, and predicate scans over exhaustive graph streams.
"""

from .graph import (
    DisconnectedGraph,
    DistanceMatrix,
    DuplicateEdge,
    Edge,
    Graph,
    GraphError,
    SelfLoop,
    add_edge,
    bfs_all_pairs,
    cartesian_product,
    disjoint_union,
    edge_distance,
    vertex_distance,
)
from .solver import (
    DistancePartition,
    InstanceTooLarge,
    ResolveResult,
    distance_partition,
    edge_metric_dimension,
    edge_metric_dimension_naive,
    is_edge_metric_generator,
    is_metric_generator,
    meet_is_discrete,
    metric_dimension,
    metric_dimension_naive,
    resolution_vector,
)
from .families import (
    BasisBlueprint,
    EqualDimensionsUnsupported,
    FamilyGraph,
    FamilyParams,
    InvalidParams,
    InvalidTarget,
    OrderTooSmall,
    RealizeError,
    RoleLabel,
    canonical_basis,
    chain_order,
    gadget_order,
    glue,
    make_chain,
    make_complete,
    make_cycle,
    make_gadget,
    make_gadget_core,
    make_path,
    minimum_realizable_order,
    parse_family_spec,
    realize,
)
from .graph6 import (
    Graph6Error,
    GraphTooLarge,
    MalformedHeader,
    NonPrintableByte,
    PaddingBitsSet,
    TrailingData,
    TruncatedBitVector,
    decode_graph6,
    encode_graph6,
    stream_graph6,
)
from .scan import (
    OrderTooLarge,
    Predicate,
    RatioWitness,
    ScanMatch,
    ScanReport,
    SmallOrderReport,
    enumerate_labeled_connected,
    ratio_witness,
    scan,
    verify_small_orders,
)

__version__ = "0.1.0"
