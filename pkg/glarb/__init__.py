"""
Glarb Package
Vertex-arboricity of group-labelled graphs: exact solvers, extraction
pipelines for long A-cycles and A-subdivisions, and extremal constructions.
"""

from glarb.abelian import (
    GroupDesc,
    Elem,
    SubgroupDesc,
    add,
    neg,
    zero,
    order,
    in_subgroup,
    quotient,
    count_order_at_most_two,
    parse_group,
    parse_elem,
)
from glarb.graph import (
    LGraph,
    FiniteSet,
    CofiniteSet,
    SubgroupComplement,
    gamma_value,
    quotient_relabel,
    quotient_reduction,
)
from glarb.cycles import enumerate_simple_cycles, find_a_cycle
from glarb.certificates import CycleCert, SubdivCert, PartitionCert, Verdict, verify
from glarb.arboricity import ArbResult, arb_exact, arb_oracle, check_component_law, check_deletion_law, disjoint_a_cycles

# Extraction (levelings, nested sets, gluing)
from glarb.leveling import (
    NestedChain,
    StageInput,
    bfs_leveling,
    heavy_level_component,
    nested_long_path_sets,
    nested_sequence,
    link_path_via_vertex,
    link_path_avoiding_subgroup,
)
from glarb.ramsey import EdgeColoredClique, mono_clique
from glarb.long_cycle import glue_pigeonhole_cycle, extract_long_a_cycle
from glarb.subdivision import (
    StageReport,
    subdivision_from_uniform,
    extract_a_subdivision,
    long_cycle_in_subdivision,
    double_path_identity,
)
from glarb.bounds import create_ramsey_bound, bounds_report

# Constructions
from glarb.constructions import (
    uniform_clique,
    lower_bound_params,
    lower_bound_instance,
    blocks_construction,
    unbounded_instance,
    eta_encoding,
)

# Group arithmetic
GROUP_OPS = [
    add,
    neg,
    zero,
    order,
    in_subgroup,
    quotient,
    count_order_at_most_two,
]

# Labelled graphs and certificates
GRAPH_OPS = [
    gamma_value,
    enumerate_simple_cycles,
    find_a_cycle,
    verify,
    quotient_relabel,
    quotient_reduction,
]

ARBORICITY_OPS = [
    arb_exact,
    arb_oracle,
    check_component_law,
    check_deletion_law,
    disjoint_a_cycles,
]

EXTRACTION_OPS = [
    bfs_leveling,
    heavy_level_component,
    nested_long_path_sets,
    nested_sequence,
    link_path_via_vertex,
    link_path_avoiding_subgroup,
    mono_clique,
    glue_pigeonhole_cycle,
    extract_long_a_cycle,
    subdivision_from_uniform,
    extract_a_subdivision,
    long_cycle_in_subdivision,
    double_path_identity,
]

CONSTRUCTION_OPS = [
    uniform_clique,
    lower_bound_params,
    lower_bound_instance,
    blocks_construction,
    unbounded_instance,
    eta_encoding,
]

# All operations
ALL_OPS = GROUP_OPS + GRAPH_OPS + ARBORICITY_OPS + EXTRACTION_OPS + CONSTRUCTION_OPS

__all__ = [
    "GroupDesc",
    "Elem",
    "SubgroupDesc",
    "parse_group",
    "parse_elem",
    "LGraph",
    "FiniteSet",
    "CofiniteSet",
    "SubgroupComplement",
    "CycleCert",
    "SubdivCert",
    "PartitionCert",
    "Verdict",
    "ArbResult",
    "NestedChain",
    "StageInput",
    "EdgeColoredClique",
    "StageReport",
    "create_ramsey_bound",
    "bounds_report",
    "GROUP_OPS",
    "GRAPH_OPS",
    "ARBORICITY_OPS",
    "EXTRACTION_OPS",
    "CONSTRUCTION_OPS",
    "ALL_OPS",
] + [op.__name__ for op in ALL_OPS]
