"""Combinatorics of 3-dimensional colored triangulations as edge-colored graphs."""

from .census import (
    BoundaryBubble,
    CycleCensus,
    GurauDegree,
    PBubbleCensus,
    boundary_bubble,
    cycle_census,
    gurau_degree,
    interaction_colors,
    p_bubbles,
    replace_with_boundary,
)
from .embedding import (
    EmbeddingStats,
    MelonicWitness,
    check_face_bound,
    embedding_stats,
    is_melonic,
    is_planar,
)
from .graph import (
    COLORS_FIXED,
    COLORS_PERMUTABLE,
    Bubble,
    CanonicalCode,
    ColoredGraph,
    ValidationReport,
    canonical_form,
    parse_graph,
    serialize_graph,
    validate,
)
from .moves import (
    Dipole,
    FlipResult,
    ReductionTrace,
    connected_sum,
    contract,
    find_dipoles,
    flip,
    insert_dipole,
    reduce_to_canonical,
    remove_dipole,
)
from .search import (
    CutPartition,
    MaxReport,
    MaxTwoCutVerdict,
    Pairing,
    check_max_two_cut,
    edge_cut_partition,
    enumerate_gluings,
    enumerate_pairings,
    lemma_qedges_check,
    max_gluings,
    max_pairings,
    verify_only_planar,
)

__version__ = "0.1.0"
