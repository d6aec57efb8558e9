"""Cardinal direction constraint solving over connected, possibly disconnected
and simple regions.

Basic networks are decided by :func:`solve_basic`, which returns the maximal
canonical solution when one exists.
"""

from .grid import (
    ContactType,
    Frame,
    IntRect,
    PixelRegion,
    acc_grid,
    connected_components,
    contact_points,
    count_prefix,
    diff_grid,
    holes_of,
    is_connected,
    mbr_of,
    rect_has_pixel,
    refine,
    tile_rect,
)
from .interval import (
    IA,
    DirectionVector,
    IaBasicNetwork,
    IaInconsistent,
    IntInterval,
    basic_ia_of,
    converse_ia,
    direction_vector,
    meet_free_refine,
    solve_basic_ia,
    vector_to_ia,
)
from .matrix import (
    CENTER,
    CdcBasicNetwork,
    CdcDisjunctiveNetwork,
    DirectionMatrix,
    Model,
    dir_of_digital,
    enumerate_basic,
    is_valid_matrix,
    network_of_regions,
    projective_networks,
    projective_pair_relation,
    x_projection,
    y_projection,
)
from .relations import (
    CompositionResult,
    ConverseTable,
    build_converse_table,
    composition_contains,
    converse_table,
    is_decomposable,
    pairwise_consistent,
    single_tile_components,
    weak_composition,
)
from .simplify import SimplifyError, simplify_region, simplify_solution
from .solver import (
    DisjunctiveOutcome,
    SolveOutcome,
    Stage,
    StageKind,
    disallowed_pixels,
    solve_basic,
    solve_disjunctive,
    verify_solution,
)

__version__ = "0.1.0"
