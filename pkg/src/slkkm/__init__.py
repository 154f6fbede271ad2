"""Exact-arithmetic toolkit for boundary-respecting colorings of the unit cube."""

from .bounds import (
    BoundReport,
    best_upper,
    check_bm_lemma,
    halfball_upper,
    lower_bound_main,
    lower_bound_simple,
    max_constant_c,
    smaller_ceiling,
    sperner_lower,
    table_one,
    upper_bound_secluded,
)
from .coloring import (
    KKMCover,
    LebesgueCover,
    PointColoring,
    RegionColoring,
    ValidationReport,
    is_proximate,
    kkm_to_coloring,
    lebesgue_to_coloring,
    region_coloring,
    validate_kkm_cover,
    validate_lebesgue_cover,
    validate_slkkm_points,
    validate_slkkm_regions,
)
from .constructions import (
    ExtendedColoring,
    brick_coloring,
    extend_coloring,
    hamming_coloring,
    orthant_coloring,
    proximate_grid,
    sperner_gamma,
)
from .geometry import (
    BallSpec,
    Box,
    BoxUnion,
    DepthResult,
    DimensionMismatch,
    Face,
    GeometryError,
    Interval,
    ball_box,
    box_union,
    boxunion_difference,
    boxunion_equal,
    boxunion_measure,
    boxunion_subset,
    clamp_map,
    closed_interval,
    depth_arrangement,
    interval,
    linf_distance,
    minkowski_sum_open_box,
    on_opposite_faces,
    open_interval,
    oriented_quadrant,
    point_interval,
    rational,
    smallest_face,
    unit_cube,
)
from .search import (
    SearchResult,
    brute_force_oracle,
    empirical_K_curve,
    extremal_search,
    max_colors_ball,
    proof_pipeline_witness,
    verify_theorem,
)
from .serialization import ParseError, parse_coloring, serialize_coloring

__version__ = "0.1.0"
