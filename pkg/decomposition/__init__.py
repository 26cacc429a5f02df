"""
Structure of an oriented grid: streams, confluxes, diagonals, shadows and mirrors.
"""

from .streams import Axis, Stream, max_width, maximal_streams, regularity, stream_index, stream_of
from .confluxes import (
    Conflux,
    CornerSet,
    GuardPosts,
    corners,
    entry_side,
    escape_distances,
    exits_covered,
    guard_posts,
    main_corner_a,
    main_corner_b,
    maximal_conflux,
    maximal_confluxes,
    terminal_corner,
)
from .diagonals import (
    DiagClass,
    Diagonal,
    band_offsets,
    between_band,
    diagonal_distance,
    main_diag,
    md_shifted,
    md_step,
    sd_step,
    secondary_diag,
)
from .shadows import (
    Mirror,
    ShadowKind,
    is_diagonal_shadow,
    is_main_shadow,
    is_secondary_shadow,
    mirror_between,
    mirror_distance,
    mirror_of,
    reflect_across,
    shadow_kind,
    shadow_step,
    shadows_of,
    side_of,
    unit_delta,
    universal_mirrors,
)
from .conflux_digraph import ConfluxDigraph, ConfluxId, conflux_digraph
from .dump import dump_decomposition

__all__ = [
    "Axis",
    "Stream",
    "max_width",
    "maximal_streams",
    "regularity",
    "stream_index",
    "stream_of",
    "Conflux",
    "CornerSet",
    "GuardPosts",
    "corners",
    "entry_side",
    "escape_distances",
    "exits_covered",
    "guard_posts",
    "main_corner_a",
    "main_corner_b",
    "maximal_conflux",
    "maximal_confluxes",
    "terminal_corner",
    "DiagClass",
    "Diagonal",
    "band_offsets",
    "between_band",
    "diagonal_distance",
    "main_diag",
    "md_shifted",
    "md_step",
    "sd_step",
    "secondary_diag",
    "Mirror",
    "ShadowKind",
    "is_diagonal_shadow",
    "is_main_shadow",
    "is_secondary_shadow",
    "mirror_between",
    "mirror_distance",
    "mirror_of",
    "reflect_across",
    "shadow_kind",
    "shadow_step",
    "shadows_of",
    "side_of",
    "unit_delta",
    "universal_mirrors",
    "ConfluxDigraph",
    "ConfluxId",
    "conflux_digraph",
    "dump_decomposition",
]
