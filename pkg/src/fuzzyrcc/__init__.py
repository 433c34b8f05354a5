"""Graded region connection relations between vague regions, and fuzzy skylines built on them."""

from .connection import (
    ConnectionConfig,
    NearnessParams,
    connect_grid,
    connect_oracle,
    dilation,
    erosion,
    nearness,
)
from .datasets import (
    Dataset,
    DatasetError,
    QueryError,
    RegionRecord,
    SeededRandom,
    Uniform,
    assign_support_radii,
    load_regions,
    overlap_report,
    save_regions,
    threshold_classification,
)
from .fuzzy import FuzzyRegion, TNorm, membership, residuum, tnorm
from .geometry import (
    BoundingBox,
    Cell,
    GeometryError,
    MultiPolygon,
    Point,
    Polygon,
    Ring,
    bounding_box,
    contains_point,
    distance_geometry_geometry,
    distance_point_geometry,
    distance_point_point,
    grid_subdivide,
    rectangle,
)
from .relations import RELATION_NAMES, RelationVector, overlap, part_of, relation_matrix, relation_vector
from .skyline import (
    CandidateTuple,
    Mode,
    SkylineQuery,
    SkylineResult,
    build_candidates,
    crisp_skyline,
    fuzzy_dominance,
    fuzzy_skyline,
)

__all__ = [
    "BoundingBox",
    "CandidateTuple",
    "Cell",
    "ConnectionConfig",
    "Dataset",
    "DatasetError",
    "FuzzyRegion",
    "GeometryError",
    "Mode",
    "MultiPolygon",
    "NearnessParams",
    "Point",
    "Polygon",
    "QueryError",
    "RELATION_NAMES",
    "RegionRecord",
    "RelationVector",
    "Ring",
    "SeededRandom",
    "SkylineQuery",
    "SkylineResult",
    "TNorm",
    "Uniform",
    "assign_support_radii",
    "bounding_box",
    "build_candidates",
    "connect_grid",
    "connect_oracle",
    "contains_point",
    "crisp_skyline",
    "dilation",
    "distance_geometry_geometry",
    "distance_point_geometry",
    "distance_point_point",
    "erosion",
    "fuzzy_dominance",
    "fuzzy_skyline",
    "grid_subdivide",
    "load_regions",
    "membership",
    "nearness",
    "overlap",
    "overlap_report",
    "part_of",
    "rectangle",
    "relation_matrix",
    "relation_vector",
    "residuum",
    "save_regions",
    "threshold_classification",
    "tnorm",
]
