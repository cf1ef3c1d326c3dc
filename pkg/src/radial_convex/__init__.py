"""Convex configurations of points with prescribed distances from the origin."""

from .configuration import Configuration, Configuration2D, Configuration3D
from .errors import (
    BudgetUnderflow,
    ConvexConfigError,
    DegenerateGrid,
    DegenerateHull,
    DimensionMismatch,
    LengthMismatch,
    NonUnitInput,
    RadiiNotDistinct,
    RepetitionTooHigh,
    TooFewPoints,
    WeightOutOfRange,
)
from .estimators import LaguerreCellAssigner, RadialConvexEmbedding
from .geom import (
    HullDescription,
    PointClass,
    Tolerance,
    affine_rank,
    certify_strict,
    classify_points,
    convex_hull,
    geodesic_distance,
    origin_inside,
    origin_interior,
    strict_margins,
)
from .planar import (
    ProbeOutcome,
    chord_budget,
    construct_distinct_2d,
    construct_repeated_2d,
    polygon_margin,
    probe_conjecture_2d,
    realize_2d,
    strictify_distinct_2d,
    strictify_repeated_2d,
)
from .render import render_off, render_svg
from .slvd import (
    CellVerdict,
    DualPointSet,
    EmptinessReport,
    Method,
    SphericalCircleSet,
    check_nonemptiness,
    feasibility_report,
    fibonacci_sphere,
    laguerre_proximity,
    place_generators,
    sample_cells,
    weight_to_radius,
)
from .spatial import Mode, construct_distinct_3d, construct_layered_3d, realize_3d, strictify_3d
from .validation import RadiiSet
from .verify import Verdict, VerificationReport, verify_configuration

__version__ = "0.1.0"
