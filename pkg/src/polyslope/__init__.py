"""Polygons with prescribed edge slopes.

Configuration spaces of polygons whose edge directions are fixed, the signed
perimeter as a Morse function on the unit-area slice (critical points are
tangential polygons), closed-form Hessians and Morse indices with independent
numerical cross-checks, and the duality with cyclic polygons and the oriented
area on the fixed-edge-length space.
"""

from .cyclic import (
    CyclicInvariants,
    CyclicPolygon,
    DualityReport,
    DualPolygon,
    area_criticality_residual,
    area_morse_index_formula,
    area_morse_index_numeric,
    bifurcation_test,
    cyclic_invariants,
    dual_polygon,
    duality_index_check,
)
from .errors import (
    AntipodalVertices,
    Bifurcating,
    CoincidentVertices,
    DegenerateCritical,
    DegenerateHessian,
    InputSchemaError,
    LengthMismatch,
    NonIntegralTurn,
    NotCritical,
    ParallelLines,
    PointOnBoundary,
    PolyslopeError,
    ReconstructionDegenerate,
    SignatureMismatch,
    SlopeMismatch,
)
from .geometry import (
    DirectedSlope,
    PolygonChain,
    SlopeSystem,
    line_angle,
    oriented_area,
    signed_perimeter,
    turn_counts,
    turning_sum,
    winding_number,
)
from .slope_space import (
    ChartCoordinates,
    ComponentShape,
    RadiiChart,
    TopologyReport,
    build_chart,
    decomposition_polygons,
    normalized_coordinates,
    polygon_from_radii,
    radii_of_polygon,
    topology_report,
    tritangent_circle,
    unit_triangle,
)
from .tangential import (
    ExceptionalSpace,
    IndexReport,
    TangentialCritical,
    critical_gradient_norm,
    hessian_det_identity,
    hessian_fd_comparison,
    morse_index_eigen,
    morse_index_formula,
    perimeter_hessian,
    tangential_critical_points,
)
from .tolerances import DEFAULT_TOL, Tolerances

__version__ = "0.1.0"

__all__ = [
    "AntipodalVertices",
    "Bifurcating",
    "ChartCoordinates",
    "CoincidentVertices",
    "ComponentShape",
    "CyclicInvariants",
    "CyclicPolygon",
    "DEFAULT_TOL",
    "DegenerateCritical",
    "DegenerateHessian",
    "DirectedSlope",
    "DualPolygon",
    "DualityReport",
    "ExceptionalSpace",
    "IndexReport",
    "InputSchemaError",
    "LengthMismatch",
    "NonIntegralTurn",
    "NotCritical",
    "ParallelLines",
    "PointOnBoundary",
    "PolygonChain",
    "PolyslopeError",
    "RadiiChart",
    "ReconstructionDegenerate",
    "SignatureMismatch",
    "SlopeMismatch",
    "SlopeSystem",
    "TangentialCritical",
    "Tolerances",
    "TopologyReport",
    "area_criticality_residual",
    "area_morse_index_formula",
    "area_morse_index_numeric",
    "bifurcation_test",
    "build_chart",
    "critical_gradient_norm",
    "cyclic_invariants",
    "decomposition_polygons",
    "dual_polygon",
    "duality_index_check",
    "hessian_det_identity",
    "hessian_fd_comparison",
    "line_angle",
    "morse_index_eigen",
    "morse_index_formula",
    "normalized_coordinates",
    "oriented_area",
    "perimeter_hessian",
    "polygon_from_radii",
    "radii_of_polygon",
    "signed_perimeter",
    "tangential_critical_points",
    "topology_report",
    "tritangent_circle",
    "turn_counts",
    "turning_sum",
    "unit_triangle",
    "winding_number",
]
