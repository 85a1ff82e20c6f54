"""Critical points of the signed perimeter and their Morse indices.

On the unit-area slice of the polygon space the perimeter has either no
critical points (when the unit perimeters sum to zero, the "exceptional"
case) or exactly two, both tangential polygons: all decomposition radii equal
a common signed inradius r with r**2 = 2 / |sum p_i|.  The Hessian in the
constrained radii chart has the closed form

    H_jj = -(p_j / (r p_1)) (p_1 + p_j),   H_jk = -p_j p_k / (r p_1),

indexed by the free radii j, k = 2..n-2, and the Morse index is produced two
independent ways: by counting negative eigenvalues and by the combinatorial
turn/winding formula.  Finite-difference utilities for the constrained chart
live here as well so that verification sweeps can cross-check both.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateHessian, NotCritical, ReconstructionDegenerate
from .geometry import (
    PolygonChain,
    SlopeSystem,
    edge_offsets,
    left_normal,
    oriented_area,
    signed_perimeter,
    turn_counts,
    winding_number,
)
from .slope_space import RadiiChart, build_chart, polygon_from_radii, unit_triangle
from .tolerances import DEFAULT_TOL, Tolerances


@dataclass(frozen=True)
class ExceptionalSpace:
    """Marker result: the tangential polygon has zero area, no critical points."""

    chart: RadiiChart

    @property
    def perimeter_sum(self) -> float:
        return self.chart.perimeter_sum


@dataclass(frozen=True, eq=False)
class TangentialCritical:
    """A tangential critical point of the perimeter on the unit-area slice."""

    polygon: PolygonChain
    chart: RadiiChart
    inradius: float
    incenter: np.ndarray
    perimeter: float
    area: float
    winding: int
    right_turns: int
    left_turns: int
    hessian: np.ndarray

    @property
    def n(self) -> int:
        return self.chart.n


@dataclass(frozen=True, eq=False)
class IndexReport:
    """Morse index of a tangential point, computed two independent ways.

    ``index_eigen`` counts negative Hessian eigenvalues outside the dead
    band, cross-checked against the sign changes of the leading principal
    minors; ``index_formula`` is the turn/winding formula value.
    """

    index_eigen: int
    index_formula: int
    eigenvalues: np.ndarray
    minor_signs: tuple[int, ...]
    agreement: bool


def hessian_formula(unit_perimeters: np.ndarray, inradius: float) -> np.ndarray:
    """Closed-form perimeter Hessian in the free radii (r_2, ..., r_{n-2})."""
    p0 = float(unit_perimeters[0])
    tail = np.asarray(unit_perimeters[1:], dtype=float)
    return -(np.outer(tail, tail) / p0 + np.diag(tail)) / inradius


def exceptional(chart: RadiiChart, tol: Tolerances | None = None) -> bool:
    """Whether the slope system yields an exceptional space (zero-area tangential)."""
    tol = DEFAULT_TOL if tol is None else tol
    scale = float(np.sum(np.abs(chart.unit_perimeters)))
    return abs(chart.perimeter_sum) <= tol.exceptional * scale


def tangential_critical_points(
    source: SlopeSystem | RadiiChart,
    tol: Tolerances | None = None,
) -> ExceptionalSpace | tuple[TangentialCritical, TangentialCritical]:
    """The two tangential critical points, or the exceptional marker.

    The points are mutual point reflections: the inscribed circle of one has
    signed radius +r and the other -r, with r = sqrt(2 / |sum p_i|).  Both
    have area sign equal to the sign of sum p_i.
    """
    tol = DEFAULT_TOL if tol is None else tol
    chart = source if isinstance(source, RadiiChart) else build_chart(source, tol)
    if exceptional(chart, tol):
        return ExceptionalSpace(chart=chart)
    magnitude = math.sqrt(2.0 / abs(chart.perimeter_sum))
    return (
        _critical_point(chart, magnitude, tol),
        _critical_point(chart, -magnitude, tol),
    )


def _critical_point(chart: RadiiChart, inradius: float, tol: Tolerances) -> TangentialCritical:
    radii = np.full(chart.n - 2, inradius)
    polygon = polygon_from_radii(chart, radii, tol)
    # Canonical representative: the common circle center sits at signed
    # distance r from the first edge line, above the origin.
    incenter = inradius * chart.system[0].normal
    _check_tangency(chart, polygon, incenter, inradius, tol)
    area = oriented_area(polygon)
    perimeter = signed_perimeter(polygon, chart.system, tol)
    right_turns, left_turns = turn_counts(chart.system)
    return TangentialCritical(
        polygon=polygon,
        chart=chart,
        inradius=inradius,
        incenter=incenter,
        perimeter=perimeter,
        area=area,
        winding=winding_number(polygon, incenter, tol),
        right_turns=right_turns,
        left_turns=left_turns,
        hessian=hessian_formula(chart.unit_perimeters, inradius),
    )


def _check_tangency(chart, polygon, center, inradius, tol):
    angles = chart.system.angles
    offsets = edge_offsets(polygon, angles)
    normals = np.stack([left_normal(a) for a in angles])
    sides = normals @ center - offsets
    if np.max(np.abs(sides - inradius)) > 1e-9 * max(1.0, polygon.diameter):
        raise ReconstructionDegenerate("constructed polygon is not tangential")


def perimeter_hessian(point: TangentialCritical) -> np.ndarray:
    """Closed-form Hessian of the perimeter at a tangential critical point."""
    return hessian_formula(point.chart.unit_perimeters, point.inradius)


def hessian_det_identity(point: TangentialCritical) -> tuple[float, float]:
    """Both sides of the determinant identity for the perimeter Hessian.

    r**(n-3) det H equals (-p_2 Pi / p_1) * prod_{i>=3} (-p_i); requires
    n >= 4 so the Hessian is nonempty.  The two sides are asserted to agree
    to 1e-9 relative; a violation signals an internal inconsistency.
    """
    n = point.n
    if n < 4:
        raise ValueError("determinant identity needs n >= 4")
    p = point.chart.unit_perimeters
    lhs = point.inradius ** (n - 3) * float(np.linalg.det(point.hessian))
    rhs = (-p[1] * point.chart.perimeter_sum / p[0]) * float(np.prod(-p[2:]))
    if abs(lhs - rhs) > 1e-9 * max(abs(lhs), abs(rhs)):
        raise ReconstructionDegenerate(
            f"determinant identity violated: {lhs!r} vs {rhs!r}"
        )
    return lhs, rhs


def morse_index_formula(point: TangentialCritical) -> int:
    """Morse index from turn counts, winding and perimeter sign alone."""
    perimeter_positive = 1 if point.perimeter > 0 else 0
    if point.inradius > 0:
        return point.right_turns - 1 + 2 * point.winding - perimeter_positive
    return point.left_turns - 1 - 2 * point.winding - perimeter_positive


def morse_index_eigen(
    point: TangentialCritical,
    tol: Tolerances | None = None,
) -> IndexReport:
    """Morse index from Hessian eigenvalues, with minor-sign cross-check.

    Eigenvalues inside the dead band raise DegenerateHessian; a disagreement
    between the eigenvalue count and the sign changes of the leading
    principal minors raises as well, since both must count the same index.
    """
    tol = DEFAULT_TOL if tol is None else tol
    hessian = point.hessian
    size = hessian.shape[0]
    if size == 0:
        formula = morse_index_formula(point)
        return IndexReport(
            index_eigen=0,
            index_formula=formula,
            eigenvalues=np.empty(0),
            minor_signs=(),
            agreement=formula == 0,
        )
    eigenvalues = np.linalg.eigvalsh(hessian)
    band = tol.eigen_band * float(np.max(np.abs(hessian)))
    if np.any(np.abs(eigenvalues) <= band):
        raise DegenerateHessian(f"eigenvalue inside dead band {band!r}")
    negatives = int(np.count_nonzero(eigenvalues < -band))
    minors = [float(np.linalg.det(hessian[: k + 1, : k + 1])) for k in range(size)]
    signs = tuple(1 if m > 0 else -1 for m in minors)
    changes = 0
    previous = 1
    for s in signs:
        if s != previous:
            changes += 1
        previous = s
    if changes != negatives:
        raise DegenerateHessian(
            f"minor sign changes ({changes}) disagree with eigenvalue count ({negatives})"
        )
    formula = morse_index_formula(point)
    return IndexReport(
        index_eigen=negatives,
        index_formula=formula,
        eigenvalues=eigenvalues,
        minor_signs=signs,
        agreement=negatives == formula,
    )


# ---------------------------------------------------------------------------
# Constrained chart: free radii (r_2, ..., r_{n-2}) with r_1 recovered from
# the unit-area constraint.  Used by finite-difference verification.
# ---------------------------------------------------------------------------


def well_conditioned_chart(system: SlopeSystem, tol: Tolerances | None = None) -> RadiiChart:
    """Chart in the cyclic relabeling that maximizes the first unit perimeter.

    The first decomposition triangle owns the implicit coordinate of the
    constrained chart, so its unit perimeter divides every derivative of the
    implicit function; relabeling to make it as large as possible keeps
    finite differences well conditioned.  Critical points, their indices and
    gradient vanishing are invariant under cyclic relabeling.
    """
    tol = DEFAULT_TOL if tol is None else tol
    best_shift = 0
    best_value = -math.inf
    for shift in range(system.n):
        triangle, _ = unit_triangle(
            system[shift],
            system[(shift + 1) % system.n],
            system[(shift + 2) % system.n],
            tol,
        )
        value = abs(2.0 * oriented_area(triangle))
        if value > best_value:
            best_value = value
            best_shift = shift
    return build_chart(system.rotated(best_shift), tol)


def solve_first_radius(
    chart: RadiiChart,
    free_radii: np.ndarray,
    target_area: float,
    seed: float,
    tol: Tolerances | None = None,
) -> float:
    """Newton solve of 0.5 * sum p_i r_i**2 = target_area for r_1.

    The branch is selected by the seed value; iterates to machine-level
    convergence and enforces the configured residual tolerance.
    """
    tol = DEFAULT_TOL if tol is None else tol
    p0 = float(chart.unit_perimeters[0])
    tail = float(np.sum(chart.unit_perimeters[1:] * np.asarray(free_radii) ** 2))
    tail_scale = float(np.sum(np.abs(chart.unit_perimeters[1:]) * np.asarray(free_radii) ** 2))
    r = float(seed)
    for _ in range(60):
        residual = 0.5 * (p0 * r * r + tail) - target_area
        slope = p0 * r
        if slope == 0.0:
            raise NotCritical("area constraint has vanishing derivative in r_1")
        step = residual / slope
        r -= step
        if abs(step) <= 1e-16 * max(1.0, abs(r)):
            break
    residual = 0.5 * (p0 * r * r + tail) - target_area
    # The residual cannot be evaluated below the roundoff of its own terms,
    # which dominate near-exceptional systems where large terms cancel.
    scale = max(1.0, abs(target_area), 0.5 * (abs(p0) * r * r + tail_scale))
    if abs(residual) > tol.newton * scale:
        raise NotCritical(f"area constraint solve stalled at residual {residual!r}")
    return r


def constrained_perimeter(
    chart: RadiiChart,
    free_radii,
    target_area: float,
    seed: float,
    tol: Tolerances | None = None,
) -> float:
    """Perimeter sum p . r on the constraint surface of fixed area."""
    free_radii = np.asarray(free_radii, dtype=float)
    r0 = solve_first_radius(chart, free_radii, target_area, seed, tol)
    p = chart.unit_perimeters
    return float(p[0] * r0 + np.sum(p[1:] * free_radii))


def perimeter_gradient_fd(
    chart: RadiiChart,
    free_radii,
    target_area: float,
    seed: float,
    step: float,
    tol: Tolerances | None = None,
) -> np.ndarray:
    """Central-difference gradient of the constrained perimeter."""
    free_radii = np.asarray(free_radii, dtype=float)
    grad = np.empty(len(free_radii))
    for j in range(len(free_radii)):
        plus = free_radii.copy()
        minus = free_radii.copy()
        plus[j] += step
        minus[j] -= step
        grad[j] = (
            constrained_perimeter(chart, plus, target_area, seed, tol)
            - constrained_perimeter(chart, minus, target_area, seed, tol)
        ) / (2.0 * step)
    return grad


def perimeter_hessian_fd(
    chart: RadiiChart,
    free_radii,
    target_area: float,
    seed: float,
    step: float,
    tol: Tolerances | None = None,
) -> np.ndarray:
    """Central-difference Hessian of the constrained perimeter."""
    free_radii = np.asarray(free_radii, dtype=float)
    m = len(free_radii)

    def value(offsets):
        return constrained_perimeter(chart, free_radii + offsets, target_area, seed, tol)

    center = value(np.zeros(m))
    hessian = np.empty((m, m))
    for j in range(m):
        ej = np.zeros(m)
        ej[j] = step
        hessian[j, j] = (value(ej) + value(-ej) - 2.0 * center) / step**2
        for k in range(j + 1, m):
            ek = np.zeros(m)
            ek[k] = step
            mixed = (
                value(ej + ek) - value(ej - ek) - value(-ej + ek) + value(-ej - ek)
            ) / (4.0 * step**2)
            hessian[j, k] = mixed
            hessian[k, j] = mixed
    return hessian


def critical_gradient_norm(
    point: TangentialCritical,
    step_factor: float = 1e-6,
    tol: Tolerances | None = None,
) -> float:
    """Finite-difference gradient norm of the perimeter at a critical point.

    Evaluated in the well-conditioned relabeling; vanishes (below 1e-6 in
    practice) exactly at the tangential points.
    """
    if point.n < 4:
        return 0.0
    chart = well_conditioned_chart(point.chart.system, tol)
    free = np.full(point.n - 3, point.inradius)
    target = math.copysign(1.0, chart.perimeter_sum)
    step = step_factor * abs(point.inradius)
    grad = perimeter_gradient_fd(chart, free, target, point.inradius, step, tol)
    return float(np.linalg.norm(grad))


HESSIAN_FD_LADDER = (4e-3, 2e-3, 1e-3, 5e-4, 2.5e-4)


def hessian_fd_comparison(
    point: TangentialCritical,
    step_factor: float | None = None,
    richardson: bool = True,
    tol: Tolerances | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form and finite-difference Hessians in the well-conditioned chart.

    Both matrices live in the same relabeled chart, so they are directly
    comparable entry by entry.  With ``richardson`` (and no explicit step)
    central differences are evaluated on a ladder of steps, adjacent pairs
    are extrapolated, and the estimate where successive extrapolations agree
    best wins; that rides the noise/truncation trade-off per system and
    certifies five to six digits in double precision.  A fixed
    ``step_factor`` uses that step (extrapolated with its half-step when
    ``richardson``); plain central differences bottom out around 1e-4 of the
    matrix scale.
    """
    chart = well_conditioned_chart(point.chart.system, tol)
    closed = hessian_formula(chart.unit_perimeters, point.inradius)
    if closed.size == 0:
        return closed, closed.copy()
    free = np.full(point.n - 3, point.inradius)
    target = math.copysign(1.0, chart.perimeter_sum)

    def stencil(factor):
        return perimeter_hessian_fd(
            chart, free, target, point.inradius, factor * abs(point.inradius), tol
        )

    if step_factor is not None:
        fd = stencil(step_factor)
        if richardson:
            fd = (4.0 * stencil(0.5 * step_factor) - fd) / 3.0
        return closed, fd
    if not richardson:
        return closed, stencil(1e-3)
    stencils = [stencil(factor) for factor in HESSIAN_FD_LADDER]
    extrapolated = [
        (4.0 * fine - coarse) / 3.0 for coarse, fine in zip(stencils, stencils[1:])
    ]
    gaps = [
        float(np.max(np.abs(b - a))) for a, b in zip(extrapolated, extrapolated[1:])
    ]
    best = int(np.argmin(gaps)) if gaps else 0
    return closed, extrapolated[best + 1 if gaps else 0]
