"""Frozen one-parameter families used by several test modules.

The slope family crosses the perimeter-sum zero (exceptional locus); the
cyclic family crosses the bifurcation locus.  Both stay valid along the whole
parameter interval, so bisection to the root is safe.
"""

import numpy as np

from polyslope import CyclicPolygon, SlopeSystem, build_chart
from polyslope.cyclic import cyclic_invariants

# Slope family with a perimeter-sum zero crossing between the endpoints;
# pairwise line separations stay above 25 degrees throughout.
FAMILY_START = [0.0, 150.0, 72.0, 290.0]
FAMILY_END = [0.0, 135.0, 72.0, 290.0]

# Endpoints of a vertex-angle family crossing the bifurcation locus; every
# interpolated polygon is valid and keeps its arcs away from pi.
BIF_PHIS_A = np.radians(
    [
        266.84084099101227,
        311.870211972792,
        171.42097616789835,
        28.851306696730532,
        195.327680496804,
    ]
)
BIF_PHIS_B = np.radians(
    [
        166.62017500022853,
        43.65774418973755,
        103.9473382622385,
        182.18524772739968,
        209.55062587991927,
    ]
)


def family_system(t: float) -> SlopeSystem:
    angles = [(1 - t) * a + t * b for a, b in zip(FAMILY_START, FAMILY_END)]
    return SlopeSystem.from_degrees(angles)


def family_perimeter_sum(t: float) -> float:
    return build_chart(family_system(t)).perimeter_sum


def bisect_family_root(lo=0.0, hi=1.0, width=1e-13) -> float:
    flo = family_perimeter_sum(lo)
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        fmid = family_perimeter_sum(mid)
        if flo * fmid <= 0:
            hi = mid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)


def bif_family(t: float) -> CyclicPolygon:
    return CyclicPolygon(np.zeros(2), 1.0, (1 - t) * BIF_PHIS_A + t * BIF_PHIS_B)


def bisect_bifurcation_root(width=1e-15) -> float:
    lo, hi = 0.0, 1.0
    flo = cyclic_invariants(bif_family(lo)).bifurcation_sum
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        fmid = cyclic_invariants(bif_family(mid)).bifurcation_sum
        if flo * fmid <= 0:
            hi = mid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)
