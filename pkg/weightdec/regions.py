""" Upper-left / lower-right region geometry and the bounds on the exact
quantum query complexity of f_n^{k,l} that follow from it.

  Usage example:

  result = bounds(RatioPoint(0.3, 0.7))
  result.upper, result.lower  # (3, 3)

A point in UL(S_d) has a d-query exact algorithm (by padding towards the
anchor); a point in LR(S_d) needs at least d + 1 queries once n is large
enough.
"""

from dataclasses import dataclass, replace
import logging
import math
from typing import Optional, Tuple, Union

import numpy as np  # type: ignore

from weightdec.cheb_core import BoundaryPair, boundary_arrays, boundary_pairs
from weightdec.const import MAX_SEARCH_D, Point, REGION_TOL, WeightInstance
from weightdec.errors import ArgumentError, ConsistencyError, ResourceError


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RatioPoint:
    """ The ratio coordinates (k/n, l/n) of a weight decision function.
    Off-grid real points are allowed; the diagonal is not. """
    kappa: float
    lam: float

    def __post_init__(self):
        for value in (self.kappa, self.lam):
            if not math.isfinite(value) or not 0.0 <= value <= 1.0:
                raise ArgumentError(f"ratio coordinates must lie in [0, 1],"
                                    f" got ({self.kappa}, {self.lam})")
        if not self.kappa < self.lam:
            raise ArgumentError(f"expected kappa < lambda,"
                                f" got ({self.kappa}, {self.lam})")

    def as_point(self) -> Point:
        return self.kappa, self.lam

    def complement(self) -> "RatioPoint":
        """ (1 - lambda, 1 - kappa) """
        return RatioPoint(1.0 - self.lam, 1.0 - self.kappa)


Anchor = Union[RatioPoint, BoundaryPair]


@dataclass(frozen=True)
class BoundsResult:
    """
    Attributes:
        upper: minimal d with the point in UL(S_d)
        lower: 1 + maximal d with the point in LR(S_d), 1 without membership
        upper_anchor: the pair of S_upper the point pads towards
        lower_anchor: the pair witnessing the lower bound, if any
        matched: whether the two bounds coincide
        asymptotic: set for concrete instances, whose lower bound only holds
            for sufficiently large n
    """
    upper: int
    lower: int
    upper_anchor: BoundaryPair
    lower_anchor: Optional[BoundaryPair]
    matched: bool
    asymptotic: bool = False

    @property
    def gap(self) -> int:
        return self.upper - self.lower


# ======================================================== Membership kernels

def _ul_mask(kappa, lam, x, y, tol: float = REGION_TOL):
    """ Broadcasting test of (kappa, lam) in UL(x, y); kappa < lam is assumed
    to have been checked by the caller """
    return ((lam * x >= kappa * y - tol)
            & ((1.0 - kappa) * (1.0 - y) >= (1.0 - lam) * (1.0 - x) - tol))


def _lr_mask(kappa, lam, x, y, tol: float = REGION_TOL):
    """ Broadcasting test of (kappa, lam) in LR(x, y), the anchor excluded """
    not_anchor = (np.abs(kappa - x) > tol) | (np.abs(lam - y) > tol)
    return ((lam * x <= kappa * y + tol)
            & ((1.0 - kappa) * (1.0 - y) <= (1.0 - lam) * (1.0 - x) + tol)
            & not_anchor)


def in_UL(p: RatioPoint, anchor: Anchor) -> bool:  # pylint: disable=invalid-name
    """ Whether p lies in the closed upper-left region of anchor """
    x, y = anchor.as_point()
    return bool(_ul_mask(p.kappa, p.lam, x, y))


def in_LR(p: RatioPoint, anchor: Anchor) -> bool:  # pylint: disable=invalid-name
    """ Whether p lies in the lower-right region of anchor (the anchor
    itself excluded) """
    x, y = anchor.as_point()
    return bool(_lr_mask(p.kappa, p.lam, x, y))


def in_rectangle(p: RatioPoint, anchor: Anchor) -> bool:
    """ Whether p lies in the upper-left rectangle {kappa <= x, lam >= y},
    which is contained in UL(x, y) """
    x, y = anchor.as_point()
    return p.kappa <= x + REGION_TOL and p.lam >= y - REGION_TOL


# ============================================================= Scalar bounds

def search_cap(p: RatioPoint) -> int:
    """ A d for which some T_{2d} pair has p in its upper-left rectangle:
    ceil((pi/2) / (arcsin(sqrt(lam)) - arcsin(sqrt(kappa)))) + 1 """
    spread = math.asin(math.sqrt(p.lam)) - math.asin(math.sqrt(p.kappa))
    # the slack keeps exact multiples like pi/6 from rounding up
    return math.ceil((math.pi / 2) / spread - 1e-9) + 1


def upper_bound(p: RatioPoint) -> Tuple[int, BoundaryPair]:
    """ Returns the minimal d with p in UL(S_d) and the first admitting
    anchor of S_d in (delta, gamma) order.

    Raises:
        ConsistencyError: if no membership is found up to search_cap(p)
        ResourceError: if search_cap(p) exceeds MAX_SEARCH_D
    """
    cap = search_cap(p)
    if cap > MAX_SEARCH_D:
        raise ResourceError(f"{p} is too close to the diagonal: search cap"
                            f" {cap} exceeds {MAX_SEARCH_D}")
    for d in range(1, cap + 1):
        columns = boundary_arrays(d)
        mask = _ul_mask(p.kappa, p.lam, columns.s, columns.t)
        if mask.any():
            return d, boundary_pairs(d)[int(np.argmax(mask))]
    raise ConsistencyError(f"{p} is in no UL(S_d) for d <= {cap}")


def lower_bound(p: RatioPoint,
                upper: Optional[int] = None,
                one_query_floor: bool = False
                ) -> Tuple[int, Optional[BoundaryPair]]:
    """ Returns 1 + the maximal d <= upper + 2 with p in LR(S_d) together
    with the first witnessing anchor, or (1, None) without membership.

    Args:
        p: the ratio point
        upper: the upper bound of p, computed when not supplied
        one_query_floor: raise a lower bound of 1 to 2 when upper > 1. A
            point outside UL(S_1) has no one-query exact algorithm, since
            degree-2 representations only exist inside UL(S_1).
    """
    if upper is None:
        upper, _ = upper_bound(p)
    for d in range(upper + 2, 0, -1):
        columns = boundary_arrays(d)
        mask = _lr_mask(p.kappa, p.lam, columns.s, columns.t)
        if mask.any():
            return d + 1, boundary_pairs(d)[int(np.argmax(mask))]
    if one_query_floor and upper > 1:
        return 2, None
    return 1, None


def bounds(p: RatioPoint, one_query_floor: bool = False) -> BoundsResult:
    """ Combines upper_bound and lower_bound.

    Raises:
        ConsistencyError: if the lower bound exceeds the upper bound
    """
    upper, upper_anchor = upper_bound(p)
    lower, lower_anchor = lower_bound(p, upper, one_query_floor)
    if lower > upper:
        raise ConsistencyError(f"lower bound {lower} exceeds upper bound"
                               f" {upper} at {p}")
    return BoundsResult(upper, lower, upper_anchor, lower_anchor,
                        matched=upper == lower)


def bounds_instance(inst: WeightInstance) -> BoundsResult:
    """ bounds((k/n, l/n)), flagged as asymptotic because the lower bound
    only holds for sufficiently large n """
    return replace(bounds(RatioPoint(*inst.ratio)), asymptotic=True)


def asymptotic_envelope(inst: WeightInstance) -> float:
    """ sqrt((n - k) * l) / (l - k); upper bounds grow as O() of this """
    return math.sqrt((inst.n - inst.k) * inst.l) / (inst.l - inst.k)


# ================================================================ g_n^k

def g_query_complexity(kappa: float) -> int:
    """ Exact query complexity of g_n^k for k/n = kappa and large n.

    Returns 1 at kappa = 0, otherwise the d > 1 with
    (1 - cos((d-2)pi / (2(d-1)))) / 2 < kappa <= (1 - cos((d-1)pi / (2d))) / 2.
    """
    if not 0.0 <= kappa < 0.5:
        raise ArgumentError(f"kappa must lie in [0, 0.5), got {kappa}")
    if kappa == 0.0:
        return 1
    d = 2
    while True:
        low = 0.5 * (1.0 - math.cos((d - 2) * math.pi / (2 * (d - 1))))
        high = 0.5 * (1.0 - math.cos((d - 1) * math.pi / (2 * d)))
        if low < kappa <= high + REGION_TOL:
            return d
        d += 1


def g_instance(n: int, k: int) -> WeightInstance:
    """ f_n^{k,n/2}, which has the same exact query complexity as g_n^k """
    if n % 2:
        raise ArgumentError(f"g_n^k needs an even n, got {n}")
    if not 0 <= k < n // 2:
        raise ArgumentError(f"g_n^k needs 0 <= k < n/2, got k={k}")
    return WeightInstance(n, k, n // 2)


# ============================================================ Grid kernel

def bounds_grid(kappas: np.ndarray,
                lambdas: np.ndarray,
                one_query_floor: bool = False
                ) -> Tuple[np.ndarray, np.ndarray]:
    """
    Evaluates upper and lower bounds for many points at once. Gives the same
    values as bounds() point by point, since the same membership kernels are
    applied to the same S_d columns.

    Args:
        kappas, lambdas: float arrays of equal shape [n_points],
            kappas < lambdas element-wise
        one_query_floor: as in lower_bound

    Returns:
        upper bounds [n_points], lower bounds [n_points]
    """
    kappas = np.asarray(kappas, dtype=np.float64)
    lambdas = np.asarray(lambdas, dtype=np.float64)
    if kappas.shape != lambdas.shape or kappas.ndim != 1:
        raise ArgumentError("kappas and lambdas must be 1-d and equally long")
    if not np.all(kappas < lambdas):
        raise ArgumentError("every point must satisfy kappa < lambda")

    spread = np.arcsin(np.sqrt(lambdas)) - np.arcsin(np.sqrt(kappas))
    caps = np.ceil((np.pi / 2) / spread - 1e-9).astype(np.int64) + 1
    if len(caps) and caps.max() > MAX_SEARCH_D:
        raise ResourceError(f"search cap {int(caps.max())} exceeds"
                            f" {MAX_SEARCH_D}")

    upper = np.zeros(len(kappas), dtype=np.int64)
    pending = np.arange(len(kappas))
    d = 0
    while len(pending):
        d += 1
        if d > caps[pending].max():
            raise ConsistencyError(f"{len(pending)} points are in no UL(S_d)"
                                   f" up to their search cap")
        columns = boundary_arrays(d)
        hit = _ul_mask(kappas[pending, None], lambdas[pending, None],
                       columns.s[None, :], columns.t[None, :]).any(axis=1)
        upper[pending[hit]] = d
        pending = pending[~hit]

    lower = np.ones(len(kappas), dtype=np.int64)
    for d in range(1, int(upper.max(initial=0)) + 3):
        active = np.nonzero(upper + 2 >= d)[0]
        columns = boundary_arrays(d)
        hit = _lr_mask(kappas[active, None], lambdas[active, None],
                       columns.s[None, :], columns.t[None, :]).any(axis=1)
        lower[active[hit]] = d + 1
    if one_query_floor:
        lower[(upper > 1) & (lower < 2)] = 2

    violations = int((lower > upper).sum())
    if violations:
        raise ConsistencyError(f"lower bound exceeds upper bound at"
                               f" {violations} points")
    logger.debug("bounds_grid: %d points, max upper %d",
                 len(kappas), int(upper.max(initial=0)))
    return upper, lower
