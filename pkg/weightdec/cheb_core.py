""" Chebyshev polynomials of the first kind, their extrema, and the sets S_d
of boundary ratio pairs built from consecutive extrema of T_{2d} and
T_{2d-1}. Every pair in S_d is a weight ratio (s, t) that some d-query exact
algorithm separates.
"""

from dataclasses import dataclass
from functools import lru_cache
import math
from typing import List, NamedTuple, Tuple

import numpy as np  # type: ignore

from weightdec.const import Point
from weightdec.errors import ArgumentError


CACHE_SIZE = 64


@dataclass(frozen=True)
class BoundaryPair:
    """ An element (s, t) of S_d together with where it comes from.

    Attributes:
        s, t: consecutive extrema mapped to ratios, s = (1 - eta_gamma) / 2
        d: the query budget of the set the pair belongs to
        delta: 0 for T_{2d}, 1 for T_{2d-1}
        gamma: index of the first of the two extrema
    """
    s: float
    t: float
    d: int
    delta: int
    gamma: int

    @property
    def degree(self) -> int:
        """ D = 2d - delta, the degree of the Chebyshev polynomial """
        return 2 * self.d - self.delta

    @property
    def eta(self) -> float:
        """ The extremum cos(gamma * pi / D) that s is derived from """
        return 1.0 - 2.0 * self.s

    def as_point(self) -> Point:
        return self.s, self.t

    def __str__(self) -> str:
        return (f"({self.s:.9f}, {self.t:.9f}) d={self.d} D={self.degree}"
                f" gamma={self.gamma} delta={self.delta}")


class BoundaryArrays(NamedTuple):
    """ S_d in columnar form, in the same order as boundary_pairs(d) """
    s: np.ndarray
    t: np.ndarray
    delta: np.ndarray
    gamma: np.ndarray


def cheb_T(m: int, x: float) -> float:
    """ Evaluates T_m(x).

    Uses cos(m * arccos(x)) inside [-1, 1] and the hyperbolic form
    cosh(m * arccosh(|x|)) with the parity sign outside of it.
    """
    if m < 0:
        raise ArgumentError(f"Chebyshev degree must be non-negative, got {m}")
    if not math.isfinite(x):
        raise ArgumentError(f"T_m is undefined at {x}")
    if abs(x) <= 1.0:
        return math.cos(m * math.acos(x))
    value = math.cosh(m * math.acosh(abs(x)))
    if x < 0 and m % 2 == 1:
        return -value
    return value


def extremum(m: int, gamma: int) -> float:
    """ Returns eta_gamma = cos(gamma * pi / m), the gamma-th extremum of T_m
    counted from x = 1 """
    if m < 1:
        raise ArgumentError(f"extrema are defined for m >= 1, got {m}")
    if not 0 <= gamma <= m:
        raise ArgumentError(f"gamma must lie in [0, {m}], got {gamma}")
    return math.cos(gamma * math.pi / m)


def _gamma_range(d: int, delta: int) -> range:
    # The delta=1 pairs at gamma=0 and gamma=2d-2 are dominated by T_{2d}
    # pairs and left out of S_d
    if delta == 0:
        return range(0, 2 * d)
    return range(1, 2 * d - 2)


# Bounded: region searches visit every d up to their answer
@lru_cache(maxsize=CACHE_SIZE)
def boundary_arrays(d: int) -> BoundaryArrays:
    """ S_d as read-only numpy columns in (delta, gamma) order, for the
    vectorised region tests """
    if d < 1:
        raise ArgumentError(f"S_d is defined for d >= 1, got {d}")
    ranges = [(delta, _gamma_range(d, delta)) for delta in (0, 1)]
    gamma = np.concatenate([np.arange(r.start, r.stop, dtype=np.int64)
                            for _, r in ranges])
    delta = np.concatenate([np.full(len(r), value, dtype=np.int64)
                            for value, r in ranges])
    degree = 2 * d - delta
    columns = BoundaryArrays(
        s=0.5 * (1.0 - np.cos(gamma * np.pi / degree)),
        t=0.5 * (1.0 - np.cos((gamma + 1) * np.pi / degree)),
        delta=delta,
        gamma=gamma)
    for column in columns:
        column.setflags(write=False)
    return columns


@lru_cache(maxsize=CACHE_SIZE)
def _boundary_pairs(d: int) -> Tuple[BoundaryPair, ...]:
    columns = boundary_arrays(d)
    return tuple(BoundaryPair(float(s), float(t), d, int(delta), int(gamma))
                 for s, t, delta, gamma in zip(*columns))


def boundary_pairs(d: int) -> List[BoundaryPair]:
    """ Returns S_d ordered by (delta, gamma).

    |S_1| = 2 and |S_d| = 4d - 3 for d >= 2.
    """
    if d < 1:
        raise ArgumentError(f"S_d is defined for d >= 1, got {d}")
    return list(_boundary_pairs(d))
