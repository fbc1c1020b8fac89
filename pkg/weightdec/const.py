""" Contains tolerances, type aliases and the instance type shared by
all weightdec modules """

from dataclasses import dataclass
from typing import Tuple

from weightdec.errors import ArgumentError


# Comparison slack for Chebyshev extrema and region inequalities
REGION_TOL = 1e-12

# Padding identities and operator unitarity are checked to this precision
PADDING_TOL = 1e-10

# A probability within this distance of 1 counts as certainty
PROBABILITY_TOL = 1e-9

# Region searches whose cap exceeds this d are refused; the work grows as d^2
MAX_SEARCH_D = 20000

Point = Tuple[float, float]
Bits = Tuple[int, ...]


@dataclass(frozen=True)
class WeightInstance:
    """ Names the weight decision function f_n^{k,l}: output 0 on inputs of
    Hamming weight k, 1 on inputs of weight l, undefined otherwise. """
    n: int
    k: int
    l: int  # noqa: E741

    def __post_init__(self):
        if self.n < 1:
            raise ArgumentError(f"n must be positive, got {self.n}")
        if not 0 <= self.k < self.l <= self.n:
            raise ArgumentError(
                f"expected 0 <= k < l <= n, got n={self.n} k={self.k}"
                f" l={self.l}")

    @property
    def ratio(self) -> Point:
        """ (k/n, l/n) """
        return self.k / self.n, self.l / self.n

    def complement(self) -> "WeightInstance":
        """ f_n^{n-l,n-k}, which has the same query complexity """
        return WeightInstance(self.n, self.n - self.l, self.n - self.k)

    def value(self, weight: int) -> int:
        """ f_n^{k,l} on an input of the given weight """
        if weight == self.k:
            return 0
        if weight == self.l:
            return 1
        raise ArgumentError(f"weight {weight} is outside the promise"
                            f" {{{self.k}, {self.l}}}")

    def __str__(self) -> str:
        return f"f_{self.n}^{{{self.k},{self.l}}}"
