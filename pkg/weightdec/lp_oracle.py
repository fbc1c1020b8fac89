""" Minimum-degree oracle for f_n^{k,l} by linear programming.

A univariate polynomial p in the weight j represents f_n^{k,l} when
p(k) = 0, p(l) = 1 and 0 <= p(j) <= 1 for every j in 0..n. Symmetrising a
multilinear representation gives such a p of no larger degree, so the least
feasible degree is deg(f), and ceil(deg(f) / 2) lower-bounds the exact query
complexity. Polynomials are written in the Chebyshev basis of
z_j = 1 - 2j/n, which keeps the constraint matrix well conditioned.
"""

from dataclasses import dataclass
import logging
import math
from typing import Optional

import numpy as np  # type: ignore
from numpy.polynomial import chebyshev  # type: ignore
from scipy.optimize import linprog  # type: ignore

from weightdec.const import WeightInstance
from weightdec.errors import ArgumentError, ResourceError


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PolyWitness:
    """
    Attributes:
        degree: the degree bound D the witness was found for
        coeffs: Chebyshev coefficients [D + 1] in the variable z = 1 - 2j/n
        residual: largest constraint violation after re-evaluation
    """
    degree: int
    coeffs: np.ndarray
    residual: float

    def values(self, n: int) -> np.ndarray:
        """ p(j) for j = 0..n """
        return chebyshev.chebval(_nodes(n), self.coeffs)


def _nodes(n: int) -> np.ndarray:
    return 1.0 - 2.0 * np.arange(n + 1) / n


def _residual(inst: WeightInstance, values: np.ndarray) -> float:
    """ The largest violation of p(k) = 0, p(l) = 1, 0 <= p <= 1 """
    return float(max(abs(values[inst.k]),
                     abs(values[inst.l] - 1.0),
                     np.max(-values),
                     np.max(values - 1.0)))


def _check_size(inst: WeightInstance, max_n: int) -> None:
    if inst.n > max_n:
        raise ResourceError(f"the dense LP is capped at n={max_n},"
                            f" got n={inst.n}")


def degree_feasible(inst: WeightInstance,
                    degree: int,
                    max_n: int = 300,
                    method: str = "highs",
                    tolerance: float = 1e-7,
                    recheck_tolerance: float = 1e-6
                    ) -> Optional[PolyWitness]:
    """
    Decides whether a polynomial of degree <= `degree` represents the
    instance. The solver works at `tolerance`; a witness it returns is
    re-evaluated and dropped if it violates a constraint by more than
    `recheck_tolerance`.

    Returns:
        a witness, or None if the LP is infeasible

    Raises:
        ArgumentError: if degree is negative or exceeds n
        ResourceError: if n exceeds max_n
    """
    if not 0 <= degree <= inst.n:
        raise ArgumentError(f"degree must lie in [0, {inst.n}], got {degree}")
    _check_size(inst, max_n)

    # [n + 1, degree + 1]
    basis = chebyshev.chebvander(_nodes(inst.n), degree)
    a_eq = basis[[inst.k, inst.l]]
    b_eq = np.array([0.0, 1.0])
    a_ub = np.vstack((basis, -basis))
    b_ub = np.concatenate((np.ones(inst.n + 1), np.zeros(inst.n + 1)))

    options = {}
    if method.startswith("highs"):
        options = {"primal_feasibility_tolerance": tolerance,
                   "dual_feasibility_tolerance": tolerance}
    solution = linprog(np.zeros(degree + 1), A_ub=a_ub, b_ub=b_ub,
                       A_eq=a_eq, b_eq=b_eq, bounds=(None, None),
                       method=method, options=options)
    if solution.status == 2:
        return None
    if not solution.success:
        logger.warning("%s, degree %d: solver stopped with status %d (%s)",
                       inst, degree, solution.status, solution.message)
        return None

    coeffs = np.asarray(solution.x, dtype=np.float64)
    residual = _residual(inst, basis @ coeffs)
    if residual > recheck_tolerance:
        logger.warning("%s, degree %d: witness rejected, residual %.3e",
                       inst, degree, residual)
        return None
    return PolyWitness(degree, coeffs, residual)


def min_degree(inst: WeightInstance,
               max_degree: Optional[int] = None,
               **lp_kwargs) -> Optional[int]:
    """
    Scans D = 1, 2, .. for the first feasible degree. Feasibility is
    monotone in D, so the first hit is the minimum. D = n is feasible by
    construction (the Lagrange polynomial that is 1 at l and 0 at every
    other weight), so n is returned when the solver certifies no smaller D.

    Args:
        inst: the instance
        max_degree: stop scanning after this degree and return None
        lp_kwargs: passed to degree_feasible

    Returns:
        deg(f_n^{k,l}), or None if it exceeds max_degree
    """
    last = inst.n if max_degree is None else min(max_degree, inst.n)
    for degree in range(1, min(last, inst.n - 1) + 1):
        if degree_feasible(inst, degree, **lp_kwargs) is not None:
            logger.debug("%s: minimum degree %d", inst, degree)
            return degree
    if last < inst.n:
        return None
    _check_size(inst, lp_kwargs.get("max_n", 300))
    logger.debug("%s: minimum degree is n", inst)
    return inst.n


def qe_degree_lower(inst: WeightInstance, **lp_kwargs) -> int:
    """ ceil(deg(f) / 2), the polynomial-method lower bound on Q_E(f) """
    if "max_degree" in lp_kwargs:
        raise ArgumentError("qe_degree_lower needs the full degree scan")
    degree = min_degree(inst, **lp_kwargs)
    return math.ceil(degree / 2)
