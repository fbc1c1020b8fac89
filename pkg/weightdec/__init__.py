""" Bounds on the exact quantum query complexity of weight decision
functions f_n^{k,l}, and the padded exact algorithm that meets the upper
bound.

  Usage example:

  from weightdec import WeightInstance, bounds_instance, verify_exactness

  inst = WeightInstance(10, 3, 7)
  bounds_instance(inst).upper              # 3
  verify_exactness(inst).min_success       # 1.0
"""

from weightdec.cheb_core import (BoundaryPair, boundary_pairs, cheb_T,
                                 extremum)
from weightdec.config import Config, load_config
from weightdec.const import WeightInstance
from weightdec.errors import (ArgumentError, ConsistencyError, RegionError,
                              ResourceError, WeightDecError)
from weightdec.lp_oracle import degree_feasible, min_degree, qe_degree_lower
from weightdec.quantum_sim import (DecisionReport, Outcome, PaddingParams,
                                   padding_params, run_full, run_symmetric,
                                   verify_exactness)
from weightdec.regions import (BoundsResult, RatioPoint, bounds,
                               bounds_instance, g_query_complexity, in_LR,
                               in_UL, lower_bound, search_cap, upper_bound)

__all__ = [
    "ArgumentError", "BoundaryPair", "BoundsResult", "Config",
    "ConsistencyError", "DecisionReport", "Outcome", "PaddingParams",
    "RatioPoint", "RegionError", "ResourceError", "WeightDecError",
    "WeightInstance", "boundary_pairs", "bounds", "bounds_instance",
    "cheb_T", "degree_feasible", "extremum", "g_query_complexity", "in_LR",
    "in_UL", "load_config", "lower_bound", "min_degree", "padding_params",
    "qe_degree_lower", "run_full", "run_symmetric", "search_cap",
    "upper_bound", "verify_exactness",
]
