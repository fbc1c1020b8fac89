""" Exact simulation of the padded weight decision algorithm.

The algorithm prepares |Psi_0> = (sum_i |i> + a|L> - b|R>) / sqrt(N') on the
"small" space {|1>..|n>, |L>, |R>}, applies G(a,b) = W(a,b) O_x d - 1 times
and then either measures (delta = 1, possibly spending one classical query)
or applies R(a,b) = U(a,b) O_x and measures in the "big" space
{|k>, |L>, |R>, |i,j>, |k,L>, |k,R>, |L,R>} (delta = 0).

Two simulators are provided: run_symmetric works with the closed-form angle
of the two-dimensional invariant subspace, run_full multiplies dense torch
operators. verify_exactness drives either of them over the promised inputs.
"""

from dataclasses import dataclass, field
import enum
from functools import lru_cache
import logging
import math
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import torch
from tqdm import tqdm  # type: ignore

from weightdec.cheb_core import BoundaryPair
from weightdec.const import Bits, PADDING_TOL, PROBABILITY_TOL, WeightInstance
from weightdec.errors import (ArgumentError, ConsistencyError, RegionError,
                              ResourceError)
from weightdec.regions import RatioPoint, in_UL, upper_bound
from weightdec.utils import promised_inputs


DTYPE = torch.complex128
PAD_L = "L"
PAD_R = "R"

Label = Tuple[Union[int, str], ...]

logger = logging.getLogger(__name__)


class Space(enum.Enum):
    SMALL = "small"  # n + 2
    BIG = "big"      # C(n,2) + 3n + 3


class Outcome(enum.Enum):
    """ Measurement outcomes grouped the way the decision rule reads them """
    ZERO_INDEX = "zero_index"
    ONE_INDEX = "one_index"
    PAD_L = "pad_l"
    PAD_R = "pad_r"
    PAIR = "pair"
    SINGLE = "single"


INDEX_OUTCOMES = (Outcome.ZERO_INDEX, Outcome.ONE_INDEX)
SMALL_OUTCOMES = (Outcome.ZERO_INDEX, Outcome.PAD_L,
                  Outcome.ONE_INDEX, Outcome.PAD_R)
BIG_OUTCOMES = (Outcome.SINGLE, Outcome.PAIR)


@dataclass(frozen=True)
class PaddingParams:
    """
    Attributes:
        a_sq: effective number of padded zeros, a^2
        b_sq: effective number of padded ones, b^2
        anchor: the pair of S_d the instance is padded towards
        n_eff: N' = n + a^2 + b^2
    """
    a_sq: float
    b_sq: float
    anchor: BoundaryPair
    n_eff: float

    @property
    def a(self) -> float:
        return math.sqrt(self.a_sq)

    @property
    def b(self) -> float:
        return math.sqrt(self.b_sq)

    @property
    def n(self) -> int:
        """ The unpadded input length """
        return round(self.n_eff - self.a_sq - self.b_sq)


@dataclass
class FullState:
    """ A normalised amplitude vector over the labeled basis of a space """
    space: Space
    n: int
    amplitudes: torch.Tensor

    def __post_init__(self):
        expected = dimension(self.space, self.n)
        if self.amplitudes.shape != (expected,):
            raise ArgumentError(f"{self.space.value} space of n={self.n} has"
                                f" dimension {expected}, got"
                                f" {tuple(self.amplitudes.shape)}")
        norm = self.norm()
        if abs(norm - 1.0) > PADDING_TOL:
            raise ConsistencyError(f"state norm drifted to {norm!r}")

    @property
    def labels(self) -> List[Label]:
        return labels(self.space, self.n)

    def norm(self) -> float:
        """ Sum of squared magnitudes """
        return float((self.amplitudes.abs() ** 2).sum())

    def probabilities(self) -> Dict[Label, float]:
        probs = (self.amplitudes.abs() ** 2).tolist()
        return dict(zip(self.labels, probs))


@dataclass
class DecisionReport:  # pylint: disable=too-many-instance-attributes
    """
    Attributes:
        weight: Hamming weight of the simulated input
        class_probs: probability of each outcome class
        output: the most likely output bit
        success_prob: P(output = f(x)) on promised weights, otherwise the
            probability of the reported output
        queries_used: oracle calls in the worst case over possible outcomes
        x: the concrete input for full simulations, None for symmetric ones
    """
    weight: int
    class_probs: Dict[Outcome, float]
    output: int
    success_prob: float
    queries_used: int
    x: Optional[Bits] = None

    def to_dict(self) -> dict:
        return {
            "weight": self.weight,
            "x": list(self.x) if self.x is not None else None,
            "class_probs": {cls.value: prob
                            for cls, prob in self.class_probs.items()},
            "output": self.output,
            "success_prob": self.success_prob,
            "queries_used": self.queries_used,
        }


@dataclass
class VerificationSummary:  # pylint: disable=too-many-instance-attributes
    """ Outcome of running the algorithm on every promised input """
    instance: WeightInstance
    anchor: BoundaryPair
    params: PaddingParams
    mode: str
    d: int
    min_success: float
    queries_used: int
    reports: List[DecisionReport] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return self.min_success >= 1.0 - PROBABILITY_TOL


# ===================================================== Bases and dimensions

def dimension(space: Space, n: int) -> int:
    if space is Space.SMALL:
        return n + 2
    return n * (n - 1) // 2 + 3 * n + 3


@lru_cache(maxsize=None)
def _labels(space: Space, n: int) -> Tuple[Label, ...]:
    small: List[Label] = [(i,) for i in range(1, n + 1)]
    small += [(PAD_L,), (PAD_R,)]
    if space is Space.SMALL:
        return tuple(small)
    names = [label[0] for label in small]
    big = list(small)
    big += [(names[i], names[j])
            for i in range(n) for j in range(i + 1, n)]
    big += [(i, PAD_L) for i in range(1, n + 1)]
    big += [(i, PAD_R) for i in range(1, n + 1)]
    big.append((PAD_L, PAD_R))
    return tuple(big)


def labels(space: Space, n: int) -> List[Label]:
    """ The basis labels of a space in the order amplitudes are stored:
    (i,) for indices, (L,), (R,), then for the big space (i, j) with i < j,
    (k, L), (k, R) and (L, R) """
    return list(_labels(space, n))


@lru_cache(maxsize=None)
def _big_index(n: int) -> Dict[Label, int]:
    return {label: i for i, label in enumerate(_labels(Space.BIG, n))}


def _small_name(n: int, position: int) -> Union[int, str]:
    if position < n:
        return position + 1
    return PAD_L if position == n else PAD_R


# ====================================================== Padding and operators

def padding_params(inst: WeightInstance,
                   anchor: BoundaryPair) -> PaddingParams:
    """ Computes b^2 = (ls - kt) / (t - s) and a^2 = (l - k) / (t - s) - b^2 - n,
    which move k and l onto s * N' and t * N'.

    Raises:
        RegionError: if (k/n, l/n) is outside UL(anchor), i.e. a^2 or b^2
            would be negative
    """
    s, t = anchor.s, anchor.t
    width = t - s
    n_eff = (inst.l - inst.k) / width
    b_sq = (inst.l * s - inst.k * t) / width
    a_sq = n_eff - b_sq - inst.n
    slack = PADDING_TOL * max(1.0, n_eff)
    if a_sq < -slack or b_sq < -slack:
        raise RegionError(f"{inst} is outside UL({s:.9f}, {t:.9f}):"
                          f" a^2={a_sq:.3e}, b^2={b_sq:.3e}")
    a_sq, b_sq = max(a_sq, 0.0), max(b_sq, 0.0)
    return PaddingParams(a_sq, b_sq, anchor, inst.n + a_sq + b_sq)


def _pad_coefficients(params: PaddingParams, n: int) -> List[float]:
    # The R pad stands for ones, so it carries -b wherever |Psi_0> does
    return [1.0] * n + [params.a, -params.b]


def initial_state(params: PaddingParams,
                  device: Union[str, torch.device] = "cpu") -> FullState:
    """ |Psi_0> = (sum_i |i> + a|L> - b|R>) / sqrt(N') """
    n = params.n
    coefficients = torch.tensor(_pad_coefficients(params, n), dtype=DTYPE,
                                device=device)
    return FullState(Space.SMALL, n, coefficients / math.sqrt(params.n_eff))


def build_oracle(x: Sequence[int],
                 device: Union[str, torch.device] = "cpu") -> torch.Tensor:
    """ The phase oracle |i> -> (-1)^{x_i}|i>, extended with |L> -> |L> and
    |R> -> -|R>. The pads hold known constants, so touching them is no
    query. """
    signs = [-1.0 if bit else 1.0 for bit in x] + [1.0, -1.0]
    return torch.diag(torch.tensor(signs, dtype=DTYPE, device=device))


def build_W(n: int, params: PaddingParams,  # pylint: disable=invalid-name
            device: Union[str, torch.device] = "cpu") -> torch.Tensor:
    """ W(a,b) = 2|u><u| - I with |u> = |Psi_0>; reduces to the Grover
    diffusion on [n] when a = b = 0 """
    if n != params.n:
        raise ArgumentError(f"params were computed for n={params.n}, not {n}")
    u = initial_state(params, device).amplitudes
    eye = torch.eye(n + 2, dtype=DTYPE, device=device)
    return 2 * torch.outer(u, u.conj()) - eye


def build_U(n: int, params: PaddingParams,  # pylint: disable=invalid-name
            device: Union[str, torch.device] = "cpu") -> torch.Tensor:
    """
    The isometry U(a,b) from the small space into the big space. Column p is

        c_p / N' * sum_q c_q |q>  +  1 / sqrt(N') * sum_{q != p} c_q [p, q]

    where c = (1, .., 1, a, -b) and [p, q] is |p,q> for p before q and
    -|q,p> otherwise. No unitary completion is built.

    Returns:
        tensor of shape [C(n,2) + 3n + 3, n + 2]
    """
    if n != params.n:
        raise ArgumentError(f"params were computed for n={params.n}, not {n}")
    c = _pad_coefficients(params, n)
    index = _big_index(n)
    scale = 1.0 / math.sqrt(params.n_eff)
    columns = torch.zeros(dimension(Space.BIG, n), n + 2, dtype=DTYPE,
                          device=device)
    for p in range(n + 2):
        for q in range(n + 2):
            columns[q, p] = c[p] * c[q] / params.n_eff
            if q == p:
                continue
            first, second = (p, q) if p < q else (q, p)
            row = index[(_small_name(n, first), _small_name(n, second))]
            sign = 1.0 if p < q else -1.0
            columns[row, p] = sign * c[q] * scale
    return columns


# ================================================================ Evolution

def alpha_basis(params: PaddingParams, x: Sequence[int],
                device: Union[str, torch.device] = "cpu"
                ) -> Tuple[torch.Tensor, torch.Tensor]:
    """
    Returns |alpha_perp> (zeros and the L pad) and |alpha> (ones and the
    R pad, with -b). A vector is all zeros when its support is empty.
    """
    n = params.n
    c = _pad_coefficients(params, n)
    perp = torch.zeros(n + 2, dtype=DTYPE, device=device)
    alpha = torch.zeros(n + 2, dtype=DTYPE, device=device)
    for i, bit in enumerate(x):
        (alpha if bit else perp)[i] = 1.0
    perp[n] = c[n]
    alpha[n + 1] = c[n + 1]
    for vector in (perp, alpha):
        norm = torch.linalg.norm(vector)
        if norm > 0:
            vector /= norm
    return perp, alpha


def grover_states(params: PaddingParams, x: Sequence[int],
                  steps: Optional[int] = None,
                  device: Union[str, torch.device] = "cpu"
                  ) -> Iterator[FullState]:
    """ Yields |Psi_0> and the state after each of `steps` applications of
    G(a,b) (d - 1 by default) """
    n = params.n
    if steps is None:
        steps = params.anchor.d - 1
    grover = build_W(n, params, device) @ build_oracle(x, device)
    state = initial_state(params, device)
    yield state
    for _ in range(steps):
        state = FullState(Space.SMALL, n, grover @ state.amplitudes)
        yield state


def _check_input(inst: WeightInstance, x: Sequence[int]) -> Bits:
    bits = tuple(int(bit) for bit in x)
    if len(bits) != inst.n or any(bit not in (0, 1) for bit in bits):
        raise ArgumentError(f"x must be a bit vector of length {inst.n}")
    return bits


# ================================================================ Decisions

def decide(cls: Outcome, gamma_parity: int, delta: int,
           queried_bit: Optional[int] = None) -> int:
    """
    The decision table of the algorithm for odd gamma: under delta = 1 the
    L pad decides 1, the R pad 0 and an index m decides 1 - x_m (x_m costs
    the last query); under delta = 0 single labels decide 1 and pair labels
    0. Even gamma swaps every output.

    Raises:
        ArgumentError: if the class cannot occur under delta, or queried_bit
            is missing for an index outcome
    """
    if delta == 1:
        if cls in INDEX_OUTCOMES:
            if queried_bit not in (0, 1):
                raise ArgumentError("an index outcome needs the queried bit")
            odd_output = 1 - queried_bit
        elif cls is Outcome.PAD_L:
            odd_output = 1
        elif cls is Outcome.PAD_R:
            odd_output = 0
        else:
            raise ArgumentError(f"{cls.value} cannot be measured"
                                f" when delta=1")
    elif delta == 0:
        if cls is Outcome.SINGLE:
            odd_output = 1
        elif cls is Outcome.PAIR:
            odd_output = 0
        else:
            raise ArgumentError(f"{cls.value} cannot be measured"
                                f" when delta=0")
    else:
        raise ArgumentError(f"delta must be 0 or 1, got {delta}")
    return odd_output if gamma_parity % 2 else 1 - odd_output


def _report(inst: WeightInstance,
            params: PaddingParams,
            weight: int,
            class_probs: Dict[Outcome, float],
            x: Optional[Bits] = None) -> DecisionReport:
    anchor = params.anchor
    output_probs = [0.0, 0.0]
    for cls, prob in class_probs.items():
        queried_bit = None
        if cls in INDEX_OUTCOMES:
            queried_bit = int(cls is Outcome.ONE_INDEX)
        output_probs[decide(cls, anchor.gamma % 2, anchor.delta,
                            queried_bit)] += prob

    total = sum(class_probs.values())
    if abs(total - 1.0) > PROBABILITY_TOL:
        raise ConsistencyError(f"outcome probabilities sum to {total!r}")

    output = int(output_probs[1] > output_probs[0])
    if weight in (inst.k, inst.l):
        expected = inst.value(weight)
        success = output_probs[expected]
    else:
        success = output_probs[output]

    queries = anchor.d
    if anchor.delta == 1:
        index_mass = sum(class_probs[cls] for cls in INDEX_OUTCOMES)
        queries = anchor.d - 1 + int(index_mass > PROBABILITY_TOL)
    return DecisionReport(weight, class_probs, output, success, queries, x)


def run_symmetric(inst: WeightInstance,
                  params: PaddingParams,
                  w: int) -> DecisionReport:
    """
    Closed-form simulation for an input of weight w. With
    theta = arcsin(sqrt((w + b^2) / N')), the final angle is (2d - 1)theta
    for delta = 1 and 2d * theta for delta = 0; cos^2 of it is the mass of
    the zero side (|alpha_perp> or the single labels), sin^2 the mass of
    the one side.
    """
    if not 0 <= w <= inst.n:
        raise ArgumentError(f"weight must lie in [0, {inst.n}], got {w}")
    anchor = params.anchor
    ratio = min(max((w + params.b_sq) / params.n_eff, 0.0), 1.0)
    theta = math.asin(math.sqrt(ratio))
    if anchor.delta == 1:
        final = (2 * anchor.d - 1) * theta
    else:
        final = 2 * anchor.d * theta
    zero_side = math.cos(final) ** 2
    one_side = math.sin(final) ** 2

    if anchor.delta == 0:
        class_probs = {Outcome.SINGLE: zero_side, Outcome.PAIR: one_side}
    else:
        zeros = inst.n - w
        ones = w
        zero_total = zeros + params.a_sq
        one_total = ones + params.b_sq
        class_probs = {
            Outcome.ZERO_INDEX:
                zero_side * zeros / zero_total if zero_total else 0.0,
            Outcome.PAD_L:
                zero_side * params.a_sq / zero_total if zero_total else 0.0,
            Outcome.ONE_INDEX:
                one_side * ones / one_total if one_total else 0.0,
            Outcome.PAD_R:
                one_side * params.b_sq / one_total if one_total else 0.0,
        }
    return _report(inst, params, w, class_probs)


def run_full(inst: WeightInstance,
             params: PaddingParams,
             x: Sequence[int],
             max_n: int = 12,
             device: Union[str, torch.device] = "cpu") -> DecisionReport:
    """
    Dense simulation on a concrete input: d - 1 Grover iterations on the
    small space, then either a measurement there (delta = 1) or one more
    oracle call followed by U(a,b) and a measurement in the big space.

    Raises:
        ResourceError: if n exceeds max_n
    """
    if inst.n > max_n:
        raise ResourceError(f"full simulation is capped at n={max_n},"
                            f" got n={inst.n}")
    bits = _check_input(inst, x)
    anchor = params.anchor
    n = inst.n

    *_, state = grover_states(params, bits, device=device)
    if anchor.delta == 0:
        rotated = build_U(n, params, device) @ (build_oracle(bits, device)
                                                @ state.amplitudes)
        state = FullState(Space.BIG, n, rotated)

    class_probs = {cls: 0.0 for cls in
                   (BIG_OUTCOMES if anchor.delta == 0 else SMALL_OUTCOMES)}
    for label, prob in state.probabilities().items():
        if anchor.delta == 0:
            cls = Outcome.SINGLE if len(label) == 1 else Outcome.PAIR
        elif label == (PAD_L,):
            cls = Outcome.PAD_L
        elif label == (PAD_R,):
            cls = Outcome.PAD_R
        elif bits[label[0] - 1]:
            cls = Outcome.ONE_INDEX
        else:
            cls = Outcome.ZERO_INDEX
        class_probs[cls] += prob
    return _report(inst, params, sum(bits), class_probs, bits)


def explore_weights(inst: WeightInstance,
                    params: PaddingParams) -> List[DecisionReport]:
    """ run_symmetric for every weight 0..n, promised or not """
    return [run_symmetric(inst, params, w) for w in range(inst.n + 1)]


@torch.no_grad()
def verify_exactness(inst: WeightInstance,
                     mode: str = "symmetric",
                     anchor: Optional[BoundaryPair] = None,
                     max_n: int = 12,
                     device: Union[str, torch.device] = "cpu",
                     progress: bool = False) -> VerificationSummary:
    """
    Pads the instance towards an anchor (the upper_bound anchor unless one
    is given) and runs the algorithm on the promised inputs: every x with
    |x| in {k, l} in "full" mode, the two weights in "symmetric" mode.

    Raises:
        RegionError: if the given anchor does not admit the instance
        ResourceError: in full mode, if n exceeds max_n
    """
    if mode not in ("full", "symmetric"):
        raise ArgumentError(f"unknown mode {mode!r}")
    if mode == "full" and inst.n > max_n:
        raise ResourceError(f"full simulation is capped at n={max_n},"
                            f" got n={inst.n}")
    point = RatioPoint(*inst.ratio)
    if anchor is None:
        _, anchor = upper_bound(point)
    elif not in_UL(point, anchor):
        raise RegionError(f"{inst} is outside UL of {anchor}")
    params = padding_params(inst, anchor)
    logger.info("%s: anchor %s, a^2=%.6f b^2=%.6f", inst, anchor,
                params.a_sq, params.b_sq)

    if mode == "full":
        inputs = promised_inputs(inst.n, (inst.k, inst.l))
        reports = [run_full(inst, params, x, max_n, device)
                   for x in tqdm(inputs, unit="inputs", ncols=0,
                                 disable=not progress)]
    else:
        reports = [run_symmetric(inst, params, w) for w in (inst.k, inst.l)]

    return VerificationSummary(
        instance=inst, anchor=anchor, params=params, mode=mode, d=anchor.d,
        min_success=min(report.success_prob for report in reports),
        queries_used=max(report.queries_used for report in reports),
        reports=reports)
