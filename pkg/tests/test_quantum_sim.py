import math

from hypothesis import given, seed, settings
from hypothesis import strategies as st
import pytest
import torch

from weightdec.cheb_core import boundary_pairs
from weightdec.const import PROBABILITY_TOL, WeightInstance
from weightdec.errors import ArgumentError, ConsistencyError, ResourceError
from weightdec.quantum_sim import (DTYPE, BIG_OUTCOMES, INDEX_OUTCOMES,
                                   FullState, Outcome, PaddingParams, Space,
                                   alpha_basis, build_oracle, build_U,
                                   build_W, decide, dimension,
                                   explore_weights, grover_states,
                                   initial_state, labels, padding_params,
                                   run_full, run_symmetric, verify_exactness)
from weightdec.regions import RatioPoint, in_UL, upper_bound
from weightdec.utils import inputs_of_weight


TOL = 1e-10


def params_for(n, a_sq, b_sq, anchor=None):
    anchor = anchor or boundary_pairs(2)[1]
    return PaddingParams(a_sq, b_sq, anchor, n + a_sq + b_sq)


def eye(size):
    return torch.eye(size, dtype=DTYPE)


def budgeted_queries(report, anchor):
    """ d queries, except that under delta = 1 the final classical query is
    only spent when an index outcome can be measured """
    if anchor.delta == 0:
        return anchor.d
    index_mass = sum(report.class_probs[cls] for cls in INDEX_OUTCOMES)
    return anchor.d - 1 + int(index_mass > PROBABILITY_TOL)


def closest_instance(anchor, max_n=10):
    """ The instance with n <= max_n in UL(anchor) nearest to it """
    candidates = [WeightInstance(n, k, l)
                  for n in range(1, max_n + 1)
                  for k in range(n) for l in range(k + 1, n + 1)]
    candidates = [inst for inst in candidates
                  if in_UL(RatioPoint(*inst.ratio), anchor)]
    return min(candidates,
               key=lambda inst: (math.dist(inst.ratio, anchor.as_point()),
                                 inst.n))


# =================================================================== Padding

def test_padding_examples():
    anchor = boundary_pairs(2)[0]
    params = padding_params(WeightInstance(4, 0, 1), anchor)
    assert params.a_sq == pytest.approx(2 * math.sqrt(2))
    assert params.b_sq == pytest.approx(0.0, abs=TOL)
    assert params.n_eff == pytest.approx(4 + 2 * math.sqrt(2))
    assert math.asin(math.sqrt(1 / params.n_eff)) == pytest.approx(
        math.pi / 8)

    params = padding_params(WeightInstance(2, 1, 2), boundary_pairs(1)[1])
    assert (params.a_sq, params.b_sq) == pytest.approx((0.0, 0.0), abs=TOL)
    assert params.n_eff == pytest.approx(2.0)

    params = padding_params(WeightInstance(10, 3, 7), boundary_pairs(3)[2])
    assert (params.a_sq, params.b_sq, params.n_eff) == pytest.approx(
        (5.0, 1.0, 16.0))
    assert params.n == 10


def test_padding_at_anchor_is_empty():
    params = padding_params(WeightInstance(4, 1, 3), boundary_pairs(2)[4])
    assert params.anchor.as_point() == pytest.approx((0.25, 0.75))
    assert (params.a_sq, params.b_sq) == pytest.approx((0.0, 0.0), abs=TOL)


# ================================================================= Operators

def test_oracle():
    assert torch.equal(build_oracle([0, 0, 0]).diagonal().real,
                       torch.tensor([1.0, 1.0, 1.0, 1.0, -1.0],
                                    dtype=torch.float64))
    oracle = build_oracle([1, 0, 0])
    assert oracle[0, 0].real == -1.0
    assert torch.allclose(oracle @ oracle, eye(5))


@seed(0)
@settings(max_examples=100, deadline=None)
@given(n=st.integers(min_value=1, max_value=6),
       a_sq=st.floats(min_value=0.0, max_value=20.0),
       b_sq=st.floats(min_value=0.0, max_value=20.0))
def test_w_is_unitary_involution(n, a_sq, b_sq):
    w_op = build_W(n, params_for(n, a_sq, b_sq))
    assert torch.allclose(w_op.conj().T @ w_op, eye(n + 2), atol=TOL)
    assert torch.allclose(w_op @ w_op, eye(n + 2), atol=TOL)


@seed(0)
@settings(max_examples=100, deadline=None)
@given(n=st.integers(min_value=1, max_value=6),
       a_sq=st.floats(min_value=0.0, max_value=20.0),
       b_sq=st.floats(min_value=0.0, max_value=20.0))
def test_u_has_orthonormal_columns(n, a_sq, b_sq):
    u_op = build_U(n, params_for(n, a_sq, b_sq))
    assert u_op.shape == (dimension(Space.BIG, n), n + 2)
    assert torch.allclose(u_op.conj().T @ u_op, eye(n + 2), atol=TOL)


def test_w_without_padding_is_grover_diffusion():
    n = 5
    w_op = build_W(n, params_for(n, 0.0, 0.0))
    diffusion = 2.0 / n * torch.ones(n, n, dtype=DTYPE) - eye(n)
    assert torch.allclose(w_op[:n, :n], diffusion, atol=TOL)
    assert torch.allclose(w_op[n:, n:], -eye(2), atol=TOL)


def test_operator_size_mismatch():
    with pytest.raises(ArgumentError):
        build_W(4, params_for(3, 1.0, 1.0))


def test_labels_and_dimensions():
    for n in range(1, 8):
        assert len(labels(Space.SMALL, n)) == dimension(Space.SMALL, n)
        big = labels(Space.BIG, n)
        assert len(big) == n * (n - 1) // 2 + 3 * n + 3
        assert len(set(big)) == len(big)
    assert labels(Space.SMALL, 2) == [(1,), (2,), ("L",), ("R",)]


def test_full_state_checks():
    with pytest.raises(ArgumentError):
        FullState(Space.SMALL, 3, torch.ones(4, dtype=DTYPE) / 2)
    with pytest.raises(ConsistencyError):
        FullState(Space.SMALL, 2, torch.ones(4, dtype=DTYPE))
    state = initial_state(params_for(3, 1.0, 0.0))
    assert state.norm() == pytest.approx(1.0)
    assert sum(state.probabilities().values()) == pytest.approx(1.0)


@pytest.mark.parametrize("n, a_sq, b_sq", [(4, 2.0, 0.5), (6, 0.0, 3.0),
                                           (3, 1.5, 0.0)])
def test_grover_iterates_stay_in_alpha_plane(n, a_sq, b_sq):
    params = params_for(n, a_sq, b_sq, boundary_pairs(4)[3])
    for weight in range(n + 1):
        x = inputs_of_weight(n, weight)[0]
        perp, alpha = alpha_basis(params, x)
        for state in grover_states(params, x, steps=5):
            amplitudes = state.amplitudes
            projected = (perp * (perp.conj() @ amplitudes)
                         + alpha * (alpha.conj() @ amplitudes))
            assert torch.allclose(projected, amplitudes, atol=TOL)


# ================================================================= Decisions

def test_decision_table():
    assert decide(Outcome.PAD_L, 1, 1) == 1
    assert decide(Outcome.PAD_R, 1, 1) == 0
    assert decide(Outcome.ONE_INDEX, 1, 1, queried_bit=1) == 0
    assert decide(Outcome.ZERO_INDEX, 1, 1, queried_bit=0) == 1
    assert decide(Outcome.SINGLE, 1, 0) == 1
    assert decide(Outcome.PAIR, 1, 0) == 0
    assert decide(Outcome.SINGLE, 0, 0) == 0
    assert decide(Outcome.PAD_L, 0, 1) == 0
    assert decide(Outcome.ONE_INDEX, 0, 1, queried_bit=1) == 1


def test_decision_table_errors():
    with pytest.raises(ArgumentError):
        decide(Outcome.ONE_INDEX, 1, 1)
    with pytest.raises(ArgumentError):
        decide(Outcome.PAIR, 1, 1)
    with pytest.raises(ArgumentError):
        decide(Outcome.PAD_L, 1, 0)


# ================================================================ Simulators

def test_symmetric_examples():
    inst = WeightInstance(4, 0, 1)
    params = padding_params(inst, boundary_pairs(2)[0])
    report = run_symmetric(inst, params, 0)
    assert (report.output, report.success_prob) == pytest.approx((0, 1.0))
    report = run_symmetric(inst, params, 1)
    assert (report.output, report.success_prob) == pytest.approx((1, 1.0))

    inst = WeightInstance(2, 1, 2)
    params = padding_params(inst, boundary_pairs(1)[1])
    report = run_symmetric(inst, params, 1)
    assert report.class_probs[Outcome.PAIR] == pytest.approx(1.0)
    assert report.output == 0

    inst = WeightInstance(10, 3, 7)
    params = padding_params(inst, boundary_pairs(3)[2])
    report = run_symmetric(inst, params, 3)
    assert report.class_probs[Outcome.SINGLE] == pytest.approx(1.0)
    assert report.output == 0
    report = run_symmetric(inst, params, 7)
    assert report.class_probs[Outcome.PAIR] == pytest.approx(1.0)
    assert report.output == 1


def test_symmetric_rejects_bad_weight():
    inst = WeightInstance(4, 0, 1)
    params = padding_params(inst, boundary_pairs(2)[0])
    with pytest.raises(ArgumentError):
        run_symmetric(inst, params, 5)


def test_full_rejects_large_n():
    inst = WeightInstance(20, 0, 10)
    _, anchor = upper_bound(RatioPoint(*inst.ratio))
    params = padding_params(inst, anchor)
    with pytest.raises(ResourceError):
        run_full(inst, params, [0] * 20, max_n=12)
    with pytest.raises(ResourceError):
        verify_exactness(inst, mode="full", max_n=12)


def test_simulators_agree():
    for n in range(1, 8):
        for k in range(n):
            for l in range(k + 1, n + 1):
                inst = WeightInstance(n, k, l)
                _, anchor = upper_bound(RatioPoint(*inst.ratio))
                params = padding_params(inst, anchor)
                for weight in range(n + 1):
                    symmetric = run_symmetric(inst, params, weight)
                    for x in inputs_of_weight(n, weight)[:2]:
                        full = run_full(inst, params, x)
                        for cls, prob in symmetric.class_probs.items():
                            assert full.class_probs[cls] == pytest.approx(
                                prob, abs=1e-9)
                        if weight in (k, l):
                            assert full.output == symmetric.output


@pytest.mark.parametrize("n, k, l", [(2, 1, 2), (4, 0, 1), (4, 2, 4),
                                     (4, 0, 2), (10, 3, 7)])
def test_full_verification_is_exact(n, k, l):
    summary = verify_exactness(WeightInstance(n, k, l), mode="full")
    assert summary.exact
    assert summary.min_success == pytest.approx(1.0, abs=1e-9)
    assert summary.d == bounds_upper(n, k, l)


def bounds_upper(n, k, l):
    return upper_bound(RatioPoint(k / n, l / n))[0]


def test_deutsch():
    summary = verify_exactness(WeightInstance(2, 1, 2), mode="full")
    assert len(summary.reports) == 3
    assert summary.queries_used == 1
    assert all(report.success_prob == pytest.approx(1.0)
               for report in summary.reports)


def test_eight_bit_instance_with_explicit_anchor():
    anchor = boundary_pairs(3)[2]
    summary = verify_exactness(WeightInstance(8, 2, 4), mode="full",
                               anchor=anchor)
    assert len(summary.reports) == 28 + 70
    assert summary.exact
    assert summary.queries_used == 3


def test_verify_rejects_anchor_outside_ul():
    with pytest.raises(ArgumentError):
        verify_exactness(WeightInstance(10, 3, 7), anchor=boundary_pairs(2)[0])


@pytest.mark.parametrize("anchor", [pair for d in (1, 2, 3)
                                    for pair in boundary_pairs(d)],
                         ids=str)
def test_every_small_anchor_is_exact(anchor):
    inst = closest_instance(anchor)
    summary = verify_exactness(inst, mode="full", anchor=anchor)
    assert summary.exact
    for report in summary.reports:
        assert report.queries_used == budgeted_queries(report, anchor)
    assert summary.queries_used == max(
        budgeted_queries(report, anchor) for report in summary.reports)
    if anchor.delta == 0:
        assert summary.queries_used == anchor.d
    symmetric = verify_exactness(inst, mode="symmetric", anchor=anchor)
    assert symmetric.min_success == pytest.approx(summary.min_success,
                                                  abs=1e-9)


def test_symmetric_verification_of_large_instances():
    for inst in (WeightInstance(1000, 250, 750), WeightInstance(500, 1, 3),
                 WeightInstance(64, 30, 34)):
        assert verify_exactness(inst).exact


def test_explore_weights():
    inst = WeightInstance(10, 3, 7)
    params = padding_params(inst, boundary_pairs(3)[2])
    reports = explore_weights(inst, params)
    assert [report.weight for report in reports] == list(range(11))
    for report in reports:
        assert sum(report.class_probs.values()) == pytest.approx(1.0)
        assert set(report.class_probs) == set(BIG_OUTCOMES)
    assert reports[3].success_prob == pytest.approx(1.0)
    assert reports[7].success_prob == pytest.approx(1.0)


@pytest.mark.parametrize("anchor", [pair for d in (1, 2, 3, 4)
                                    for pair in boundary_pairs(d)],
                         ids=str)
def test_simulators_agree_for_every_anchor(anchor):
    inst = closest_instance(anchor)
    params = padding_params(inst, anchor)
    for weight in range(inst.n + 1):
        symmetric = run_symmetric(inst, params, weight)
        full = run_full(inst, params, inputs_of_weight(inst.n, weight)[-1])
        for cls, prob in symmetric.class_probs.items():
            assert full.class_probs[cls] == pytest.approx(prob, abs=1e-9)


@pytest.mark.slow
@pytest.mark.parametrize("anchor", [pair for d in (1, 2, 3, 4)
                                    for pair in boundary_pairs(d)],
                         ids=str)
def test_simulators_agree_on_every_admitted_instance(anchor):
    for n in range(1, 11):
        for k in range(n):
            for l in range(k + 1, n + 1):
                inst = WeightInstance(n, k, l)
                if not in_UL(RatioPoint(*inst.ratio), anchor):
                    continue
                params = padding_params(inst, anchor)
                for weight in range(n + 1):
                    symmetric = run_symmetric(inst, params, weight)
                    full = run_full(inst, params,
                                    inputs_of_weight(n, weight)[0])
                    for cls, prob in symmetric.class_probs.items():
                        assert full.class_probs[cls] == pytest.approx(
                            prob, abs=1e-9)
