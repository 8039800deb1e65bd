import math
import random

import pytest

from qmobius.quat import Quaternion, ZERO, ONE, J, isclose
from qmobius import ineq, dynamics
from qmobius.dynamics import (ConvergenceKind, classify_convergence, csv_header,
                              csv_row, extremal_invariance_check, iterate,
                              recurrence_deviation, verify_recurrence)
from qmobius.ineq import Verdict, k_value
from qmobius.qmat import MatH2, diagonal, identity, lower_triangular, upper_triangular
from conftest import random_sigma, random_elliptic_entry

SQRT2 = math.sqrt(2.0)

EXTREME_S = MatH2(ONE, ZERO, ONE, ONE)
EXTREME_T = upper_triangular(ONE, J, ONE)


def obstruction_pair():
    lam = Quaternion(math.cos(math.pi / 7), math.sin(math.pi / 7))
    t = diagonal(lam, lam.conj())
    s = MatH2(ONE, Quaternion(0.1), Quaternion(0.1), Quaternion(1.01))
    return s, t


def contractive_diagonal_pair(rng):
    """Random pair with K (1 + |bc|) < 0.9 so 20 steps stay well-scaled."""
    while True:
        lam = random_elliptic_entry(rng, rng.uniform(0.02, 0.2))
        mu = random_elliptic_entry(rng, rng.uniform(0.02, 0.2))
        k = k_value(lam, mu)
        s = random_sigma(rng)
        bc = s.b.norm() * s.c.norm()
        if k * (1.0 + bc) < 0.9:
            return s, diagonal(lam, mu)


def test_central_t_gives_constant_identity_tail():
    rng = random.Random(501)
    s = random_sigma(rng)
    trace = iterate(s, identity(), 6, "diagonal")
    for step in trace.steps[1:]:
        assert (step.s.a - ONE).norm() < 1e-12
        assert step.s.b.norm() < 1e-12
    verdict = classify_convergence(trace)
    assert verdict.kind is ConvergenceKind.STATIONARY


def test_extreme_pair_first_step_hand_values():
    trace = iterate(EXTREME_S, EXTREME_T, 1, "upper")
    s1 = trace.steps[1].s
    expected = MatH2(Quaternion(1, 0, -1, 0), J, -J, Quaternion(1, 0, 1, 0))
    for got, want in zip(s1.entries(), expected.entries()):
        assert isclose(got, want, 1e-12)
    assert trace.steps[1].s.c.norm() == pytest.approx(1.0, abs=1e-12)
    assert isclose(trace.steps[1].tau, J, 1e-12)
    assert isclose(trace.steps[1].t, J, 1e-12)


def test_extreme_pair_classifies_stationary():
    trace = iterate(EXTREME_S, EXTREME_T, 25, "upper")
    assert trace.truncated_reason is None
    for step in trace.steps:
        assert step.extremal_lhs == pytest.approx(1.0, abs=1e-8)
    assert classify_convergence(trace).kind is ConvergenceKind.STATIONARY


def test_obstruction_pair_contracts_geometrically():
    s, t = obstruction_pair()
    report = ineq.jss_test(s, t)
    assert report.verdict is Verdict.OBSTRUCTION
    trace = iterate(s, t, 50, "diagonal")
    bc = [step.bc_norm for step in trace.steps]
    assert all(b2 < b1 for b1, b2 in zip(bc, bc[1:]))
    for b1, b2 in zip(bc, bc[1:]):
        assert b2 / b1 <= report.lhs + 1e-6
    verdict = classify_convergence(trace)
    assert verdict.kind is ConvergenceKind.CONVERGES_TO_ELEMENTARY
    assert verdict.rate == pytest.approx(report.diagnostics["K"], rel=0.05)


def test_contraction_is_strict_under_unit_budget():
    s, t = obstruction_pair()
    k = k_value(t.a, t.d)
    trace = iterate(s, t, 30, "diagonal")
    for prev, nxt in zip(trace.steps, trace.steps[1:]):
        if k * (1.0 + prev.bc_norm) < 1.0 and prev.bc_norm > 0.0:
            assert nxt.bc_norm < prev.bc_norm


def test_sigma_preserved_along_trace():
    s, t = obstruction_pair()
    trace = iterate(s, t, 50, "diagonal")
    for step in trace.steps:
        assert abs(step.det - 1.0) <= 1e-6


def test_upper_mode_c_recurrence():
    trace = iterate(EXTREME_S, EXTREME_T, 20, "upper")
    for prev, nxt in zip(trace.steps, trace.steps[1:]):
        assert abs(nxt.s.c.norm() - prev.tau_c * prev.s.c.norm()) < 1e-7


def test_upper_mode_bound_chain():
    lam = Quaternion(math.cos(0.05), math.sin(0.05))
    t = upper_triangular(lam, ONE, lam)
    s_val = ineq.s_value(lam, lam)
    trace = iterate(EXTREME_S, t, 12, "upper")
    for prev, nxt in zip(trace.steps, trace.steps[1:]):
        bound = prev.tau_c * prev.t_c + SQRT2 * s_val + 1e-9
        assert nxt.tau_c <= bound
        assert nxt.t_c <= bound


def test_iterate_validation():
    s, t = obstruction_pair()
    with pytest.raises(ValueError):
        iterate(s, t, 0, "diagonal")
    with pytest.raises(ValueError):
        iterate(s, t, 5, "sideways")
    with pytest.raises(ValueError):
        iterate(s, EXTREME_T, 5, "diagonal")   # shape mismatch


def test_truncation_on_common_fixed_point():
    shared = MatH2(ONE, ONE, ZERO, ONE)    # c = 0: fixes infinity like T
    trace = iterate(shared, EXTREME_T, 10, "upper")
    assert trace.truncated_reason == "common fixed point reached"
    assert len(trace.steps) == 1


def test_divergent_pair():
    s = MatH2(ONE, Quaternion(2), Quaternion(2), Quaternion(5))
    t = diagonal(Quaternion(1.3), Quaternion(1 / 1.3))
    trace = iterate(s, t, 40, "diagonal")
    assert trace.truncated_reason in ("divergence cutoff exceeded",
                                      "numerical blow-up")
    assert len(trace.steps) >= 5
    assert classify_convergence(trace).kind is ConvergenceKind.DIVERGES


def test_classify_requires_five_steps():
    s, t = obstruction_pair()
    trace = iterate(s, t, 2, "diagonal")
    with pytest.raises(ValueError):
        classify_convergence(trace)


def test_classify_undetermined_short_horizon():
    s, t = obstruction_pair()
    trace = iterate(s, t, 6, "diagonal")
    assert classify_convergence(trace).kind is ConvergenceKind.UNDETERMINED


def test_recurrence_single_step_and_identity():
    s, t = obstruction_pair()
    assert verify_recurrence(iterate(s, t, 1, "diagonal"), t)
    rng = random.Random(502)
    s2 = random_sigma(rng)
    assert verify_recurrence(iterate(s2, identity(), 3, "diagonal"), identity())


def test_recurrence_on_obstruction_trace():
    s, t = obstruction_pair()
    trace = iterate(s, t, 20, "diagonal")
    dev = recurrence_deviation(trace, t)
    assert dev < 1e-7
    assert verify_recurrence(trace, t)


def test_recurrence_random_contractive_pairs():
    rng = random.Random(503)
    for _ in range(10):
        s, t = contractive_diagonal_pair(rng)
        trace = iterate(s, t, 20, "diagonal")
        assert recurrence_deviation(trace, t) < 1e-7


def test_recurrence_rejects_triangular_mode():
    trace = iterate(EXTREME_S, EXTREME_T, 3, "upper")
    with pytest.raises(ValueError):
        verify_recurrence(trace, EXTREME_T)


def test_invariance_check_extreme_pair():
    report = extremal_invariance_check(EXTREME_S, EXTREME_T, 25)
    assert report.verdict is Verdict.EXTREMAL
    assert report.preconditions_met
    assert report.diagnostics["max_deviation"] < 1e-8
    assert report.diagnostics["consistent_with_extremal_over_horizon"] == 1.0


def test_invariance_check_lower_mirror():
    s = MatH2(ONE, ONE, ZERO, ONE)
    t = lower_triangular(ONE, J, ONE)
    report = extremal_invariance_check(s, t, 25)
    assert report.verdict is Verdict.EXTREMAL
    assert report.diagnostics["max_deviation"] < 1e-8


def test_invariance_check_gate_fails_on_obstruction_pair():
    s, t = obstruction_pair()
    report = extremal_invariance_check(s, t, 10)
    assert report.verdict is Verdict.INCONCLUSIVE
    assert not report.preconditions_met
    assert report.diagnostics["pointwise_extremal"] == 0.0


def test_invariance_check_diagonal_equality_drifts_without_discreteness():
    # pointwise equality alone does not propagate: the budget is exceeded
    # and the check honestly refuses the extremal verdict
    lam = Quaternion(math.cos(0.2), math.sin(0.2))
    mu = Quaternion(math.cos(0.2), 0, math.sin(0.2))
    k = k_value(lam, mu)
    s_norm = math.sqrt((1.0 - k) / k)
    s = MatH2(ONE, Quaternion(s_norm), Quaternion(s_norm),
              ONE + Quaternion(s_norm * s_norm))
    t = diagonal(lam, mu)
    assert ineq.jss_test(s, t).verdict is Verdict.EXTREMAL
    report = extremal_invariance_check(s, t, 25)
    assert report.preconditions_met
    assert report.verdict is Verdict.INCONCLUSIVE
    assert report.diagnostics["max_deviation"] > 1e-3


def test_csv_helpers():
    trace = iterate(EXTREME_S, EXTREME_T, 2, "upper")
    header = csv_header()
    assert header == ("n", "abs_a", "abs_b", "abs_c", "abs_d", "bc_norm",
                      "tau_c", "t_c", "extremal_lhs", "det")
    row = csv_row(trace.steps[1])
    assert len(row) == len(header)
    assert row[0] == 1
    full_header = csv_header(full=True)
    assert len(full_header) == len(header) + 16
    assert len(csv_row(trace.steps[1], full=True)) == len(full_header)


def test_trace_json_round_trip_values():
    trace = iterate(EXTREME_S, EXTREME_T, 2, "upper")
    payload = trace.to_dict()
    assert payload["mode"] == "upper"
    step1 = payload["steps"][1]
    assert step1["S"]["a"] == [1.0, 0.0, -1.0, 0.0]
    assert step1["tau"] == [0.0, 0.0, 1.0, 0.0]


def test_diagonal_mode_records_tau_when_coupling_nonzero():
    s, t = obstruction_pair()
    trace = iterate(s, t, 5, "diagonal")
    for step in trace.steps:
        assert step.tau is not None
        assert step.tau_c == pytest.approx(step.tau.norm() * step.s.c.norm())
        assert step.extremal_lhs == pytest.approx(
            k_value(t.a, t.d) * (1.0 + step.bc_norm))
