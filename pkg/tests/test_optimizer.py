import numpy as np
import pytest

from raqr.constants import TWO_PI, dbvm_to_field
from raqr.errors import BudgetExceeded, RaqrError
from raqr.optimizer import (
    JointSearchResult,
    SweepSpec,
    alternate,
    joint_detuning_grid,
    reference_sweep_specs,
    select_optimum,
    sweep_1d,
)
from raqr.performance import h_sq_ps_from_amplitude

H_SQ_PS = h_sq_ps_from_amplitude(10 ** (-71.8 / 20))


def test_select_optimum_parabola():
    grid = np.arange(0.0, 6.1, 1.0)
    res = select_optimum("x", grid, -(grid - 3.0) ** 2)
    assert res.argmax == 3.0
    assert not res.boundary_hit and not res.flat


def test_select_optimum_tie_breaks_lower():
    grid = np.arange(-3.0, 3.1, 1.0)
    res = select_optimum("x", grid, -np.abs(np.abs(grid) - 2.0))
    assert res.argmax == -2.0


def test_select_optimum_flat_warns():
    grid = np.arange(0.0, 5.0, 1.0)
    with pytest.warns(UserWarning, match="flat"):
        res = select_optimum("x", grid, np.ones_like(grid))
    assert res.flat
    assert res.argmax == 0.0


def test_select_optimum_boundary_warns():
    grid = np.arange(0.0, 5.0, 1.0)
    with pytest.warns(UserWarning, match="boundary"):
        res = select_optimum("x", grid, grid.copy())
    assert res.boundary_hit


def test_spec_validation():
    with pytest.raises(RaqrError):
        SweepSpec("nope", 0.0, 1.0, 0.1)
    with pytest.raises(RaqrError):
        SweepSpec("Uy", 1.0, 0.0, 0.1)
    with pytest.raises(RaqrError):
        SweepSpec("Uy", 0.0, 1.0, 0.9)  # -> only 2 grid points


def test_uy_sweep_interior_peak(vapor, laser, chain):
    spec = SweepSpec("Uy", -40.0, -14.0, 0.5, "SNR_PSL_DIOD")
    res = sweep_1d(spec, vapor, laser, chain, H_SQ_PS)
    assert not res.boundary_hit
    assert 0.02 < dbvm_to_field(res.argmax) < 0.09


def test_psl_sweeps_match_scalar_evaluation(vapor, laser, chain):
    from raqr.performance import snr_psl
    from raqr.chain import with_overrides

    spec = SweepSpec("Delta_p", -TWO_PI * 1e6, TWO_PI * 1e6, TWO_PI * 0.25e6,
                     "SNR_PSL_BCOD")
    res = sweep_1d(spec, vapor, laser, chain, H_SQ_PS)
    for g, v in zip(res.grid[::2], res.curve_db[::2]):
        direct = snr_psl(vapor, with_overrides(laser, detuning_p=float(g)),
                         "BCOD", chain.quantum_efficiency_eta1, H_SQ_PS)
        assert v == pytest.approx(direct, abs=1e-9)


def test_total_objective_sweep(vapor, laser, chain):
    spec = SweepSpec("Delta_p", -TWO_PI * 1e6, TWO_PI * 1e6, TWO_PI * 0.5e6,
                     "SNR_TOTAL")
    res = sweep_1d(spec, vapor, laser, chain, H_SQ_PS)
    assert np.all(np.isfinite(res.curve_db))


def test_alternate_is_deterministic(vapor, laser, chain):
    specs = [
        SweepSpec("Uy", -30.0, -18.0, 1.0),
        SweepSpec("P0", 10e-6, 40e-6, 2e-6),
        SweepSpec("Delta_p", -TWO_PI * 1.2e6, TWO_PI * 1.2e6, TWO_PI * 0.1e6),
        SweepSpec("Delta_c", -TWO_PI * 2.2e6, TWO_PI * 2.2e6, TWO_PI * 0.1e6),
        SweepSpec("Delta_l", -TWO_PI * 0.2e6, TWO_PI * 0.2e6, TWO_PI * 0.05e6),
    ]
    a = alternate(vapor, laser, chain, H_SQ_PS, specs=specs)
    b = alternate(vapor, laser, chain, H_SQ_PS, specs=specs)
    assert [s.argmax for s in a.steps] == [s.argmax for s in b.steps]
    assert a.laser == b.laser


def test_alternate_trace_monotone(vapor, laser, chain):
    specs = [
        SweepSpec("Uy", -30.0, -18.0, 1.0),
        SweepSpec("P0", 10e-6, 40e-6, 2e-6),
        SweepSpec("Delta_p", -TWO_PI * 1.2e6, TWO_PI * 1.2e6, TWO_PI * 0.1e6),
        SweepSpec("Delta_c", -TWO_PI * 2.2e6, TWO_PI * 2.2e6, TWO_PI * 0.1e6),
        SweepSpec("Delta_l", -TWO_PI * 0.2e6, TWO_PI * 0.2e6, TWO_PI * 0.05e6),
    ]
    trace = alternate(vapor, laser, chain, H_SQ_PS, specs=specs)
    values = [s.max_value_db for s in trace.steps]
    assert all(b >= a - 1e-9 for a, b in zip(values[1:], values[2:]))
    assert len(trace.steps) == 5


def test_reference_specs_cover_reported_optima():
    specs = reference_sweep_specs()
    by_name = {s.parameter: s for s in specs}
    assert by_name["Uy"].lower <= -23.6 <= by_name["Uy"].upper
    assert by_name["P0"].lower <= 20.7e-6 <= by_name["P0"].upper
    assert by_name["Delta_p"].lower <= -TWO_PI * 0.9133e6
    # zero detuning sits on the grid up to float accumulation (< 1e-3 rad/s,
    # i.e. sub-millihertz); exact-zero baselines use literal zeros instead
    grid = by_name["Delta_p"].grid()
    assert np.min(np.abs(grid)) < 1e-3


def test_joint_grid_budget(vapor, laser, chain):
    with pytest.raises(BudgetExceeded):
        joint_detuning_grid(vapor, laser, chain, H_SQ_PS, budget=10)


def test_joint_grid_degenerate_single_point(vapor, laser_bcod_opt, chain):
    dp = laser_bcod_opt.detuning_p
    dc = laser_bcod_opt.detuning_c
    dl = laser_bcod_opt.detuning_l
    res = joint_detuning_grid(
        vapor, laser_bcod_opt, chain, H_SQ_PS,
        ranges=((dp, dp), (dc, dc), (dl, dl)))
    assert isinstance(res, JointSearchResult)
    assert res.points_evaluated == 1
    assert res.argmax == (dp, dc, dl)


def test_joint_rejects_total_objective(vapor, laser, chain):
    with pytest.raises(RaqrError):
        joint_detuning_grid(vapor, laser, chain, H_SQ_PS,
                            objective="SNR_TOTAL")


def test_joint_at_least_alternating_at_least_zero(vapor, laser, chain):
    specs = [
        SweepSpec("Uy", -26.0, -22.0, 0.5),
        SweepSpec("P0", 15e-6, 25e-6, 1e-6),
        SweepSpec("Delta_p", -TWO_PI * 1.2e6, TWO_PI * 1.2e6, TWO_PI * 0.05e6),
        SweepSpec("Delta_c", -TWO_PI * 2.2e6, TWO_PI * 2.2e6, TWO_PI * 0.05e6),
        SweepSpec("Delta_l", -TWO_PI * 0.2e6, TWO_PI * 0.2e6, TWO_PI * 0.05e6),
    ]
    trace = alternate(vapor, laser, chain, H_SQ_PS, specs=specs)
    joint = joint_detuning_grid(vapor, trace.laser, chain, H_SQ_PS,
                                step=TWO_PI * 0.05e6)
    assert joint.max_value_db >= trace.best_db - 1e-9
    assert joint.improvement_over_zero_detuning_db >= -1e-9
