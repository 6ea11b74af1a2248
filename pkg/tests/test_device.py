import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tpvsim.constants import KB, Q
from tpvsim.device import (CELL_PRESETS, CellDesign, ThermalEnv, T_REF_K,
                           calibrate_dark_current, cell_absorptance,
                           fom_decomposition, operating_point,
                           power_density_map, scale_dark_current, si_default,
                           si_reference, ingaas_default, solve_iv)
from tpvsim.radiometry import BlackbodySource, Spectrum, default_grid

GRID = default_grid()


@pytest.fixture(scope="module")
def si_absorptance():
    return cell_absorptance(si_default(), grid=GRID)


@pytest.fixture(scope="module")
def ingaas_absorptance():
    return cell_absorptance(ingaas_default(), grid=GRID)


def test_dark_current_calibration_roundtrip():
    cell = si_reference()
    j0 = calibrate_dark_current(cell)
    vt = KB * T_REF_K / Q
    v_oc = vt * math.log1p(cell.j_sc_ref / j0)
    assert v_oc == pytest.approx(cell.v_oc_ref, abs=1e-12)


def test_dark_current_temperature_scaling_identity():
    j0 = 1e-13
    assert scale_dark_current(j0, 1.12, T_REF_K) == pytest.approx(j0)
    assert scale_dark_current(j0, 1.12, 320.0) > j0
    assert scale_dark_current(j0, 1.12, 280.0) < j0


def test_reference_cell_reproduces_datasheet():
    cell = si_reference()
    j0 = calibrate_dark_current(cell)
    iv = solve_iv(cell.j_sc_ref, j0, cell, T_REF_K)
    assert iv.v_oc == pytest.approx(0.67, abs=1e-9)
    assert iv.ff == pytest.approx(0.821, abs=5e-4)
    assert iv.p_out == pytest.approx(0.0198025, rel=1e-4)


def test_mpp_matches_dense_voltage_scan():
    cell = dataclasses.replace(si_default(), r_s_mohm_cm2=30.0)
    j0 = calibrate_dark_current(cell)
    iv = solve_iv(3.0, j0, cell, 330.0)
    p_curve = iv.curve[:, 0] * iv.curve[:, 1]
    assert iv.p_out >= p_curve.max() - 1e-7
    assert 0.0 < iv.v_mpp < iv.v_oc


@given(rs=st.floats(min_value=0.0, max_value=200.0))
@settings(max_examples=20, deadline=None)
def test_fill_factor_decreases_with_series_resistance(rs):
    base = dataclasses.replace(si_default(), r_s_mohm_cm2=0.0)
    lossy = dataclasses.replace(si_default(), r_s_mohm_cm2=rs)
    j0 = calibrate_dark_current(base)
    ff0 = solve_iv(3.0, j0, base, 320.0).ff
    ff1 = solve_iv(3.0, j0, lossy, 320.0).ff
    assert ff1 <= ff0 + 1e-12


def test_shunt_resistance_lowers_output():
    base = si_default()
    shunted = dataclasses.replace(base, r_sh_ohm_cm2=1.0)
    j0 = calibrate_dark_current(base)
    assert solve_iv(3.0, j0, shunted, 320.0).p_out < \
        solve_iv(3.0, j0, base, 320.0).p_out


def test_operating_point_self_consistency(si_absorptance):
    env = ThermalEnv()
    iv = operating_point(si_default(), BlackbodySource(1800.0),
                         si_absorptance, env)
    t_expected = env.t_heatsink_c + env.theta_cm2k_per_w * \
        (iv.p_abs - iv.p_out)
    assert iv.t_j_c == pytest.approx(t_expected, abs=0.02)
    assert iv.p_diss_static == pytest.approx(iv.p_abs - iv.p_out, rel=1e-12)
    assert iv.eta == pytest.approx(iv.p_out / iv.p_abs, rel=1e-12)


def test_si_default_1800_regression(si_absorptance):
    # frozen pipeline output on the default grid
    iv = operating_point(si_default(), BlackbodySource(1800.0),
                         si_absorptance)
    assert iv.p_out == pytest.approx(1.7920867926042534, rel=1e-9)
    assert iv.p_abs == pytest.approx(11.13493772140019, rel=1e-9)
    assert iv.eta == pytest.approx(0.16094268665374295, rel=1e-9)
    assert iv.v_oc == pytest.approx(0.7875189432325614, rel=1e-9)
    assert iv.j_sc == pytest.approx(7.157542758424113, rel=1e-9)
    assert iv.t_j_c == pytest.approx(39.014264781469535, abs=0.02)


def test_ingaas_default_1800_regression(ingaas_absorptance):
    iv = operating_point(ingaas_default(), BlackbodySource(1800.0),
                         ingaas_absorptance)
    assert iv.p_out == pytest.approx(8.31062991748062, rel=1e-9)
    assert iv.eta == pytest.approx(0.21802530033403417, rel=1e-9)


def test_zero_theta_pins_junction_to_heatsink(si_absorptance):
    env = ThermalEnv(theta_cm2k_per_w=0.0)
    iv = operating_point(si_default(), BlackbodySource(1600.0),
                         si_absorptance, env)
    assert iv.t_j_c == pytest.approx(env.t_heatsink_c, abs=1e-9)


def test_self_heating_costs_efficiency(si_absorptance):
    cold = operating_point(si_default(), BlackbodySource(1800.0),
                           si_absorptance, ThermalEnv(theta_cm2k_per_w=0.0))
    hot = operating_point(si_default(), BlackbodySource(1800.0),
                          si_absorptance, ThermalEnv(theta_cm2k_per_w=3.0))
    assert hot.eta < cold.eta
    assert hot.v_oc < cold.v_oc


def test_flat_band_absorptance_levels():
    cell = ingaas_default()
    a = cell_absorptance(cell, grid=GRID)
    below = a.values[a.wavelengths < cell.lam_g_um - 0.05]
    above = a.values[a.wavelengths > cell.lam_g_um + 0.05]
    assert np.allclose(below, 0.95)
    assert np.allclose(above, 0.01)


def test_fom_product_tracks_efficiency(si_absorptance):
    from tpvsim.radiometry import band_power
    src = BlackbodySource(1800.0)
    cell = si_default()
    iv = operating_point(cell, src, si_absorptance)
    # photon-counting spectral efficiency: mean in-band photon energy is
    # the gap energy in the idealized decomposition
    wl = si_absorptance.wavelengths
    from tpvsim.radiometry import photon_flux_above_gap
    from tpvsim.constants import H, C0
    flux = photon_flux_above_gap(src, si_absorptance, cell.lam_g_um)
    e_gap = cell.e_g_ev * Q
    se_eff = flux * e_gap / band_power(src, wl[0], wl[-1],
                                       weight=si_absorptance)
    fom = fom_decomposition(iv, se_eff, cell.iqe)
    assert fom["eta_product"] == pytest.approx(iv.eta, abs=0.02)


def test_power_density_map_shapes_and_errors():
    out = power_density_map(si_default(), [1400.0, 1800.0], [10.0, 80.6],
                            grid=default_grid(300))
    assert out["p_out"].shape == (2, 2)
    assert np.all(np.isfinite(out["p_out"]))
    assert out["errors"] == []
    # efficiency falls with added series resistance everywhere
    assert np.all(out["eta"][:, 0] > out["eta"][:, 1])


def test_cell_design_validation():
    with pytest.raises(ValueError):
        dataclasses.replace(si_default(), r_s_mohm_cm2=-1.0)
    with pytest.raises(ValueError):
        dataclasses.replace(si_default(), iqe=0.0)
    with pytest.raises(ValueError):
        ThermalEnv(theta_cm2k_per_w=-0.1)


def test_presets_registry():
    assert set(CELL_PRESETS) == {"si_reference", "si_default",
                                 "ingaas_default"}
    for factory in CELL_PRESETS.values():
        cell = factory()
        assert isinstance(cell, CellDesign)
        assert cell.e_g_ev > 0
