"""End-to-end acceptance checks, one numbered criterion per test.

Each test prints a single PASS/FAIL line (visible with ``pytest -rA`` or
``-s``) before asserting, so a full run reads as a checklist.  Criterion 8b
is expected to fail: with the benchmark cell's series resistance, the diode
knee caps the flat-band cell near 4.6x the Si output, so the 10x power
ratio is unreachable in this model; the test is kept honest rather than
tuned to pass.
"""

import dataclasses
import math
import time

import numpy as np
import pytest

from tpvsim.constants import SIGMA_SB
from tpvsim.device import (ThermalEnv, cell_absorptance, ingaas_default,
                           calibrate_dark_current, operating_point,
                           si_default, si_reference, solve_iv, T_REF_K)
from tpvsim.economics import (EconParams, SystemDesign, crf,
                              effective_dissipation, lcoe, lcos)
from tpvsim.optics import airbridge_stack, r_oob, spectral_efficiency, \
    tmm_solve
from tpvsim.radiometry import BlackbodySource, band_power, default_grid
from tpvsim.storage import BatterySpec, cpe, stored_energy, vessel_geometry
from tpvsim.sweep import run_sweep, write_csv
from tpvsim.presets import PRESETS

GRID = default_grid()
LAM_G_SI = si_default().lam_g_um


def report(num, ok, detail):
    print(f"[criterion {num:>3}] {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, f"criterion {num}: {detail}"


@pytest.fixture(scope="module")
def si_absorptance():
    return cell_absorptance(si_default(), grid=GRID)


@pytest.fixture(scope="module")
def ingaas_absorptance():
    return cell_absorptance(ingaas_default(), grid=GRID)


@pytest.fixture(scope="module")
def si_1800(si_absorptance):
    return operating_point(si_default(), BlackbodySource(1800.0),
                           si_absorptance)


@pytest.fixture(scope="module")
def ingaas_1800(ingaas_absorptance):
    return operating_point(ingaas_default(), BlackbodySource(1800.0),
                           ingaas_absorptance)


def _peak_eta(cell, absorp, temps):
    etas = [operating_point(cell, BlackbodySource(t), absorp).eta
            for t in temps]
    i = int(np.argmax(etas))
    return temps[i], etas[i]


def test_01_blackbody_total_within_0p1_percent():
    t0 = time.time()
    worst = 0.0
    for t_c in (800.0, 1300.0, 1410.0, 1800.0, 2000.0):
        src = BlackbodySource(t_c)
        total = band_power(src, GRID[0], GRID[-1])
        err = abs(total / (SIGMA_SB * src.temperature_k**4) - 1.0)
        worst = max(worst, err)
    elapsed = time.time() - t0
    report(1, worst < 1e-3 and elapsed < 1.0,
           f"max rel error {worst:.2e}, {elapsed:.2f} s")


def test_02_tmm_conservation_and_fresnel():
    worst = 0.0
    for t_si in (10.0, 50.0, 200.0, 500.0):
        res = tmm_solve(airbridge_stack(t_si), GRID)
        worst = max(worst, float(np.max(np.abs(res.R + res.T
                                               + res.A_total - 1.0))))
    from tpvsim.materials import AIR, ConstantIndex
    from tpvsim.optics import Layer, Stack
    n = 3.5
    med = ConstantIndex(n, 0.0, "med")
    stack = Stack((Layer(AIR, math.inf), Layer(med, 100.0),
                   Layer(med, math.inf)))
    res = tmm_solve(stack, GRID)
    fres = float(np.max(np.abs(res.R - ((1 - n) / (1 + n)) ** 2)))
    report(2, worst < 1e-9 and fres < 1e-10,
           f"conservation {worst:.1e}, Fresnel {fres:.1e}")


def test_03_out_of_band_reflectance_anchors():
    thick = r_oob(airbridge_stack(500.0), BlackbodySource(1000.0), LAM_G_SI,
                  GRID)
    thin = r_oob(airbridge_stack(150.0), BlackbodySource(1800.0), LAM_G_SI,
                 GRID)
    se = spectral_efficiency(airbridge_stack(50.0), BlackbodySource(1700.0),
                             LAM_G_SI, GRID)
    report(3, thick < 0.92 and thin > 0.98 and se >= 0.70,
           f"R_OOB(500um)={thick:.4f} (<0.92), R_OOB(150um)={thin:.4f} "
           f"(>0.98), SE(50um,1700C)={se:.3f} (>=0.70)")


def test_04_reference_cell_regression():
    cell = si_reference()
    iv = solve_iv(cell.j_sc_ref, calibrate_dark_current(cell), cell, T_REF_K)
    ok = (abs(iv.v_oc - 0.67) < 1e-9 and abs(iv.ff - 0.821) < 0.005
          and abs(iv.p_out / 0.020 - 1.0) < 0.02)
    report(4, ok, f"V_oc={iv.v_oc:.4f} V, FF={iv.ff:.4f}, "
                  f"P_out={iv.p_out:.5f} W/cm2")


def test_05_efficiency_peak_anchors(si_absorptance, ingaas_absorptance):
    temps = list(range(1000, 2001, 100))
    anchors = {80.6: (0.29, 1300), 30.0: (0.34, 1400), 10.0: (0.38, 1700)}
    details, ok = [], True
    for rs, (eta_a, t_a) in anchors.items():
        cell = dataclasses.replace(si_default(), r_s_mohm_cm2=rs)
        t_pk, eta_pk = _peak_eta(cell, si_absorptance, temps)
        good = abs(eta_pk - eta_a) <= 0.03 and abs(t_pk - t_a) <= 100
        ok &= good
        details.append(f"Rs={rs:g}: ({eta_pk:.3f}, {t_pk}C) vs "
                       f"({eta_a:.2f}, {t_a}C)")
    t_pk, eta_pk = _peak_eta(ingaas_default(), ingaas_absorptance, temps)
    ok &= abs(eta_pk - 0.39) <= 0.03
    details.append(f"flat-band peak {eta_pk:.3f} vs 0.39")
    report(5, ok, "; ".join(details))


def test_06_power_density_anchors(si_absorptance):
    temps = list(range(1000, 1801, 100))
    def max_p(rs):
        cell = dataclasses.replace(si_default(), r_s_mohm_cm2=rs)
        return max(operating_point(cell, BlackbodySource(t),
                                   si_absorptance).p_out for t in temps)
    high = max(max_p(80.6), max_p(100.0))
    low = max_p(10.0)
    report(6, high < 2.0 and low > 4.0,
           f"max P_out(Rs>=80)={high:.3f} (<2), max P_out(Rs=10)={low:.3f} "
           f"(>4) W/cm2")


def test_07_storage_anchor_and_latent_jump():
    spec = BatterySpec(m_si_kg=1e5, t_h_c=1800.0)
    q_gwh = stored_energy(spec) / 1e6
    eps = 1e-9
    below = stored_energy(dataclasses.replace(spec,
                                              t_h_c=spec.t_melt_c - eps))
    at = stored_energy(dataclasses.replace(spec, t_h_c=spec.t_melt_c))
    jump_rel = (at - below) * 3.6e6 / (spec.m_si_kg
                                       * spec.latent_kj_per_kg * 1e3)
    ok = abs(q_gwh / 0.11 - 1.0) < 0.15 and abs(jump_rel - 1.0) < 1e-6
    report(7, ok, f"Q_h={q_gwh:.4f} GWh vs 0.11 (+-15%), latent jump ratio "
                  f"{jump_rel:.8f}")


def test_08a_silicon_system_power(si_1800):
    battery = BatterySpec(m_si_kg=1e5, t_h_c=1800.0)
    area = vessel_geometry(battery)[2] * 1e4
    d = effective_dissipation(si_1800, si_default().r_s_mohm_cm2, 10.0)
    p_mw = d.p_out_eff * area / 1e6
    report("8a", 0.4 <= p_mw <= 1.2,
           f"Si system power {p_mw:.3f} MW vs 0.8 (+-50%)")


@pytest.mark.xfail(
    strict=True,
    reason="series-resistance knee caps the flat-band cell near 4.6x the Si "
           "output; the 10x ratio is outside this model's reachable range")
def test_08b_power_ratio(si_1800, ingaas_1800):
    d_si = effective_dissipation(si_1800, si_default().r_s_mohm_cm2, 10.0)
    d_in = effective_dissipation(ingaas_1800,
                                 ingaas_default().r_s_mohm_cm2, 10.0)
    ratio = d_in.p_out_eff / d_si.p_out_eff
    report("8b", abs(ratio / 10.0 - 1.0) <= 0.30,
           f"power ratio {ratio:.2f} vs 10 (+-30%)")


def test_09_dynamic_loss_quadratic_law(si_absorptance):
    # low series resistance keeps the fastest discharge feasible
    cell = dataclasses.replace(si_default(), r_s_mohm_cm2=10.0)
    iv = operating_point(cell, BlackbodySource(1800.0), si_absorptance)
    rs = cell.r_s_mohm_cm2
    ref = effective_dissipation(iv, rs, 10.0, 10.0)
    p_dyn_ref = iv.p_out - ref.p_out_eff
    worst = 0.0
    for t_d in (2.5, 5.0, 10.0, 20.0):
        d = effective_dissipation(iv, rs, t_d, 10.0)
        p_dyn = iv.p_out - d.p_out_eff
        worst = max(worst, abs(p_dyn / (p_dyn_ref * (10.0 / t_d) ** 2) - 1.0))
    report(9, worst < 1e-12, f"max rel deviation {worst:.1e}")


def test_10_lcos_properties(si_1800):
    battery = BatterySpec(m_si_kg=1e5, t_h_c=1800.0)
    system = SystemDesign(si_default(), si_1800, 0.88, battery)
    ordered = monotone = True
    prev = None
    for i in range(20):
        k = 0.5 * i / 19
        params = EconParams(k_loss=k)
        full = lcos(system, params)
        no_sic = lcos(dataclasses.replace(system, scenario="no_sic"), params)
        bare = lcos(dataclasses.replace(system, scenario="no_materials"),
                    params)
        ordered &= full >= no_sic >= bare
        monotone &= prev is None or full > prev
        prev = full
    params = EconParams()
    gap = lcos(system, params) - lcos(
        dataclasses.replace(system, scenario="no_materials"), params)
    floor = crf(params.r, params.n_years) * cpe(battery, "full") / params.n_cy
    report(10, ordered and monotone and gap >= floor - 1e-12,
           f"ordering {ordered}, monotone {monotone}, gap {gap:.4f} >= "
           f"annualized CPE {floor:.4f} $/kWh")


def test_11_lcoe_anchor_and_shape(si_1800):
    system = SystemDesign(si_default(), si_1800, 0.88,
                          BatterySpec(m_si_kg=1e7, t_h_c=1800.0))
    params = EconParams()
    anchor = lcoe(system, params)
    base = lcoe(system, params, heat_loss=0.0)
    hl_dev = max(abs(lcoe(system, params, heat_loss=hl) * (1 - hl) - base)
                 for hl in (0.05, 0.1, 0.3, 0.6))
    vals = [lcoe(system, params, lifetime=n) for n in (5, 10, 20, 25)]
    decreasing = all(a > b for a, b in zip(vals, vals[1:]))
    saturated = (vals[2] - vals[3]) < 0.1 * (vals[0] - vals[1])
    ok = (abs(anchor / 0.29 - 1.0) < 0.30 and hl_dev < 1e-9
          and decreasing and saturated)
    report(11, ok, f"LCOE={anchor:.4f} $/kWh vs 0.29 (+-30%), heat-loss "
                   f"invariant dev {hl_dev:.1e}, saturation "
                   f"{vals[2]-vals[3]:.4f} < 0.1*{vals[0]-vals[1]:.4f}")


def test_12_capital_recovery_factor():
    v = crf(0.05, 25, "declining")
    dev = max(abs(v - 0.05 / (1 - 0.95**25)),
              abs(crf(0.05, 25, "annuity") - 0.05 / (1 - 1.05**-25)))
    report(12, dev < 1e-12 and abs(v - 0.06919) < 1e-5,
           f"declining-balance crf {v:.7f}, max dev {dev:.1e}")


def test_13_determinism_and_runtime(tmp_path):
    t0 = time.time()
    for name, factory in PRESETS.items():
        res1 = run_sweep(factory())
        res2 = run_sweep(factory())
        write_csv(res1, tmp_path / f"{name}_a.csv")
        write_csv(res2, tmp_path / f"{name}_b.csv")
        assert (tmp_path / f"{name}_a.csv").read_bytes() == \
            (tmp_path / f"{name}_b.csv").read_bytes(), name
    elapsed = time.time() - t0
    report(13, elapsed < 300.0,
           f"all presets byte-identical on re-run, suite (run twice) "
           f"{elapsed:.1f} s")
