"""System economics: effective dissipation, CPP, round-trip efficiency,
LCOS, and LCOE for a thermal-battery TPV plant.

Power densities are W/cm² at the cell, areas in cm² unless noted, energies
in kWh, and all cost metrics in $ per W or per kWh.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .device import CellDesign, IVResult
from .storage import BatterySpec, stored_energy, vessel_geometry, battery_capex, cpe


class InfeasibleDischargeError(RuntimeError):
    """Discharge too fast: dynamic Joule loss exceeds the cell output."""


@dataclass(frozen=True)
class EconParams:
    """Techno-economic inputs for the thermal-battery TPV plant.

    Charging power densities are annual-average delivered flux (capacity
    factor folded in), so PV at 200 W/m² peak with ~15% capacity factor
    contributes 30 W/m².
    """

    t_c_h: float = 10.0
    t_d_h: float = 10.0
    t_d_ref_h: float = 10.0
    n_cy: int = 730
    n_years: int = 25
    d_r: float = 0.05
    eta_ch: float = 0.90
    k_loss: float = 0.1
    r: float = 0.05
    cost_heatsink_per_kw: float = 50.0
    cost_fab_per_cm2: float = 1.0
    opex_per_kw_yr: float = 12.5
    pv_cost_per_m2: float = 150.0
    csp_cost_per_m2: float = 200.0
    pv_power_density_w_m2: float = 30.0
    csp_power_density_w_m2: float = 90.0
    split_pv: float = 0.5
    cpp_in_plus: float = 0.0       # annualized input-converter cost, $/W
    crf_form: str = "declining"

    def __post_init__(self):
        if min(self.t_c_h, self.t_d_h, self.t_d_ref_h) <= 0:
            raise ValueError("cycle times must be positive")
        for name in ("d_r", "eta_ch", "k_loss", "r", "split_pv"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {v}")
        if self.n_cy <= 0 or self.n_years < 1:
            raise ValueError("cycle count and lifetime must be positive")
        if self.crf_form not in ("declining", "annuity"):
            raise ValueError("crf_form must be 'declining' or 'annuity'")
        if min(self.pv_power_density_w_m2, self.csp_power_density_w_m2) <= 0:
            raise ValueError("charging power densities must be positive")

    @property
    def split_csp(self) -> float:
        return 1.0 - self.split_pv


@dataclass(frozen=True)
class SystemDesign:
    """A cell operating point coupled to a thermal battery of equal area."""

    cell: CellDesign
    iv: IVResult
    se: float
    battery: BatterySpec
    scenario: str = "full"

    @property
    def a_emit_m2(self) -> float:
        return vessel_geometry(self.battery)[2]

    @property
    def cell_area_cm2(self) -> float:
        return self.a_emit_m2 * 1e4


class Dissipation(NamedTuple):
    p_diss_eff: float
    p_out_eff: float
    f_loss: float


def effective_dissipation(iv: IVResult, r_s_mohm_cm2: float, t_d_h: float,
                          t_d_ref_h: float = 10.0) -> Dissipation:
    """Static plus discharge-rate-dependent dissipation, W/cm².

    f_loss is the Joule fraction of absorbed power; the dynamic term scales
    with the square of the discharge-time ratio.
    """
    if t_d_h <= 0:
        raise ValueError("discharge time must be positive")
    p_diss_static = iv.p_diss_static
    f_loss = iv.j_mpp**2 * (r_s_mohm_cm2 * 1e-3) / (iv.p_out + p_diss_static)
    p_dyn = iv.p_out * f_loss * (t_d_ref_h / t_d_h) ** 2
    p_out_eff = iv.p_out - p_dyn
    if p_out_eff <= 0:
        raise InfeasibleDischargeError(
            f"dynamic loss {p_dyn:.3g} W/cm2 wipes out output "
            f"{iv.p_out:.3g} W/cm2 at t_d = {t_d_h} h")
    return Dissipation(p_diss_static + p_dyn, p_out_eff, f_loss)


def crf(r: float, n: int, form: str = "declining") -> float:
    """Capital recovery factor per year.

    'declining' discounts at a factor (1-r) per year, giving
    r/(1-(1-r)^n); 'annuity' is the standard loan-payment form
    r/(1-(1+r)^-n).  The two differ by ~2.5% at (0.05, 25).
    """
    if not 0 < r < 1:
        raise ValueError("discount rate must be in (0, 1)")
    if n < 1:
        raise ValueError("lifetime must be at least one year")
    if form == "declining":
        return r / (1.0 - (1.0 - r) ** n)
    if form == "annuity":
        return r / (1.0 - (1.0 + r) ** (-n))
    raise ValueError("form must be 'declining' or 'annuity'")


class RoundTrip(NamedTuple):
    eta_in: float
    eta_out: float
    eta_rt: float


def round_trip(eta_ch: float, eta_cell: float, k_loss: float,
               t_c_h: float, t_d_h: float) -> RoundTrip:
    """Charge/discharge efficiencies with insulation heat leakage."""
    if t_c_h + t_d_h <= 0:
        raise ValueError("cycle duration must be positive")
    frac_c = t_c_h / (t_c_h + t_d_h)
    frac_d = t_d_h / (t_c_h + t_d_h)
    eta_in = eta_ch / (1.0 + k_loss * frac_c)
    eta_out = eta_cell * (1.0 - k_loss * frac_d)
    return RoundTrip(eta_in, eta_out, eta_in * eta_out)


def cpp(system: SystemDesign, params: EconParams) -> float:
    """Cost per effective output power, $/W (fabrication + heatsink)."""
    d = effective_dissipation(system.iv, system.cell.r_s_mohm_cm2,
                              params.t_d_h, params.t_d_ref_h)
    area = system.cell_area_cm2
    cost = params.cost_fab_per_cm2 * area \
        + params.cost_heatsink_per_kw * (d.p_diss_eff * area / 1e3)
    return cost / (d.p_out_eff * area)


def charging_cpp(params: EconParams):
    """Annualized charging-capacity costs CPP⁺ per source, $/W.

    Each source carries its energy split; cost per watt of charging flux is
    unit cost over delivered power density, annualized by crf.
    """
    a = crf(params.r, params.n_years, params.crf_form)
    cpp_pv = params.pv_cost_per_m2 / params.pv_power_density_w_m2 \
        * a * params.split_pv
    cpp_csp = params.csp_cost_per_m2 / params.csp_power_density_w_m2 \
        * a * params.split_csp
    return cpp_pv, cpp_csp


def charging_capex(q_h_kwh: float, params: EconParams, eta_in: float):
    """Collector areas (m²) and total charging CapEx ($) for one battery.

    The battery absorbs Q_h each cycle, so the sources must deliver
    Q_h/eta_in within the charge window, split between PV and CSP.
    """
    if q_h_kwh <= 0:
        raise ValueError("stored energy must be positive")
    e_charge_wh = q_h_kwh * 1e3 / eta_in
    area_pv = params.split_pv * e_charge_wh / (
        params.pv_power_density_w_m2 * params.t_c_h)
    area_csp = params.split_csp * e_charge_wh / (
        params.csp_power_density_w_m2 * params.t_c_h)
    capex = area_pv * params.pv_cost_per_m2 + area_csp * params.csp_cost_per_m2
    return area_pv, area_csp, capex


def lcos(system: SystemDesign, params: EconParams) -> float:
    """Levelized cost of storage, $/kWh discharged."""
    rt = round_trip(params.eta_ch, system.iv.eta, params.k_loss,
                    params.t_c_h, params.t_d_h)
    if rt.eta_rt <= 0:
        raise ZeroDivisionError("round-trip efficiency is zero")
    a = crf(params.r, params.n_years, params.crf_form)
    cpp_pv, cpp_csp = charging_cpp(params)
    per_wh = (cpp_pv + cpp_csp + params.cpp_in_plus) / (rt.eta_rt * params.t_c_h) \
        + a * cpp(system, params) / params.t_d_h
    per_kwh_cap = a * cpe(system.battery, system.scenario) / rt.eta_out
    return (per_wh * 1e3 + per_kwh_cap) / params.n_cy


def lcoe(system: SystemDesign, params: EconParams, heat_loss: float = 0.1,
         lifetime: int | None = None) -> float:
    """Levelized cost of electricity over the system lifetime, $/kWh.

    Lifetime CapEx (battery, TPV module, charging plant) plus OpEx divided
    by delivered energy with annual cell degradation and a constant system
    heat-loss fraction.
    """
    if not 0.0 <= heat_loss < 1.0:
        raise ValueError("heat_loss must be in [0, 1)")
    n = params.n_years if lifetime is None else int(lifetime)
    if n < 1:
        raise ValueError("lifetime must be at least one year")
    q_h = stored_energy(system.battery)
    rt = round_trip(params.eta_ch, system.iv.eta, params.k_loss,
                    params.t_c_h, params.t_d_h)
    d = effective_dissipation(system.iv, system.cell.r_s_mohm_cm2,
                              params.t_d_h, params.t_d_ref_h)
    area = system.cell_area_cm2
    module_cost = params.cost_fab_per_cm2 * area \
        + params.cost_heatsink_per_kw * (d.p_diss_eff * area / 1e3)
    capex = battery_capex(system.battery, system.scenario) + module_cost \
        + charging_capex(q_h, params, rt.eta_in)[2]
    p_out_eff_kw = d.p_out_eff * area / 1e3
    opex_total = n * params.opex_per_kw_yr * p_out_eff_kw
    e_base = params.n_cy * q_h * rt.eta_out * (1.0 - heat_loss)
    degr = (1.0 - params.d_r)
    energy = e_base * sum(degr ** (y - 1) for y in range(1, n + 1))
    if energy <= 0:
        raise ZeroDivisionError("no delivered energy over the lifetime")
    return (capex + opex_total) / energy
