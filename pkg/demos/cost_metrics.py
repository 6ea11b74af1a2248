"""From an operating point to $/kWh: CPE, CPP, LCOS, and LCOE.

Builds the full system around the practical Si cell at 1800 C and walks
the cost stack, then shows the LCOS storage-cost scenarios and the LCOE
lifetime saturation.
"""

import dataclasses

from tpvsim import (BatterySpec, BlackbodySource, EconParams, SystemDesign,
                    cell_absorptance, cpe, cpp, crf, default_grid, lcoe,
                    lcos, operating_point, round_trip)
from tpvsim.device import si_default
from tpvsim.economics import effective_dissipation


def main():
    cell = si_default()
    absorp = cell_absorptance(cell, grid=default_grid())
    iv = operating_point(cell, BlackbodySource(1800.0), absorp)
    battery = BatterySpec(m_si_kg=1e6, t_h_c=1800.0)
    system = SystemDesign(cell, iv, se=0.88, battery=battery)
    params = EconParams()

    d = effective_dissipation(iv, cell.r_s_mohm_cm2, params.t_d_h)
    rt = round_trip(params.eta_ch, iv.eta, params.k_loss, params.t_c_h,
                    params.t_d_h)
    print(f"capital recovery factor: {crf(params.r, params.n_years):.5f}/yr")
    print(f"effective output {d.p_out_eff:.2f} W/cm2 "
          f"(dissipating {d.p_diss_eff:.2f})")
    print(f"round trip: in {rt.eta_in:.3f} x out {rt.eta_out:.3f} "
          f"= {rt.eta_rt:.3f}")
    print(f"CPE  = {cpe(battery):.2f} $/kWh stored")
    print(f"CPP  = {cpp(system, params):.3f} $/W delivered")
    print(f"LCOE = {lcoe(system, params):.3f} $/kWh")

    print("\nLCOS by storage-cost scenario:")
    for scenario in ("full", "no_sic", "no_materials"):
        s = dataclasses.replace(system, scenario=scenario)
        print(f"  {scenario:<13} {lcos(s, params):.4f} $/kWh")

    print("\nLCOE vs lifetime (saturates as CapEx amortizes):")
    for n in (5, 10, 15, 20, 25):
        print(f"  {n:>2} yr  {lcoe(system, params, lifetime=n):.3f} $/kWh")


if __name__ == "__main__":
    main()
