"""Thermal battery sizing: capacity, vessel geometry, and cost per kWh.

Sweeps the silicon mass from 1 t to 10 kt at a 1800 C fill temperature.
Capacity grows linearly with mass while the emitting surface grows as
mass^(2/3), so cost per stored kWh falls with scale.
"""

from tpvsim import BatterySpec, battery_capex, cpe, stored_energy, \
    vessel_geometry


def main():
    print(f"{'m_Si[kg]':>10} {'Q_h[MWh]':>10} {'r_i[m]':>7} {'A_emit[m2]':>11} "
          f"{'CapEx[$M]':>10} {'CPE[$/kWh]':>11}")
    for m in (1e3, 1e4, 1e5, 1e6, 1e7):
        spec = BatterySpec(m_si_kg=m, t_h_c=1800.0)
        q = stored_energy(spec)
        v_si, _, a_emit = vessel_geometry(spec)
        r_i = (v_si / (2 * 3.141592653589793)) ** (1 / 3)
        capex = battery_capex(spec)
        print(f"{m:>10.0e} {q/1e3:>10.1f} {r_i:>7.2f} {a_emit:>11.1f} "
              f"{capex/1e6:>10.3f} {cpe(spec):>11.2f}")

    spec = BatterySpec(m_si_kg=1e5, t_h_c=1800.0)
    frozen = BatterySpec(m_si_kg=1e5, t_h_c=1409.999)
    melted = BatterySpec(m_si_kg=1e5, t_h_c=1410.0)
    print("\nlatent heat at the melting point:")
    print(f"  just below melt: {stored_energy(frozen):,.0f} kWh")
    print(f"  at melt:         {stored_energy(melted):,.0f} kWh "
          f"(+{spec.m_si_kg * spec.latent_kj_per_kg / 3600:,.0f} kWh latent)")


if __name__ == "__main__":
    main()
