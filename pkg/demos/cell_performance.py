"""Cell operating points across emitter temperature and series resistance.

Solves the self-heated diode model for the thin Si cell, showing how the
efficiency optimum shifts to hotter emitters as series resistance drops,
and how the junction runs above the heatsink.
"""

import dataclasses

from tpvsim import BlackbodySource, cell_absorptance, default_grid, \
    operating_point
from tpvsim.device import si_default


def main():
    cell = si_default()
    absorp = cell_absorptance(cell, grid=default_grid())
    temps = range(1100, 1901, 100)
    print("efficiency vs T_BB")
    print("T_BB[C]  " + "".join(f"Rs={rs:>5g} " for rs in (10, 30, 80.6)))
    for t in temps:
        src = BlackbodySource(float(t))
        row = []
        for rs in (10.0, 30.0, 80.6):
            c = dataclasses.replace(cell, r_s_mohm_cm2=rs)
            row.append(operating_point(c, src, absorp).eta)
        print(f"{t:>7}  " + " ".join(f"{v:>8.3f}" for v in row))

    iv = operating_point(cell, BlackbodySource(1800.0), absorp)
    print(f"\npractical cell at 1800 C:")
    print(f"  V_oc = {iv.v_oc:.3f} V, J_sc = {iv.j_sc:.2f} A/cm2, "
          f"FF = {iv.ff:.3f}")
    print(f"  P_out = {iv.p_out:.2f} W/cm2 of {iv.p_abs:.2f} absorbed "
          f"(eta = {iv.eta:.1%})")
    print(f"  junction at {iv.t_j_c:.1f} C on a 25 C heatsink")


if __name__ == "__main__":
    main()
