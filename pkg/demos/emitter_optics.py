"""Out-of-band photon recycling of the air-bridge stack.

Walks the absorber thickness and emitter temperature, printing the
blackbody-weighted out-of-band reflectance and the spectral efficiency.
Thin absorbers recycle sub-gap photons well; thick ones lose them to
free-carrier absorption.
"""

from tpvsim import BlackbodySource, airbridge_stack, default_grid, r_oob, \
    spectral_efficiency
from tpvsim.device import si_default

LAM_G = si_default().lam_g_um
GRID = default_grid(600)


def main():
    temps = [1000, 1200, 1400, 1600, 1800]
    print("R_OOB (blackbody-weighted, sub-gap)")
    print("t_Si[um] " + "".join(f"{t:>9}C" for t in temps))
    for t_si in (10, 50, 150, 200, 500):
        stack = airbridge_stack(float(t_si))
        row = [r_oob(stack, BlackbodySource(float(t)), LAM_G, GRID)
               for t in temps]
        print(f"{t_si:>8} " + "".join(f"{v:>10.4f}" for v in row))

    print("\nSpectral efficiency, 50 um absorber")
    stack = airbridge_stack(50.0)
    for t in temps:
        se = spectral_efficiency(stack, BlackbodySource(float(t)), LAM_G,
                                 GRID)
        print(f"  T_BB = {t} C  SE = {se:.3f}")


if __name__ == "__main__":
    main()
