"""Physical constants (SI) and unit helpers."""

H = 6.62607015e-34        # Planck constant, J*s
C0 = 2.99792458e8         # speed of light in vacuum, m/s
KB = 1.380649e-23         # Boltzmann constant, J/K
Q = 1.602176634e-19       # elementary charge, C
SIGMA_SB = 5.670374419e-8  # Stefan-Boltzmann constant, W/m^2/K^4

# hc in eV*um: photon energy E[eV] = HC_EV_UM / wavelength[um]
HC_EV_UM = H * C0 / Q * 1e6   # = 1.23984...

T_ZERO_C = 273.15


def celsius_to_kelvin(t_c):
    """Convert a temperature from degC to K, rejecting values below 0 K."""
    t_k = t_c + T_ZERO_C
    if t_k <= 0:
        raise ValueError(f"temperature {t_c} degC is at or below absolute zero")
    return t_k


def bandgap_wavelength_um(e_g_ev):
    """Cutoff wavelength (um) for a bandgap in eV."""
    if e_g_ev <= 0:
        raise ValueError("bandgap must be positive")
    return HC_EV_UM / e_g_ev
