"""Blackbody source modeling and spectral integration.

All spectral quantities live on wavelength grids in micrometers.  Spectral
exitance is expressed in W·m⁻²·μm⁻¹ so that trapezoidal integration over a
grid in μm yields W·m⁻².
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .constants import H, C0, KB, celsius_to_kelvin


def default_grid(n_points: int = 2000, lam_min: float = 0.3, lam_max: float = 100.0) -> np.ndarray:
    """Default wavelength grid: logarithmically spaced, 0.3-100 um, 2000 nodes.

    The long-wavelength end is generous so that the grid-truncated blackbody
    integral recovers the Stefan-Boltzmann total to 0.1% down to 800 degC.
    """
    if n_points < 2:
        raise ValueError("grid needs at least 2 points")
    return np.geomspace(lam_min, lam_max, n_points)


@dataclass(frozen=True)
class Spectrum:
    """Per-wavelength values on a strictly ascending grid.

    Units of ``values`` depend on the quantity: W·m⁻²·μm⁻¹ for spectral
    exitance, dimensionless for absorptance/reflectance.  Dimensionless
    spectra must stay within [0, 1] (1e-9 slack).
    """

    wavelengths: np.ndarray
    values: np.ndarray
    dimensionless: bool = False

    def __post_init__(self):
        wl = np.asarray(self.wavelengths, dtype=float)
        vals = np.asarray(self.values, dtype=float)
        if wl.ndim != 1 or vals.shape != wl.shape:
            raise ValueError("wavelengths and values must be 1-D and equal length")
        if wl.size and (np.any(wl <= 0) or np.any(np.diff(wl) <= 0)):
            raise ValueError("wavelengths must be strictly increasing and positive")
        if self.dimensionless and vals.size:
            if vals.min() < -1e-9 or vals.max() > 1 + 1e-9:
                raise ValueError("dimensionless spectrum outside [0, 1]")
        wl.setflags(write=False)
        vals.setflags(write=False)
        object.__setattr__(self, "wavelengths", wl)
        object.__setattr__(self, "values", vals)

    def __call__(self, lam):
        """Linear interpolation; clamps to end values outside the grid."""
        return np.interp(lam, self.wavelengths, self.values)

    def to_csv(self, path):
        """Write as two-column CSV (wavelength_um, value) with one header line."""
        arr = np.column_stack([self.wavelengths, self.values])
        np.savetxt(path, arr, delimiter=",", header="wavelength_um,value",
                   comments="", fmt="%.17g")

    @classmethod
    def from_csv(cls, path, dimensionless: bool = False) -> "Spectrum":
        arr = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        return cls(arr[:, 0], arr[:, 1], dimensionless=dimensionless)


@dataclass(frozen=True)
class BlackbodySource:
    """Blackbody emitter at temperature_c (degC) with a view factor in (0, 1]."""

    temperature_c: float
    view_factor: float = 1.0

    def __post_init__(self):
        celsius_to_kelvin(self.temperature_c)  # validates > 0 K
        if not 0.0 < self.view_factor <= 1.0:
            raise ValueError("view_factor must be in (0, 1]")

    @property
    def temperature_k(self) -> float:
        return celsius_to_kelvin(self.temperature_c)

    def exitance(self, lam_um) -> np.ndarray:
        """Spectral exitance (W·m⁻²·μm⁻¹) scaled by view factor."""
        return self.view_factor * planck_spectral_exitance(lam_um, self.temperature_k)


def planck_spectral_exitance(lam_um, t_k):
    """Planck spectral exitance of a blackbody, W·m⁻²·μm⁻¹.

    2*pi*h*c^2 / lam^5 / (exp(h*c/(lam*kB*T)) - 1), per micrometer of
    wavelength.  Scalar or array ``lam_um``.
    """
    lam = np.asarray(lam_um, dtype=float)
    if np.any(lam <= 0):
        raise ValueError("wavelength must be positive")
    if t_k <= 0:
        raise ValueError("temperature must be positive")
    lam_m = lam * 1e-6
    x = H * C0 / (lam_m * KB * t_k)
    # expm1 keeps the Rayleigh-Jeans end accurate; clip avoids overflow in
    # the deep Wien tail where the result underflows to 0 anyway.
    with np.errstate(over="ignore"):
        denom = np.expm1(np.minimum(x, 700.0))
    out = 2 * np.pi * H * C0**2 / lam_m**5 / denom * 1e-6
    return out if out.ndim else float(out)


class ResolutionError(ValueError):
    """Raised when the wavelength grid is too coarse to resolve a band."""


def band_power(source: BlackbodySource, lam_lo: float, lam_hi: float,
               weight: Spectrum | None = None,
               grid: np.ndarray | None = None) -> float:
    """Trapezoidal integral of weight * exitance over [lam_lo, lam_hi], W·m⁻².

    ``weight`` must be dimensionless; unity if omitted.  The integration grid
    is the weight's grid if given, else ``grid``, else the default grid.
    Band edges are inserted as extra nodes so that adjacent bands tile exactly.
    """
    if not 0 < lam_lo < lam_hi:
        raise ValueError("need 0 < lam_lo < lam_hi")
    if weight is not None and not weight.dimensionless:
        raise ValueError("weight spectrum must be dimensionless")
    if grid is None:
        grid = weight.wavelengths if weight is not None else default_grid()
    inside = grid[(grid >= lam_lo) & (grid <= lam_hi)]
    if inside.size < 2:
        raise ResolutionError(
            f"fewer than 2 grid nodes inside [{lam_lo}, {lam_hi}] um")
    nodes = inside
    if nodes[0] > lam_lo and lam_lo >= grid[0]:
        nodes = np.concatenate([[lam_lo], nodes])
    if nodes[-1] < lam_hi and lam_hi <= grid[-1]:
        nodes = np.concatenate([nodes, [lam_hi]])
    integrand = source.exitance(nodes)
    if weight is not None:
        integrand = integrand * weight(nodes)
    return float(np.trapezoid(integrand, nodes))


def photon_flux_above_gap(source: BlackbodySource, absorptance: Spectrum,
                          lam_g: float) -> float:
    """Absorbed photon flux for wavelengths below lam_g, photons·s⁻¹·m⁻².

    Integrates absorptance * exitance * lam/(hc) from the grid start to the
    bandgap wavelength.
    """
    grid = absorptance.wavelengths
    if not grid[0] <= lam_g <= grid[-1]:
        raise ValueError("lam_g outside the absorptance grid")
    nodes = grid[grid <= lam_g]
    if nodes.size < 2:
        raise ResolutionError("fewer than 2 grid nodes below lam_g")
    if nodes[-1] < lam_g:
        nodes = np.concatenate([nodes, [lam_g]])
    # lam in um -> photon energy hc/lam; exitance per um; flux per m^2
    energy_j = H * C0 / (nodes * 1e-6)
    integrand = absorptance(nodes) * source.exitance(nodes) / energy_j
    return float(np.trapezoid(integrand, nodes))
