"""Optical material models: tabulated dispersions plus free-carrier absorption.

Dispersion tables ship as CSV assets (wavelength_um, n, k) under
``tpvsim/data`` and are interpolated linearly in wavelength.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np

_DATA = resources.files("tpvsim") / "data"


@lru_cache(maxsize=None)
def _load_nk(name: str):
    with (_DATA / name).open("rb") as f:
        arr = np.loadtxt(f, delimiter=",", skiprows=1)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class DrudeFcaParams:
    """Power-law free-carrier absorption: alpha = C * N * lam**gamma.

    C in cm^-1 per (carrier/cm^3) per um^gamma, N in cm^-3, lam in um.
    """

    C: float
    gamma: float
    N: float

    def __post_init__(self):
        if self.C <= 0 or self.gamma <= 0 or self.N < 0:
            raise ValueError("need C > 0, gamma > 0, N >= 0")


# Default calibrated so the 500-um absorber stack lands below 92% weighted
# out-of-band reflectance while <=150-um stacks stay above 98%.
DEFAULT_FCA = DrudeFcaParams(C=4.5e-18, gamma=2.0, N=1e16)


def fca_absorption(lam_um, params: DrudeFcaParams):
    """Free-carrier absorption coefficient and extinction at a wavelength.

    Returns (alpha in cm^-1, dimensionless k).  k = alpha*lam/(4*pi) with
    alpha converted to um^-1 so the length units cancel.
    """
    lam = np.asarray(lam_um, dtype=float)
    if np.any(lam <= 0):
        raise ValueError("wavelength must be positive")
    alpha_cm = params.C * params.N * lam**params.gamma
    k = alpha_cm * 1e-4 * lam / (4 * np.pi)
    if np.ndim(lam_um) == 0:
        return float(alpha_cm), float(k)
    return alpha_cm, k


class Material:
    """Named optical model yielding a complex index n + ik per wavelength."""

    name = "material"

    def nk(self, lam_um) -> np.ndarray:
        raise NotImplementedError


class TabulatedMaterial(Material):
    def __init__(self, csv_name: str, name: str):
        self.name = name
        self._table = _load_nk(csv_name)

    def nk(self, lam_um):
        lam = np.atleast_1d(np.asarray(lam_um, dtype=float))
        t = self._table
        n = np.interp(lam, t[:, 0], t[:, 1])
        k = np.interp(lam, t[:, 0], t[:, 2])
        return n + 1j * k


class Silicon(TabulatedMaterial):
    """Crystalline Si: tabulated base index plus optional FCA extinction.

    ``interband_scale`` multiplies the tabulated (interband) extinction to
    model path-length enhancement from surface texturing in thin absorbers;
    1.0 means a planar untextured slab.  The FCA term is never scaled.
    """

    def __init__(self, fca: DrudeFcaParams | None = DEFAULT_FCA,
                 interband_scale: float = 1.0):
        super().__init__("si_nk.csv", "Si")
        if interband_scale <= 0:
            raise ValueError("interband_scale must be positive")
        self.fca = fca
        self.interband_scale = interband_scale
        if fca is not None:
            self.name = f"Si(N={fca.N:.3g}cm-3)"

    def nk(self, lam_um):
        base = super().nk(lam_um)
        if self.interband_scale != 1.0:
            base = base.real + 1j * (base.imag * self.interband_scale)
        if self.fca is None:
            return base
        lam = np.atleast_1d(np.asarray(lam_um, dtype=float))
        _, k_fca = fca_absorption(lam, self.fca)
        return base + 1j * k_fca


class Gold(TabulatedMaterial):
    def __init__(self):
        super().__init__("au_nk.csv", "Au")


class ConstantIndex(Material):
    def __init__(self, n: float = 1.0, k: float = 0.0, name: str = "air"):
        if k < 0:
            raise ValueError("extinction must be non-negative (passive media)")
        self.n = n
        self.k = k
        self.name = name

    def nk(self, lam_um):
        lam = np.atleast_1d(np.asarray(lam_um, dtype=float))
        return np.full(lam.shape, self.n + 1j * self.k)


AIR = ConstantIndex(1.0, 0.0, "air")
