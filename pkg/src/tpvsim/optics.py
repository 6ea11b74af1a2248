"""Transfer-matrix optics for the air-bridge stack.

Thin films are treated coherently (field matrices); layers much thicker than
the wavelength (default threshold 10 um) are treated incoherently via
intensity propagation, which removes the unphysical interference fringes a
fully coherent solve would produce for 100-um-scale layers.

Normal incidence only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .constants import bandgap_wavelength_um
from .materials import (Material, Silicon, Gold, AIR, ConstantIndex,
                        DrudeFcaParams, DEFAULT_FCA)
from .radiometry import Spectrum, BlackbodySource, band_power, default_grid

COHERENCE_THICKNESS_UM = 10.0


class NumericalError(RuntimeError):
    """NaN/Inf encountered in a transfer-matrix solve."""


class UndefinedSpectralEfficiencyError(ZeroDivisionError):
    """Spectral efficiency is undefined when the stack absorbs nothing."""


@dataclass(frozen=True)
class Layer:
    """One layer of a stack.  thickness_um = inf marks a terminal medium."""

    material: Material
    thickness_um: float
    coherence: str = "auto"   # auto | coherent | incoherent

    def __post_init__(self):
        if self.thickness_um <= 0:
            raise ValueError("layer thickness must be positive")
        if self.coherence not in ("auto", "coherent", "incoherent"):
            raise ValueError(f"bad coherence flag {self.coherence!r}")

    @property
    def is_terminal(self) -> bool:
        return math.isinf(self.thickness_um)

    @property
    def incoherent(self) -> bool:
        if self.is_terminal:
            return True
        if self.coherence == "auto":
            return self.thickness_um > COHERENCE_THICKNESS_UM
        return self.coherence == "incoherent"


@dataclass(frozen=True)
class Stack:
    """Ordered layers, outermost (incidence side) first.

    First and last layers must be semi-infinite terminal media.
    """

    layers: tuple
    name: str = "stack"

    def __post_init__(self):
        layers = tuple(self.layers)
        object.__setattr__(self, "layers", layers)
        if len(layers) < 3:
            raise ValueError("stack needs at least ambient, one film, substrate")
        if not (layers[0].is_terminal and layers[-1].is_terminal):
            raise ValueError("first and last layers must be semi-infinite")
        if any(l.is_terminal for l in layers[1:-1]):
            raise ValueError("interior layers must have finite thickness")


@dataclass(frozen=True)
class TmmResult:
    wavelengths: np.ndarray
    R: np.ndarray
    T: np.ndarray
    A_layers: np.ndarray    # (n_interior_layers, nlam), stack order

    @property
    def A_total(self):
        return self.A_layers.sum(axis=0)


def _coh_solve(n_list, d_list, lam):
    """Coherent normal-incidence TMM.

    n_list: list of (nlam,) complex index arrays, ambient..substrate.
    d_list: interior thicknesses (um).  Returns (R, T, layer_abs) with
    layer_abs of shape (len(d_list), nlam); all normalized to unit incident
    power in the ambient medium.
    """
    nlam = n_list[0].shape[0]
    G = len(d_list)

    def dmat(na, nb):
        r = (na - nb) / (na + nb)
        t = 2 * na / (na + nb)
        m = np.empty((nlam, 2, 2), dtype=complex)
        m[:, 0, 0] = 1.0 / t
        m[:, 0, 1] = r / t
        m[:, 1, 0] = r / t
        m[:, 1, 1] = 1.0 / t
        return m

    def pmat(nj, dj):
        delta = 2 * np.pi * nj * dj / lam
        # clamp decay so e^{+i delta} cannot overflow for opaque films
        delta = np.where(delta.imag > 40.0, delta.real + 40.0j, delta)
        m = np.zeros((nlam, 2, 2), dtype=complex)
        m[:, 0, 0] = np.exp(-1j * delta)
        m[:, 1, 1] = np.exp(1j * delta)
        return m

    M = dmat(n_list[0], n_list[1])
    for j in range(G):
        M = M @ pmat(n_list[j + 1], d_list[j]) @ dmat(n_list[j + 1], n_list[j + 2])
    t = 1.0 / M[:, 0, 0]
    r = M[:, 1, 0] / M[:, 0, 0]
    R = np.abs(r) ** 2
    n0_re = n_list[0].real
    T = n_list[-1].real * np.abs(t) ** 2 / n0_re

    # amplitudes at the top of each interior layer, then flux differences
    layer_abs = np.zeros((G, nlam))
    if G:
        def flux(nj, v, w):
            # normal-incidence Poynting flux, normalized to unit incidence
            return ((v + w) * np.conj(nj * (v - w))).real / n0_re

        # amplitudes at the top of each layer, built upward from the
        # substrate side (numerically stable: the dominant forward wave
        # grows, the backward wave decays)
        fluxes = np.empty((G + 1, nlam))
        cur = np.stack([t, np.zeros(nlam, complex)], axis=-1)[..., None]
        fluxes[G] = flux(n_list[-1], cur[:, 0, 0], cur[:, 1, 0])   # = T
        for j in range(G, 0, -1):
            cur = pmat(n_list[j], d_list[j - 1]) @ dmat(n_list[j], n_list[j + 1]) @ cur
            fluxes[j - 1] = flux(n_list[j], cur[:, 0, 0], cur[:, 1, 0])
        for j in range(G):
            layer_abs[j] = fluxes[j] - fluxes[j + 1]
    return R, T, layer_abs


def tmm_solve(stack: Stack, lam) -> TmmResult:
    """Solve R, T and per-interior-layer absorptance at each wavelength.

    Coherent sub-stacks are resolved with field matrices; incoherent layers
    are chained with intensity transfer.  R + T + sum(A) = 1 to float
    precision.
    """
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    nlam = lam.size
    layers = stack.layers
    nks = [np.atleast_1d(l.material.nk(lam)) * np.ones(nlam) for l in layers]
    for i, nk in enumerate(nks):
        if np.any(nk.imag < -1e-12):
            raise ValueError(f"layer {i} ({layers[i].material.name}): k < 0")

    # partition into incoherent media separated by coherent groups
    incoh_idx = [i for i, l in enumerate(layers) if l.incoherent]
    groups = []   # coherent layer indices between consecutive incoherent media
    for a, b in zip(incoh_idx[:-1], incoh_idx[1:]):
        groups.append(list(range(a + 1, b)))
    K = len(groups)                     # number of interfaces
    n_media = len(incoh_idx)            # K + 1

    # interface R/T (and per-coherent-layer absorption) in both directions
    Rf = np.empty((K, nlam)); Tf = np.empty((K, nlam))
    Rb = np.empty((K, nlam)); Tb = np.empty((K, nlam))
    abs_f = []; abs_b = []
    for j, grp in enumerate(groups):
        # incoherent media enter interface solves with Re(n) only; their bulk
        # loss is carried by the attenuation factors, keeping the intensity
        # ladder exactly energy-conserving
        ns_f = ([nks[incoh_idx[j]].real + 0j] + [nks[g] for g in grp]
                + [nks[incoh_idx[j + 1]].real + 0j])
        ds = [layers[g].thickness_um for g in grp]
        Rf[j], Tf[j], af = _coh_solve(ns_f, ds, lam)
        Rb[j], Tb[j], ab = _coh_solve(ns_f[::-1], ds[::-1], lam)
        abs_f.append(af)
        abs_b.append(ab[::-1])   # back to stack order

    # attenuation through interior incoherent media
    tau = np.ones((n_media, nlam))
    for m, idx in enumerate(incoh_idx):
        if not layers[idx].is_terminal:
            k = nks[idx].imag
            tau[m] = np.exp(-4 * np.pi * k * layers[idx].thickness_um / lam)

    # ladder: unknowns D_1..D_{K-1}, U_0..U_{K-2}; D_0 = 1, U_{K-1} = 0
    nun = 2 * (K - 1)
    D = np.zeros((K, nlam)); U = np.zeros((K, nlam))
    D[0] = 1.0
    if nun:
        A = np.zeros((nlam, nun, nun))
        bvec = np.zeros((nlam, nun))
        iD = lambda m: m - 1          # D_m, m = 1..K-1
        iU = lambda m: (K - 1) + m    # U_m, m = 0..K-2
        row = 0
        for m in range(1, K):
            # D_m - tau_m*(Tf_{m-1} D_{m-1} + Rb_{m-1} U_{m-1}) = 0
            A[:, row, iD(m)] = 1.0
            if m - 1 >= 1:
                A[:, row, iD(m - 1)] -= tau[m] * Tf[m - 1]
            else:
                bvec[:, row] += tau[m] * Tf[0]
            if m - 1 <= K - 2:
                A[:, row, iU(m - 1)] -= tau[m] * Rb[m - 1]
            row += 1
            # U_{m-1} - tau_m*(Rf_m D_m + Tb_m U_m) = 0
            A[:, row, iU(m - 1)] = 1.0
            A[:, row, iD(m)] -= tau[m] * Rf[m]
            if m <= K - 2:
                A[:, row, iU(m)] -= tau[m] * Tb[m]
            row += 1
        sol = np.linalg.solve(A, bvec[..., None])[..., 0]
        for m in range(1, K):
            D[m] = sol[:, iD(m)]
        for m in range(K - 1):
            U[m] = sol[:, iU(m)]

    R = Rf[0] * D[0] + Tb[0] * U[0]
    T = Tf[K - 1] * D[K - 1]

    A_layers = np.zeros((len(layers) - 2, nlam))
    # interior incoherent media
    for m in range(1, K):
        idx = incoh_idx[m]
        in_top = Tf[m - 1] * D[m - 1] + Rb[m - 1] * U[m - 1]
        in_bot = Rf[m] * D[m] + (Tb[m] * U[m] if m <= K - 2 else 0.0)
        A_layers[idx - 1] = (1.0 - tau[m]) * (in_top + in_bot)
    # coherent layers
    for j, grp in enumerate(groups):
        for gi, g in enumerate(grp):
            A_layers[g - 1] = abs_f[j][gi] * D[j] + abs_b[j][gi] * U[j]

    for name, arr in (("R", R), ("T", T), ("A", A_layers)):
        if not np.all(np.isfinite(arr)):
            bad = int(np.argwhere(~np.isfinite(arr))[0][-1])
            raise NumericalError(
                f"non-finite {name} at wavelength {lam[bad]:.4g} um in {stack.name}")
    return TmmResult(lam, R, T, A_layers)


def airbridge_stack(t_si_um: float, fca: DrudeFcaParams = DEFAULT_FCA,
                    t_gap_um: float = 600.0, t_au_um: float = 1.0,
                    interband_scale: float = 1.0,
                    ar_coat=None) -> Stack:
    """Air / Si absorber / air gap / Au mirror / Si wafer substrate.

    ``interband_scale`` models texture-induced path enhancement of the
    absorber's interband extinction (FCA unaffected).  ``ar_coat`` adds
    front dielectric coatings, one (n, thickness_um) pair or a sequence of
    them ordered from the ambient side inward, all coherent.
    """
    si = Silicon(fca, interband_scale=interband_scale)
    front: tuple[Layer, ...] = (Layer(AIR, math.inf),)
    if ar_coat is not None:
        if np.isscalar(ar_coat[0]):
            ar_coat = (ar_coat,)
        for i, (n_ar, t_ar) in enumerate(ar_coat):
            front = front + (Layer(ConstantIndex(n_ar, 0.0, f"arc{i}"), t_ar),)
    return Stack(
        layers=front + (
            Layer(si, t_si_um),
            Layer(AIR, t_gap_um),
            Layer(Gold(), t_au_um),
            Layer(Silicon(fca), math.inf),
        ),
        name=f"airbridge_tSi={t_si_um:g}um",
    )


def absorptance_spectrum(stack: Stack, grid=None) -> Spectrum:
    """Full-stack absorptance per wavelength (1 - R - T)."""
    if grid is None:
        grid = default_grid()
    res = tmm_solve(stack, grid)
    a = 1.0 - res.R - res.T
    return Spectrum(grid, np.clip(a, 0.0, 1.0), dimensionless=True)


def reflectance_spectrum(stack: Stack, grid=None) -> Spectrum:
    if grid is None:
        grid = default_grid()
    res = tmm_solve(stack, grid)
    return Spectrum(grid, np.clip(res.R, 0.0, 1.0), dimensionless=True)


def r_oob(stack: Stack, source: BlackbodySource, lam_g: float,
          grid=None) -> float:
    """Blackbody-weighted mean reflectance beyond the bandgap wavelength."""
    refl = reflectance_spectrum(stack, grid)
    lam_max = refl.wavelengths[-1]
    num = band_power(source, lam_g, lam_max, weight=refl)
    den = band_power(source, lam_g, lam_max, grid=refl.wavelengths)
    return num / den


def spectral_efficiency(stack: Stack, source: BlackbodySource, lam_g: float,
                        grid=None) -> float:
    """In-band absorbed power over total absorbed power, in [0, 1]."""
    absor = absorptance_spectrum(stack, grid)
    lam_min, lam_max = absor.wavelengths[0], absor.wavelengths[-1]
    total = band_power(source, lam_min, lam_max, weight=absor)
    if total <= 0.0:
        raise UndefinedSpectralEfficiencyError(
            "stack absorbs no power; spectral efficiency undefined")
    in_band = band_power(source, lam_min, lam_g, weight=absor)
    return in_band / total
