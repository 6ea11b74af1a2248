"""Single-diode TPV cell model with series resistance and self-heating.

Current densities are A/cm², power densities W/cm², voltages V.  The diode
equation is solved per voltage point by bracketed root finding; the maximum
power point by golden-section search on the (unimodal) P(V) curve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace, field

import numpy as np
from scipy.optimize import brentq

from .constants import Q, KB, T_ZERO_C, celsius_to_kelvin, bandgap_wavelength_um
from .materials import DrudeFcaParams, DEFAULT_FCA
from .optics import airbridge_stack, absorptance_spectrum
from .radiometry import (Spectrum, BlackbodySource, band_power,
                         photon_flux_above_gap, default_grid)

T_REF_K = 298.15


class SolverError(RuntimeError):
    pass


class ThermalRunawayError(RuntimeError):
    def __init__(self, msg, last_iterates):
        super().__init__(f"{msg}; last junction temperatures {last_iterates} K")
        self.last_iterates = last_iterates


@dataclass(frozen=True)
class CellDesign:
    """Electrical/optical description of a TPV cell."""

    material: str                 # "Si" | "InGaAs"
    e_g_ev: float
    t_abs_um: float
    n_doping_cm3: float
    r_s_mohm_cm2: float
    v_oc_ref: float               # reference-cell calibration
    j_sc_ref: float
    ff_ref: float
    r_sh_ohm_cm2: float = math.inf
    ideality: float = 1.0
    iqe: float = 0.98
    airbridge_fill: float = 0.875
    # flat-band optical stand-in (used for InGaAs instead of a full stack)
    flat_oob_reflectance: float | None = None
    flat_inband_absorptance: float | None = None

    def __post_init__(self):
        if self.r_s_mohm_cm2 < 0:
            raise ValueError("R_s must be non-negative")
        if not 0 < self.iqe <= 1:
            raise ValueError("IQE must be in (0, 1]")
        if not 0 < self.airbridge_fill <= 1:
            raise ValueError("airbridge_fill must be in (0, 1]")

    @property
    def lam_g_um(self) -> float:
        return bandgap_wavelength_um(self.e_g_ev)

    @property
    def r_s_ohm_cm2(self) -> float:
        return self.r_s_mohm_cm2 * 1e-3


@dataclass(frozen=True)
class ThermalEnv:
    t_heatsink_c: float = 25.0
    theta_cm2k_per_w: float = 1.5    # thermal boundary resistance

    def __post_init__(self):
        if self.theta_cm2k_per_w < 0:
            raise ValueError("thermal resistance must be non-negative")


@dataclass(frozen=True)
class IVResult:
    v_oc: float
    j_sc: float
    ff: float
    v_f: float
    p_out: float
    p_diss_static: float
    p_abs: float
    eta: float
    t_j_c: float
    v_mpp: float
    j_mpp: float
    curve: np.ndarray       # (n, 2) columns V, J

    def __post_init__(self):
        if not 0 < self.ff < 1:
            raise ValueError(f"fill factor {self.ff} outside (0, 1)")
        if not 0 < self.v_f < 1:
            raise ValueError(f"voltage factor {self.v_f} outside (0, 1)")


def calibrate_dark_current(cell: CellDesign, t_k: float = T_REF_K) -> float:
    """Dark saturation current reproducing the reference V_oc at J_sc_ref."""
    if cell.v_oc_ref <= 0 or cell.j_sc_ref <= 0:
        raise ValueError("reference V_oc and J_sc must be set and positive")
    vt = cell.ideality * KB * t_k / Q
    x = cell.v_oc_ref / vt
    if x > 700:
        # scaled-log form: J0 = Jsc * exp(-x) to double precision
        return cell.j_sc_ref * math.exp(-x)
    return cell.j_sc_ref / math.expm1(x)


def scale_dark_current(j0_ref: float, e_g_ev: float, t_j_k: float,
                       t_ref_k: float = T_REF_K) -> float:
    """Diffusion-current temperature scaling, (T/Tref)^3 * exp(-Eg/kT) ratio."""
    arg = -e_g_ev * Q / KB * (1.0 / t_j_k - 1.0 / t_ref_k)
    return j0_ref * (t_j_k / t_ref_k) ** 3 * math.exp(arg)


# Cell front-side optics: textured absorber (interband path enhancement)
# plus a single-layer AR coat, calibrated against the efficiency sweep.
SI_CELL_INTERBAND_SCALE = 30.0
SI_CELL_AR_COAT = (1.9, 0.145)


def cell_absorptance(cell: CellDesign, fca: DrudeFcaParams | None = None,
                     grid=None) -> Spectrum:
    """Full-stack absorptance spectrum for this cell's optical model.

    Si cells use the air-bridge transfer-matrix stack with the textured
    front (AR coat plus interband path enhancement); cells with flat-band
    parameters use a two-level spectrum (in-band absorptance, flat OOB
    reflectance).
    """
    if grid is None:
        grid = default_grid()
    if cell.flat_oob_reflectance is not None:
        a_in = cell.flat_inband_absorptance
        a_in = 0.95 if a_in is None else a_in
        vals = np.where(grid <= cell.lam_g_um, a_in,
                        1.0 - cell.flat_oob_reflectance)
        return Spectrum(grid, vals, dimensionless=True)
    if fca is None:
        fca = DrudeFcaParams(C=DEFAULT_FCA.C, gamma=DEFAULT_FCA.gamma,
                             N=cell.n_doping_cm3)
    stack = airbridge_stack(cell.t_abs_um, fca,
                            interband_scale=SI_CELL_INTERBAND_SCALE,
                            ar_coat=SI_CELL_AR_COAT)
    return absorptance_spectrum(stack, grid)


def photocurrent(cell: CellDesign, source: BlackbodySource,
                 absorptance: Spectrum) -> float:
    """Photocurrent density in A/cm² from the absorbed above-gap photon flux."""
    flux = photon_flux_above_gap(source, absorptance, cell.lam_g_um)
    return Q * cell.airbridge_fill * cell.iqe * flux * 1e-4


def absorbed_power(cell: CellDesign, source: BlackbodySource,
                   absorptance: Spectrum) -> float:
    """Total absorbed radiant power density, W/cm² (area-fill weighted)."""
    wl = absorptance.wavelengths
    p = band_power(source, wl[0], wl[-1], weight=absorptance)
    return cell.airbridge_fill * p * 1e-4


def _diode_current(v: float, j_ph: float, j_0: float, cell: CellDesign,
                   vt: float) -> float:
    """Solve J = Jph - J0*(exp((V+J*Rs)/vt)-1) - (V+J*Rs)/Rsh by bracketing."""
    rs = cell.r_s_ohm_cm2
    rsh = cell.r_sh_ohm_cm2

    def resid(j):
        vj = v + j * rs
        return j_ph - j_0 * math.expm1(min(vj / vt, 700.0)) - vj / rsh - j

    hi = j_ph if j_ph > 0 else 1.0
    lo = -max(j_ph, 1.0)
    for _ in range(80):
        if resid(lo) >= 0:
            break
        lo *= 2.0
    else:
        raise SolverError(f"no lower bracket for V={v}")
    if resid(hi) > 0:
        return hi  # V so negative the cell saturates at Jph
    return brentq(resid, lo, hi, xtol=1e-15, rtol=1e-15, maxiter=200)


def open_circuit_voltage(j_ph: float, j_0: float, cell: CellDesign,
                         vt: float) -> float:
    if math.isinf(cell.r_sh_ohm_cm2):
        return vt * math.log1p(j_ph / j_0)
    f = lambda v: j_ph - j_0 * math.expm1(min(v / vt, 700.0)) - v / cell.r_sh_ohm_cm2
    v_ideal = vt * math.log1p(j_ph / j_0)
    return brentq(f, 0.0, v_ideal + 1e-9, xtol=1e-14)


def _mpp(j_ph, j_0, cell, vt, v_oc, tol=1e-6):
    """Golden-section maximum of P(V) on [0, V_oc]; ties toward lower V."""
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = 0.0, v_oc
    p = lambda v: v * _diode_current(v, j_ph, j_0, cell, vt)
    c = b - phi * (b - a)
    d = a + phi * (b - a)
    fc, fd = p(c), p(d)
    while b - a > tol:
        if fc >= fd:      # >= keeps ties toward lower V
            b, d, fd = d, c, fc
            c = b - phi * (b - a)
            fc = p(c)
        else:
            a, c, fc = c, d, fd
            d = a + phi * (b - a)
            fd = p(d)
    v = 0.5 * (a + b)
    return v, _diode_current(v, j_ph, j_0, cell, vt)


def solve_iv(j_ph: float, j_0: float, cell: CellDesign, t_j_k: float,
             n_points: int = 200) -> IVResult:
    """Solve the J-V curve and its maximum power point at fixed T_j."""
    if j_ph < 0:
        raise ValueError("photocurrent must be non-negative")
    vt = cell.ideality * KB * t_j_k / Q
    v_oc = open_circuit_voltage(j_ph, j_0, cell, vt)
    j_sc = _diode_current(0.0, j_ph, j_0, cell, vt)
    v_mpp, j_mpp = _mpp(j_ph, j_0, cell, vt, v_oc)
    p_out = v_mpp * j_mpp
    # denser sampling near V_oc where the knee lives
    vgrid = v_oc * (1.0 - np.cos(np.linspace(0.0, np.pi / 2, n_points)))
    curve = np.column_stack([vgrid,
                             [_diode_current(v, j_ph, j_0, cell, vt) for v in vgrid]])
    ff = p_out / (v_oc * j_sc) if v_oc > 0 and j_sc > 0 else float("nan")
    return IVResult(
        v_oc=v_oc, j_sc=j_sc, ff=ff, v_f=v_oc / cell.e_g_ev,
        p_out=p_out, p_diss_static=float("nan"), p_abs=float("nan"),
        eta=float("nan"), t_j_c=t_j_k - T_ZERO_C,
        v_mpp=v_mpp, j_mpp=j_mpp, curve=curve)


def operating_point(cell: CellDesign, source: BlackbodySource,
                    absorptance: Spectrum, env: ThermalEnv = ThermalEnv(),
                    max_iter: int = 200) -> IVResult:
    """Self-consistent operating point with junction self-heating.

    Fixed-point iteration: T_j = T_heatsink + theta * (P_abs - P_out),
    re-solving the maximum power point each pass, until |dT_j| < 0.01 K.
    """
    j_ph = photocurrent(cell, source, absorptance)
    p_abs = absorbed_power(cell, source, absorptance)
    j0_ref = calibrate_dark_current(cell)
    t_hs_k = celsius_to_kelvin(env.t_heatsink_c)
    t_j = t_hs_k
    history = [t_j]
    for _ in range(max_iter):
        j_0 = scale_dark_current(j0_ref, cell.e_g_ev, t_j)
        vt = cell.ideality * KB * t_j / Q
        v_oc = open_circuit_voltage(j_ph, j_0, cell, vt)
        v_mpp, j_mpp = _mpp(j_ph, j_0, cell, vt, v_oc)
        p_out = v_mpp * j_mpp
        t_new = t_hs_k + env.theta_cm2k_per_w * max(p_abs - p_out, 0.0)
        history.append(t_new)
        if abs(t_new - t_j) < 0.01:
            t_j = t_new
            break
        if t_new > 2000.0 + T_ZERO_C:
            raise ThermalRunawayError("junction temperature diverging",
                                      history[-2:])
        t_j = t_new
    else:
        raise ThermalRunawayError("self-heating iteration did not converge",
                                  history[-2:])
    res = solve_iv(j_ph, scale_dark_current(j0_ref, cell.e_g_ev, t_j),
                   cell, t_j)
    p_diss = p_abs - res.p_out
    return replace(res, p_diss_static=p_diss, p_abs=p_abs,
                   eta=res.p_out / p_abs, t_j_c=t_j - T_ZERO_C)


def fom_decomposition(result: IVResult, se: float, iqe: float):
    """Figure-of-merit factors (SE*IQE, V_F*FF) and their product."""
    se_iqe = se * iqe
    vf_ff = result.v_f * result.ff
    eta_product = se_iqe * vf_ff
    residual = eta_product - result.eta if math.isfinite(result.eta) else float("nan")
    return {"se_iqe": se_iqe, "vf_ff": vf_ff, "eta_product": eta_product,
            "eta_residual": residual}


def power_density_map(cell: CellDesign, t_bb_values, r_s_values,
                      env: ThermalEnv = ThermalEnv(), grid=None,
                      fca: DrudeFcaParams | None = None):
    """Dense grid of operating points over (T_BB, R_s).

    Returns dict of 2-D arrays indexed [i_tbb, i_rs]; per-cell solver
    failures are collected in ``errors`` as (i, j, message) and the
    corresponding entries are NaN.
    """
    t_bb_values = list(t_bb_values)
    r_s_values = list(r_s_values)
    if not t_bb_values or not r_s_values:
        raise ValueError("sweep axes must be non-empty")
    shape = (len(t_bb_values), len(r_s_values))
    p_out = np.full(shape, np.nan)
    eta = np.full(shape, np.nan)
    errors = []
    absorp = cell_absorptance(cell, fca=fca, grid=grid)
    for i, t_bb in enumerate(t_bb_values):
        source = BlackbodySource(float(t_bb))
        for j, r_s in enumerate(r_s_values):
            c = replace(cell, r_s_mohm_cm2=float(r_s))
            try:
                res = operating_point(c, source, absorp, env)
            except (SolverError, ThermalRunawayError, ValueError) as exc:
                errors.append((i, j, str(exc)))
                continue
            p_out[i, j] = res.p_out
            eta[i, j] = res.eta
    return {"t_bb_c": np.array(t_bb_values, dtype=float),
            "r_s_mohm_cm2": np.array(r_s_values, dtype=float),
            "p_out": p_out, "eta": eta, "errors": errors}


# --- cell presets ---------------------------------------------------------

def si_reference() -> CellDesign:
    """Conventional 1-sun Si solar cell used only for dark-current calibration."""
    return CellDesign(
        material="Si", e_g_ev=1.12, t_abs_um=200.0, n_doping_cm3=1e16,
        r_s_mohm_cm2=417.27, v_oc_ref=0.67, j_sc_ref=0.036, ff_ref=0.821,
        ideality=1.0, iqe=0.98, airbridge_fill=1.0)


def si_default() -> CellDesign:
    """Thin air-bridge Si TPV cell (50 um absorber)."""
    return CellDesign(
        material="Si", e_g_ev=1.12, t_abs_um=50.0, n_doping_cm3=1e16,
        r_s_mohm_cm2=80.6, v_oc_ref=0.67, j_sc_ref=0.036, ff_ref=0.821,
        ideality=1.0, iqe=0.98, airbridge_fill=0.875)


def ingaas_default() -> CellDesign:
    """Air-bridge InGaAs benchmark cell with a flat-band optical stand-in."""
    return CellDesign(
        material="InGaAs", e_g_ev=0.74, t_abs_um=2.0, n_doping_cm3=1e17,
        r_s_mohm_cm2=7.0, v_oc_ref=0.48, j_sc_ref=1.0, ff_ref=0.80,
        ideality=1.0, iqe=0.98, airbridge_fill=1.0,
        flat_oob_reflectance=0.99, flat_inband_absorptance=0.95)


CELL_PRESETS = {
    "si_reference": si_reference,
    "si_default": si_default,
    "ingaas_default": ingaas_default,
}
