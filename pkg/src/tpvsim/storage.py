"""Thermal battery: stored heat, vessel geometry, material CapEx, and CPE.

The battery is molten/solid silicon in a SiC cylinder (height = inner
diameter) with fixed-thickness walls and end caps.  Stored heat combines
sensible heat from a tabulated c_p(T) and the latent heat of fusion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np

from .constants import T_ZERO_C

J_PER_KWH = 3.6e6

SCENARIOS = ("full", "no_sic", "no_materials")


@lru_cache(maxsize=None)
def _cp_table():
    path = resources.files("tpvsim") / "data" / "si_cp.csv"
    with path.open("rb") as f:
        arr = np.loadtxt(f, delimiter=",", skiprows=1)
    arr.setflags(write=False)
    return arr


def cp_silicon(t_k):
    """Specific heat of Si in J/(kg*K), interpolated from the shipped table."""
    tab = _cp_table()
    return np.interp(np.asarray(t_k, dtype=float), tab[:, 0], tab[:, 1])


@dataclass(frozen=True)
class BatterySpec:
    """Thermal battery configuration; temperatures in degC, costs per m^3."""

    m_si_kg: float
    t_h_c: float
    t_ini_c: float = 25.0
    wall_m: float = 0.1
    cost_si_per_m3: float = 20000.0
    cost_sic_per_m3: float = 35000.0
    rho_si: float = 2263.0
    rho_sic: float = 3210.0
    latent_kj_per_kg: float = 2000.0
    t_melt_c: float = 1410.0
    bop_factor: float = 0.20

    def __post_init__(self):
        if self.m_si_kg <= 0:
            raise ValueError("Si mass must be positive")
        if self.t_h_c < self.t_ini_c:
            raise ValueError("emission temperature below initial temperature")
        if self.wall_m <= 0:
            raise ValueError("wall thickness must be positive")
        if not 0 <= self.bop_factor:
            raise ValueError("balance-of-plant factor must be non-negative")


def stored_energy(spec: BatterySpec) -> float:
    """Total stored heat Q_h in kWh (sensible integral + latent term).

    Sensible heat is integrated on a <=1 K trapezoidal grid.  The latent
    term enters once, when heating from below the melting point to at or
    above it.
    """
    t0 = spec.t_ini_c + T_ZERO_C
    t1 = spec.t_h_c + T_ZERO_C
    q_j = 0.0
    if t1 > t0:
        n = max(2, int(math.ceil(t1 - t0)) + 1)
        grid = np.linspace(t0, t1, n)
        q_j = spec.m_si_kg * float(np.trapezoid(cp_silicon(grid), grid))
    t_melt = spec.t_melt_c
    if spec.t_ini_c < t_melt <= spec.t_h_c:
        q_j += spec.m_si_kg * spec.latent_kj_per_kg * 1e3
    return q_j / J_PER_KWH


def vessel_geometry(spec: BatterySpec):
    """Vessel dimensions for solid-Si fill: (V_Si m^3, V_SiC m^3, A_emit m^2).

    Cylinder with h = 2*r_i holds the Si; SiC adds a wall of fixed
    thickness on the side and both end caps.  A_emit is the outer lateral
    (emitting) area.
    """
    v_si = spec.m_si_kg / spec.rho_si
    r_i = (v_si / (2.0 * math.pi)) ** (1.0 / 3.0)
    h = 2.0 * r_i
    r_o = r_i + spec.wall_m
    v_sic = math.pi * (r_o**2 - r_i**2) * h + 2.0 * math.pi * r_o**2 * spec.wall_m
    a_emit = 2.0 * math.pi * r_o * h
    return v_si, v_sic, a_emit


def battery_capex(spec: BatterySpec, scenario: str = "full") -> float:
    """Material CapEx in $ for the chosen cost scenario, including BOP."""
    if scenario not in SCENARIOS:
        raise ValueError(f"unknown scenario {scenario!r}; pick from {SCENARIOS}")
    if scenario == "no_materials":
        return 0.0
    v_si, v_sic, _ = vessel_geometry(spec)
    cost = v_si * spec.cost_si_per_m3
    if scenario == "full":
        cost += v_sic * spec.cost_sic_per_m3
    return cost * (1.0 + spec.bop_factor)


def cpe(spec: BatterySpec, scenario: str = "full") -> float:
    """Cost per energy capacity, $/kWh of stored heat."""
    q_h = stored_energy(spec)
    if q_h <= 0:
        raise ZeroDivisionError("stored energy is zero; CPE undefined")
    return battery_capex(spec, scenario) / q_h
