"""Thermophotovoltaic system simulator.

Physics-to-economics pipeline: multilayer thin-film optics for a hot
silicon emitter, a single-diode photovoltaic cell with self-heating,
latent-heat thermal storage sizing, and levelized cost metrics.
"""

from ._version import __version__
from .radiometry import (BlackbodySource, Spectrum, band_power, default_grid,
                         photon_flux_above_gap, planck_spectral_exitance)
from .optics import (Layer, Stack, airbridge_stack, tmm_solve, r_oob,
                     spectral_efficiency)
from .device import (CellDesign, IVResult, ThermalEnv, CELL_PRESETS,
                     cell_absorptance, operating_point, solve_iv,
                     fom_decomposition, power_density_map)
from .storage import (BatterySpec, SCENARIOS, battery_capex, cp_silicon, cpe,
                      stored_energy, vessel_geometry)
from .economics import (EconParams, SystemDesign, cpp, crf,
                        effective_dissipation, lcoe, lcos, round_trip)
from .config import RunConfig, SweepAxis, load_config, validate_config
from .sweep import SweepResult, run_sweep
from .presets import PRESETS

__all__ = [
    "__version__",
    "BlackbodySource", "Spectrum", "band_power", "default_grid",
    "photon_flux_above_gap", "planck_spectral_exitance",
    "Layer", "Stack", "airbridge_stack", "tmm_solve", "r_oob",
    "spectral_efficiency",
    "CellDesign", "IVResult", "ThermalEnv", "CELL_PRESETS",
    "cell_absorptance", "operating_point", "solve_iv", "fom_decomposition",
    "power_density_map",
    "BatterySpec", "SCENARIOS", "battery_capex", "cp_silicon", "cpe",
    "stored_energy", "vessel_geometry",
    "EconParams", "SystemDesign", "cpp", "crf", "effective_dissipation",
    "lcoe", "lcos", "round_trip",
    "RunConfig", "SweepAxis", "load_config", "validate_config",
    "SweepResult", "run_sweep", "PRESETS",
]
