"""Sweep execution: Cartesian parameter grids through the full pipeline.

Rows are emitted in axis-major order (first axis slowest).  Failures are
recorded per row in an ``error`` column rather than dropped, and outputs
are deterministic: same config, same bytes.
"""

from __future__ import annotations

import dataclasses
import itertools
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._version import __version__
from .config import RunConfig
from .constants import bandgap_wavelength_um
from .device import (operating_point, cell_absorptance, SolverError,
                     ThermalRunawayError)
from .economics import (SystemDesign, effective_dissipation, round_trip,
                        cpp as cpp_metric, lcos as lcos_metric,
                        lcoe as lcoe_metric, InfeasibleDischargeError)
from .optics import (airbridge_stack, tmm_solve, UndefinedSpectralEfficiencyError,
                     NumericalError)
from .radiometry import (BlackbodySource, Spectrum, band_power, default_grid,
                         ResolutionError)
from .storage import stored_energy, cpe as cpe_metric, vessel_geometry

COLUMNS = {
    "optics": ("r_oob", "se", "a_total_peak"),
    "cell": ("eta", "p_out_w_cm2", "p_abs_w_cm2", "v_oc_v", "j_sc_a_cm2",
             "ff", "v_f", "t_j_c", "se"),
    "system": ("eta", "p_out_w_cm2", "p_out_eff_w_cm2", "p_diss_eff_w_cm2",
               "se", "q_h_kwh", "a_emit_m2", "system_power_mw", "eta_in",
               "eta_out", "eta_rt", "cpe_usd_per_kwh", "cpp_usd_per_w",
               "lcos_usd_per_kwh", "lcoe_usd_per_kwh"),
}

_EXPECTED = (SolverError, ThermalRunawayError, InfeasibleDischargeError,
             UndefinedSpectralEfficiencyError, NumericalError,
             ResolutionError, ValueError, ZeroDivisionError)


class SweepFailure(RuntimeError):
    """Raised when every cell of a sweep fails."""


def set_param(cfg: RunConfig, path: str, value) -> RunConfig:
    """Return a copy of the config with one dotted parameter path replaced."""
    cfg = dataclasses.replace(
        cfg, cell=dict(cfg.cell), thermal=dict(cfg.thermal),
        battery=dict(cfg.battery), econ=dict(cfg.econ), sweep=list(cfg.sweep))
    if "." in path:
        section, key = path.split(".", 1)
        if section not in ("cell", "thermal", "battery", "econ"):
            raise ValueError(f"unknown parameter section {section!r}")
        getattr(cfg, section)[key] = value
        # constructor re-validation happens lazily in build_*
        return cfg
    if not hasattr(cfg, path) or path == "sweep":
        raise ValueError(f"unknown parameter path {path!r}")
    setattr(cfg, path, value)
    return cfg


@dataclass
class SweepResult:
    config: RunConfig
    axis_names: list
    axis_grids: list
    columns: list
    rows: list           # list of dicts keyed by columns
    n_failed: int

    def as_table(self):
        """Rows as a list of lists following self.columns order."""
        return [[row.get(c) for c in self.columns] for row in self.rows]


class _Evaluator:
    """Caches spectra shared between sweep cells (optics dominate runtime)."""

    def __init__(self, base: RunConfig):
        self.base = base
        self.grid = default_grid(base.grid_points)
        self._absorp = {}
        self._bare = {}

    def _cell_absorptance(self, cell):
        key = (cell.material, cell.t_abs_um, cell.n_doping_cm3, cell.e_g_ev,
               cell.flat_oob_reflectance, cell.flat_inband_absorptance)
        if key not in self._absorp:
            self._absorp[key] = cell_absorptance(cell, grid=self.grid)
        return self._absorp[key]

    def _bare_stack_spectra(self, t_si_um):
        if t_si_um not in self._bare:
            stack = airbridge_stack(t_si_um)
            res = tmm_solve(stack, self.grid)
            R = Spectrum(self.grid, np.clip(res.R, 0.0, 1.0), dimensionless=True)
            A = Spectrum(self.grid, np.clip(res.A_total, 0.0, 1.0),
                         dimensionless=True)
            self._bare[t_si_um] = (R, A)
        return self._bare[t_si_um]

    def evaluate(self, cfg: RunConfig) -> dict:
        out = {}
        source = BlackbodySource(cfg.t_bb_c)
        lam_g = bandgap_wavelength_um(cfg.build_cell().e_g_ev)
        if cfg.kind == "optics":
            R, A = self._bare_stack_spectra(cfg.t_si_um)
            wl = self.grid
            oob_inc = band_power(source, lam_g, wl[-1], grid=wl)
            oob_ref = band_power(source, lam_g, wl[-1], weight=R)
            out["r_oob"] = oob_ref / oob_inc
            tot = band_power(source, wl[0], wl[-1], weight=A)
            if tot <= 0:
                raise UndefinedSpectralEfficiencyError(
                    "no absorbed power; SE undefined")
            out["se"] = band_power(source, wl[0], lam_g, weight=A) / tot
            out["a_total_peak"] = float(A.values.max())
            return out

        cell = cfg.build_cell()
        absorp = self._cell_absorptance(cell)
        iv = operating_point(cell, source, absorp, cfg.build_thermal())
        wl = self.grid
        tot = band_power(source, wl[0], wl[-1], weight=absorp)
        se = band_power(source, wl[0], lam_g, weight=absorp) / tot
        out.update(eta=iv.eta, p_out_w_cm2=iv.p_out, p_abs_w_cm2=iv.p_abs,
                   v_oc_v=iv.v_oc, j_sc_a_cm2=iv.j_sc, ff=iv.ff, v_f=iv.v_f,
                   t_j_c=iv.t_j_c, se=se)
        if cfg.kind == "cell":
            return out

        battery = cfg.build_battery()
        econ = cfg.build_econ()
        system = SystemDesign(cell, iv, se, battery, scenario=cfg.scenario)
        d = effective_dissipation(iv, cell.r_s_mohm_cm2, econ.t_d_h,
                                  econ.t_d_ref_h)
        rt = round_trip(econ.eta_ch, iv.eta, econ.k_loss, econ.t_c_h,
                        econ.t_d_h)
        q_h = stored_energy(battery)
        a_emit = vessel_geometry(battery)[2]
        out.update(
            p_out_eff_w_cm2=d.p_out_eff, p_diss_eff_w_cm2=d.p_diss_eff,
            q_h_kwh=q_h, a_emit_m2=a_emit,
            system_power_mw=d.p_out_eff * a_emit * 1e4 / 1e6,
            eta_in=rt.eta_in, eta_out=rt.eta_out, eta_rt=rt.eta_rt,
            cpe_usd_per_kwh=cpe_metric(battery, cfg.scenario),
            cpp_usd_per_w=cpp_metric(system, econ),
            lcos_usd_per_kwh=lcos_metric(system, econ),
            lcoe_usd_per_kwh=lcoe_metric(system, econ, cfg.heat_loss))
        return out


def run_sweep(cfg: RunConfig, threads: int = 1) -> SweepResult:
    """Evaluate the config's sweep axes; single point when no axes given."""
    axes = cfg.sweep or []
    names = [a.param for a in axes]
    grids = [a.grid() for a in axes]
    combos = list(itertools.product(*grids)) if axes else [()]
    ev = _Evaluator(cfg)

    def one(combo):
        point = cfg
        for name, value in zip(names, combo):
            point = set_param(point, name, value)
        row = dict(zip(names, combo))
        try:
            row.update(ev.evaluate(point))
            row["error"] = ""
        except _EXPECTED as exc:
            row["error"] = f"{type(exc).__name__}: {exc}"
        return row

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(one, combos))
    else:
        rows = [one(c) for c in combos]

    n_failed = sum(1 for r in rows if r["error"])
    if rows and n_failed == len(rows):
        raise SweepFailure(
            f"all {len(rows)} sweep cells failed; first error: "
            f"{rows[0]['error']}")
    columns = names + list(COLUMNS[cfg.kind]) + ["error"]
    return SweepResult(cfg, names, grids, columns, rows, n_failed)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(float(value))
    return str(value)


def header_lines(cfg: RunConfig) -> list:
    """Comment block recording version, config hash, and effective params."""
    lines = [f"# tpvsim {__version__}", f"# config_hash {cfg.digest()}"]
    params = cfg.effective_params()
    for key in sorted(params):
        lines.append(f"# {key} {json.dumps(params[key], sort_keys=True, default=str)}")
    return lines


def write_csv(result: SweepResult, path) -> None:
    cfg = result.config
    with open(path, "w", newline="\n") as f:
        for line in header_lines(cfg):
            f.write(line + "\n")
        f.write(",".join(result.columns) + "\n")
        for row in result.rows:
            f.write(",".join(_fmt(row.get(c)) for c in result.columns) + "\n")


def write_plot_data(result: SweepResult, path) -> None:
    """Gridded values (nested lists, axis-major) for plotting tools."""
    shape = [len(g) for g in result.axis_grids] or [1]
    payload = {
        "version": __version__,
        "config_hash": result.config.digest(),
        "axes": {n: list(map(float, g)) if not isinstance(g[0], str) else list(g)
                 for n, g in zip(result.axis_names, result.axis_grids)},
        "values": {},
    }
    for col in result.columns:
        if col in result.axis_names or col == "error":
            continue
        flat = [row.get(col) for row in result.rows]
        arr = np.array([np.nan if v is None else v for v in flat],
                       dtype=float).reshape(shape)
        payload["values"][col] = arr.tolist()
    with open(path, "w") as f:
        json.dump(payload, f, indent=1, sort_keys=True)
        f.write("\n")


def write_metadata(result: SweepResult, path, warnings=()) -> None:
    meta = {
        "version": __version__,
        "config_hash": result.config.digest(),
        "effective_params": result.config.effective_params(),
        "columns": result.columns,
        "n_rows": len(result.rows),
        "n_failed": result.n_failed,
        "warnings": list(warnings),
    }
    with open(path, "w") as f:
        json.dump(meta, f, indent=1, sort_keys=True, default=str)
        f.write("\n")
