"""Built-in sweep presets, one per headline result of the pipeline."""

from __future__ import annotations

from .config import RunConfig, SweepAxis


def fig1d() -> RunConfig:
    """Out-of-band reflectance vs emitter temperature for four Si thicknesses."""
    return RunConfig(
        kind="optics", name="fig1d",
        sweep=[
            SweepAxis("t_si_um", values=(10.0, 50.0, 200.0, 500.0)),
            SweepAxis("t_bb_c", min=1000.0, max=1800.0, steps=17),
        ])


def fig2c() -> RunConfig:
    """Conversion efficiency map over series resistance and T_BB."""
    return RunConfig(
        kind="cell", name="fig2c", cell_preset="si_default",
        sweep=[
            SweepAxis("cell.r_s_mohm_cm2",
                      values=(5.0, 10.0, 20.0, 30.0, 50.0, 80.6, 100.0)),
            SweepAxis("t_bb_c", min=1000.0, max=2000.0, steps=21),
        ])


def fig3b() -> RunConfig:
    """Output power density map over series resistance and T_BB."""
    return RunConfig(
        kind="cell", name="fig3b", cell_preset="si_default",
        sweep=[
            SweepAxis("cell.r_s_mohm_cm2",
                      values=(5.0, 10.0, 20.0, 30.0, 50.0, 80.6, 100.0)),
            SweepAxis("t_bb_c", min=1000.0, max=1800.0, steps=17),
        ])


def fig4b() -> RunConfig:
    """Storage cost per energy capacity over Si mass and emitter temperature."""
    return RunConfig(
        kind="system", name="fig4b", cell_preset="si_default",
        sweep=[
            SweepAxis("battery.m_si_kg", min=1e3, max=1e5, steps=9,
                      spacing="log"),
            SweepAxis("t_bb_c", min=1000.0, max=1800.0, steps=9),
        ])


def fig5() -> RunConfig:
    """LCOS scenarios and heat-loss sensitivity for the InGaAs system."""
    return RunConfig(
        kind="system", name="fig5", cell_preset="ingaas_default",
        econ={"cost_fab_per_cm2": 10.0},
        battery={"m_si_kg": 1e5},
        sweep=[
            SweepAxis("scenario", values=("full", "no_sic", "no_materials")),
            SweepAxis("econ.k_loss", min=0.0, max=0.5, steps=11),
        ])


def fig6d() -> RunConfig:
    """Massive-scale LCOE for the practical Si cell."""
    return RunConfig(
        kind="system", name="fig6d", cell_preset="si_default",
        sweep=[SweepAxis("battery.m_si_kg", min=1e5, max=1e7, steps=9,
                         spacing="log")])


PRESETS = {
    "fig1d": fig1d,
    "fig2c": fig2c,
    "fig3b": fig3b,
    "fig4b": fig4b,
    "fig5": fig5,
    "fig6d": fig6d,
}
