"""Pinned parameter bundles reproducing the data behind the four figures.

This table is the single source of truth for the figure CSVs and for the
renderer's inset windows: the `figures` CLI command writes it alongside the
CSVs as figure_specs.json so the front end never duplicates it by hand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (CurveRow, DebyeParams, DomainError, EinsteinParams,
                   TemperatureGrid, limit_row)
from .quadrature import QuadratureConfig
from . import debye, einstein

THETA_E_COPPER = 240.0  # K
THETA_D_COPPER = 343.0  # K

KB_GAMMA2_BASELINE = 10.0 ** -4.5   # 1/K
AMP_FACTOR_BASELINE = 1e-45         # 1/K^2

# swept GUP-knob values for the relative-change figures
SWEEP = (1e-1, 1e-3, 1e-5, 1e-7, 1e-9)

# 1 K sampling over (0, 700]; the T = 0 limit row is synthesized separately.
FIGURE_GRID = TemperatureGrid(t_min=1.0, t_max=700.0, n_points=700,
                              spacing="linear")


@dataclass(frozen=True)
class FigureSpec:
    figure_id: str
    model: str                    # einstein | debye
    value_kind: str               # cv | relative_delta
    normalization: str            # 3NkB | 9NkB | none
    params: EinsteinParams | DebyeParams
    grid: TemperatureGrid
    sweep: tuple[float, ...] | None
    inset_windows: tuple[tuple[float, float], ...]
    y_label: str


def _amp_for(kb_gamma2: float) -> float:
    # both compound knobs are proportional to gamma_EM^2; scale amp_factor
    # from the baseline pair when the sweep varies kb_gamma2
    return AMP_FACTOR_BASELINE * (kb_gamma2 / KB_GAMMA2_BASELINE)


FIGURE_SPECS: dict[str, FigureSpec] = {
    "fig1": FigureSpec(
        figure_id="fig1", model="einstein", value_kind="cv",
        normalization="3NkB",
        params=EinsteinParams(theta_E=THETA_E_COPPER,
                              kb_gamma2=KB_GAMMA2_BASELINE),
        grid=FIGURE_GRID, sweep=None,
        inset_windows=((40.0, 50.0), (100.0, 130.0)),
        y_label="C_v / 3NkB",
    ),
    "fig2": FigureSpec(
        figure_id="fig2", model="einstein", value_kind="relative_delta",
        normalization="none",
        params=EinsteinParams(theta_E=THETA_E_COPPER),
        grid=FIGURE_GRID, sweep=SWEEP,
        inset_windows=((20.0, 100.0), (110.0, 130.0)),
        y_label="dCv / Cv",
    ),
    "fig3": FigureSpec(
        figure_id="fig3", model="debye", value_kind="cv",
        normalization="9NkB",
        params=DebyeParams(theta_D=THETA_D_COPPER,
                           kb_gamma2=KB_GAMMA2_BASELINE,
                           amp_factor=AMP_FACTOR_BASELINE),
        grid=FIGURE_GRID, sweep=None,
        inset_windows=((30.0, 40.0), (75.0, 95.0)),
        y_label="C_v / 9NkB",
    ),
    "fig4": FigureSpec(
        figure_id="fig4", model="debye", value_kind="relative_delta",
        normalization="none",
        params=DebyeParams(theta_D=THETA_D_COPPER),
        grid=FIGURE_GRID, sweep=SWEEP,
        inset_windows=((20.0, 50.0), (50.0, 100.0), (90.0, 130.0)),
        y_label="dCv / Cv",
    ),
}


def _curve_for(spec: FigureSpec, kb_gamma2: float | None = None) -> list[CurveRow]:
    if spec.model == "einstein":
        params = spec.params
        if kb_gamma2 is not None:
            params = EinsteinParams(theta_E=params.theta_E,
                                    n_atoms=params.n_atoms,
                                    kb_gamma2=kb_gamma2)
        return einstein.curve(params, spec.grid)
    params = spec.params
    if kb_gamma2 is not None:
        params = DebyeParams(theta_D=params.theta_D, n_atoms=params.n_atoms,
                             kb_gamma2=kb_gamma2,
                             amp_factor=_amp_for(kb_gamma2))
    return debye.curve(params, spec.grid, QuadratureConfig())


def figure_table(figure_id: str) -> tuple[list[str], list[list]]:
    """(header, rows) for figN.csv, including the synthesized T = 0 row."""
    if figure_id not in FIGURE_SPECS:
        raise DomainError(f"unknown figure id {figure_id!r}")
    spec = FIGURE_SPECS[figure_id]

    if spec.sweep is None:
        header = ["temperature_K", "cv_standard", "cv_correction",
                  "cv_total", "relative_delta", "status"]
        rows: list[list] = []
        for r in [limit_row()] + _curve_for(spec):
            p = r.point
            if p is None:
                rows.append([r.temperature, math.nan, math.nan, math.nan,
                             math.nan, r.status])
            else:
                rows.append([p.temperature, p.cv_standard, p.cv_correction,
                             p.cv_total, p.relative_delta, r.status])
        return header, rows

    header = ["temperature_K"]
    header += [f"relative_delta_kbg_{v:.0e}" for v in spec.sweep]
    header += ["status"]
    curves = [[limit_row()] + _curve_for(spec, kb_gamma2=v) for v in spec.sweep]
    rows = []
    for i in range(len(curves[0])):
        temp = curves[0][i].temperature
        vals = []
        status = "ok"
        for c in curves:
            r = c[i]
            if r.status == "limit":
                status = "limit"
            elif r.status != "ok":
                status = r.status
            vals.append(math.nan if r.point is None else r.point.relative_delta)
        rows.append([temp] + vals + [status])
    return header, rows


def specs_as_json() -> dict:
    """Serializable figure-spec table consumed by the figure renderer."""
    out = {}
    for fid, spec in FIGURE_SPECS.items():
        out[fid] = {
            "figure_id": fid,
            "model": spec.model,
            "value_kind": spec.value_kind,
            "normalization": spec.normalization,
            "y_label": spec.y_label,
            "inset_windows": [list(w) for w in spec.inset_windows],
            "sweep": list(spec.sweep) if spec.sweep else None,
            "n_curves": len(spec.sweep) if spec.sweep else 1,
            "columns": figure_columns(fid),
        }
    return out


def figure_columns(figure_id: str) -> list[str]:
    spec = FIGURE_SPECS[figure_id]
    if spec.sweep is None:
        return ["temperature_K", "cv_standard", "cv_correction", "cv_total",
                "relative_delta", "status"]
    return (["temperature_K"]
            + [f"relative_delta_kbg_{v:.0e}" for v in spec.sweep]
            + ["status"])
