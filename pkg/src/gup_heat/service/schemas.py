"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

import math
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field


class StrictModel(BaseModel):
    # unknown keys in configs are errors, matching the CLI contract
    model_config = ConfigDict(extra="forbid")


class EinsteinParamsModel(StrictModel):
    theta_e: float = Field(gt=0)
    n_atoms: int = Field(default=1, ge=1)
    kb_gamma2: float = Field(default=0.0, ge=0)


class DebyeParamsModel(StrictModel):
    theta_d: float = Field(gt=0)
    n_atoms: int = Field(default=1, ge=1)
    kb_gamma2: float = Field(default=0.0, ge=0)
    amp_factor: float = Field(default=0.0, ge=0)


class GridModel(StrictModel):
    t_min: float = Field(gt=0)
    t_max: float = Field(gt=0)
    n_points: int = Field(ge=1)
    spacing: Literal["linear", "logarithmic"] = "linear"


class QuadratureModel(StrictModel):
    rel_tol: float = Field(default=1e-10, gt=0)
    abs_tol: float = Field(default=1e-14, gt=0)
    max_subdivisions: int = Field(default=2000, ge=1)
    y_small_threshold: float = Field(default=1e-3, gt=0)


class EinsteinCurveRequest(StrictModel):
    params: EinsteinParamsModel
    grid: GridModel
    include_limit_row: bool = True


class DebyeCurveRequest(StrictModel):
    params: DebyeParamsModel
    grid: GridModel
    quadrature: QuadratureModel = QuadratureModel()
    normalization: Literal["9NkB", "3NkB"] = "9NkB"
    include_limit_row: bool = True


class CurveRowModel(StrictModel):
    temperature_K: float
    cv_standard: Optional[float] = None
    cv_correction: Optional[float] = None
    cv_total: Optional[float] = None
    relative_delta: Optional[float] = None
    status: str = "ok"
    message: str = ""


class CurveResponse(StrictModel):
    model: str
    normalization: str
    rows: list[CurveRowModel]
    warnings: list[str] = []


class OracleCheckRequest(StrictModel):
    delta: float = Field(gt=0)
    b_values: list[float] = [1e-3, 5e-4, 2.5e-4]


class OraclePairModel(StrictModel):
    b: float
    cv_closed_form: float
    cv_oracle: float
    discrepancy: float


class OracleCheckResponse(StrictModel):
    delta: float
    pairs: list[OraclePairModel]
    fitted_order: float
    passed: bool


class ChainScanRequest(StrictModel):
    n_atoms: int = Field(default=64, ge=8)
    beta: float = Field(default=1.0, gt=0)
    gamma2: float = Field(default=0.0, ge=0)
    mode_index: int = Field(default=8, ge=1)
    steps_per_period: int = Field(default=200, ge=8)
    n_periods: int = Field(default=20, ge=1)
    amplitudes: list[float] = [0.05, 0.1, 0.2, 0.4]


class ChainResultModel(StrictModel):
    amplitude: float
    omega_measured: float
    omega_standard: float
    shift: float
    energy_drift: float
    status: str = "ok"


class ChainScanResponse(StrictModel):
    results: list[ChainResultModel]
    exponent: Optional[float]
    no_signal: bool
    drift_gate: float
    drift_gate_passed: bool


class FigureResponse(StrictModel):
    figure_id: str
    spec: dict
    header: list[str]
    rows: list[list]


class ErrorDetail(StrictModel):
    code: str
    message: str
    context: dict = {}


def none_if_nan(x: float) -> Optional[float]:
    return None if (x is None or math.isnan(x)) else x
