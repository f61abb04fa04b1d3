"""FastAPI service exposing the heat-capacity pipelines.

The CLI talks to this app in-process over an ASGI transport by default;
`gup-heat serve` exposes the same app over the network.
"""

from __future__ import annotations

import math
import warnings

import numpy as np
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from ..core import (ConvergenceError, DebyeParams, DomainError,
                    EinsteinParams, TemperatureGrid, limit_row, validate)
from ..quadrature import QuadratureConfig
from .. import chain, debye, einstein, figures, oracle
from . import schemas as s

DRIFT_GATE = 1e-6

app = FastAPI(title="gup-heat", version="0.1.0")


@app.exception_handler(DomainError)
async def domain_error_handler(request: Request, exc: DomainError):
    return JSONResponse(
        status_code=400,
        content={"code": "domain_error", "message": str(exc), "context": {}},
    )


@app.exception_handler(ConvergenceError)
async def convergence_error_handler(request: Request, exc: ConvergenceError):
    return JSONResponse(
        status_code=400,
        content={"code": "convergence_error", "message": str(exc), "context": {}},
    )


@app.exception_handler(RequestValidationError)
async def validation_error_handler(request: Request, exc: RequestValidationError):
    return JSONResponse(
        status_code=422,
        content={
            "code": "invalid_request",
            "message": "request failed validation",
            "context": {"errors": exc.errors()},
        },
    )


@app.get("/v1/health")
def health() -> dict:
    return {"status": "ok"}


def _grid(m: s.GridModel) -> TemperatureGrid:
    return TemperatureGrid(m.t_min, m.t_max, m.n_points, m.spacing)


def _rows_to_models(rows, include_limit_row: bool) -> list[s.CurveRowModel]:
    out = []
    if include_limit_row:
        rows = [limit_row()] + rows
    for r in rows:
        p = r.point
        if p is None:
            out.append(s.CurveRowModel(temperature_K=r.temperature,
                                       status=r.status, message=r.message))
        else:
            out.append(s.CurveRowModel(
                temperature_K=p.temperature,
                cv_standard=p.cv_standard,
                cv_correction=p.cv_correction,
                cv_total=p.cv_total,
                relative_delta=s.none_if_nan(p.relative_delta),
                status=r.status,
                message=r.message,
            ))
    return out


@app.post("/v1/einstein/curve", response_model=s.CurveResponse)
def einstein_curve(req: s.EinsteinCurveRequest) -> s.CurveResponse:
    params = EinsteinParams(theta_E=req.params.theta_e,
                            n_atoms=req.params.n_atoms,
                            kb_gamma2=req.params.kb_gamma2)
    report = validate(params)
    rows = einstein.curve(params, _grid(req.grid))
    return s.CurveResponse(
        model="einstein", normalization="3NkB",
        rows=_rows_to_models(rows, req.include_limit_row),
        warnings=list(report.warnings),
    )


@app.post("/v1/debye/curve", response_model=s.CurveResponse)
def debye_curve(req: s.DebyeCurveRequest) -> s.CurveResponse:
    params = DebyeParams(theta_D=req.params.theta_d,
                         n_atoms=req.params.n_atoms,
                         kb_gamma2=req.params.kb_gamma2,
                         amp_factor=req.params.amp_factor)
    report = validate(params)
    quad = QuadratureConfig(
        rel_tol=req.quadrature.rel_tol,
        abs_tol=req.quadrature.abs_tol,
        max_subdivisions=req.quadrature.max_subdivisions,
        y_small_threshold=req.quadrature.y_small_threshold,
    )
    rows = debye.curve(params, _grid(req.grid), quad, req.normalization)
    return s.CurveResponse(
        model="debye", normalization=req.normalization,
        rows=_rows_to_models(rows, req.include_limit_row),
        warnings=list(report.warnings),
    )


@app.post("/v1/oracle/check", response_model=s.OracleCheckResponse)
def oracle_check(req: s.OracleCheckRequest) -> s.OracleCheckResponse:
    if len(req.b_values) < 2:
        raise DomainError("need at least 2 b values to fit a discrepancy order")
    pairs = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for b in req.b_values:
            if b <= 0:
                raise DomainError(f"b values must be positive, got {b}")
            closed = (einstein.cv_standard(req.delta)
                      + einstein.cv_correction(req.delta, b))
            brute = oracle.oracle_cv(req.delta, b)
            pairs.append(s.OraclePairModel(
                b=b, cv_closed_form=closed, cv_oracle=brute,
                discrepancy=abs(closed - brute)))
    log_b = np.log([p.b for p in pairs])
    log_d = np.log([max(p.discrepancy, 1e-300) for p in pairs])
    order, _ = np.polyfit(log_b, log_d, 1)
    return s.OracleCheckResponse(
        delta=req.delta, pairs=pairs, fitted_order=float(order),
        passed=bool(1.8 <= order <= 2.2),
    )


@app.post("/v1/chain/scan", response_model=s.ChainScanResponse)
def chain_scan(req: s.ChainScanRequest) -> s.ChainScanResponse:
    base = chain.ChainConfig(
        n_atoms=req.n_atoms, beta=req.beta, gamma2=req.gamma2,
        amplitude=max(req.amplitudes), mode_index=req.mode_index,
        steps_per_period=req.steps_per_period, n_periods=req.n_periods,
    )
    scan = chain.amplitude_scan(base, req.amplitudes)
    results = [s.ChainResultModel(
        amplitude=r.amplitude, omega_measured=r.omega_measured,
        omega_standard=r.omega_standard, shift=r.shift,
        energy_drift=r.energy_drift,
        status="ok" if r.energy_drift < DRIFT_GATE else "drift_gate_violation",
    ) for r in scan.results]
    return s.ChainScanResponse(
        results=results,
        exponent=None if scan.no_signal else scan.exponent,
        no_signal=scan.no_signal,
        drift_gate=DRIFT_GATE,
        drift_gate_passed=all(r.status == "ok" for r in results),
    )


@app.get("/v1/figure-specs")
def figure_specs() -> dict:
    return figures.specs_as_json()


@app.get("/v1/figures/{figure_id}", response_model=s.FigureResponse)
def figure_data(figure_id: str) -> s.FigureResponse:
    if figure_id not in figures.FIGURE_SPECS:
        raise DomainError(f"unknown figure id {figure_id!r}")
    header, rows = figures.figure_table(figure_id)
    clean_rows = [[None if isinstance(v, float) and math.isnan(v) else v
                   for v in row] for row in rows]
    return s.FigureResponse(
        figure_id=figure_id,
        spec=figures.specs_as_json()[figure_id],
        header=header,
        rows=clean_rows,
    )
