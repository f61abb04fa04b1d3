"""Debye-model pipeline: GUP dispersion, density of states and specific heat.

Heat capacities are normalized by 9*N*k_B by default (a 3*N*k_B
re-normalization is offered at the curve level, matching the two
conventions used for the Einstein and Debye figures).
"""

from __future__ import annotations

import math

import numpy as np

from .core import (CurveRow, DebyeParams, DomainError, HeatCapacityPoint,
                   TemperatureGrid, check_point, validate)
from .quadrature import QuadratureConfig, QuadratureError, integrate
from .series import debye_inner_sum

# 4*pi^4/15: integral of the standard Debye integrand over [0, inf)
DEBYE_INTEGRAL = 4.0 * math.pi**4 / 15.0

# Debye integrand switches to y^4 exp(-y) beyond this (exp(y) overflow-safe
# long before, but the subtraction is already exact there).
LARGE_Y = 500.0


def dispersion_lattice_standard(k: float, beta: float) -> float:
    """Monatomic-chain dispersion 2*sqrt(beta)*|sin(k/2)| (a = 1)."""
    if not beta > 0:
        raise DomainError(f"beta must be positive, got {beta}")
    return 2.0 * math.sqrt(beta) * abs(math.sin(0.5 * k))


def dispersion_continuum_gup(k: float, v_s: float, g: float) -> float:
    """Real non-negative root of omega + g*omega^3 = v_s*k.

    g = 2*gamma_EM^2*u0^2 in reduced units.  The cubic is strictly monotone,
    so the root is unique; Newton from v_s*k with a bisection safeguard.
    """
    if k < 0:
        raise DomainError(f"k must be non-negative, got {k}")
    if not v_s > 0:
        raise DomainError(f"v_s must be positive, got {v_s}")
    if g < 0:
        raise DomainError(f"g must be non-negative, got {g}")
    rhs = v_s * k
    if rhs == 0.0:
        return 0.0
    if g * rhs * rhs < 1e-4:
        # perturbative regime; error is O((g*rhs^2)^2)
        return rhs * (1.0 - g * rhs * rhs)

    lo, hi = 0.0, rhs  # f(0) < 0 <= f(rhs)
    omega = rhs
    for _ in range(100):
        f = omega + g * omega**3 - rhs
        if abs(f) <= 1e-15 * rhs:
            return omega
        if f > 0:
            hi = omega
        else:
            lo = omega
        step = f / (1.0 + 3.0 * g * omega * omega)
        omega -= step
        if not lo < omega < hi:
            omega = 0.5 * (lo + hi)
    raise DomainError(
        f"dispersion root did not converge for k={k}, v_s={v_s}, g={g}")


def density_of_states(omega: float, prefactor: float, g2: float) -> float:
    """GUP-corrected Debye DOS: prefactor * omega^2 * (1 + 10*g2*omega^2)."""
    if omega < 0:
        raise DomainError(f"omega must be non-negative, got {omega}")
    if not prefactor > 0:
        raise DomainError(f"prefactor must be positive, got {prefactor}")
    if g2 < 0:
        raise DomainError(f"g2 must be non-negative, got {g2}")
    return prefactor * omega * omega * (1.0 + 10.0 * g2 * omega * omega)


def mode_count(omega_D: float, prefactor: float, g2: float) -> float:
    """Closed-form integral of the DOS over [0, omega_D]."""
    return prefactor * (omega_D**3 / 3.0) * (1.0 + 6.0 * g2 * omega_D**2)


def debye_integrand_standard(y, y_small_threshold: float = 1e-3):
    """y^4 e^y / (e^y - 1)^2, vectorized, with guarded small/large-y forms."""
    scalar = np.isscalar(y) or np.ndim(y) == 0
    y = np.atleast_1d(np.asarray(y, dtype=float))
    out = np.empty_like(y)
    if np.any(y < 0):
        raise DomainError("integrand requires y >= 0")

    small = y < y_small_threshold
    large = y > LARGE_Y
    mid = ~(small | large)

    ys = y[small]
    out[small] = ys * ys * (1.0 - ys * ys / 12.0 + ys**4 / 240.0)
    ym = y[mid]
    t = ym / (2.0 * np.sinh(0.5 * ym))
    out[mid] = ym * ym * t * t
    yl = y[large]
    out[large] = yl**4 * np.exp(-yl)
    return float(out[0]) if scalar else out


def _gup_series_integrand(y, y_small_threshold: float):
    """y^5 * sum_j (2 - y*j) j^2 e^(-j*y); -2*y^2 limit below threshold."""
    scalar = np.isscalar(y) or np.ndim(y) == 0
    y = np.atleast_1d(np.asarray(y, dtype=float))
    out = np.empty_like(y)
    small = y < y_small_threshold
    out[small] = -2.0 * y[small] ** 2
    ybig = y[~small]
    if ybig.size:
        x = np.exp(-ybig)
        omx = -np.expm1(-ybig)
        s2 = x * (1.0 + x) / omx**3
        s3 = x * (1.0 + 4.0 * x + x * x) / omx**4
        out[~small] = ybig**5 * (2.0 * s2 - ybig * s3)
    return float(out[0]) if scalar else out


def _check_T(T: float, params: DebyeParams) -> None:
    if not T > 0:
        raise DomainError(f"T must be positive, got {T}")
    report = validate(params)
    if not report.ok:
        raise DomainError("invalid DebyeParams: " + "; ".join(report.violations))


def cv_standard(T: float, params: DebyeParams,
                quad: QuadratureConfig = QuadratureConfig()) -> float:
    """(T/theta_D)^3 * integral of the Debye integrand over [0, y_D]."""
    _check_T(T, params)
    y_D = params.theta_D / T
    # beyond LARGE_Y the integrand underflows; clip the interval
    upper = min(y_D, LARGE_Y + 200.0)
    val = integrate(lambda y: debye_integrand_standard(y, quad.y_small_threshold),
                    0.0, upper, quad)
    return (T / params.theta_D) ** 3 * val


def cv_correction(T: float, params: DebyeParams,
                  quad: QuadratureConfig = QuadratureConfig()) -> float:
    """First-order GUP correction, normalized by 9*N*k_B."""
    _check_T(T, params)
    if params.amp_factor == 0.0 and params.kb_gamma2 == 0.0:
        return 0.0
    theta = params.theta_D
    y_D = theta / T
    upper = min(y_D, LARGE_Y + 200.0)
    ratio2 = (T / theta) ** 2

    amp_term = 0.0
    if params.amp_factor > 0.0:
        def amp_integrand(y):
            return ((-6.0 + 10.0 * ratio2 * y * y)
                    * debye_integrand_standard(y, quad.y_small_threshold))

        amp_term = (params.amp_factor * T**3 / theta
                    * integrate(amp_integrand, 0.0, upper, quad))

    series_term = 0.0
    if params.kb_gamma2 > 0.0:
        series_term = (params.kb_gamma2 * T**4 / theta**3
                       * integrate(
                           lambda y: _gup_series_integrand(
                               y, quad.y_small_threshold),
                           0.0, upper, quad))
    return amp_term + series_term


def cv_high_T_formal(T: float, params: DebyeParams,
                     j_max: int) -> tuple[float, float]:
    """Formal/diagnostic high-T expansion (diverges with j_max)."""
    _check_T(T, params)
    if j_max < 1:
        raise DomainError(f"j_max must be >= 1, got {j_max}")
    theta = params.theta_D
    s = sum((1.0 / 3.0 - (3.0 * j / 7.0) * theta / T) * j * j
            for j in range(1, j_max + 1))
    correction = (params.amp_factor * theta**3 / T
                  + params.kb_gamma2 * theta**3 / T**2 * s)
    return 1.0 / 3.0, correction


def cv_low_T(T: float, params: DebyeParams) -> tuple[float, float]:
    """Low-temperature laws: T^3 standard term, T^3 + T^4 GUP term."""
    _check_T(T, params)
    theta = params.theta_D
    standard = DEBYE_INTEGRAL * (T / theta) ** 3
    correction = -8.0 * (params.amp_factor * (math.pi**4 / 5.0) * T**3 / theta
                         + params.kb_gamma2 * (2.0 * math.pi**4 / 3.0)
                         * T**4 / theta**3)
    return standard, correction


def point_at(T: float, params: DebyeParams,
             quad: QuadratureConfig = QuadratureConfig(),
             normalization: str = "9NkB") -> HeatCapacityPoint:
    std = cv_standard(T, params, quad)
    corr = cv_correction(T, params, quad)
    if normalization == "3NkB":
        std, corr = 3.0 * std, 3.0 * corr
    elif normalization != "9NkB":
        raise DomainError(f"unknown normalization {normalization!r}")
    p = HeatCapacityPoint.build(T, std, corr)
    check_point(p)
    return p


def curve(params: DebyeParams, grid: TemperatureGrid,
          quad: QuadratureConfig = QuadratureConfig(),
          normalization: str = "9NkB") -> list[CurveRow]:
    """Per-temperature points; a point-level failure poisons only its row."""
    report = validate(params)
    if not report.ok:
        raise DomainError("invalid DebyeParams: " + "; ".join(report.violations))
    rows: list[CurveRow] = []
    for T in grid.temperatures():
        T = float(T)
        try:
            rows.append(CurveRow(T, point_at(T, params, quad, normalization)))
        except (DomainError, QuadratureError, OverflowError) as exc:
            rows.append(CurveRow(T, None, status="error", message=str(exc)))
    return rows
