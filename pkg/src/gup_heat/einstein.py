"""Einstein-model specific heat with first-order GUP corrections.

All heat capacities here are normalized by 3*N*k_B; energies by hbar*omega.
The working variables are delta = theta_E / T and b = kb_gamma2 * theta_E.
"""

from __future__ import annotations

import math

from .core import (CurveRow, DomainError, EinsteinParams, HeatCapacityPoint,
                   TemperatureGrid, check_point, validate)
from .series import MIN_DELTA, _geometric_sums, einstein_inner_sum, power_sum

# exp(delta) overflows doubles near 709; switch to the low-T form before that.
OVERFLOW_DELTA = 700.0


def _check_delta_b(delta: float, b: float) -> None:
    if not delta > 0:
        raise DomainError(f"delta must be positive, got {delta}")
    if delta < MIN_DELTA:
        raise DomainError(f"delta = {delta} below supported minimum {MIN_DELTA}")
    if b < 0:
        raise DomainError(f"b must be non-negative, got {b}")


def mean_energy(delta: float, b: float) -> float:
    """GUP-corrected oscillator mean energy, in units of hbar*omega."""
    _check_delta_b(delta, b)
    planck = 0.5 + 1.0 / math.expm1(delta)
    if b == 0.0:
        return planck
    s1, s2, _ = _geometric_sums(delta)
    return planck + b * (0.25 + s1 - delta * s2)


def cv_standard(delta: float) -> float:
    """delta^2 e^delta / (e^delta - 1)^2, underflow-safe at large delta."""
    if not delta > 0:
        raise DomainError(f"delta must be positive, got {delta}")
    if delta > OVERFLOW_DELTA:
        return delta * delta * math.exp(-delta)
    # identical to the textbook form, but stable for both tiny and large delta
    t = delta / (2.0 * math.sinh(0.5 * delta))
    return t * t


def cv_correction(delta: float, b: float) -> float:
    """First-order GUP correction, same 3*N*k_B normalization."""
    _check_delta_b(delta, b)
    if b == 0.0:
        return 0.0
    return b * delta**3 * einstein_inner_sum(delta)


def cv_low_T_asymptotic(delta: float, b: float) -> tuple[float, float]:
    """Low-temperature (delta >> 1) forms: (standard, correction)."""
    _check_delta_b(delta, b)
    standard = delta * delta * math.exp(-delta)
    if b == 0.0:
        return standard, 0.0
    correction = -b * delta**3 * power_sum(3, math.exp(-delta)).value
    return standard, correction


def cv_high_T_formal(delta: float, b: float, j_max: int) -> tuple[float, float]:
    """Formal/diagnostic high-T expansion, truncated at j_max.

    The series grows without bound in j_max; it is exposed only to document
    the sign of the first terms, never used by the full pipeline.
    """
    _check_delta_b(delta, b)
    if j_max < 1:
        raise DomainError(f"j_max must be >= 1, got {j_max}")
    if b == 0.0:
        return 1.0, 0.0
    s = sum((2.0 - delta * (2 * j + 1)) * j * j for j in range(1, j_max + 1))
    return 1.0, b * delta * delta * s


def relative_change(delta: float, b: float) -> float:
    """(C_v - C_v_total) / C_v = -correction / standard."""
    std = cv_standard(delta)
    if std <= 0.0:
        raise DomainError(
            f"cv_standard underflowed to {std} at delta = {delta}; "
            "relative change undefined"
        )
    return -cv_correction(delta, b) / std


def point_at(delta: float, b: float, temperature: float) -> HeatCapacityPoint:
    p = HeatCapacityPoint.build(temperature, cv_standard(delta),
                                cv_correction(delta, b))
    check_point(p)
    return p


def curve(params: EinsteinParams, grid: TemperatureGrid) -> list[CurveRow]:
    """One HeatCapacityPoint per grid temperature; failures poison one row."""
    report = validate(params)
    if not report.ok:
        raise DomainError("invalid EinsteinParams: " + "; ".join(report.violations))
    b = params.b
    rows: list[CurveRow] = []
    for T in grid.temperatures():
        T = float(T)
        try:
            delta = params.theta_E / T
            rows.append(CurveRow(T, point_at(delta, b, T)))
        except (DomainError, OverflowError) as exc:
            rows.append(CurveRow(T, None, status="error", message=str(exc)))
    return rows
