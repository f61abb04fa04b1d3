"""Shared dimensionless groups, physical constants, grids and validation.

Everything downstream works on dimensionless combinations (delta = theta/T,
b = kb_gamma2 * theta, amp_factor * T**2, ...).  SI constants only matter
when converting user configuration into those groups.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class ConvergenceError(RuntimeError):
    """A numerical procedure failed to reach its tolerance."""


@dataclass(frozen=True)
class Constants:
    """CODATA constants, used only at the SI boundary."""

    k_B: float = 1.380649e-23      # J / K
    hbar: float = 1.054571817e-34  # J * s


CODATA = Constants()

# Above this value of b = kb_gamma2 * theta the first-order GUP treatment is
# no longer perturbative; params are accepted but flagged.
B_WARN_THRESHOLD = 0.1


@dataclass(frozen=True)
class EinsteinParams:
    """Einstein-model configuration.

    kb_gamma2 is the compound GUP knob k_B * gamma_EM^2 in 1/K, so that
    b = kb_gamma2 * theta_E is dimensionless.
    """

    theta_E: float
    n_atoms: int = 1
    kb_gamma2: float = 0.0

    @property
    def b(self) -> float:
        return self.kb_gamma2 * self.theta_E


@dataclass(frozen=True)
class DebyeParams:
    """Debye-model configuration.

    amp_factor is the compound knob gamma_EM^2 * u0^2 * k_B^2 / hbar^2
    in 1/K^2; kb_gamma2 is k_B * gamma_EM^2 in 1/K.
    """

    theta_D: float
    n_atoms: int = 1
    kb_gamma2: float = 0.0
    amp_factor: float = 0.0


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[str, ...] = ()
    warnings: tuple[str, ...] = ()
    b: float | None = None


def validate(params: EinsteinParams | DebyeParams) -> ValidationReport:
    """Check parameter invariants; perturbative-regime issues warn, not fail."""
    violations: list[str] = []
    warnings: list[str] = []
    b: float | None = None

    if isinstance(params, EinsteinParams):
        if not params.theta_E > 0:
            violations.append("theta_E > 0")
        if params.n_atoms < 1:
            violations.append("n_atoms >= 1")
        if params.kb_gamma2 < 0:
            violations.append("kb_gamma2 >= 0")
        if not violations:
            b = params.b
            if b > B_WARN_THRESHOLD:
                warnings.append(
                    f"b = kb_gamma2*theta_E = {b:g} > {B_WARN_THRESHOLD}: "
                    "first-order GUP treatment is not perturbative"
                )
    elif isinstance(params, DebyeParams):
        if not params.theta_D > 0:
            violations.append("theta_D > 0")
        if params.n_atoms < 1:
            violations.append("n_atoms >= 1")
        if params.kb_gamma2 < 0:
            violations.append("kb_gamma2 >= 0")
        if params.amp_factor < 0:
            violations.append("amp_factor >= 0")
        if not violations:
            b = params.kb_gamma2 * params.theta_D
            if b > B_WARN_THRESHOLD:
                warnings.append(
                    f"b = kb_gamma2*theta_D = {b:g} > {B_WARN_THRESHOLD}: "
                    "first-order GUP treatment is not perturbative"
                )
    else:  # pragma: no cover - defensive
        raise TypeError(f"unsupported params type {type(params)!r}")

    return ValidationReport(
        ok=not violations,
        violations=tuple(violations),
        warnings=tuple(warnings),
        b=b,
    )


def reduced_delta(theta: float, T: float) -> float:
    """delta = theta / T, the reduced inverse temperature."""
    if not theta > 0:
        raise DomainError(f"theta must be positive, got {theta}")
    if not T > 0:
        raise DomainError(f"T must be positive, got {T}")
    return theta / T


@dataclass(frozen=True)
class TemperatureGrid:
    """Temperature sweep.  T = 0 is never a grid point (see curve builders)."""

    t_min: float
    t_max: float
    n_points: int
    spacing: str = "linear"  # or "logarithmic"

    def __post_init__(self) -> None:
        if not 0 < self.t_min <= self.t_max:
            raise DomainError(
                f"require 0 < t_min <= t_max, got ({self.t_min}, {self.t_max})"
            )
        if self.n_points < 1:
            raise DomainError(f"n_points must be >= 1, got {self.n_points}")
        if self.spacing not in ("linear", "logarithmic"):
            raise DomainError(f"unknown spacing {self.spacing!r}")

    def temperatures(self) -> np.ndarray:
        if self.n_points == 1:
            return np.array([self.t_min])
        if self.spacing == "linear":
            return np.linspace(self.t_min, self.t_max, self.n_points)
        return np.geomspace(self.t_min, self.t_max, self.n_points)


@dataclass(frozen=True)
class HeatCapacityPoint:
    """One temperature sample; cv values share a single normalization."""

    temperature: float
    cv_standard: float
    cv_correction: float
    cv_total: float
    relative_delta: float

    @classmethod
    def build(cls, temperature: float, cv_standard: float,
              cv_correction: float) -> "HeatCapacityPoint":
        total = cv_standard + cv_correction
        if cv_standard > 0:
            rel = -cv_correction / cv_standard
        else:
            rel = math.nan
        return cls(temperature, cv_standard, cv_correction, total, rel)


def check_point(p: HeatCapacityPoint) -> None:
    """Assert the two HeatCapacityPoint field invariants."""
    assert p.cv_total == p.cv_standard + p.cv_correction
    if p.cv_standard > 0:
        expected = -p.cv_correction / p.cv_standard
        assert p.relative_delta == expected


# Row of a generated curve.  A point-level failure poisons only its row.
@dataclass(frozen=True)
class CurveRow:
    temperature: float
    point: HeatCapacityPoint | None
    status: str = "ok"  # ok | limit | error
    message: str = ""


def limit_row() -> CurveRow:
    """The synthesized T -> 0 row: all formulas have the finite limit 0."""
    return CurveRow(
        temperature=0.0,
        point=HeatCapacityPoint(0.0, 0.0, 0.0, 0.0, math.nan),
        status="limit",
    )
