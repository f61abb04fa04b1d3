"""Adaptive quadrature: fixed-order Gauss-Legendre panels with bisection.

Panel error is estimated by comparing the whole-panel rule against the sum
of its two halves; panels that fail the tolerance are split.  Integrands
must accept numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import ConvergenceError, DomainError

_ORDER = 15
_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(_ORDER)


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_subdivisions: int = 2000
    y_small_threshold: float = 1e-3

    def __post_init__(self) -> None:
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise DomainError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be >= 1")


class QuadratureError(ConvergenceError):
    def __init__(self, message: str, value: float, error_estimate: float):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate


def _panel(f: Callable, a: float, b: float) -> float:
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    return half * float(np.sum(_WEIGHTS * f(mid + half * _NODES)))


def integrate(f: Callable, a: float, b: float,
              config: QuadratureConfig = QuadratureConfig()) -> float:
    """Integrate f over [a, b] to rel_tol (abs_tol floor for tiny integrals)."""
    if b < a:
        raise DomainError(f"require a <= b, got ({a}, {b})")
    if a == b:
        return 0.0

    # (a, b, whole-panel estimate), refined until every panel passes.
    stack = [(a, b, _panel(f, a, b))]
    total = stack[0][2]
    done = 0.0
    done_err = 0.0
    splits = 0
    while stack:
        lo, hi, whole = stack.pop()
        mid = 0.5 * (lo + hi)
        left = _panel(f, lo, mid)
        right = _panel(f, mid, hi)
        refined = left + right
        err = abs(refined - whole)
        # local tolerance pro-rated by panel share of the running total
        scale = max(abs(total), abs(refined))
        tol = max(config.abs_tol, config.rel_tol * scale) * (hi - lo) / (b - a)
        if err <= tol or (hi - lo) < 1e-14 * (b - a):
            done += refined
            done_err += err
            total = done + sum(p[2] for p in stack)
            continue
        splits += 1
        if splits > config.max_subdivisions:
            value = done + refined + sum(p[2] for p in stack)
            raise QuadratureError(
                f"adaptive quadrature did not reach rel_tol={config.rel_tol} "
                f"within {config.max_subdivisions} subdivisions "
                f"(achieved panel error {err:.3g} vs tolerance {tol:.3g})",
                value=value, error_estimate=done_err + err,
            )
        stack.append((lo, mid, left))
        stack.append((mid, hi, right))
    return done
