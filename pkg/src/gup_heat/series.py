"""Power-series kernels shared by every GUP correction formula.

The corrections all reduce to the geometric-derivative sums
S_p(x) = sum_{j>=1} j^p x^j with x = exp(-delta).  Closed forms are the
primary path; tolerance-driven truncation is kept as the independent
test oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .core import DomainError

# Reduced inverse temperatures below this are rejected: the closed forms
# blow up as (1 - x)^-(p+1) and the physical regime is meaningless.
MIN_DELTA = 1e-6

DEFAULT_TOL = 1e-14
DEFAULT_MAX_TERMS = 10**6


@dataclass(frozen=True)
class SeriesValue:
    value: float
    terms_used: int  # 0 for closed-form evaluation
    converged: bool


def power_sum(p: int, x: float) -> SeriesValue:
    """Closed form of sum_{j>=1} j^p x^j for p in {1, 2, 3}, 0 <= x < 1."""
    if p not in (1, 2, 3):
        raise DomainError(f"p must be 1, 2 or 3, got {p}")
    if not 0.0 <= x < 1.0:
        raise DomainError(f"series requires 0 <= x < 1, got {x}")
    omx = 1.0 - x
    if p == 1:
        value = x / omx**2
    elif p == 2:
        value = x * (1.0 + x) / omx**3
    else:
        value = x * (1.0 + 4.0 * x + x * x) / omx**4
    return SeriesValue(value=value, terms_used=0, converged=True)


def truncated_sum(term: Callable[[int], float],
                  tol: float = DEFAULT_TOL,
                  max_terms: int = DEFAULT_MAX_TERMS) -> SeriesValue:
    """Sum term(1) + term(2) + ... until the next term is negligible.

    Convergence: |term(j)| < tol * |partial| (absolute when partial == 0).
    """
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")
    if max_terms < 1:
        raise DomainError(f"max_terms must be >= 1, got {max_terms}")
    partial = 0.0
    for j in range(1, max_terms + 1):
        t = term(j)
        partial += t
        threshold = tol * abs(partial) if partial != 0.0 else tol
        if abs(t) < threshold:
            return SeriesValue(value=partial, terms_used=j, converged=True)
    return SeriesValue(value=partial, terms_used=max_terms, converged=False)


def _geometric_sums(delta: float) -> tuple[float, float, float]:
    """(S1, S2, S3) at x = exp(-delta), with 1 - x computed via expm1."""
    x = math.exp(-delta)
    omx = -math.expm1(-delta)
    s1 = x / omx**2
    s2 = x * (1.0 + x) / omx**3
    s3 = x * (1.0 + 4.0 * x + x * x) / omx**4
    return s1, s2, s3


def einstein_inner_sum(delta: float) -> float:
    """sum_{j>=1} (2/delta - j) j^2 exp(-j*delta), in closed form."""
    if not delta > 0:
        raise DomainError(f"delta must be positive, got {delta}")
    if delta < MIN_DELTA:
        raise DomainError(f"delta = {delta} below supported minimum {MIN_DELTA}")
    _, s2, s3 = _geometric_sums(delta)
    return (2.0 / delta) * s2 - s3


def debye_inner_sum(y: float) -> float:
    """sum_{j>=1} (2 - y*j) j^2 exp(-j*y), in closed form."""
    if not y > 0:
        raise DomainError(f"y must be positive, got {y}")
    if y < MIN_DELTA:
        raise DomainError(f"y = {y} below supported minimum {MIN_DELTA}")
    _, s2, s3 = _geometric_sums(y)
    return 2.0 * s2 - y * s3
