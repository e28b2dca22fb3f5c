"""Checkable coefficient and derivative inequalities for self-maps of the disk.

Each ``check_*`` function evaluates both sides of one inequality on a
concrete series and returns a :class:`BoundReport`; ``holds`` allows an
absolute slack of ``-HOLDS_TOL`` for summation noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import kernels
from .errors import DomainError, OutOfRangeError
from .series import CoefficientSeries, derivative_at, eval_series

HOLDS_TOL = 1e-12
AREA_LEMMA_MAX_R = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class BoundReport:
    lhs: float
    rhs: float
    slack: float
    holds: bool

    @classmethod
    def of(cls, lhs: float, rhs: float, tol: float = HOLDS_TOL) -> "BoundReport":
        slack = rhs - lhs
        return cls(lhs, rhs, slack, slack >= -tol)


def _check_r(r: float) -> None:
    if not 0.0 <= r < 1.0:
        raise DomainError(f"r = {r} must lie in [0, 1)")


def check_coeff_bound(s: CoefficientSeries) -> BoundReport:
    """``|a_n| <= 1 - |a_0|^2`` for every stored n >= 1."""
    lhs = float(s.abs_coeffs[1:].max())
    return BoundReport.of(lhs, 1.0 - s.a0**2)


def check_sq_sum_bound(s: CoefficientSeries, r: float, p: float) -> BoundReport:
    """``sum_{n>=1} |a_n|^2 r^(pn) <= r^p (1-|a_0|^2)^2 / (1 - |a_0|^2 r^p)``."""
    _check_r(r)
    if p <= 0:
        raise DomainError("p must be positive")
    x = r**p
    a2 = s.a0**2
    lhs = kernels.power_sum(s.sq_coeffs, x, 1, 0)
    rhs = x * (1.0 - a2) ** 2 / (1.0 - a2 * x)
    return BoundReport.of(lhs, rhs)


def _area_range(r: float) -> None:
    if not 0.0 <= r <= AREA_LEMMA_MAX_R:
        raise OutOfRangeError(f"area lemma is stated for 0 < r <= 1/sqrt(2); got r = {r}")


def check_area_bound(s: CoefficientSeries, r: float) -> BoundReport:
    """``S_r/pi <= r^2 (1-|a_0|^2)^2 / (1-|a_0|^2 r^2)^2`` for r <= 1/sqrt(2)."""
    _area_range(r)
    a2 = s.a0**2
    lhs = kernels.power_sum(s.sq_coeffs, r * r, 1, 1)
    rhs = r * r * (1.0 - a2) ** 2 / (1.0 - a2 * r * r) ** 2
    return BoundReport.of(lhs, rhs)


def check_area_complement(s: CoefficientSeries, r: float) -> BoundReport:
    """``1 - S_r/pi >= (1-r^2)(1-r^2|a_0|^4)/(1-|a_0|^2 r^2)^2``.

    Reported with ``lhs`` the closed-form expression and ``rhs = 1 - S_r/pi``.
    """
    _area_range(r)
    a2 = s.a0**2
    lhs = (1.0 - r * r) * (1.0 - r * r * a2 * a2) / (1.0 - a2 * r * r) ** 2
    rhs = 1.0 - kernels.power_sum(s.sq_coeffs, r * r, 1, 1)
    return BoundReport.of(lhs, rhs)


def check_tail_lemma(s: CoefficientSeries, r: float, N: int) -> BoundReport:
    """Refined tail inequality with ``t = floor((N-1)/2)``.

    LHS: ``B_N + sgn(t) sum_{n=1..t}|a_n|^2 r^N/(1-r)
    + (1/(1+|a_0|) + r/(1-r)) sum_{n>=t+1} |a_n|^2 r^(2n)``;
    RHS: ``(1-|a_0|^2) r^N / (1-r)``. With t = 0 the middle sum is dropped.
    """
    _check_r(r)
    if N < 1:
        raise DomainError("N must be >= 1")
    t = (N - 1) // 2
    a0 = s.a0
    lhs = kernels.power_sum(s.abs_coeffs, r, N, 0)
    if t > 0:
        lhs += float(s.sq_coeffs[1 : t + 1].sum()) * r**N / (1.0 - r)
    lhs += (1.0 / (1.0 + a0) + r / (1.0 - r)) * kernels.power_sum(s.sq_coeffs, r * r, t + 1, 0)
    rhs = (1.0 - a0 * a0) * r**N / (1.0 - r)
    return BoundReport.of(lhs, rhs)


def schwarz_pick_bound(fz_abs: float, r: float, k: int) -> float:
    """``k! (1-|f(z)|^2) (1+|z|)^(k-1) / (1-|z|^2)^k``."""
    return math.factorial(k) * (1.0 - fz_abs**2) * (1.0 + r) ** (k - 1) / (1.0 - r * r) ** k


def check_schwarz_pick_deriv(s: CoefficientSeries, z: complex, k: int) -> BoundReport:
    """``|f^(k)(z)|`` against the Schwarz-Pick type bound, 1 <= k <= 4."""
    if not 1 <= k <= 4:
        raise DomainError("k must be between 1 and 4")
    r = abs(z)
    fz = eval_series(s, z)
    dk = derivative_at(s, z, k)
    # tail contributions can only make lhs larger or |f| smaller
    lhs = abs(dk.value)
    fabs = abs(fz.value)
    rhs = schwarz_pick_bound(min(1.0, fabs + fz.abs_error_bound), r, k)
    tol = HOLDS_TOL + dk.abs_error_bound
    return BoundReport.of(lhs, rhs, tol)
