"""Bohr-type functionals assembled from reusable building blocks.

Every functional handled here has the shape::

    head(f, z) + sum_{k=1..K} |f^(k)(z)| r^k / k! + B_N(f, r)
        + |a_1|^2 r^m / (1 - r) + A(f_j, r) + lambda * area(f, r)

with ``r = |z|``. A :class:`FunctionalDescriptor` selects the pieces and
:func:`eval_functional` returns the total, a per-term breakdown and a bound
on the truncation and rounding error.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from . import kernels
from .errors import DegenerateAreaError, DomainError
from .series import CoefficientSeries, derivatives_at

EPS = 2.0**-52
SQRT17 = math.sqrt(17.0)
SQRT5 = math.sqrt(5.0)


class FTerm(enum.Enum):
    NONE = "none"
    ABS_F_P1 = "|f(z)|"
    ABS_F_P2 = "|f(z)|^2"
    ABS_A0 = "|a0|"
    ABS_A0_SQ = "|a0|^2"


class Refinement(enum.Enum):
    NONE = "none"
    A_F0 = "A(f0,r)"
    A_F1 = "A(f1,r)"


class AreaTerm(enum.Enum):
    NONE = "none"
    S_OVER_PI = "S_r/pi"
    S_OVER_PI_MINUS_S = "S_r/(pi-S_r)"


@dataclass(frozen=True)
class FunctionalDescriptor:
    f_term: FTerm = FTerm.ABS_A0
    deriv_terms: int = 0
    tail_start: int = 1
    refinement: Refinement = Refinement.NONE
    coeff_sq_term: Optional[int] = None
    area_term: AreaTerm = AreaTerm.NONE
    lam: float = 0.0

    def __post_init__(self):
        if self.deriv_terms < 0 or self.tail_start < 1:
            raise DomainError("deriv_terms must be >= 0 and tail_start >= 1")
        if self.tail_start < self.deriv_terms + 1:
            raise DomainError("tail_start must exceed deriv_terms (coefficients counted twice)")
        if self.refinement is Refinement.A_F1 and self.tail_start < 3:
            raise DomainError("A(f1, r) requires tail_start >= 3")
        if self.lam < 0.0:
            raise DomainError("lambda must be nonnegative")
        if self.coeff_sq_term is not None and self.coeff_sq_term < 0:
            raise DomainError("coefficient-square exponent must be nonnegative")

    def render(self) -> str:
        parts = []
        if self.f_term is not FTerm.NONE:
            parts.append(self.f_term.value)
        for k in range(1, self.deriv_terms + 1):
            parts.append(f"|f^({k})(z)| r^{k}/{k}!")
        parts.append(f"B_{self.tail_start}(f,r)")
        if self.coeff_sq_term is not None:
            parts.append(f"|a1|^2 r^{self.coeff_sq_term}/(1-r)")
        if self.refinement is not Refinement.NONE:
            parts.append(self.refinement.value)
        if self.area_term is not AreaTerm.NONE:
            parts.append(f"{self.lam:.6g}*{self.area_term.value}")
        return " + ".join(parts)


@dataclass(frozen=True)
class FunctionalValue:
    total: float
    parts: Mapping[str, float]
    error_bound: float


def _check_r(r: float) -> None:
    if not 0.0 <= r < 1.0:
        raise DomainError(f"r = {r} must lie in [0, 1)")


def bohr_tail(s: CoefficientSeries, r: float, k: int) -> float:
    """Truncated ``B_k(f, r) = sum_{n>=k} |a_n| r^n``."""
    _check_r(r)
    if k < 0:
        raise DomainError("k must be nonnegative")
    return kernels.power_sum(s.abs_coeffs, r, k, 0)


def norm_sq(s: CoefficientSeries, r: float, start: int = 1) -> float:
    """``sum_{n>=start} |a_n|^2 r^(2n)``; start=1 gives ||f0||_r^2, start=2 gives ||f1||_r^2."""
    _check_r(r)
    if start not in (1, 2):
        raise DomainError("start must be 1 or 2")
    return kernels.power_sum(s.sq_coeffs, r * r, start, 0)


def _refinement_factor(a0: float, r: float) -> float:
    return 1.0 / (1.0 + a0) + r / (1.0 - r)


def refinement_A(s: CoefficientSeries, r: float, which: Refinement = Refinement.A_F0) -> float:
    _check_r(r)
    if which is Refinement.NONE:
        return 0.0
    start = 1 if which is Refinement.A_F0 else 2
    return _refinement_factor(s.a0, r) * norm_sq(s, r, start)


def area_ratio(s: CoefficientSeries, r: float) -> float:
    """``S_r / pi = sum_{n>=1} n |a_n|^2 r^(2n)``."""
    _check_r(r)
    return kernels.power_sum(s.sq_coeffs, r * r, 1, 1)


def area_odds(s: CoefficientSeries, r: float) -> float:
    """``S_r / (pi - S_r)``."""
    ratio = area_ratio(s, r)
    if ratio >= 1.0:
        raise DegenerateAreaError(f"S_r/pi = {ratio} >= 1 at r = {r}")
    return ratio / (1.0 - ratio)


class _Blocks:
    """Lazily computed ingredients for one ``(series, z)`` pair."""

    def __init__(self, s: CoefficientSeries, z: complex):
        self.s = s
        self.z = complex(z)
        self.r = abs(self.z)
        _check_r(self.r)
        self._derivs = None
        self._cache = {}

    def derivs(self, kmax):
        if self._derivs is None or len(self._derivs) <= kmax:
            self._derivs = derivatives_at(self.s, self.z, max(kmax, min(3, self.s.trunc_order)))
        return self._derivs

    def get(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]


def _evaluate(d: FunctionalDescriptor, b: _Blocks) -> FunctionalValue:
    s, r = b.s, b.r
    parts = {}
    err = 0.0

    if d.f_term in (FTerm.ABS_F_P1, FTerm.ABS_F_P2):
        f0 = b.derivs(0)[0]
        mod, e0 = abs(f0.value), f0.abs_error_bound
        if d.f_term is FTerm.ABS_F_P1:
            parts["head"], herr = mod, e0
        else:
            parts["head"], herr = mod * mod, 2.0 * mod * e0 + e0 * e0
        err += herr
    elif d.f_term is FTerm.ABS_A0:
        parts["head"] = s.a0
    elif d.f_term is FTerm.ABS_A0_SQ:
        parts["head"] = s.a0 * s.a0

    if d.deriv_terms:
        ds = b.derivs(d.deriv_terms)
        for k in range(1, d.deriv_terms + 1):
            w = r**k / math.factorial(k)
            parts[f"deriv_{k}"] = abs(ds[k].value) * w
            err += ds[k].abs_error_bound * w

    parts["tail"] = b.get(("tail", d.tail_start), lambda: kernels.power_sum(s.abs_coeffs, r, d.tail_start, 0))
    err += b.get("tail_err", lambda: s.tail_bound(r, 0))

    if d.coeff_sq_term is not None:
        parts["coeff_sq"] = float(s.sq_coeffs[1]) * r**d.coeff_sq_term / (1.0 - r)

    if d.refinement is not Refinement.NONE:
        start = 1 if d.refinement is Refinement.A_F0 else 2
        nsq = b.get(("nsq", start), lambda: kernels.power_sum(s.sq_coeffs, r * r, start, 0))
        factor = _refinement_factor(s.a0, r)
        parts["refinement"] = factor * nsq
        err += factor * b.get("sq_err", lambda: s.tail_bound(r * r, 0, power=2))

    if d.area_term is not AreaTerm.NONE:
        area = b.get("area", lambda: kernels.power_sum(s.sq_coeffs, r * r, 1, 1))
        aerr = b.get("area_err", lambda: r * r * s.tail_bound(r * r, 1, power=2))
        if d.area_term is AreaTerm.S_OVER_PI:
            parts["area"] = d.lam * area
            err += d.lam * aerr
        else:
            if area >= 1.0:
                raise DegenerateAreaError(f"S_r/pi = {area} >= 1 at r = {r}")
            parts["area"] = d.lam * area / (1.0 - area)
            hi = area + aerr
            err += math.inf if hi >= 1.0 else d.lam * (hi / (1.0 - hi) - area / (1.0 - area))

    total = sum(parts.values())
    # floating-point summation of <= N+1 nonnegative terms per block
    majorant = b.get("majorant", lambda: kernels.power_sum(s.abs_coeffs, r, 0, 0))
    gamma = 4.0 * (s.trunc_order + 8) * EPS
    err += gamma * (total + (d.deriv_terms + 1) * majorant * (1.0 + r) ** d.deriv_terms / (1.0 - r) ** d.deriv_terms)
    return FunctionalValue(total=total, parts=parts, error_bound=err)


def eval_functional(d: FunctionalDescriptor, s: CoefficientSeries, z: complex) -> FunctionalValue:
    return _evaluate(d, _Blocks(s, z))


def evaluate_many(ds: Sequence[FunctionalDescriptor], s: CoefficientSeries, z: complex) -> list[FunctionalValue]:
    """Evaluate several descriptors at one point, sharing derivative and sum computations."""
    b = _Blocks(s, z)
    return [_evaluate(d, b) for d in ds]


# -- closed forms at the extremal automorphisms -----------------------------

def df_excess_poly(a: float, r: float) -> float:
    """Numerator of ``D_f(f_a, -r) - 1`` over ``(1-a^2)/((1-r)(1+ar)^3)``."""
    return (-1 + 2 * r - a * r + 3 * a * r**2 - a * r**3 + 2 * a * r**4
            + 3 * a**2 * r**5 + a**3 * r**6)


def j1_excess_poly(a: float, r: float) -> float:
    """Numerator of ``J_{f,1}(f_a, -r) - 1`` over ``(1-a)/((1-r)(1+ar)^4)``."""
    return (-1 + 3 * r - 2 * a * r - 2 * r**2 + 8 * a * r**2 - 6 * a * r**3
            + 6 * a**2 * r**3 + 2 * a**3 * r**3 + r**4 + a * r**4 - 6 * a**2 * r**4
            - a**3 * r**4 + 4 * a * r**5 + 4 * a**2 * r**5 - a**3 * r**5
            + 6 * a**2 * r**6 + 6 * a**3 * r**6 + 4 * a**3 * r**7 + 4 * a**4 * r**7
            + a**4 * r**8 + a**5 * r**8)


G_LAMBDA = (221.0 - 43.0 * SQRT17) / 64.0
G_RADIUS = (SQRT17 - 3.0) / 4.0


def g1_excess_poly(a: float, lam: float) -> float:
    """Numerator of ``G_1(f*_a, (sqrt17-3)/4) - 1``; vanishes at a=1 exactly for the sharp lambda."""
    s = SQRT17
    return ((-1248 + 288 * s) + (-5456 + 1328 * s) * a + (-9168 + 2224 * s) * a**2
            + 2 * (-4082 + 990 * s) * a**3 + (-4082 + 990 * s) * a**4
            + 16 * lam * (71 - 17 * s) * (1 + a) ** 2)


def g2_excess_poly(a: float, lam: float) -> float:
    """Numerator of ``G_2(f*_a, (sqrt17-3)/4) - 1``."""
    s = SQRT17
    return ((10464 - 2592 * s) + 16 * (611 - 149 * s) * a + 2 * (5588 - 1356 * s) * a**2
            + 24 * (-1397 + 339 * s) * a**4 + 4 * (-7771 + 1885 * s) * a**5
            + 2 * (-17725 + 4299 * s) * a**6
            + 16 * lam * (1 + a) ** 2 * ((284 - 68 * s) + 4 * (-251 + 61 * s) * a + (895 - 217 * s) * a**2))


def _g_general(a: float, r: float, lam: float, odds: bool) -> float:
    """Value of G_1 / G_2 at ``f*_a`` and ``z = r`` for arbitrary r."""
    q = 1.0 - a * a
    val = ((r + a) / (1 + r * a) + q * r / (1 + a * r) ** 2 + q * a * r * r / (1 - a * r)
           + (1 + a * r) / ((1 + a) * (1 - r)) * q * q * r * r / (1 - a * a * r * r))
    if odds:
        val += lam * q * q * r * r / ((1 - r * r) * (1 - a**4 * r * r))
    else:
        val += lam * q * q * r * r / (1 - a * a * r * r) ** 2
    return val


CLOSED_FORM_IDS = ("bohr_classical", "D_f", "J_1", "G_1", "G_2")


def extremal_closed_form(theorem_id: str, a: float, r: float, lam: Optional[float] = None) -> float:
    """Closed-form value of a theorem's functional at its extremal automorphism.

    ``D_f`` and ``J_1`` use ``f_a`` at ``z = -r``; ``G_1``/``G_2`` use ``f*_a``
    at ``z = r`` and switch to the polynomial form when ``r`` is the sharp
    radius ``(sqrt17 - 3)/4``.
    """
    if not 0.0 <= a < 1.0 or not 0.0 <= r < 1.0:
        raise DomainError("need 0 <= a < 1 and 0 <= r < 1")
    if theorem_id == "bohr_classical":
        return a + (1 - a * a) * r / (1 - a * r)
    if theorem_id == "D_f":
        return 1.0 + (1 - a * a) * df_excess_poly(a, r) / ((1 - r) * (1 + a * r) ** 3)
    if theorem_id == "J_1":
        return 1.0 + (1 - a) * j1_excess_poly(a, r) / ((1 - r) * (1 + a * r) ** 4)
    if theorem_id in ("G_1", "G_2"):
        lam = G_LAMBDA if lam is None else lam
        odds = theorem_id == "G_2"
        if abs(r - G_RADIUS) > 1e-15:
            return _g_general(a, r, lam, odds)
        s = SQRT17
        if odds:
            den = (4 + (s - 3) * a) ** 2 * (52 * s - 172 + (611 - 149 * s) * a**4)
            return 1.0 + (1 - a) ** 2 * g2_excess_poly(a, lam) / den
        den = (7 - s) * (8 + (-13 + 3 * s) * a * a) ** 2
        return 1.0 + (1 - a) ** 2 * g1_excess_poly(a, lam) / den
    raise NotImplementedError(f"no closed form for theorem {theorem_id!r}")
