"""Truncated Taylor series of analytic self-maps of the unit disk.

A :class:`CoefficientSeries` stores ``c_0..c_N`` together with a geometric
model of the discarded tail::

    |c_n| <= tail_scale * tail_ratio**(n - 1)      for n > N

which turns every truncated sum into a value plus a rigorous error bound.
Series built by the generators here (disk automorphisms, finite Blaschke
products) are exact self-maps, so ``|c_n| <= 1`` is also available as a
fallback bound.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from functools import cached_property, partial
from typing import Callable, Optional

import numpy as np

from . import kernels
from .errors import DomainError, InsufficientOrderError

DEFAULT_TRUNC = 200
ESCALATED_TRUNC = 2000
BLASCHKE_ZERO_CAP = 0.95


def default_trunc_order(r: float) -> int:
    """Truncation order that keeps the generic tail bound small at radius ``r``."""
    return ESCALATED_TRUNC if r >= 0.9 else DEFAULT_TRUNC


class Variant(enum.Enum):
    MINUS = "minus"  # (a - z) / (1 - a z)
    PLUS = "plus"  # (a + z) / (1 + a z)


@dataclass(frozen=True)
class AutomorphismParams:
    a: float
    variant: Variant = Variant.MINUS

    def __post_init__(self):
        if not 0.0 <= self.a < 1.0:
            raise DomainError(f"automorphism parameter a={self.a} not in [0, 1)")


@dataclass(frozen=True)
class EvalResult:
    value: complex
    abs_error_bound: float


@dataclass(frozen=True, eq=False)
class CoefficientSeries:
    """Coefficients ``c_0..c_N`` of a map of the disk plus a tail model.

    ``verified`` is True only for generated families known to map the disk
    into itself; user-supplied coefficients are flagged unverified.
    """

    coeffs: np.ndarray
    tail_ratio: float = 0.0
    tail_scale: float = 0.0
    verified: bool = False
    label: str = ""
    _factory: Optional[Callable[[int], "CoefficientSeries"]] = field(default=None, repr=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128)
        if c.ndim != 1 or c.shape[0] < 2:
            raise DomainError("need at least c_0 and c_1")
        if abs(c[0]) > 1.0 + 1e-15:
            raise DomainError(f"|c_0| = {abs(c[0])} > 1 cannot belong to a self-map")
        if not 0.0 <= self.tail_ratio < 1.0:
            raise DomainError(f"tail_ratio={self.tail_ratio} not in [0, 1)")
        if self.tail_scale < 0.0:
            raise DomainError("tail_scale must be nonnegative")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def trunc_order(self) -> int:
        return self.coeffs.shape[0] - 1

    @cached_property
    def abs_coeffs(self) -> np.ndarray:
        a = np.abs(self.coeffs)
        a.flags.writeable = False
        return a

    @cached_property
    def sq_coeffs(self) -> np.ndarray:
        a = self.abs_coeffs**2
        a.flags.writeable = False
        return a

    @property
    def a0(self) -> float:
        return float(self.abs_coeffs[0])

    def with_order(self, trunc_order: int) -> "CoefficientSeries":
        """Regenerate a generated family at another truncation order."""
        if self._factory is None:
            raise InsufficientOrderError("series was not produced by a generator; cannot re-expand")
        return self._factory(trunc_order)

    def tail_bound(self, x: float, k: int = 0, power: int = 1) -> float:
        """Bound on ``sum_{n>N} n!/(n-k)! |c_n|**power x**(n-k)``.

        Uses the geometric tail model, and for verified self-maps also the
        generic ``|c_n| <= 1``; the smaller bound wins.
        """
        n = self.trunc_order
        best = _geometric_tail(self.tail_scale**power, self.tail_ratio**power, n, x, k)
        if self.verified:
            best = min(best, _geometric_tail(1.0, 1.0, n, x, k))
        return best


def _falling(n: int, k: int) -> float:
    out = 1.0
    for j in range(k):
        out *= n - j
    return out


def _geometric_tail(scale: float, ratio: float, n_trunc: int, x: float, k: int) -> float:
    """Bound ``sum_{n>N} n^(k falling) * scale * ratio**(n-1) * x**(n-k)``.

    Consecutive terms shrink by at most ``ratio * x * (m+1)/(m+1-k)`` with
    ``m = N + 1``, so the sum is dominated by a geometric series.
    """
    if scale == 0.0 or x == 0.0:
        return 0.0
    m = n_trunc + 1
    theta = ratio * x * (m + 1) / (m + 1 - k)
    if theta >= 1.0:
        return math.inf
    first = scale * _falling(m, k) * ratio ** (m - 1) * x ** (m - k)
    return first / (1.0 - theta)


def _check_point(z: complex) -> float:
    r = abs(z)
    if r >= 1.0:
        raise DomainError(f"|z| = {r} must be < 1")
    return r


def from_coefficients(coeffs, tail_ratio: float = 0.0, tail_scale: float = 0.0) -> CoefficientSeries:
    """Wrap user coefficients. Membership in the unit ball is not checked."""
    return CoefficientSeries(np.asarray(coeffs, dtype=np.complex128), tail_ratio, tail_scale, verified=False, label="user")


def automorphism_series(params: AutomorphismParams, trunc_order: int = DEFAULT_TRUNC) -> CoefficientSeries:
    if trunc_order < 1:
        raise DomainError("trunc_order must be >= 1")
    a = params.a
    k = np.arange(trunc_order, dtype=np.float64)
    c = np.empty(trunc_order + 1, dtype=np.complex128)
    c[0] = a
    if params.variant is Variant.MINUS:
        c[1:] = -(1.0 - a * a) * np.power(a, k)
    else:
        c[1:] = (1.0 - a * a) * np.power(-a, k)
    return CoefficientSeries(
        c,
        tail_ratio=a,
        tail_scale=1.0 - a * a,
        verified=True,
        label=f"automorphism({a}, {params.variant.value})",
        _factory=partial(automorphism_series, params),
    )


def automorphism_value(params: AutomorphismParams, z: complex) -> complex:
    """Closed form of the automorphism at ``z``."""
    a = params.a
    if params.variant is Variant.MINUS:
        return (a - z) / (1.0 - a * z)
    return (a + z) / (1.0 + a * z)


def automorphism_derivative(params: AutomorphismParams, z: complex, k: int) -> complex:
    """Closed form of the k-th derivative of the automorphism at ``z``."""
    if k == 0:
        return automorphism_value(params, z)
    a = params.a
    if params.variant is Variant.MINUS:
        return -(1.0 - a * a) * math.factorial(k) * a ** (k - 1) / (1.0 - a * z) ** (k + 1)
    return (1.0 - a * a) * math.factorial(k) * (-a) ** (k - 1) / (1.0 + a * z) ** (k + 1)


def eval_series(s: CoefficientSeries, z: complex) -> EvalResult:
    r = _check_point(z)
    value = complex(kernels.taylor_at(s.coeffs, complex(z), 0)[0])
    return EvalResult(value, s.tail_bound(r, 0))


def derivatives_at(s: CoefficientSeries, z: complex, kmax: int) -> list[EvalResult]:
    """``f^(k)(z)`` for every ``k <= kmax`` from a single synthetic-division pass."""
    r = _check_point(z)
    if kmax > s.trunc_order:
        raise InsufficientOrderError(f"derivative order {kmax} exceeds truncation order {s.trunc_order}")
    scaled = kernels.taylor_at(s.coeffs, complex(z), kmax)
    out = []
    for k in range(kmax + 1):
        fk = math.factorial(k)
        out.append(EvalResult(complex(scaled[k]) * fk, s.tail_bound(r, k)))
    return out


def derivative_at(s: CoefficientSeries, z: complex, k: int) -> EvalResult:
    if k < 0:
        raise DomainError("derivative order must be nonnegative")
    return derivatives_at(s, z, k)[k]


def blaschke_from_zeros(zeros, c: complex = 1.0, trunc_order: int = DEFAULT_TRUNC) -> CoefficientSeries:
    """Finite Blaschke product ``c * prod (alpha_j - z)/(1 - conj(alpha_j) z)``."""
    zeros = np.asarray(zeros, dtype=np.complex128).ravel()
    if zeros.size == 0:
        raise DomainError("need at least one zero")
    if abs(abs(c) - 1.0) > 1e-12:
        raise DomainError("the rotation constant must be unimodular")
    rho = float(np.max(np.abs(zeros)))
    if rho >= 1.0:
        raise DomainError("Blaschke zeros must lie in the open disk")
    if trunc_order < 1:
        raise DomainError("trunc_order must be >= 1")
    coeffs = kernels.blaschke_expand(zeros, complex(c), trunc_order)
    # Cauchy estimate on |z| = R, midway between the disk and the nearest pole
    ratio = (1.0 + rho) / 2.0
    R = 1.0 / ratio
    bound = 1.0
    for m in np.abs(zeros):
        bound *= (m + R) / (1.0 - m * R)
    return CoefficientSeries(
        coeffs,
        tail_ratio=ratio,
        tail_scale=bound * ratio,
        verified=True,
        label=f"blaschke(deg={zeros.size})",
        _factory=partial(blaschke_from_zeros, zeros.copy(), complex(c)),
    )


def blaschke_zeros(degree: int, seed: int) -> tuple[np.ndarray, complex]:
    """Zeros and rotation drawn deterministically from ``seed``."""
    if degree < 1:
        raise DomainError("degree must be >= 1")
    rng = np.random.default_rng(seed)
    moduli = BLASCHKE_ZERO_CAP * rng.random(degree)
    angles = rng.uniform(0.0, 2.0 * math.pi, degree)
    zeros = moduli * np.exp(1j * angles)
    c = cmath.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
    return zeros, c


def blaschke_sample(degree: int, seed: int, trunc_order: int = DEFAULT_TRUNC) -> CoefficientSeries:
    zeros, c = blaschke_zeros(degree, seed)
    s = blaschke_from_zeros(zeros, c, trunc_order)
    object.__setattr__(s, "label", f"blaschke(deg={degree}, seed={seed})")
    return s


def blaschke_value(zeros, c: complex, z: complex) -> complex:
    """Direct product evaluation, independent of the series expansion."""
    out = complex(c)
    for alpha in np.asarray(zeros, dtype=np.complex128).ravel():
        out *= (alpha - z) / (1.0 - alpha.conjugate() * z)
    return out
