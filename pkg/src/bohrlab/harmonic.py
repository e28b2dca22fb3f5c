"""Distance-form Bohr inequality for harmonic maps ``f = h + conj(g)`` in P0_H(M).

Functions in the class satisfy ``|a_n| + |b_n| <= 2M/(n(n-1))``; the
distance from ``f(0)`` to the image boundary is at least
``1 + 2M(1 - ln 4)``. For a basis ``{phi_n(r)}`` the radius ``R_f(M)`` is the
root of

    H_M(r) = r phi_0(r) + 2M sum_{n>=2} phi_n(r)/(n(n-1)) - 1 - 2M(1 - ln 4).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from decimal import Decimal
from typing import Callable, Optional

import numpy as np

from . import kernels
from .errors import BracketError, ConvergenceError, DomainError, InvalidMError, TableMismatchError
from .lemmas import BoundReport
from .radius import RootResult, bisect

LN4 = math.log(4.0)
ALT_SUM = 1.0 - LN4  # sum_{n>=2} (-1)^(n-1) / (n(n-1))
M_MAX = 1.0 / (2.0 * (LN4 - 1.0))
R_CAP = 1.0 - 1e-9
DIRECT_TERMS = 10_000


# -- coefficient data --------------------------------------------------------

@dataclass(frozen=True, eq=False)
class HarmonicCoefficients:
    """``h_coeffs[k]`` holds a_{k+1} and ``g_coeffs[k]`` holds b_{k+1}."""

    h_coeffs: np.ndarray
    g_coeffs: np.ndarray
    M: float

    def __post_init__(self):
        h = np.array(self.h_coeffs, dtype=np.complex128)
        g = np.array(self.g_coeffs, dtype=np.complex128)
        if h.shape != g.shape or h.ndim != 1 or h.size < 1:
            raise DomainError("h and g coefficient arrays must be 1-D and of equal length")
        if h[0] != 1 or g[0] != 0:
            raise DomainError("normalization requires a_1 = 1 and b_1 = 0")
        if self.M <= 0:
            raise DomainError("M must be positive")
        h.flags.writeable = False
        g.flags.writeable = False
        object.__setattr__(self, "h_coeffs", h)
        object.__setattr__(self, "g_coeffs", g)

    @property
    def trunc_order(self) -> int:
        return self.h_coeffs.size

    def a(self, n: int) -> complex:
        return complex(self.h_coeffs[n - 1]) if n <= self.trunc_order else 0j

    def b(self, n: int) -> complex:
        return complex(self.g_coeffs[n - 1]) if n <= self.trunc_order else 0j

    def majorant(self) -> np.ndarray:
        """``|a_n| + |b_n|`` for n = 2..N (index 0 is n = 2)."""
        return np.abs(self.h_coeffs[1:]) + np.abs(self.g_coeffs[1:])


def coeff_bound(M: float, n) -> float:
    return 2.0 * M / (n * (n - 1.0))


def extremal_fM(M: float, trunc_order: int = 2000) -> HarmonicCoefficients:
    """``f_M(z) = z + 2M sum z^n/(n(n-1))``; saturates the coefficient bound."""
    n = np.arange(2, trunc_order + 1, dtype=np.float64)
    h = np.concatenate(([1.0], coeff_bound(M, n)))
    return HarmonicCoefficients(h, np.zeros_like(h), M)


def sample_harmonic(M: float, trunc_order: int, seed: int) -> HarmonicCoefficients:
    """Coefficients with ``|a_n| + |b_n| = theta_n 2M/(n(n-1))``, theta_n ~ U[0, 1].

    The split between ``|a_n|`` and ``|b_n|`` and both phases are random too.
    """
    rng = np.random.default_rng(seed)
    n = np.arange(2, trunc_order + 1, dtype=np.float64)
    total = rng.random(n.size) * coeff_bound(M, n)
    split = rng.random(n.size)
    pa = np.exp(2j * np.pi * rng.random(n.size))
    pb = np.exp(2j * np.pi * rng.random(n.size))
    h = np.concatenate(([1.0], split * total * pa))
    g = np.concatenate(([0.0], (1.0 - split) * total * pb))
    return HarmonicCoefficients(h, g, M)


def harmonic_coeff_bound(hc: HarmonicCoefficients, n: int) -> BoundReport:
    """``|a_n| + |b_n| <= 2M/(n(n-1))``; holds also requires the two weaker forms."""
    if n < 2:
        raise DomainError("the coefficient bound is stated for n >= 2")
    an, bn = abs(hc.a(n)), abs(hc.b(n))
    rhs = coeff_bound(hc.M, n)
    rep = BoundReport.of(an + bn, rhs)
    weaker = BoundReport.of(abs(an - bn), rhs).holds and BoundReport.of(an, rhs).holds
    return BoundReport(rep.lhs, rep.rhs, rep.slack, rep.holds and weaker)


# -- growth and distance -----------------------------------------------------

def _log1m(r: float) -> float:
    return math.log1p(-r)


def _direct_alt(r: float, nterms: int = DIRECT_TERMS) -> tuple:
    """Alternating sum and an error bound (first omitted term)."""
    val = kernels.weighted_phi_sum(r, 0.0, 0.0, nterms, True)
    return val, r ** (nterms + 1) / (nterms * (nterms + 1.0))


def growth_envelope(M: float, r: float, check: bool = True) -> tuple:
    """Sharp lower and upper bounds for ``|f(z)|`` at ``|z| = r``.

    Closed forms are returned; with ``check`` the direct sums are computed
    as well and a disagreement beyond their tail bounds raises.
    """
    if M <= 0:
        raise DomainError("M must be positive")
    if not 0.0 <= r < 1.0:
        raise DomainError(f"r = {r} must lie in [0, 1)")
    if r == 0.0:
        return 0.0, 0.0
    l1 = _log1m(r)
    lower = r - 2.0 * M * ((1.0 + r) * math.log1p(r) - r)
    upper = r + 2.0 * M * ((1.0 - r) * l1 + r)
    if check:
        alt, alt_err = _direct_alt(r)
        geo = kernels.weighted_phi_sum(r, 0.0, 0.0, DIRECT_TERMS, False)
        geo_err = r ** (DIRECT_TERMS + 1) / (DIRECT_TERMS * (DIRECT_TERMS + 1.0) * (1.0 - r))
        slack = 1e-12 * (1.0 + 2.0 * M)
        if abs(lower - (r + 2 * M * alt)) > 2 * M * alt_err + slack or abs(upper - (r + 2 * M * geo)) > 2 * M * geo_err + slack:
            raise ConvergenceError(f"closed-form growth envelope disagrees with direct sum at r={r}")
    return lower, upper


def distance_lower(M: float) -> float:
    """``1 + 2M(1 - ln 4)``, a lower bound for ``d(f(0), boundary of f(D))``."""
    if M <= 0:
        raise DomainError("M must be positive")
    return 1.0 + 2.0 * M * ALT_SUM


# -- phi sequences -----------------------------------------------------------

def _poly_moment_sum(k: int, x: float) -> float:
    """``sum_{n>=1} n^k x^n`` for k <= 3."""
    q = 1.0 - x
    if k == 0:
        return x / q
    if k == 1:
        return x / q**2
    if k == 2:
        return x * (1.0 + x) / q**3
    if k == 3:
        return x * (1.0 + 4.0 * x + x * x) / q**4
    raise DomainError("closed form available only for powers up to 3")


def _w_geometric(r):
    return (1.0 - r) * _log1m(r) + r


def _w_n1(r):
    return -r * _log1m(r)


def _w_n2(r):
    return r * (r - (1.0 - r) * _log1m(r)) / (1.0 - r)


def _w_n3(r):
    return r * ((3.0 - 2.0 * r) * r / (1.0 - r) ** 2 - _log1m(r))


def _w_np1(r):
    return r + (1.0 - 2.0 * r) * _log1m(r)


def _w_np2(r):
    return (r + (1.0 - 5.0 * r + 4.0 * r * r) * _log1m(r)) / (1.0 - r)


def _w_np3(r):
    return (r + 4 * r**2 - 4 * r**3 + (1.0 - r) ** 2 * (1.0 - 8.0 * r) * _log1m(r)) / (1.0 - r) ** 2


@dataclass(frozen=True)
class PhiSequence:
    """A basis ``{phi_n(r)}``; the built-ins all have ``phi_n = (n + shift)^power r^n``.

    ``weighted_sum`` is the closed form of ``sum_{n>=2} phi_n(r)/(n(n-1))``
    (None means direct summation), ``weighted_sum_at_one`` its limit at r = 1.
    """

    id: str
    phi0: Callable[[float], float]
    phi_n: Callable
    weighted_sum: Optional[Callable[[float], float]] = None
    phi_n_at_zero_sum: float = 0.0
    weighted_sum_at_one: float = math.inf
    shift: Optional[float] = None
    power: Optional[float] = None
    order: int = 0

    def weighted(self, r: float) -> float:
        """``sum_{n>=2} phi_n(r)/(n(n-1))``, closed form when available."""
        if r >= R_CAP:
            return self.weighted_sum_at_one
        if self.weighted_sum is not None and r > 0.0:
            return self.weighted_sum(r)
        return self.weighted_direct(r)[0]

    def weighted_direct(self, r: float, nterms: int = DIRECT_TERMS) -> tuple:
        """Direct partial sum up to ``nterms`` and a bound on the omitted tail."""
        if self.shift is not None:
            val = kernels.weighted_phi_sum(r, self.shift, self.power, nterms, False)
        else:
            n = np.arange(2, nterms + 1, dtype=np.float64)
            val = float(np.sum(self.phi_n(n, r) / (n * (n - 1.0))))
        return val, self._tail(r, nterms, weight=True)

    def _tail(self, r: float, nterms: int, weight: bool) -> float:
        if self.shift is None:
            return 0.0 if r == 0.0 else math.nan
        m = nterms + 1
        growth = ((m + 1 + self.shift) / (m + self.shift)) ** self.power
        theta = r * growth
        if theta >= 1.0:
            return math.inf
        first = (m + self.shift) ** self.power * r**m
        if weight:
            first /= m * (m - 1.0)
        return first / (1.0 - theta)

    def series_sum(self, x: float, nterms: int = DIRECT_TERMS) -> float:
        """``sum_{n>=1} phi_n(x)``."""
        if self.shift is not None and float(self.power).is_integer() and self.power <= 3:
            p = int(self.power)
            return sum(math.comb(p, j) * self.shift ** (p - j) * _poly_moment_sum(j, x) for j in range(p + 1))
        n = np.arange(1, nterms + 1, dtype=np.float64)
        return float(np.sum(self.phi_n(n, x)))


def power_family(shift: float, power: int, id: Optional[str] = None, closed=None, at_one=math.inf) -> PhiSequence:
    """``phi_0 = 1`` and ``phi_n(r) = (n + shift)^power r^n``."""
    name = id or f"(n+{shift:g})^{power} r^n"
    return PhiSequence(
        id=name,
        phi0=lambda r: 1.0,
        phi_n=lambda n, r: (n + shift) ** power * np.power(r, n),
        weighted_sum=closed,
        phi_n_at_zero_sum=0.0,
        weighted_sum_at_one=at_one,
        shift=float(shift),
        power=float(power),
        order=power,
    )


GEOMETRIC = power_family(0, 0, "r^n", _w_geometric, at_one=1.0)
FAMILIES = {
    "R1": power_family(0, 1, "n r^n", _w_n1),
    "R2": power_family(0, 2, "n^2 r^n", _w_n2),
    "R3": power_family(0, 3, "n^3 r^n", _w_n3),
    "R*1": power_family(1, 1, "(n+1) r^n", _w_np1),
    "R*2": power_family(1, 2, "(n+1)^2 r^n", _w_np2),
    "R*3": power_family(1, 3, "(n+1)^3 r^n", _w_np3),
}


def builtin_families() -> dict:
    return dict(FAMILIES, geometric=GEOMETRIC)


# -- the Bohr sum and its radius ---------------------------------------------

def bohr_sum_harmonic(hc: HarmonicCoefficients, phi: PhiSequence, r: float) -> float:
    """``r phi_0(r) + sum_{n>=2} (|a_n| + |b_n|) phi_n(r)`` over the stored coefficients."""
    if not 0.0 <= r < 1.0:
        raise DomainError(f"r = {r} must lie in [0, 1)")
    n = np.arange(2, hc.trunc_order + 1, dtype=np.float64)
    return r * phi.phi0(r) + float(np.dot(hc.majorant(), phi.phi_n(n, r)))


def bohr_sum_tail_bound(hc: HarmonicCoefficients, phi: PhiSequence, r: float) -> float:
    """Bound on the omitted terms from the coefficient bound ``2M/(n(n-1))``."""
    return 2.0 * hc.M * phi._tail(r, hc.trunc_order, weight=True)


def h_M_function(phi: PhiSequence, M: float, r: float) -> float:
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"r = {r} must lie in [0, 1]")
    w = phi.weighted(r)
    rr = 1.0 if r >= R_CAP else r
    return rr * phi.phi0(rr) + 2.0 * M * w - 1.0 - 2.0 * M * ALT_SUM


def check_valid_M(phi: PhiSequence, M: float) -> None:
    if M <= 0:
        raise InvalidMError("M must be positive")
    if not phi.phi_n_at_zero_sum < 1.0 / (2.0 * M) + ALT_SUM:
        raise InvalidMError(f"M = {M} violates the validity condition for basis {phi.id}")


def h_M_increasing(phi: PhiSequence, M: float, lo: float = 0.01, hi: float = 0.99, points: int = 99, h: float = 1e-6) -> bool:
    """Central-difference derivative of ``H_M`` is positive on a grid."""
    for x in np.linspace(lo, hi, points):
        d = (h_M_function(phi, M, x + h) - h_M_function(phi, M, x - h)) / (2 * h)
        if not d > 0:
            return False
    return True


def solve_Rf(phi: PhiSequence, M: float, tol: float = 1e-14, check_monotone: bool = False) -> RootResult:
    """Root of ``H_M`` in (0, 1)."""
    check_valid_M(phi, M)
    if check_monotone and not h_M_increasing(phi, M):
        raise ConvergenceError(f"H_M is not increasing for basis {phi.id}, M={M}")
    return bisect(lambda r: h_M_function(phi, M, r), 0.0, R_CAP, tol)


def sharpness_harmonic(phi: PhiSequence, M: float, delta: float, trunc_order: int = 2000) -> bool:
    """True iff the extremal Bohr sum beats the distance bound at ``R_f(M)(1 + delta)``."""
    if delta <= 0:
        raise DomainError("delta must be positive")
    r = solve_Rf(phi, M).root * (1.0 + delta)
    value = bohr_sum_harmonic(extremal_fM(M, trunc_order), phi, r)
    return value > distance_lower(M)


def generalized_phi_radius(phi: PhiSequence, p: float, tol: float = 1e-14, scan_points: int = 4096) -> RootResult:
    """Minimal root of ``phi_0(x) = (2/p) sum_{n>=1} phi_n(x)`` in (0, 1)."""
    if not 0.0 < p <= 2.0:
        raise DomainError("p must lie in (0, 2]")

    def f(x):
        return phi.phi0(x) - (2.0 / p) * phi.series_sum(x)

    xs = np.linspace(1e-9, 1.0 - 1e-6, scan_points)
    prev_x, prev_f = float(xs[0]), f(float(xs[0]))
    if prev_f <= 0:
        raise BracketError("phi_0 does not dominate the series near 0")
    for x in xs[1:]:
        fx = f(float(x))
        if fx <= 0:
            return bisect(f, prev_x, float(x), tol)
        prev_x, prev_f = float(x), fx
    raise BracketError("no crossing in (0, 1)")


# -- table reproduction ------------------------------------------------------

TABLE_M = (0.431, 0.862, 1.210, 1.271, 1.289, 1.292, 1.2935, 1.29421, 1.29433)
PRINTED = {
    "R1": ("0.443", "0.230", "0.057", "0.017", "0.0040", "0.0018", "0.00065", "0.00010", "0.000015"),
    "R2": ("0.358", "0.189", "0.029", "0.016", "0.0040", "0.0017", "0.00065", "0.00010", "0.000015"),
    "R3": ("0.277", "0.149", "0.044", "0.015", "0.0039", "0.0017", "0.00065", "0.00010", "0.000015"),
    "R*1": ("0.404", "0.208", "0.054", "0.016", "0.0040", "0.0018", "0.00065", "0.00010", "0.000015"),
    "R*2": ("0.284", "0.147", "0.043", "0.015", "0.0039", "0.0017", "0.00065", "0.00010", "0.000015"),
    "R*3": ("0.203", "0.147", "0.043", "0.015", "0.0039", "0.0017", "0.00065", "0.00010", "0.000015"),
}


@dataclass(frozen=True)
class TableRow:
    M: float
    radius: float
    family: str
    order: int


@dataclass(frozen=True)
class TableCell:
    row: TableRow
    printed: str
    tolerance: float
    delta: float
    ok: bool

    @property
    def family(self) -> str:
        return self.row.family

    @property
    def M(self) -> float:
        return self.row.M


def printed_ulp(s: str) -> float:
    """One unit in the last printed decimal place."""
    return float(Decimal(1).scaleb(Decimal(s).as_tuple().exponent))


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("BOHRLAB_THREADS", "1")))
    except ValueError:
        return 1


def _solve_cell(args) -> TableRow:
    fam, M = args
    phi = FAMILIES[fam]
    return TableRow(M, solve_Rf(phi, M).root, fam, phi.order)


def reproduce_tables() -> list:
    """All 54 radii, ordered by family then M."""
    cells = [(fam, M) for fam in FAMILIES for M in TABLE_M]
    workers = _threads()
    if workers == 1:
        return [_solve_cell(c) for c in cells]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(_solve_cell, cells))


def compare_tables(rows=None) -> list:
    """Pair each computed radius with its printed value and a one-unit tolerance."""
    rows = reproduce_tables() if rows is None else rows
    out = []
    for row in rows:
        printed = PRINTED[row.family][TABLE_M.index(row.M)]
        tol = printed_ulp(printed)
        delta = row.radius - float(printed)
        # tiny allowance so a value exactly one unit away is not lost to rounding
        out.append(TableCell(row, printed, tol, delta, abs(delta) <= tol * (1 + 1e-9)))
    return out


def check_tables(cells=None) -> list:
    """Raise :class:`TableMismatchError` listing every out-of-tolerance cell."""
    cells = compare_tables() if cells is None else cells
    bad = [c for c in cells if not c.ok]
    if bad:
        raise TableMismatchError(bad)
    return cells
