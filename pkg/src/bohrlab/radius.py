"""Sharp-radius equations and a bracketed bisection solver.

Every radius is the unique sign change of a real function on (0, 1). The
catalog stores each equation with the approximation quoted alongside the
corresponding theorem, when one is quoted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import BracketError, ConvergenceError, DomainError
from .functionals import G_LAMBDA, G_RADIUS, g1_excess_poly

MAX_ITER = 200
DEFAULT_LO = 1e-9
DEFAULT_HI = 1.0 - 1e-9
SCAN_POINTS = 64
EXPECTED_TOL = 5e-6
RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class RadiusEquation:
    id: str
    eval: Callable[[float], float]
    bracket: tuple = (DEFAULT_LO, DEFAULT_HI)
    expected: Optional[float] = None
    params: dict = field(default_factory=dict)
    render: str = ""


@dataclass(frozen=True)
class RootResult:
    root: float
    residual: float
    iterations: int


def _sign_bracket(f, lo: float, hi: float) -> tuple:
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo, lo
    if fhi == 0.0:
        return hi, hi
    if flo * fhi < 0:
        return lo, hi
    xs = np.linspace(lo, hi, SCAN_POINTS)
    prev_x, prev_f = xs[0], flo
    for x in xs[1:]:
        fx = f(float(x))
        if fx == 0.0:
            return float(x), float(x)
        if prev_f * fx < 0:
            return float(prev_x), float(x)
        prev_x, prev_f = x, fx
    raise BracketError(f"no sign change on [{lo}, {hi}]")


def bisect(f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12) -> RootResult:
    """Bisection on ``[lo, hi]``, first narrowed by a 64-point sign scan if needed."""
    if tol < 1e-14:
        raise DomainError("tol must be >= 1e-14")
    lo, hi = _sign_bracket(f, lo, hi)
    flo = f(lo)
    it = 0
    while hi - lo > tol:
        if it >= MAX_ITER:
            raise ConvergenceError(f"bisection did not reach tol={tol} in {MAX_ITER} iterations")
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        it += 1
        if fm == 0.0:
            lo = hi = mid
            break
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    return RootResult(root, f(root), it)


def solve(eq: RadiusEquation, tol: float = 1e-12) -> RootResult:
    lo, hi = eq.bracket
    return bisect(eq.eval, lo, hi, tol)


def verify_monotone(eq: RadiusEquation, grid_size: int = 1000) -> bool:
    """True iff ``eq.eval`` is nondecreasing on an equispaced grid over the bracket."""
    if grid_size < 10:
        raise DomainError("grid_size must be >= 10")
    xs = np.linspace(eq.bracket[0], eq.bracket[1], grid_size)
    vals = np.array([eq.eval(float(x)) for x in xs])
    return bool(np.all(np.diff(vals) >= 0.0))


# -- equations ---------------------------------------------------------------

def _poly(coeffs):
    """Ascending coefficients -> callable evaluated by Horner."""
    rev = list(reversed(coeffs))

    def f(r):
        acc = 0.0
        for c in rev:
            acc = acc * r + c
        return acc

    return f


def _render_poly(coeffs) -> str:
    terms = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        mag = abs(c)
        coef = "" if (mag == 1 and k > 0) else f"{mag:g}"
        var = "" if k == 0 else ("r" if k == 1 else f"r^{k}")
        body = f"{coef}{var}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out + " = 0"


def poly_equation(id: str, coeffs, expected=None, bracket=(DEFAULT_LO, DEFAULT_HI), **params) -> RadiusEquation:
    return RadiusEquation(id, _poly(coeffs), bracket, expected, dict(params, coeffs=tuple(coeffs)), _render_poly(coeffs))


D_F_POLY = (-1, 2, 1, 0, 2, 1)
J1_POLY = (-1, 4, -2, 0, 3, 2, -2, -2)
J2_POLY = (-1, 3, -1, -1, 2, 1, -1, -1)
SECOND_DERIV_POLY = (-1, 3, 1, 1, 4, 2)
REFINED_DERIV_SQ_POLY = (1, -2, -1, -1, -1)
D_F_LIMIT_POLY = (-1, 2, 3, -1, 2, 3, 1)
J1_LIMIT_POLY = (-1, 1, 8, 2, 1, 7, 12, 8, 2)
# a -> 1 limits of the exact extremal excess numerators
D_F_EXTREMAL_POLY = (-1, 1, 3, -1, 2, 3, 1)
J1_EXTREMAL_POLY = (-1, 1, 6, 2, -5, 7, 12, 8, 2)
DERIV_POLY = (-1, 3, 2)
SQRT5_POLY = (-1, 4, 1)


def rogosinski(N: int, squared: bool = False) -> RadiusEquation:
    """``c (1+r) r^N - (1-r)^2 = 0`` with c = 2 (|f| head) or c = 1 (|f|^2 head)."""
    if N < 1:
        raise DomainError("N must be >= 1")
    c = 1.0 if squared else 2.0
    name = f"rogosinski_prime_{N}" if squared else f"rogosinski_{N}"
    head = "" if squared else "2"
    return RadiusEquation(
        name,
        lambda r: c * (1.0 + r) * r**N - (1.0 - r) ** 2,
        params={"N": N, "squared": squared},
        render=f"{head}(1+r)r^{N} - (1-r)^2 = 0",
    )


def refined_sq_cubic(a: float) -> RadiusEquation:
    """``(1-a^2) r^3 - (1+2a) r^2 - 2r + 1 = 0``, the radius of ``|f|^2 + B_1 + A(f0)``."""
    if not 0.0 <= a < 1.0:
        raise DomainError("a must lie in [0, 1)")
    coeffs = (1.0, -2.0, -(1.0 + 2.0 * a), 1.0 - a * a)
    return poly_equation(f"refined_sq_radius(a={a:g})", coeffs, a=a)


def printed_refined_sq_cubic(a: float) -> RadiusEquation:
    """Variant with ``1 - a^3`` in the leading coefficient; not sharp (kept as a counterexample)."""
    coeffs = (1.0, -2.0, -(1.0 + 2.0 * a), 1.0 - a**3)
    return poly_equation(f"refined_sq_radius_cubed(a={a:g})", coeffs, a=a)


def g_lambda_equation() -> RadiusEquation:
    """Lambda at which the ``G_1`` excess numerator vanishes at a = 1."""
    return RadiusEquation(
        "G_lambda",
        lambda lam: g1_excess_poly(1.0, lam),
        render="F(1, lambda) = 0",
    )


def catalog() -> list[RadiusEquation]:
    eqs = [
        poly_equation("D_f_radius", D_F_POLY, 0.393727),
        poly_equation("J1", J1_POLY, 0.285086),
        poly_equation("J2", J2_POLY, 0.386055),
        poly_equation("second_deriv_radius", SECOND_DERIV_POLY, 0.287459),
        poly_equation("refined_deriv_sq_radius", REFINED_DERIV_SQ_POLY, 0.385795),
        poly_equation("D_f_sharpness_limit", D_F_LIMIT_POLY, 0.333004),
        poly_equation("J1_sharpness_limit", J1_LIMIT_POLY, 0.283682),
        poly_equation("D_f_extremal_threshold", D_F_EXTREMAL_POLY),
        poly_equation("J1_extremal_threshold", J1_EXTREMAL_POLY),
        poly_equation("deriv_radius", DERIV_POLY),
        poly_equation("sqrt5_minus_2", SQRT5_POLY, 0.236068),
        refined_sq_cubic(0.0),
        g_lambda_equation(),
    ]
    eqs += [rogosinski(n) for n in range(1, 6)]
    eqs += [rogosinski(n, squared=True) for n in range(1, 6)]
    return sorted(eqs, key=lambda e: e.id)


def catalog_entry(id: str) -> RadiusEquation:
    for eq in catalog():
        if eq.id == id:
            return eq
    raise KeyError(id)


# -- closed-form constants ---------------------------------------------------

def refined_radius(a: float) -> float:
    """``2 / (3 + a + sqrt5 (1 + a))``: radius of ``|f| + B_1 + A(f0)``."""
    return 2.0 / (3.0 + a + math.sqrt(5.0) * (1.0 + a))


def refined_area_radius(a: float) -> float:
    """``1 / (3 - a)``: radius of ``a^2 + B_1 + A(f0) + 9/8 S/pi``."""
    return 1.0 / (3.0 - a)


HARMONIC_M_MAX = 1.0 / (2.0 * (math.log(4.0) - 1.0))


def constants() -> dict:
    """Closed-form constants; the two a-dependent radii are callables."""
    s5 = math.sqrt(5.0)
    return {
        "deriv_radius": G_RADIUS,
        "G_lambda": G_LAMBDA,
        "sqrt5_minus_2": s5 - 2.0,
        "area_weight_sqrt5": 2.0 * (s5 - 1.0),
        "area_weight_16_9": 16.0 / 9.0,
        "area_weight_9_8": 9.0 / 8.0,
        "area_weight_8_9": 8.0 / 9.0,
        "refined_area_radius": refined_area_radius,
        "refined_radius": refined_radius,
        "harmonic_M_max": HARMONIC_M_MAX,
    }
