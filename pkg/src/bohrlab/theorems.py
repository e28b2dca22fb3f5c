"""Registry of Bohr-type inequalities: functional, radius and extremal function.

Each :class:`Theorem` pairs a :class:`FunctionalDescriptor` with the radius
up to which the functional stays ``<= 1`` on the whole class. Radii that
depend on ``|a_0|`` are callables of ``a``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .functionals import (
    G_LAMBDA,
    G_RADIUS,
    AreaTerm,
    FTerm,
    FunctionalDescriptor,
    Refinement,
)
from .radius import (
    REFINED_DERIV_SQ_POLY,
    D_F_POLY,
    J1_POLY,
    J2_POLY,
    SECOND_DERIV_POLY,
    poly_equation,
    refined_area_radius,
    refined_radius,
    refined_sq_cubic,
    rogosinski,
    solve,
)
from .series import Variant

SQRT5 = math.sqrt(5.0)


@dataclass(frozen=True)
class Theorem:
    id: str
    descriptor: FunctionalDescriptor
    radius_fn: Callable[[float], float]
    sharp: bool = True
    extremal: Variant = Variant.MINUS
    note: str = ""

    def radius(self, a: float = 0.0) -> float:
        return self.radius_fn(a)

    @property
    def extremal_sign(self) -> int:
        """Evaluation point is ``sign * r`` for the extremal automorphism."""
        return -1 if self.extremal is Variant.MINUS else 1


@lru_cache(maxsize=None)
def _root(coeffs) -> float:
    return solve(poly_equation("_", coeffs), 1e-14).root


@lru_cache(maxsize=None)
def _rogosinski_root(N: int, squared: bool) -> float:
    return solve(rogosinski(N, squared), 1e-14).root


@lru_cache(maxsize=4096)
def _refined_sq_root(a: float) -> float:
    return solve(refined_sq_cubic(a), 1e-14).root


def _const(x: float) -> Callable[[float], float]:
    return lambda a: x


def _poly_radius(coeffs) -> Callable[[float], float]:
    return lambda a: _root(coeffs)


def _D(**kw) -> FunctionalDescriptor:
    return FunctionalDescriptor(**kw)


def build_registry(max_N: int = 5) -> dict:
    thms = []
    add = thms.append

    add(Theorem("bohr_classical", _D(f_term=FTerm.ABS_A0, tail_start=1), _const(1.0 / 3.0)))
    for N in range(1, max_N + 1):
        add(Theorem(f"rogosinski_{N}", _D(f_term=FTerm.ABS_F_P1, tail_start=N),
                    (lambda a, N=N: _rogosinski_root(N, False))))
        add(Theorem(f"rogosinski_prime_{N}", _D(f_term=FTerm.ABS_F_P2, tail_start=N),
                    (lambda a, N=N: _rogosinski_root(N, True))))
    add(Theorem("deriv", _D(f_term=FTerm.ABS_F_P1, deriv_terms=1, tail_start=2), _const(G_RADIUS)))
    add(Theorem("refined", _D(f_term=FTerm.ABS_F_P1, tail_start=1, refinement=Refinement.A_F0), refined_radius))
    add(Theorem("refined_sq", _D(f_term=FTerm.ABS_F_P2, tail_start=1, refinement=Refinement.A_F0),
                _refined_sq_root))
    add(Theorem("refined_deriv", _D(f_term=FTerm.ABS_F_P1, deriv_terms=1, tail_start=2, refinement=Refinement.A_F0),
                _const(G_RADIUS)))
    add(Theorem("refined_deriv_sq", _D(f_term=FTerm.ABS_F_P2, deriv_terms=1, tail_start=2, refinement=Refinement.A_F0),
                _poly_radius(REFINED_DERIV_SQ_POLY)))
    add(Theorem("second_deriv", _D(f_term=FTerm.ABS_F_P1, deriv_terms=2, tail_start=3, coeff_sq_term=3,
                                   refinement=Refinement.A_F1), _poly_radius(SECOND_DERIV_POLY)))
    add(Theorem("D_f", _D(f_term=FTerm.ABS_F_P2, deriv_terms=2, tail_start=3, coeff_sq_term=3,
                          refinement=Refinement.A_F1), _poly_radius(D_F_POLY)))
    add(Theorem("J_1", _D(f_term=FTerm.ABS_F_P1, deriv_terms=3, tail_start=4, coeff_sq_term=4,
                          refinement=Refinement.A_F1), _poly_radius(J1_POLY)))
    add(Theorem("J_2", _D(f_term=FTerm.ABS_F_P2, deriv_terms=3, tail_start=4, coeff_sq_term=4,
                          refinement=Refinement.A_F1), _poly_radius(J2_POLY)))
    for tid, area in (("G_1", AreaTerm.S_OVER_PI), ("G_2", AreaTerm.S_OVER_PI_MINUS_S)):
        add(Theorem(tid, _D(f_term=FTerm.ABS_F_P1, deriv_terms=1, tail_start=2, refinement=Refinement.A_F0,
                            area_term=area, lam=G_LAMBDA), _const(G_RADIUS), extremal=Variant.PLUS))

    # area-improved forms
    add(Theorem("area_16_9", _D(f_term=FTerm.ABS_A0, tail_start=1, area_term=AreaTerm.S_OVER_PI, lam=16 / 9),
                _const(1.0 / 3.0)))
    add(Theorem("area_sq_9_8", _D(f_term=FTerm.ABS_A0_SQ, tail_start=1, area_term=AreaTerm.S_OVER_PI, lam=9 / 8),
                _const(0.5)))
    add(Theorem("area_sqrt5", _D(f_term=FTerm.ABS_F_P1, tail_start=1, area_term=AreaTerm.S_OVER_PI,
                                 lam=2 * (SQRT5 - 1)), _const(SQRT5 - 2)))
    add(Theorem("refined_area_8_9", _D(f_term=FTerm.ABS_A0, tail_start=1, refinement=Refinement.A_F0,
                                       area_term=AreaTerm.S_OVER_PI, lam=8 / 9), _const(1.0 / 3.0)))
    add(Theorem("refined_area_sq_9_8", _D(f_term=FTerm.ABS_A0_SQ, tail_start=1, refinement=Refinement.A_F0,
                                          area_term=AreaTerm.S_OVER_PI, lam=9 / 8), refined_area_radius,
                sharp=False, note="only the weight 9/8 is claimed optimal"))
    add(Theorem("refined_area_fsq_8_9", _D(f_term=FTerm.ABS_F_P2, tail_start=1, refinement=Refinement.A_F0,
                                           area_term=AreaTerm.S_OVER_PI, lam=8 / 9), _const(1.0 / 3.0),
                sharp=False, note="only the weight 8/9 is claimed optimal"))
    add(Theorem("odds_16_9", _D(f_term=FTerm.ABS_A0, tail_start=1, area_term=AreaTerm.S_OVER_PI_MINUS_S, lam=16 / 9),
                _const(1.0 / 3.0), sharp=False, note="only the weight 16/9 is claimed optimal"))
    add(Theorem("odds_sq_9_8", _D(f_term=FTerm.ABS_A0_SQ, tail_start=1, area_term=AreaTerm.S_OVER_PI_MINUS_S,
                                  lam=9 / 8), _const(0.5), sharp=False, note="only the weight 9/8 is claimed optimal"))
    add(Theorem("refined_odds_fsq_8_9", _D(f_term=FTerm.ABS_F_P2, tail_start=1, refinement=Refinement.A_F0,
                                           area_term=AreaTerm.S_OVER_PI_MINUS_S, lam=8 / 9), _const(1.0 / 3.0),
                sharp=False, note="only the weight 8/9 is claimed optimal"))
    return {t.id: t for t in thms}


REGISTRY = build_registry()


def theorem(tid: str) -> Theorem:
    return REGISTRY[tid]


def sharp_theorems() -> list:
    return [t for t in REGISTRY.values() if t.sharp]
