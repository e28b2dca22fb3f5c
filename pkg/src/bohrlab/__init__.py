"""Numerical laboratory for Bohr-type inequalities on the unit disk."""

from .errors import (
    BohrLabError,
    BracketError,
    ConvergenceError,
    DegenerateAreaError,
    DomainError,
    InsufficientOrderError,
    InvalidMError,
    OutOfRangeError,
    TableMismatchError,
)
from .functionals import (
    AreaTerm,
    FTerm,
    FunctionalDescriptor,
    FunctionalValue,
    Refinement,
    area_odds,
    area_ratio,
    bohr_tail,
    eval_functional,
    extremal_closed_form,
    norm_sq,
    refinement_A,
)
from .kernels import BACKEND
from .radius import RadiusEquation, RootResult, catalog, catalog_entry, constants, solve, verify_monotone
from .series import (
    AutomorphismParams,
    CoefficientSeries,
    EvalResult,
    Variant,
    automorphism_series,
    blaschke_sample,
    derivative_at,
    eval_series,
)

__version__ = "0.1.0"
