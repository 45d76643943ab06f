"""Exact stringy invariants of singular projective varieties.

Given resolution data (exceptional divisors with discrepancies, stratum
E-polynomials and intersection numbers), this package computes the stringy
E-function, the stringy Euler number, the stringy version of the Chern
number c_1 c_{n-1}, and stringy Hodge numbers, and machine-verifies the
identities relating them with zero-tolerance rational arithmetic.
"""

from .bipoly import BiPoly, DivisionResult, exact_divide
from .errors import (
    DomainError,
    IncompleteDataError,
    NotApplicableError,
    PoleError,
    PreconditionError,
    SchemaError,
    StringyError,
    UnsupportedPointError,
    ValidationError,
)
from .gallery import BUILTIN_NAMES, GalleryEntry, builtin, random_consistent
from .hodge import (
    ChernData,
    HodgeDiamond,
    cy4_linear_relation,
    cy_relation_check,
    e_polynomial,
    euler_number,
    first_derivative_check,
    hyperkaehler_betti_check,
    libgober_wood_check,
    second_derivative_check,
    virasoro_identity_form,
)
from .invariants import (
    DivisorInfo,
    ResolutionData,
    StratumData,
    StringyFunction,
    StringyHodgeResult,
    c_st_1_n1,
    check_adjunction_recursion,
    check_first_derivative_identity,
    check_main_identity,
    check_relat_div,
    derivative_at_one,
    restrict_v1,
    stringy_euler,
    stringy_function,
    stringy_hodge_numbers,
    validate,
)
from .lattice import LatticeFunction, lattice_restrict
from .rational import Rat, format_rat, parse_rat
from .report import Report
from .series import DEFAULT_ORDER, SeriesAtOne, correction_series

__all__ = [name for name in dir() if not name.startswith("_")]
