"""Exact q-Fibonacci and q-Lucas polynomials with a mechanical identity checker."""

from .exactalg import (
    NegativeExponent,
    NonExactDivision,
    NonUnitConstantTerm,
    SubstitutionError,
    LaurentPoly,
    QSeries,
)
from .fiblucas import FamilyKind, family, fib, lucas, special_value
from .identities import REGISTRY, GridConfig, run_identity
from .qcore import q_binomial, q_catalan, q_hermite, q_pochhammer, rogers_szego
from .report import IdentityReport

__version__ = "0.1.0"


def clear_caches() -> None:
    """Drop every memo table, e.g. before timing a cold run."""
    from . import fiblucas, identities, qcore, qseries

    for mod in (qcore, fiblucas, qseries, identities):
        for obj in vars(mod).values():
            if callable(getattr(obj, "cache_clear", None)):
                obj.cache_clear()

__all__ = [
    "LaurentPoly",
    "QSeries",
    "NonExactDivision",
    "NonUnitConstantTerm",
    "NegativeExponent",
    "SubstitutionError",
    "FamilyKind",
    "family",
    "fib",
    "lucas",
    "special_value",
    "q_binomial",
    "q_pochhammer",
    "q_catalan",
    "q_hermite",
    "rogers_szego",
    "REGISTRY",
    "GridConfig",
    "run_identity",
    "IdentityReport",
    "clear_caches",
]
