"""Minimal Sullivan models and formality tests for finitely presented CDGAs over Q."""

from .algebra import Element, GeneratorTable
from .dga import DGA, InvalidDGA, NotACoboundary
from .formality import FormalityVerdict, Outcome, cohomology_algebra, is_formal, psi_condition
from .groebner import DegreeBoundError, QuotientAlgebra
from .model import (
    ConsistencyError,
    IterationLimitExceeded,
    MinimalModel,
    intrinsic_invariants,
    minimal_model,
    verify_minimality,
    verify_quasi_isomorphism,
)
from .presentation import InputDocument, ParseError, parse

__all__ = [
    "DGA", "ConsistencyError", "DegreeBoundError", "Element", "FormalityVerdict", "GeneratorTable",
    "InputDocument", "InvalidDGA", "IterationLimitExceeded", "MinimalModel", "NotACoboundary", "Outcome",
    "ParseError", "QuotientAlgebra", "cohomology_algebra", "intrinsic_invariants", "is_formal",
    "minimal_model", "parse", "psi_condition", "verify_minimality", "verify_quasi_isomorphism",
]
