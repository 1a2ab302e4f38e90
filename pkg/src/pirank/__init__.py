"""Primitivity rank, stackings, adjunction spaces and one-relator pushouts for free groups."""

from .words import DomainError, MalformedInput, format_word, parse_word
from .prank import primitivity_rank
from .stacking import find_stacking, verify_stacking
from .adjunction import InvariantViolation, verify_dependence_theorem
from .twocomplex import classify_immersion, one_relator_pushout, pushout_inequality

__all__ = ["DomainError", "MalformedInput", "InvariantViolation", "format_word", "parse_word", "primitivity_rank",
           "find_stacking", "verify_stacking", "verify_dependence_theorem", "classify_immersion",
           "one_relator_pushout", "pushout_inequality"]
