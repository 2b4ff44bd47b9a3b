"""Exact Chern classes of log tangent bundles and blowups over truncated graded rings."""
from .blowup import blowup, chern_blowup, log_pullback_check, verify_blowup_formula
from .catalog import get_entry, projective_space
from .charclass import TotalChern, chern_character, grr_check, segre, todd_class
from .divisor import SCArrangement, StrataData, log_chern, strata
from .ring import GradedRing, RingPresentation, Space, build_ring, integrality_check, invert

__all__ = [
    "GradedRing",
    "RingPresentation",
    "SCArrangement",
    "Space",
    "StrataData",
    "TotalChern",
    "blowup",
    "build_ring",
    "chern_blowup",
    "chern_character",
    "get_entry",
    "grr_check",
    "integrality_check",
    "invert",
    "log_chern",
    "log_pullback_check",
    "projective_space",
    "segre",
    "strata",
    "todd_class",
    "verify_blowup_formula",
]
