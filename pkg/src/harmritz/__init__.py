"""Harmonic Rayleigh-Ritz extraction and a-priori convergence bounds for dense matrices."""
from .bounds import BoundEntry, BoundReport, full_report
from .config import DEFAULT_THRESHOLDS, Thresholds
from .errors import ConfigError, HarmRitzError, NumericError
from .extraction import (
    harmonic_pairs_pencil,
    harmonic_pairs_resolvent,
    rayleigh_ritz,
    refined_harmonic_vector,
    select_nearest,
)

__version__ = "0.1.0"

__all__ = [
    "BoundEntry", "BoundReport", "ConfigError", "DEFAULT_THRESHOLDS", "HarmRitzError",
    "NumericError", "Thresholds", "full_report", "harmonic_pairs_pencil",
    "harmonic_pairs_resolvent", "rayleigh_ritz", "refined_harmonic_vector", "select_nearest",
]
