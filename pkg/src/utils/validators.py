"""
Validation utilities for the HDX toolkit
"""
from numbers import Integral
from typing import Any, Dict

from config.settings import COMPLEX_KINDS, WALK_KINDS


def validate_dimension(H: int) -> bool:
    """
    Validate the complex dimension

    Args:
        H: Dimension of the top faces

    Returns:
        True if valid, False otherwise
    """
    return isinstance(H, int) and H >= 1


def validate_colors(H: int, s: int) -> bool:
    """
    Validate the color count

    Args:
        H: Dimension of the top faces
        s: Number of colors

    Returns:
        True if s >= H + 1, False otherwise
    """
    return isinstance(s, int) and s >= H + 1


def validate_kind(kind: str) -> bool:
    """Validate the construction kind (Z or Q)."""
    return isinstance(kind, str) and kind.upper() in COMPLEX_KINDS


def validate_walk(walk: str) -> bool:
    """Validate a walk operator name."""
    return walk in WALK_KINDS


def validate_level(k: int, low: int, high: int) -> bool:
    """Validate that a level lies in [low, high]."""
    return isinstance(k, Integral) and low <= k <= high


def validate_build_params(H: int, s: int, kind: str = "Z") -> Dict[str, Any]:
    """
    Validate construction parameters

    Args:
        H: Dimension of the top faces
        s: Number of colors
        kind: Construction kind

    Returns:
        Dictionary with 'valid' flag and 'errors' list
    """
    errors = []

    if not validate_dimension(H):
        errors.append(f"H must be an integer >= 1, got {H!r}")
    elif not validate_colors(H, s):
        errors.append(f"s must be an integer >= H + 1 = {H + 1}, got {s!r}")

    if not validate_kind(kind):
        errors.append(f"kind must be one of {COMPLEX_KINDS}, got {kind!r}")

    return {
        'valid': len(errors) == 0,
        'errors': errors
    }


def theorem_hypotheses(n: int, H: int, s: int) -> Dict[str, Any]:
    """
    Check the hypotheses of the expansion theorems (H >= 2, s >= 2H, n >= 4)

    Args:
        n: Number of graph vertices
        H: Dimension of the top faces
        s: Number of colors

    Returns:
        Dictionary with 'valid' flag and 'errors' list
    """
    errors = []
    if H < 2:
        errors.append(f"needs H >= 2, got H={H}")
    if s < 2 * H:
        errors.append(f"needs s >= 2H = {2 * H}, got s={s}")
    if n < 4:
        errors.append(f"needs n >= 4, got n={n}")

    return {
        'valid': len(errors) == 0,
        'errors': errors
    }
