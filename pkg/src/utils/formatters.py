"""
Formatting utilities for the HDX toolkit
"""
from fractions import Fraction
from typing import Sequence, Tuple

from config.settings import FLOAT_DIGITS


def format_rational(value: Fraction) -> str:
    """
    Format an exact rational as a "p/q" string

    Args:
        value: Rational to format

    Returns:
        "p/q" (always with a denominator, so parsing is unambiguous)
    """
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    """
    Parse a decimal or "p/q" string into an exact rational

    Args:
        text: String such as "3", "0.25" or "1/2"

    Returns:
        Exact rational value

    Raises:
        ValueError: If the text is not a number
    """
    text = text.strip()
    if not text:
        raise ValueError("empty number")
    return Fraction(text)


def format_float(value: float, digits: int = None) -> str:
    """
    Format a float with a fixed number of significant digits

    Args:
        value: Float to format
        digits: Significant digits (defaults to FLOAT_DIGITS)

    Returns:
        Formatted string that round-trips the float
    """
    if digits is None:
        digits = FLOAT_DIGITS
    return f"{float(value):.{digits}g}"


def format_face(face: Sequence[Tuple[int, int]]) -> str:
    """Format a face as "{(v,b),...}"; the empty face prints as "{}"."""
    return "{" + ",".join(f"({v},{b})" for v, b in face) + "}"


def format_class(face_class) -> str:
    """Format a face class in the (j,k-j)_(u,v) / (k)_u notation."""
    if hasattr(face_class, "edge"):
        u, v = face_class.edge
        return f"({face_class.j},{face_class.k - face_class.j})_({u},{v})"
    return f"({face_class.k})_{face_class.u}"
