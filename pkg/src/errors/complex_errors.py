import sys


class ComplexError(ValueError):
    """Base class for construction and complex-lookup failures."""


class InvalidParametersError(ComplexError):
    pass


class ComplexSizeError(ComplexError):
    def __init__(self, predicted: int, cap: int):
        self.predicted = predicted
        self.cap = cap
        super().__init__(f"predicted {predicted} top faces exceeds the cap of {cap}")


class FaceNotInComplexError(ComplexError):
    def __init__(self, face):
        self.face = face
        super().__init__(f"face {face} is not in the complex")


class WeightedBaselineError(ComplexError):
    pass


class ComplexFormatError(ComplexError):
    pass


def handle_invalid_parameters_error(error):
    print("[COMPLEX ERROR] Reason:", str(error), file=sys.stderr)
    print("[FIX] Use H >= 1 and s >= H + 1 (the expansion theorems also want H >= 2, s >= 2H, n >= 4).", file=sys.stderr)


def handle_size_error(error):
    print("[COMPLEX ERROR] Reason:", str(error), file=sys.stderr)
    print("[FIX] Lower H or s, use a smaller graph, or raise MAX_TOP_FACES / --max-faces.", file=sys.stderr)


def handle_weighted_baseline_error(error):
    print("[COMPLEX ERROR] Reason:", str(error), file=sys.stderr)
    print("[FIX] The Q baseline is defined for unit weights; pass --allow-weighted to use the weighted extension.", file=sys.stderr)


def handle_format_error(error):
    print("[COMPLEX ERROR] Reason:", str(error), file=sys.stderr)
    print("[FIX] Regenerate the complex JSON with the build command.", file=sys.stderr)


def handle_unknown_complex_error(error):
    print("[COMPLEX ERROR] Reason:", str(error), file=sys.stderr)
    print("[FIX] Check that the face belongs to the complex and the level is in range.", file=sys.stderr)


def handle_complex_error(error):
    """Dispatch to the handler matching the error type."""
    if isinstance(error, InvalidParametersError):
        handle_invalid_parameters_error(error)
    elif isinstance(error, ComplexSizeError):
        handle_size_error(error)
    elif isinstance(error, WeightedBaselineError):
        handle_weighted_baseline_error(error)
    elif isinstance(error, ComplexFormatError):
        handle_format_error(error)
    else:
        handle_unknown_complex_error(error)
