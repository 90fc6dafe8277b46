import sys


class SpectrumError(RuntimeError):
    """Base class for walk-operator and eigensolver failures."""


class LevelOutOfRangeError(SpectrumError, ValueError):
    def __init__(self, operator: str, level: int, low: int, high: int):
        self.operator = operator
        self.level = level
        super().__init__(f"{operator} needs {low} <= k <= {high}, got k={level}")


class EigenSolverError(SpectrumError):
    def __init__(self, message: str, residual: float = None, face=None):
        self.residual = residual
        self.face = face
        details = []
        if residual is not None:
            details.append(f"residual {residual:.3e}")
        if face is not None:
            details.append(f"link of {face}")
        suffix = f" ({', '.join(details)})" if details else ""
        super().__init__(message + suffix)


class EigenSizeError(SpectrumError):
    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"level has {size} faces, above the eigensolve cap of {cap}")


class ReversibilityError(SpectrumError):
    def __init__(self, row: int, column: int):
        self.row = row
        self.column = column
        super().__init__(f"detailed balance fails at entry ({row}, {column})")


class SymmetrizationError(SpectrumError):
    def __init__(self, residual: float, tolerance: float):
        self.residual = residual
        super().__init__(f"symmetrized operator off by {residual:.3e} (> {tolerance:.1e})")


class DimensionMismatchError(SpectrumError, ValueError):
    def __init__(self, expected: int, got: int):
        super().__init__(f"distribution has length {got}, operator acts on {expected} faces")


def handle_eigensolver_error(error):
    print("[SPECTRUM ERROR] Reason:", str(error), file=sys.stderr)
    print("[FIX] The dense symmetric solver did not converge; check the weights for zeros or overflow.", file=sys.stderr)


def handle_size_error(error):
    print("[SPECTRUM ERROR] Reason:", str(error), file=sys.stderr)
    print("[FIX] Pick a lower level or smaller parameters, or raise MAX_EIGEN_SIZE.", file=sys.stderr)


def handle_balance_error(error):
    print("[SPECTRUM ERROR] Reason:", str(error), file=sys.stderr)
    print("[FIX] Rebuild the complex; its weights are no longer balanced.", file=sys.stderr)


def handle_unknown_spectrum_error(error):
    print("[SPECTRUM ERROR] Reason:", str(error), file=sys.stderr)
    print("[FIX] Check the level range for the requested walk and the start distribution.", file=sys.stderr)


def handle_spectrum_error(error):
    """Dispatch to the handler matching the error type."""
    if isinstance(error, EigenSolverError):
        handle_eigensolver_error(error)
    elif isinstance(error, EigenSizeError):
        handle_size_error(error)
    elif isinstance(error, (ReversibilityError, SymmetrizationError)):
        handle_balance_error(error)
    else:
        handle_unknown_spectrum_error(error)
