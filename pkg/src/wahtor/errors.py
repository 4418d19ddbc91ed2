"""Exception types shared across the package."""


class WahtorError(Exception):
    """Base class for all package-specific errors."""


class ParseError(WahtorError):
    """Malformed FCIDUMP or config input; carries a line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ConsistencyError(WahtorError):
    """Duplicate input entries that disagree beyond tolerance."""


class GroupError(WahtorError):
    """Symmetry groups overlap or reference orbitals out of range."""


class EncodingError(WahtorError):
    """Fermion-to-qubit mapping produced a non-real operator."""


class DimensionError(WahtorError):
    """Mismatched operator / state / parameter dimensions."""


class UnsupportedError(WahtorError):
    """Requested case outside the supported closed-shell setting."""


class NumericalError(WahtorError):
    """Non-finite values encountered during a numerical routine."""


class ScaleError(WahtorError):
    """Problem size beyond the exact-diagonalization limits."""


class DegenerateError(WahtorError):
    """Correlation fraction undefined: reference energies coincide."""
