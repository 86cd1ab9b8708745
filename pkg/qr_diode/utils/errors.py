"""Exceptions raised by qr_diode"""


class DiodeError(Exception):
    """Base class for all qr_diode errors"""


class NonHermitianInput(DiodeError, ValueError):
    """Matrix expected to be Hermitian is not, within tolerance"""


class DegenerateSteadyState(DiodeError, ArithmeticError):
    """Rate matrix null space is not one dimensional"""


class SpectralCollapse(DiodeError, ValueError):
    """Two-photon coupling at or beyond half the resonator frequency"""


class TruncationTooSmall(DiodeError, ValueError):
    """Fock truncation below the smallest admissible photon number"""


class UnknownUnitKind(DiodeError, ValueError):
    """Unit conversion requested for an unrecognized quantity"""


class DomainError(DiodeError, ValueError):
    """Argument outside the domain of a function"""


class BasisMismatch(DiodeError, ValueError):
    """Steady state and channels were built from different eigensystems"""


class NotConverged(DiodeError, RuntimeError):
    """Iterative procedure stopped before reaching its tolerance"""


class NonPhysical(DiodeError, ArithmeticError):
    """Density matrix lost normalization or positivity"""


class ConfigError(DiodeError, ValueError):
    """Invalid or incomplete run configuration"""


# Errors meaning the request itself is invalid, as opposed to a numerical
# failure at one parameter point
VALIDATION_ERRORS = (
    ConfigError,
    SpectralCollapse,
    TruncationTooSmall,
    UnknownUnitKind,
    DomainError,
)


def describe_error(err):
    """
    One-line description of an exception for CSV error columns and logs

    :param Exception err: Raised exception
    :return str: '<ClassName>: <message>'
    """
    return '{}: {}'.format(type(err).__name__, err)
