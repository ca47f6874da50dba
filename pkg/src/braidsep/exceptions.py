"""Exception hierarchy.

Every domain error carries a short ``code`` so the command line can print a
machine-parsable first token before the human-readable message.
"""


class BraidSepError(Exception):
    """Base class for domain errors (CLI exit status 1)."""

    code = "E_DOMAIN"


class BraidSyntaxError(BraidSepError, ValueError):
    """A braid word could not be parsed."""

    code = "E_SYNTAX"

    def __init__(self, message, text="", position=None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class SingularMatrixError(BraidSepError, ArithmeticError):
    code = "E_SINGULAR"

    def __init__(self, det_abs, threshold, what="matrix"):
        self.det_abs = det_abs
        self.threshold = threshold
        super().__init__(
            f"{what} is singular or nearly so: |det| = {det_abs:.3e} "
            f"below threshold {threshold:.3e}"
        )


class DimensionError(BraidSepError, ValueError):
    code = "E_DIMENSION"


class ParameterError(BraidSepError, ValueError):
    """Representation parameters outside the admissible set."""

    code = "E_PARAMS"


class NotARepresentationError(BraidSepError):
    """Block matrices that fail the defining equations or the braid relation."""

    code = "E_NOT_REP"

    def __init__(self, message, residual=None):
        self.residual = residual
        super().__init__(message)


class CatalogError(BraidSepError):
    code = "E_CATALOG"
