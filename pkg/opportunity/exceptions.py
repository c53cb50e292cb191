"""
Error hierarchy of the opportunity app.

Every error knows the CLI exit code and HTTP status it maps to, and can
render itself as the machine-readable JSON payload the commands write to
stderr and the API returns.
"""


class FairnessError(Exception):
    """Base class for all library errors."""

    exit_code = 1
    http_status = 400

    def as_dict(self):
        """
        Return the error as a JSON-ready dictionary.

        Returns:
            dict: ``{"error": <class name>, "message": <text>}`` plus any
            extra fields a subclass declares.
        """
        return {"error": type(self).__name__, "message": str(self)}


# ---------------------------
# Input validation
# ---------------------------
class SourceValidationError(FairnessError):
    """A data source, predictor or input file breaks an invariant."""


class NonPositiveMass(SourceValidationError):
    pass


class OutOfRangeQ(SourceValidationError):
    pass


class DuplicateRow(SourceValidationError):
    pass


class MassNotNormalized(SourceValidationError):
    pass


class EmptyInput(SourceValidationError):
    pass


class BadLabel(SourceValidationError):
    pass


class BadSimplexVector(SourceValidationError):
    pass


class DimensionMismatch(SourceValidationError):
    pass


class PredictorOutOfBounds(SourceValidationError):
    pass


class BadParameter(SourceValidationError):
    """A numeric option (tolerance, eps, seed, size) is out of range."""


class InvalidFile(SourceValidationError):
    """An input file could not be read or failed serializer validation."""

    def __init__(self, message, details=None):
        super().__init__(message)
        self.details = details

    def as_dict(self):
        payload = super().as_dict()
        if self.details is not None:
            payload["details"] = self.details
        return payload


# ---------------------------
# Algorithmic guards
# ---------------------------
class TooLarge(FairnessError):
    """Exhaustive enumeration refused because the source has too many rows."""


class ConstraintViolation(FairnessError):
    """A plane instance does not satisfy constraints C1-C5."""


class SufficiencyNotMet(FairnessError):
    """The four-mass sufficiency condition does not hold."""


class UndefinedEO(FairnessError):
    """
    Opportunity-difference is undefined: P(Y=1, A=group) is zero.
    """

    exit_code = 2
    http_status = 422

    def __init__(self, group):
        super().__init__(
            f"equal opportunity is undefined: P(Y=1, A={group}) = 0"
        )
        self.group = group

    def as_dict(self):
        payload = super().as_dict()
        payload["group"] = self.group
        return payload


class ConstructionError(FairnessError, AssertionError):
    """A proven construction produced an invalid result (a bug, not bad input)."""

    exit_code = 3
    http_status = 500
