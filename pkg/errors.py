"""Domain errors raised by the HOCA mobility engine.

Every error carries a short machine code; the CLI turns any HocaError into
an error report and exit status 1.
"""


class HocaError(Exception):
    """Base class for all domain errors."""

    code = "hoca_error"

    def to_dict(self):
        return {"code": self.code, "message": str(self)}


class PolynomialSyntaxError(HocaError):
    code = "syntax"

    def __init__(self, message, offset):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset

    def to_dict(self):
        data = super().to_dict()
        data["offset"] = self.offset
        return data


class ExponentOverflowError(HocaError):
    code = "exponent_overflow"


class ZeroPolynomialError(HocaError):
    code = "zero_polynomial"


class NotDivisibleError(HocaError):
    code = "not_divisible"


class InvalidRuleError(HocaError):
    code = "invalid_rule"


class NotRealizableError(HocaError):
    code = "not_realizable"


class DecompositionError(HocaError):
    code = "decomposition_exhausted"


class PeriodTooLargeError(HocaError):
    code = "period_too_large"


class WindowMarginError(HocaError):
    code = "window_margin"


class CapExceededError(HocaError):
    code = "cap_exceeded"


class TorusSizeError(HocaError):
    code = "torus_too_small"


class NonAbelianError(HocaError):
    code = "non_abelian"


class DepthError(HocaError):
    code = "depth"


class InitialConditionError(HocaError):
    code = "initial_condition"


class InvalidProfileError(HocaError):
    code = "invalid_profile"
