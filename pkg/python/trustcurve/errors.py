"""
Exception hierarchy shared by all trustcurve modules.

Weak curves are never signalled through exceptions; they show up as `fail`
entries in a report. Exceptions are reserved for misuse and for exhausted
effort budgets.
"""


class CurveError(Exception):
    pass


class InvalidArgument(CurveError, ValueError):
    pass


class InvalidPoint(InvalidArgument):
    pass


class InvalidOrder(InvalidArgument):
    pass


class InvalidMultiple(InvalidArgument):
    pass


class UnsupportedModulus(InvalidArgument):
    pass


class TooLarge(InvalidArgument):
    pass


class NotOrdinary(InvalidArgument):
    pass


class InsufficientCertificate(InvalidArgument):
    pass


class NotShortWeierstrass(InvalidArgument):
    pass


class ConfigurationError(InvalidArgument):
    pass


class CurveFileError(InvalidArgument):

    def __init__(self, message, kind='malformed'):
        super(CurveFileError, self).__init__(message)
        self.kind = kind


class Inconclusive(CurveError, RuntimeError):
    pass


class Refused(CurveError, RuntimeError):
    pass


class GenerationFailure(CurveError, RuntimeError):

    def __init__(self, stage, message=None):
        super(GenerationFailure, self).__init__(message or f'retry budget exhausted at stage {stage!r}')
        self.stage = stage


    def __reduce__(self):
        # keeps .stage across worker processes
        return GenerationFailure, (self.stage, str(self))
